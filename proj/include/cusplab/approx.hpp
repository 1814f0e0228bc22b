#pragma once

#include <limits>
#include <string>
#include <vector>

namespace cusplab {

enum class Direction { decreasing, constant, increasing };
enum class Interpolation { linear, log_log };

/// A monotone function of one variable: c x^e, slope t + intercept, or a
/// strictly monotone table with a declared working range.
class ApproxFn {
 public:
  enum class Kind { power_law, affine, tabulated };

  static ApproxFn power_law(double c, double e);
  static ApproxFn affine(double slope, double intercept);

  /// xs strictly increasing, ys strictly monotone. Evaluation outside
  /// [xs.front(), xs.back()] throws DomainError. log_log needs positive data.
  static ApproxFn tabulated(std::vector<double> xs, std::vector<double> ys,
                            Interpolation rule = Interpolation::log_log);

  Kind kind() const { return kind_; }
  Direction direction() const { return direction_; }

  double operator()(double x) const;

  /// Inverse on the range. Closed form for power laws and affine maps,
  /// inverse interpolation for tables.
  double inverse(double y) const;

  double domain_min() const { return lo_; }
  double domain_max() const { return hi_; }
  bool bounded() const { return kind_ == Kind::tabulated; }

  /// Power-law parameters (c, e) or affine (slope, intercept).
  double coefficient() const { return a_; }
  double exponent() const { return b_; }
  double slope() const { return a_; }
  double intercept() const { return b_; }

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  Interpolation rule() const { return rule_; }

  std::string describe() const;

 private:
  ApproxFn() = default;

  Kind kind_ = Kind::affine;
  Direction direction_ = Direction::constant;
  double a_ = 0;
  double b_ = 0;
  double lo_ = 0;
  double hi_ = std::numeric_limits<double>::infinity();
  std::vector<double> xs_;
  std::vector<double> ys_;
  Interpolation rule_ = Interpolation::log_log;
};

/// Parses "pow:c=<dec>,e=<dec>" or "affine:s=<dec>,b=<dec>".
ApproxFn parse_approx_fn(const std::string& spec);

/// Solves f(x) = y for monotone f by bracketing from [lo, hi] (doubling the
/// bracket outward while allowed) and bisection to relative tolerance 1e-12.
template <class F>
double bisect_inverse(const F& f, double y, double lo, double hi, bool increasing, double lo_limit = 0,
                      double hi_limit = std::numeric_limits<double>::infinity());

}  // namespace cusplab

#include "cusplab/approx_impl.hpp"
