#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cusplab/linalg.hpp"
#include "cusplab/real.hpp"

namespace cusplab {

/// num / den in lowest terms with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  Real value() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// A rows x cols matrix of real coefficients. Entries given as exact
/// rationals keep that representation, which is the only way a matrix is
/// ever treated as rational.
class LinearForms {
 public:
  LinearForms() = default;

  /// The zero matrix, flagged rational.
  static LinearForms zero(int rows, int cols);
  static LinearForms from_reals(int rows, int cols, std::vector<Real> values);
  static LinearForms from_rationals(int rows, int cols, const std::vector<Rational>& values);

  /// Row-major tokens. If every token is an integer or "a/b" with integer
  /// a and b the matrix is rational; otherwise tokens are decimal literals.
  static LinearForms parse(int rows, int cols, const std::vector<std::string>& tokens);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Real& operator()(int i, int j) const { return values_[index(i, j)]; }
  bool is_rational() const { return rationals_.has_value(); }
  const Rational& rational(int i, int j) const;

  LinearForms transpose() const;
  RealMatrix matrix() const;

  friend bool operator==(const LinearForms&, const LinearForms&) = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Real> values_;
  std::optional<std::vector<Rational>> rationals_;
};

/// Parses the text format: first line "ell m", then ell rows of m tokens.
LinearForms parse_matrix_text(const std::string& text, int* ell = nullptr, int* m = nullptr);

}  // namespace cusplab
