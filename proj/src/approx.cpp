#include "cusplab/approx.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "cusplab/error.hpp"

namespace cusplab {

namespace {

Direction sign_direction(double x) {
  if (x > 0) return Direction::increasing;
  if (x < 0) return Direction::decreasing;
  return Direction::constant;
}

double parse_double(const std::string& s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("malformed number '" + s + "' in function spec");
  }
  return v;
}

// Linear interpolation of (xs, ys) at x, xs strictly increasing.
double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t j = it == xs.end() ? xs.size() - 1 : static_cast<std::size_t>(it - xs.begin());
  if (j == 0) j = 1;
  double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return ys[j - 1] + w * (ys[j] - ys[j - 1]);
}

}  // namespace

ApproxFn ApproxFn::power_law(double c, double e) {
  if (!(c > 0) || !std::isfinite(c) || !std::isfinite(e)) throw DomainError("power law needs c > 0 and finite e");
  ApproxFn f;
  f.kind_ = Kind::power_law;
  f.a_ = c;
  f.b_ = e;
  f.direction_ = sign_direction(e);
  f.lo_ = 0;
  return f;
}

ApproxFn ApproxFn::affine(double slope, double intercept) {
  if (!std::isfinite(slope) || !std::isfinite(intercept)) throw DomainError("affine map needs finite parameters");
  ApproxFn f;
  f.kind_ = Kind::affine;
  f.a_ = slope;
  f.b_ = intercept;
  f.direction_ = sign_direction(slope);
  f.lo_ = -std::numeric_limits<double>::infinity();
  return f;
}

ApproxFn ApproxFn::tabulated(std::vector<double> xs, std::vector<double> ys, Interpolation rule) {
  if (xs.size() != ys.size() || xs.size() < 2) throw DomainError("table needs at least two matching samples");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) throw DomainError("table entries must be finite");
    if (rule == Interpolation::log_log && (xs[i] <= 0 || ys[i] <= 0)) {
      throw DomainError("log-log table needs positive samples");
    }
    if (i > 0 && !(xs[i] > xs[i - 1])) throw DomainError("table abscissae must be strictly increasing");
  }
  bool up = ys[1] > ys[0];
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (up ? !(ys[i] > ys[i - 1]) : !(ys[i] < ys[i - 1])) {
      throw HypothesisViolation("table is not strictly monotone near x = " + std::to_string(xs[i]));
    }
  }
  ApproxFn f;
  f.kind_ = Kind::tabulated;
  f.direction_ = up ? Direction::increasing : Direction::decreasing;
  f.lo_ = xs.front();
  f.hi_ = xs.back();
  f.rule_ = rule;
  if (rule == Interpolation::log_log) {
    for (auto& x : xs) x = std::log(x);
    for (auto& y : ys) y = std::log(y);
  }
  f.xs_ = std::move(xs);
  f.ys_ = std::move(ys);
  return f;
}

double ApproxFn::operator()(double x) const {
  switch (kind_) {
    case Kind::power_law:
      if (x == 0 && b_ > 0) return 0;
      if (!(x > 0)) throw DomainError("power law evaluated at non-positive x");
      return a_ * std::pow(x, b_);
    case Kind::affine:
      return a_ * x + b_;
    case Kind::tabulated: {
      // Tolerate round-off at the range ends.
      double slack = 1e-12 * std::max({1.0, std::abs(lo_), std::abs(hi_)});
      if (x < lo_ - slack || x > hi_ + slack) {
        throw DomainError("tabulated function evaluated outside [" + std::to_string(lo_) + ", " +
                          std::to_string(hi_) + "]");
      }
      x = std::clamp(x, lo_, hi_);
      if (rule_ == Interpolation::log_log) return std::exp(interpolate(xs_, ys_, std::log(x)));
      return interpolate(xs_, ys_, x);
    }
  }
  return 0;
}

double ApproxFn::inverse(double y) const {
  if (direction_ == Direction::constant) throw DomainError("constant function has no inverse");
  switch (kind_) {
    case Kind::power_law:
      if (!(y > 0)) throw DomainError("power-law inverse of non-positive value");
      return std::pow(y / a_, 1 / b_);
    case Kind::affine:
      return (y - b_) / a_;
    case Kind::tabulated: {
      double v = rule_ == Interpolation::log_log ? (y > 0 ? std::log(y) : -INFINITY) : y;
      double lo = std::min(ys_.front(), ys_.back()), hi = std::max(ys_.front(), ys_.back());
      double slack = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
      if (!(v >= lo - slack && v <= hi + slack)) throw DomainError("inverse requested outside the table range");
      v = std::clamp(v, lo, hi);
      double x;
      if (direction_ == Direction::increasing) {
        x = interpolate(ys_, xs_, v);
      } else {
        std::vector<double> ry(ys_.rbegin(), ys_.rend()), rx(xs_.rbegin(), xs_.rend());
        x = interpolate(ry, rx, v);
      }
      return rule_ == Interpolation::log_log ? std::exp(x) : x;
    }
  }
  return 0;
}

std::string ApproxFn::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::power_law:
      os << "pow:c=" << a_ << ",e=" << b_;
      break;
    case Kind::affine:
      os << "affine:s=" << a_ << ",b=" << b_;
      break;
    case Kind::tabulated:
      os << "table:n=" << xs_.size() << ",range=[" << lo_ << "," << hi_ << "]";
      break;
  }
  return os.str();
}

ApproxFn parse_approx_fn(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("function spec '" + spec + "' lacks a kind prefix");
  std::string kind = spec.substr(0, colon);
  std::map<std::string, double> params;
  std::stringstream rest(spec.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("function parameter '" + item + "' lacks '='");
    auto key = item.substr(0, eq);
    if (params.count(key)) throw ParseError("duplicate function parameter '" + key + "'");
    params[key] = parse_double(item.substr(eq + 1));
  }
  auto take = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end()) throw ParseError(std::string("function spec is missing '") + key + "'");
    double v = it->second;
    params.erase(it);
    return v;
  };
  ApproxFn out = ApproxFn::affine(0, 0);
  if (kind == "pow") {
    double c = take("c"), e = take("e");
    if (!(c > 0)) throw ParseError("power law needs c > 0");
    out = ApproxFn::power_law(c, e);
  } else if (kind == "affine") {
    double s = take("s"), b = take("b");
    out = ApproxFn::affine(s, b);
  } else {
    throw ParseError("unknown function kind '" + kind + "'");
  }
  if (!params.empty()) throw ParseError("unknown function parameter '" + params.begin()->first + "'");
  return out;
}

}  // namespace cusplab
