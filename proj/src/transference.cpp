#include "cusplab/transference.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cusplab/error.hpp"

namespace cusplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kSamples = 2001;

std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

std::string range_text(double a, double b) { return "[" + std::to_string(a) + ", " + std::to_string(b) + "]"; }

ApproxFn ray_transfer(const ApproxFn& phi, double slope, double factor, double C, double t_max) {
  if (phi.direction() == Direction::decreasing) {
    throw HypothesisViolation("ray transfer needs a non-decreasing height function");
  }
  if (phi.kind() == ApproxFn::Kind::affine) {
    return ApproxFn::affine(slope + factor * phi.slope(), factor * phi.intercept() + C);
  }
  if (phi.direction() == Direction::constant) {
    return ApproxFn::affine(slope, factor * phi.coefficient() + C);
  }
  double lo = phi.bounded() ? phi.domain_min() : 0.0;
  double hi = phi.bounded() ? phi.domain_max() : t_max;
  auto ts = linear_grid(lo, hi, kSamples);
  std::vector<double> ys(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) ys[i] = slope * ts[i] + factor * phi(ts[i]) + C;
  return ApproxFn::tabulated(std::move(ts), std::move(ys), Interpolation::linear);
}

}  // namespace

Dims::Dims(int ell_, int m_) : ell(ell_), m(m_) {
  if (ell < 1 || m < 1) throw DimensionError("ell and m must be at least 1");
}

RayConstants ray_constants(const Dims& d) {
  const double s = d.s();
  RayConstants c;
  c.eta = std::sqrt(s / (s - 1));
  c.lambda = std::sqrt(d.m / (s * d.ell));
  c.mu = std::sqrt(d.ell / (s * d.m));
  c.alpha1 = c.eta * c.mu;
  c.alpha_top = c.eta * c.lambda;
  return c;
}

double dirichlet_exponent(const Dims& d) { return static_cast<double>(d.m) / d.ell; }

ApproxFn transfer_FG(const ApproxFn& phi, const Dims& d) {
  if (phi.direction() != Direction::decreasing) {
    throw HypothesisViolation("transfer_FG needs a decreasing approximating function");
  }
  const double s1 = d.s() - 1;
  const double fx = (1.0 - d.ell) / s1, fp = d.ell / s1;
  const double gx = d.m / s1, gp = (1.0 - d.m) / s1;
  if (phi.kind() == ApproxFn::Kind::power_law) {
    const double c = phi.coefficient(), e = phi.exponent();
    const double f_coef = s1 * std::pow(c, fp), f_exp = fx + e * fp;
    const double g_coef = s1 * std::pow(c, gp), g_exp = gx + e * gp;
    if (!(g_exp > 0)) throw HypothesisViolation("G is not increasing for this power law");
    if (!(f_exp < 0)) throw HypothesisViolation("F is not decreasing for this power law");
    // F(G^{-1}(y)) with G^{-1}(y) = (y / g_coef)^{1/g_exp}.
    return ApproxFn::power_law(f_coef * std::pow(g_coef, -f_exp / g_exp), f_exp / g_exp);
  }
  if (phi.kind() != ApproxFn::Kind::tabulated) {
    throw DomainError("transfer_FG needs a power-law or tabulated approximating function");
  }
  if (!(phi.domain_min() > 0)) throw DomainError("transfer_FG needs a table on positive x");
  auto F = [&](double x) { return s1 * std::pow(x, fx) * std::pow(phi(x), fp); };
  auto G = [&](double x) { return s1 * std::pow(x, gx) * std::pow(phi(x), gp); };
  auto xs = geometric_grid(phi.domain_min(), phi.domain_max(), kSamples);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(G(xs[i]) > G(xs[i - 1]))) throw HypothesisViolation("G is not increasing on " + range_text(xs[i - 1], xs[i]));
    if (!(F(xs[i]) < F(xs[i - 1]))) throw HypothesisViolation("F is not decreasing on " + range_text(xs[i - 1], xs[i]));
  }
  auto ys = geometric_grid(G(xs.front()), G(xs.back()), kSamples);
  std::vector<double> psi(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    double x = bisect_inverse(G, ys[i], xs.front(), xs.back(), true, xs.front(), xs.back());
    psi[i] = F(x);
  }
  return ApproxFn::tabulated(std::move(ys), std::move(psi), Interpolation::log_log);
}

double transfer_exponent(double alpha, const Dims& d) {
  if (!(alpha >= 0)) throw DomainError("exponent alpha must be non-negative");
  if (std::isinf(alpha)) return d.m == 1 ? kInf : static_cast<double>(d.ell) / (d.m - 1);
  const double den = d.m * (d.m + d.ell - 1) + (d.m - 1) * alpha;
  const double den_alt = d.m * (d.s() - 1) + (d.m - 1) * alpha;
  if (den != den_alt) throw InvariantViolation("the two forms of the transfer denominator disagree");
  return d.ell * alpha / den;
}

KhintchineBounds khintchine_bounds(double omega, int n) {
  if (!(omega >= 0)) throw DomainError("omega must be non-negative");
  if (n < 1) throw DomainError("n must be at least 1");
  if (std::isinf(omega)) return {n == 1 ? kInf : 1.0 / (n - 1), kInf};
  return {omega / (static_cast<double>(n) * n + (n - 1) * omega), omega};
}

ApproxFn ray_transfer_16(const ApproxFn& phi, const Dims& d, double C, double t_max) {
  auto k = ray_constants(d);
  const double s1 = d.s() - 1;
  // lambda - mu/(s-1) = (m(s-1) - ell) / ((s-1) sqrt(s ell m)), exactly 0 when m = 1.
  const double root = std::sqrt(static_cast<double>(d.s()) * d.ell * d.m);
  return ray_transfer(phi, k.eta * (d.m * s1 - d.ell) / (s1 * root), 1 / s1, C, t_max);
}

ApproxFn ray_transfer_17(const ApproxFn& psi, const Dims& d, double C, double t_max) {
  auto k = ray_constants(d);
  const double s1 = d.s() - 1;
  const double root = std::sqrt(static_cast<double>(d.s()) * d.ell * d.m);
  return ray_transfer(psi, k.eta * (d.ell * s1 - d.m) / (s1 * root), 1 / s1, C, t_max);
}

ApproxFn approx_to_height(const ApproxFn& Phi, const Dims& d, double C) {
  if (Phi.direction() != Direction::decreasing) {
    throw HypothesisViolation("approx_to_height needs a decreasing approximating function");
  }
  auto k = ray_constants(d);
  const double s = d.s(), sum = k.lambda + k.mu, ceiling = k.eta * sum;
  if (Phi.kind() == ApproxFn::Kind::power_law) {
    const double a1 = 1 - Phi.exponent();
    const double slope = ceiling / a1;
    const double intercept =
        2 * k.eta * (std::log(std::sqrt(s) * Phi.coefficient()) / a1 + std::log(std::sqrt(2 * s))) + C;
    return ApproxFn::affine(slope, intercept);
  }
  if (Phi.kind() != ApproxFn::Kind::tabulated) {
    throw DomainError("approx_to_height needs a power-law or tabulated approximating function");
  }
  if (!(Phi.domain_min() > 0)) throw DomainError("approx_to_height needs a table on positive x");
  auto xs = geometric_grid(Phi.domain_min(), Phi.domain_max(), kSamples);
  std::vector<double> ts(xs.size()), hs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ts[i] = -(2 / sum) * std::log(std::sqrt(s) * Phi(xs[i]) / xs[i]);
    hs[i] = 2 * k.eta * std::log(std::sqrt(2 * s) * xs[i]) + C;
    if (i == 0) continue;
    if (!(ts[i] > ts[i - 1])) {
      throw HypothesisViolation("phi is not increasing for x in " + range_text(xs[i - 1], xs[i]));
    }
    if (!(ceiling * ts[i] - hs[i] > ceiling * ts[i - 1] - hs[i - 1])) {
      throw HypothesisViolation("eta(lambda+mu) id - phi is not increasing for x in " + range_text(xs[i - 1], xs[i]));
    }
  }
  return ApproxFn::tabulated(std::move(ts), std::move(hs), Interpolation::linear);
}

ApproxFn height_to_approx(const ApproxFn& phi, const Dims& d, double C) {
  auto k = ray_constants(d);
  const double s = d.s(), sum = k.lambda + k.mu, ceiling = k.eta * sum;
  if (phi.direction() != Direction::increasing) {
    throw HypothesisViolation("height_to_approx needs a strictly increasing height function");
  }
  if (phi.kind() == ApproxFn::Kind::affine) {
    const double c = phi.slope(), b = phi.intercept() + C;
    if (!(c < ceiling)) {
      throw HypothesisViolation("slope " + std::to_string(c) + " >= eta(lambda+mu): the result is not approximating");
    }
    return ApproxFn::power_law(std::sqrt(s) * std::exp(sum * b / (2 * c)), 1 - ceiling / c);
  }
  if (phi.kind() != ApproxFn::Kind::tabulated) {
    throw DomainError("height_to_approx needs an affine or tabulated height function");
  }
  auto tgrid = linear_grid(phi.domain_min(), phi.domain_max(), kSamples);
  for (std::size_t i = 1; i < tgrid.size(); ++i) {
    if (!(ceiling * tgrid[i] - phi(tgrid[i]) > ceiling * tgrid[i - 1] - phi(tgrid[i - 1]))) {
      throw HypothesisViolation("eta(lambda+mu) id - phi is not increasing on " + range_text(tgrid[i - 1], tgrid[i]));
    }
  }
  const double x_lo = std::exp((phi(phi.domain_min()) + C) / (2 * k.eta));
  const double x_hi = std::exp((phi(phi.domain_max()) + C) / (2 * k.eta));
  auto xs = geometric_grid(x_lo, x_hi, kSamples);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double t = phi.inverse(2 * k.eta * std::log(xs[i]) - C);
    ys[i] = std::sqrt(s) * xs[i] * std::exp(-sum * t / 2);
  }
  auto out = ApproxFn::tabulated(std::move(xs), std::move(ys), Interpolation::log_log);
  if (out.direction() != Direction::decreasing) throw HypothesisViolation("Phi_2 is not decreasing");
  return out;
}

PipelineResult powerlaw_pipeline(double alpha, const Dims& d) {
  if (!(alpha >= 0) || std::isinf(alpha)) throw DomainError("alpha must be finite and non-negative");
  auto Phi = ApproxFn::power_law(1, -(d.m + alpha) / d.ell);
  auto phi = approx_to_height(Phi, d);
  auto psi = ray_transfer_16(phi, d);
  auto Psi = height_to_approx(psi, d);
  PipelineResult r;
  r.phi_slope = phi.slope();
  r.psi_slope = psi.slope();
  r.psi_exponent = Psi.exponent();
  r.beta = -d.m * r.psi_exponent - d.ell;
  const double closed = transfer_exponent(alpha, d);
  if (std::abs(r.beta - closed) > 1e-9 * std::max(1.0, std::abs(closed))) {
    throw InvariantViolation("pipeline exponent " + std::to_string(r.beta) + " differs from the closed form " +
                             std::to_string(closed));
  }
  return r;
}

}  // namespace cusplab
