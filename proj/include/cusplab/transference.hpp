#pragma once

#include <utility>

#include "cusplab/approx.hpp"

namespace cusplab {

/// ell linear forms in m variables; s = ell + m.
struct Dims {
  int ell = 1;
  int m = 1;

  Dims() = default;
  Dims(int ell_, int m_);
  int s() const { return ell + m; }
};

/// Chamber constants of the ray r_m in double precision.
struct RayConstants {
  double eta;
  double lambda;  // lambda_m
  double mu;      // mu_m
  double alpha1;  // eta mu_m
  double alpha_top;  // eta lambda_m
};

RayConstants ray_constants(const Dims& d);

/// m / ell, the exponent in |q|_max^{-m/ell}.
double dirichlet_exponent(const Dims& d);

/// psi = F o G^{-1} with F(x) = (s-1) x^{(1-ell)/(s-1)} phi(x)^{ell/(s-1)} and
/// G(x) = (s-1) x^{m/(s-1)} phi(x)^{(1-m)/(s-1)}. Exact for power laws;
/// tables give a table over G of the table range.
ApproxFn transfer_FG(const ApproxFn& phi, const Dims& d);

/// beta = ell alpha / (m (m + ell - 1) + (m - 1) alpha).
double transfer_exponent(double alpha, const Dims& d);

struct KhintchineBounds {
  double lower;
  double upper;
};

/// (omega / (n^2 + (n-1) omega), omega); omega may be +infinity.
KhintchineBounds khintchine_bounds(double omega, int n);

/// psi(t) = eta (lambda - mu/(s-1)) t + phi(t)/(s-1) + C. phi may be constant.
/// Unbounded non-affine inputs are tabulated on [0, t_max].
ApproxFn ray_transfer_16(const ApproxFn& phi, const Dims& d, double C = 0, double t_max = 1000);

/// phi(t) = eta (mu - lambda/(s-1)) t + psi(t)/(s-1) + C.
ApproxFn ray_transfer_17(const ApproxFn& psi, const Dims& d, double C = 0, double t_max = 1000);

/// Phi -> phi solving Phi(x) = x e^{-((lambda+mu)/2) phi^{-1}(2 eta ln(sqrt(2s) x))} / sqrt(s),
/// shifted by C. Power laws give affine maps; tables give tables in t.
/// Throws HypothesisViolation unless phi and eta(lambda+mu) id - phi increase.
ApproxFn approx_to_height(const ApproxFn& Phi, const Dims& d, double C = 0);

/// phi -> Phi_2(x) = sqrt(s) x e^{-((lambda+mu)/2) phi^{-1}(2 eta ln x)}, with
/// phi shifted by C. Affine phi gives a power law.
ApproxFn height_to_approx(const ApproxFn& phi, const Dims& d, double C = 0);

struct PipelineResult {
  double beta;
  double psi_exponent;
  double phi_slope;   // slope of the height function of L
  double psi_slope;   // slope after the ray transfer
};

/// Phi = x^{-(m+alpha)/ell} -> phi -> ray transfer -> Psi; beta solves
/// Psi exponent = -(ell + beta)/m.
PipelineResult powerlaw_pipeline(double alpha, const Dims& d);

}  // namespace cusplab
