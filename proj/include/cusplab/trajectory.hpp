#pragma once

#include <vector>

#include "cusplab/approx.hpp"
#include "cusplab/geometry.hpp"
#include "cusplab/lattice.hpp"
#include "cusplab/linear_forms.hpp"

namespace cusplab {

/// The unipotent [[Id_ell, N], [0, Id_m]] of U_+(r_m).
struct UnipotentParam {
  int ell = 1;
  int m = 1;
  LinearForms N;

  int s() const { return ell + m; }
  friend bool operator==(const UnipotentParam&, const UnipotentParam&) = default;
};

/// N = L for an ell x m matrix L.
UnipotentParam embed_L(const LinearForms& L);
/// N = M^T for an m x ell matrix M.
UnipotentParam embed_M(const LinearForms& M);

/// Q_t = u^T D(t) u, D(t) = diag(e^{lambda t} x ell, e^{-mu t} x m), with the
/// factors Y = D^{1/2} u and Y* = D^{-1/2} u^{-T} (Q_t = Y^T Y, Q_t* = Y*^T Y*).
struct FormAt {
  RealMatrix factor;
  RealMatrix dual_factor;
  SymmetricForm form;
};

FormAt form_at(const UnipotentParam& u, const Real& t);

/// eta ln(e^{lambda t} |p + N q|^2 + e^{-mu t} |q|^2).
Real vector_height(const UnipotentParam& u, const Real& t, const IntVector& p, const IntVector& q);

/// eta ln(e^{-lambda t} |a|^2 + e^{mu t} |N^T a + b|^2). This is the dual
/// Busemann function at the vector (-a, b).
Real dual_vector_height(const UnipotentParam& u, const Real& t, const IntVector& a, const IntVector& b);

struct PeakTime {
  Real t;
  Real value;
};

/// Minimizes g(t) = e^{grow t} A + e^{-decay t} B over t >= 0:
/// t* = ln(decay B / (grow A)) / (grow + decay), clamped at 0.
PeakTime peak_time(const Real& A, const Real& B, const Real& grow, const Real& decay);

enum class HeightKind { one, top };

struct HeightSample {
  double t = 0;
  double h1 = 0;    // -f_1 = -eta ln lambda_1(Q_t)
  double hTop = 0;  // -f_{s-1} = -eta ln lambda_1(Q_t*)
  IntVector witness1;
  IntVector witnessTop;
  friend bool operator==(const HeightSample&, const HeightSample&) = default;
};

/// One sample, computed from the factored forms.
HeightSample height_sample(const UnipotentParam& u, const Real& t);

/// Heights along an ascending grid, plus the peak times of every witness
/// that lie inside the grid range. Result sorted by t without duplicates.
std::vector<HeightSample> trace_heights(const UnipotentParam& u, const std::vector<double>& grid);

/// n + 1 equally spaced points on [0, t_max].
std::vector<double> uniform_grid(double t_max, int n);

struct ExcursionRecord {
  double t_peak = 0;
  HeightKind k = HeightKind::one;
  double height = 0;
  IntVector witness;
  double margin = 0;  // height - (alpha_k t_peak - phi(t_peak))
  friend bool operator==(const ExcursionRecord&, const ExcursionRecord&) = default;
};

/// Local maxima of h_k (endpoints included) with h_k >= alpha_k t - phi(t).
std::vector<ExcursionRecord> excursion_membership(const std::vector<HeightSample>& trace, const UnipotentParam& u,
                                                  HeightKind k, const ApproxFn& phi);
std::vector<ExcursionRecord> excursion_membership(const UnipotentParam& u, HeightKind k, const ApproxFn& phi,
                                                  double t_max, int samples = 400);

/// Largest t for which the entries of Q_t stay resolvable with 40 bits to
/// spare: (bits - 40) ln 2 / (lambda + mu).
double safe_t_max(int ell, int m, unsigned bits);

/// Limits of h1 - alpha_1 t and hTop - alpha_{s-1} t for rational N:
/// -eta ln min |q|^2 over q != 0 with N q integral, and -eta ln min |a|^2
/// over a != 0 with N^T a integral.
struct DivergenceOffsets {
  Real one;
  Real top;
};
DivergenceOffsets divergence_offsets(const UnipotentParam& u);

/// Largest discrepancy between the stored heights of a sample, the closed
/// forms at its witnesses, and the Busemann functions of the assembled form.
double two_path_discrepancy(const UnipotentParam& u, const HeightSample& sample);

}  // namespace cusplab
