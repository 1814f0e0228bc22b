#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cusplab/geometry.hpp"
#include "cusplab/lattice.hpp"

namespace cusplab::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Random real s x s matrix with entries in [-3, 3], rescaled to |det| = 1.
/// Ill-conditioned draws are rejected so lattice minima stay inside small boxes.
inline RealMatrix random_factor(Rng& rng, int s, double min_eigen = 0.01) {
  while (true) {
    RealMatrix b(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) b(i, j) = Real(uniform(rng, -3, 3));
    Real det = abs(determinant(b));
    if (det < Real("0.5")) continue;
    Real scale = pow(det, Real(-1) / s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) b(i, j) *= scale;
    if (determinant(b) < 0)
      for (int j = 0; j < s; ++j) b(0, j) = -b(0, j);
    auto q = SymmetricForm::from_factor(b);
    if (symmetric_eigenvalues(q.matrix()).front() < Real(min_eigen)) continue;
    return b;
  }
}

inline SymmetricForm random_form(Rng& rng, int s, double min_eigen = 0.01) {
  return SymmetricForm::from_factor(random_factor(rng, s, min_eigen));
}

/// Product of random elementary integer matrices: determinant exactly 1.
inline GroupElement random_unimodular(Rng& rng, int s, int steps = 6) {
  std::vector<IntVector> m(s, IntVector(s, 0));
  for (int i = 0; i < s; ++i) m[i][i] = 1;
  for (int k = 0; k < steps; ++k) {
    int i = static_cast<int>(uniform_int(rng, 0, s - 1));
    int j = static_cast<int>(uniform_int(rng, 0, s - 2));
    if (j >= i) ++j;
    std::int64_t f = uniform_int(rng, -2, 2);
    for (int r = 0; r < s; ++r) m[r][i] += f * m[r][j];
  }
  return GroupElement::from_integer_rows(m);
}

inline GroupElement random_group_element(Rng& rng, int s) {
  return GroupElement::from_matrix(random_factor(rng, s, 0.0));
}

inline double d(const Real& x) { return to_double(x); }

}  // namespace cusplab::testing
