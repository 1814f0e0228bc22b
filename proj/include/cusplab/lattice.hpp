#pragma once

#include <cstdint>
#include <vector>

#include "cusplab/geometry.hpp"
#include "cusplab/linalg.hpp"
#include "cusplab/real.hpp"

namespace cusplab {

enum class MinimumMethod { enumeration, brute_force };

/// First minimum of a form over Z^s \ {0}, in the quadratic-value
/// convention (min Q(v), not its square root).
struct MinimumCertificate {
  Real value;
  IntVector witness;  // primitive, leading nonzero entry positive
  MinimumMethod method = MinimumMethod::enumeration;
  bool certified = true;
  std::int64_t nodes = 0;
};

/// LLL-reduced basis (columns) together with the unimodular integer
/// transform U such that reduced = input * U.
struct ReducedBasis {
  RealMatrix basis;
  std::vector<IntVector> transform;  // transform[j] is column j of U
};

struct EnumerationOptions {
  double delta = 0.99;
  std::int64_t node_budget = 50'000'000;
};

/// LLL reduction of the lattice spanned by the columns of `basis`.
/// Throws DomainError on a singular basis and PrecisionExhausted when the
/// Gram-Schmidt data or the integer transform leave the representable range.
ReducedBasis lll_reduce(const RealMatrix& basis, double delta = 0.99);
RealMatrix reduce_basis(const RealMatrix& basis);

/// Exact min |Y v|^2 over nonzero integer v: LLL, then complete
/// enumeration inside the radius of the first reduced vector. On budget
/// exhaustion the best vector found is returned with certified = false.
MinimumCertificate shortest_vector(const RealMatrix& basis, const EnumerationOptions& opts = {});

/// First minimum of Q, via its Cholesky factor.
MinimumCertificate shortest_value(const SymmetricForm& q, const EnumerationOptions& opts = {});

/// eta * ln lambda_1(Q). Throws BudgetExceeded if the minimum is not certified.
Real height_one(const SymmetricForm& q);

/// eta * ln lambda_1(Q*).
Real height_top(const SymmetricForm& q);

/// Same heights from a factor Y (Q = Y^T Y) and its dual factor, without
/// assembling Q.
Real height_from_basis(const RealMatrix& basis, int s);

struct CovolumeMinimum {
  Real value;         // minimal squared Q-covolume of Z^s intersected with w^perp
  IntVector normal;   // the minimizing primitive normal w
  bool certified = false;
};

/// Minimal squared covolume, with respect to Q, of the hyperplane sublattices
/// Z^s cap w^perp over primitive normals with |w|_max <= bound, computed from
/// Gram determinants of explicit integer kernel bases. `certified` holds when
/// no normal outside the box can do better. Requires s <= 4.
CovolumeMinimum hyperplane_covolume_min(const SymmetricForm& q, int bound);

/// Exhaustive minimum over 0 < |v|_max <= box. A double-precision sweep
/// collects near-minimal candidates, which are then re-evaluated at working
/// precision. Requires s <= 4.
MinimumCertificate brute_force_minimum(const SymmetricForm& q, int box);

/// Integer basis (as columns) of Z^s cap w^perp for primitive w.
std::vector<IntVector> hyperplane_kernel_basis(const IntVector& w);

std::int64_t gcd_of(const IntVector& v);
bool is_primitive(const IntVector& v);

/// Flips the sign so the leading nonzero entry is positive.
IntVector canonical_sign(IntVector v);

}  // namespace cusplab
