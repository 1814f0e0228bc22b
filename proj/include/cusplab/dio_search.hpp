#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cusplab/approx.hpp"
#include "cusplab/linear_forms.hpp"
#include "cusplab/trajectory.hpp"
#include "cusplab/transference.hpp"

namespace cusplab {

/// A primitive pair (p, q) with residual |L q - p|_max and |q|_max.
struct PrimitiveSolution {
  IntVector p;
  IntVector q;
  Real residual;
  Real qnorm;
  friend bool operator==(const PrimitiveSolution&, const PrimitiveSolution&) = default;
};

struct SearchOptions {
  /// Report every p within the bound, not only the nearest integer point.
  bool all_p = false;
};

/// All primitive (p, q) with 0 < |q|_max <= B and |L q - p|_max <= phi(|q|_max),
/// q with positive leading entry, sorted by |q|_max then residual.
std::vector<PrimitiveSolution> enumerate_solutions(const LinearForms& L, const ApproxFn& phi, std::int64_t B,
                                                   const SearchOptions& opts = {});

/// Coordinatewise nearest integer to L q, ties to even.
IntVector best_integer_point(const LinearForms& L, const IntVector& q);

enum class PresetKind { golden, liouville, rational, identity, random };

struct PresetSpec {
  PresetKind kind = PresetKind::identity;
  int k_max = 4;                         // liouville: number of terms
  std::optional<double> designed_alpha;  // liouville: gap sequence for this exponent
  std::vector<Rational> table;           // rational: row-major entries
  std::uint64_t seed = 0;                // random
};

/// Parses "golden", "identity", "liouville[:k=K][,alpha=A]",
/// "rational:a/b,c/d,..." or "random[:seed=S]".
PresetSpec parse_preset(const std::string& text);

/// golden: [(1+sqrt5)/2], only at (1,1).
/// liouville: column 0 of row i is (i+1) x with x = sum_k 2^{-n_k}, n_k = k!
///   or, with a designed exponent, n_1 = 1 and n_{k+1} = ceil(n_k (1 + (m+alpha)/ell)) + 1;
///   other columns are fractional parts of square roots of primes.
/// rational: the exact table. identity: the zero matrix (rational).
/// random: seeded uniform entries in [0, 1).
LinearForms make_preset(const PresetSpec& spec, const Dims& d);

/// The exponents n_k of the Liouville construction.
std::vector<int> liouville_exponents(const PresetSpec& spec, const Dims& d);

struct CorrespondenceEntry {
  PrimitiveSolution solution;
  bool in_range = false;  // phi^{-1} defined and t >= 0
  double t = 0;           // phi^{-1}(2 eta ln(sqrt2 |q|_e))
  double height = 0;      // -f at t
  double margin = 0;      // height - (alpha_k t - phi(t))
  bool certified = false; // margin >= -slack
  double peak_t = 0;      // peak of this vector's height
  double peak_height = 0;
  double peak_margin = 0;
};

struct ExcursionSolution {
  ExcursionRecord record;
  PrimitiveSolution solution;  // the witness read as a solution
  double bound = 0;            // Phi_2(|q|_max)
  bool ok = false;
};

struct CorrespondenceReport {
  HeightKind k = HeightKind::one;
  bool divergent = false;  // rational input: routed to the divergence branch
  double slack = 0;
  std::vector<CorrespondenceEntry> entries;
  std::size_t certified = 0;
  std::size_t out_of_range = 0;
  bool all_certified = true;
  std::vector<ExcursionSolution> excursions;
  bool all_excursions_ok = true;
};

/// For k = one the solutions are pairs (p, q) of L; for k = top they are
/// pairs (b, a) of M = L^T, as returned by enumerate_solutions(L^T, ...).
/// Each solution is tested as an excursion of the ray of embed_L(L) at
/// t = phi^{-1}(2 eta ln(sqrt2 |q|_e)), with slack 1e-6 + C.
CorrespondenceReport correspondence_check(const LinearForms& L, const std::vector<PrimitiveSolution>& solutions,
                                          HeightKind k, const ApproxFn& phi, double C = 0);

/// Reads excursion witnesses as solutions and checks them against
/// Phi_2 = height_to_approx(phi).
std::vector<ExcursionSolution> excursion_solutions(const LinearForms& L, const std::vector<ExcursionRecord>& records,
                                                   const ApproxFn& phi);

}  // namespace cusplab
