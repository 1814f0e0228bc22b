#include "cusplab/dio_search.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "cusplab/error.hpp"
#include "cusplab/lattice.hpp"

namespace cusplab {

using boost::multiprecision::abs;
using boost::multiprecision::floor;
using boost::multiprecision::sqrt;

namespace {

Real round_half_even(const Real& x) {
  Real f = floor(x);
  Real diff = x - f;
  if (diff > Real(0.5)) return f + 1;
  if (diff < Real(0.5)) return f;
  return boost::multiprecision::fmod(f, Real(2)) == 0 ? f : f + 1;
}

std::int64_t to_int(const Real& x) {
  if (abs(x) >= Real(std::int64_t{1} << 62)) throw PrecisionExhausted("integer point exceeds the 62-bit range");
  return x.convert_to<std::int64_t>();
}

std::vector<Real> evaluate_forms(const LinearForms& L, const IntVector& q) {
  std::vector<Real> out(L.rows(), Real(0));
  for (int i = 0; i < L.rows(); ++i)
    for (int j = 0; j < L.cols(); ++j) out[i] += L(i, j) * q[j];
  return out;
}

Real residual_of(const std::vector<Real>& lq, const IntVector& p) {
  Real r = 0;
  for (std::size_t i = 0; i < lq.size(); ++i) r = std::max(r, Real(abs(lq[i] - p[i])));
  return r;
}

std::int64_t max_norm(const IntVector& v) {
  std::int64_t r = 0;
  for (auto x : v) r = std::max<std::int64_t>(r, std::llabs(x));
  return r;
}

bool primitive_pair(const IntVector& p, const IntVector& q) {
  IntVector all(p);
  all.insert(all.end(), q.begin(), q.end());
  return is_primitive(all);
}

// Visits the q with |q|_max = r whose leading nonzero entry is positive,
// in lexicographic order.
template <class F>
void visit_shell(int m, std::int64_t r, IntVector& q, int pos, bool hit, bool signed_done, const F& f) {
  if (pos == m) {
    if (hit) f(q);
    return;
  }
  std::int64_t lo = signed_done ? -r : 0;
  const bool last = pos == m - 1;
  for (std::int64_t v = lo; v <= r; ++v) {
    const bool at_r = std::llabs(v) == r;
    if (last && !hit && !at_r) {
      // Jump straight to the value r.
      if (v < r) v = r - 1;
      continue;
    }
    q[pos] = v;
    visit_shell(m, r, q, pos + 1, hit || at_r, signed_done || v != 0, f);
  }
  q[pos] = 0;
}

double parse_number(const std::string& s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("malformed number '" + s + "'");
  return v;
}

std::uint64_t parse_unsigned(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("malformed integer '" + s + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

Real frac_sqrt_prime(int index) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  Real r = sqrt(Real(primes[index % 20]));
  return r - floor(r);
}

}  // namespace

IntVector best_integer_point(const LinearForms& L, const IntVector& q) {
  if (static_cast<int>(q.size()) != L.cols()) throw DimensionError("q has the wrong length");
  auto lq = evaluate_forms(L, q);
  IntVector p(lq.size());
  for (std::size_t i = 0; i < lq.size(); ++i) p[i] = to_int(round_half_even(lq[i]));
  return p;
}

std::vector<PrimitiveSolution> enumerate_solutions(const LinearForms& L, const ApproxFn& phi, std::int64_t B,
                                                   const SearchOptions& opts) {
  if (B < 1) throw DomainError("search bound must be at least 1");
  const int ell = L.rows(), m = L.cols();
  std::vector<double> ld(static_cast<std::size_t>(ell) * m), labs_sum(ell, 0.0);
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < m; ++j) {
      ld[i * m + j] = to_double(L(i, j));
      labs_sum[i] += std::abs(ld[i * m + j]);
    }
  std::vector<PrimitiveSolution> out;
  IntVector q(m, 0);
  for (std::int64_t r = 1; r <= B; ++r) {
    const double bound = phi(static_cast<double>(r));
    const Real bound_real(bound);
    // Rounding error of the double evaluation of L q.
    double slop = 0;
    for (int i = 0; i < ell; ++i) slop = std::max(slop, 8 * std::numeric_limits<double>::epsilon() * labs_sum[i] * r);
    const std::size_t shell_start = out.size();
    visit_shell(m, r, q, 0, false, false, [&](const IntVector& qv) {
      for (int i = 0; i < ell; ++i) {
        double acc = 0;
        for (int j = 0; j < m; ++j) acc += ld[i * m + j] * static_cast<double>(qv[j]);
        if (std::abs(acc - std::nearbyint(acc)) > bound + slop) return;
      }
      auto lq = evaluate_forms(L, qv);
      if (!opts.all_p) {
        IntVector p(ell);
        for (int i = 0; i < ell; ++i) p[i] = to_int(round_half_even(lq[i]));
        Real res = residual_of(lq, p);
        if (res <= bound_real && primitive_pair(p, qv)) out.push_back({p, qv, res, Real(r)});
        return;
      }
      std::vector<std::int64_t> lo(ell), hi(ell);
      for (int i = 0; i < ell; ++i) {
        lo[i] = to_int(boost::multiprecision::ceil(lq[i] - bound_real));
        hi[i] = to_int(floor(lq[i] + bound_real));
        if (lo[i] > hi[i]) return;
      }
      IntVector p(lo);
      while (true) {
        if (primitive_pair(p, qv)) out.push_back({p, qv, residual_of(lq, p), Real(r)});
        int k = ell - 1;
        while (k >= 0 && p[k] == hi[k]) p[k] = lo[k], --k;
        if (k < 0) break;
        ++p[k];
      }
    });
    std::stable_sort(out.begin() + static_cast<std::ptrdiff_t>(shell_start), out.end(),
                     [](const auto& a, const auto& b) { return a.residual < b.residual; });
  }
  return out;
}

PresetSpec parse_preset(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  PresetSpec spec;
  auto params = [&]() {
    std::map<std::string, std::string> kv;
    if (rest.empty()) return kv;
    for (const auto& item : split_commas(rest)) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("preset parameter '" + item + "' lacks '='");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
  };
  if (kind == "golden" || kind == "identity") {
    if (!rest.empty()) throw ParseError("preset '" + kind + "' takes no parameters");
    spec.kind = kind == "golden" ? PresetKind::golden : PresetKind::identity;
  } else if (kind == "liouville") {
    spec.kind = PresetKind::liouville;
    for (const auto& [key, value] : params()) {
      if (key == "k") {
        auto k = parse_unsigned(value);
        if (k < 1 || k > 12) throw ParseError("liouville k must lie in [1, 12]");
        spec.k_max = static_cast<int>(k);
      } else if (key == "alpha") {
        double a = parse_number(value);
        if (!(a >= 0)) throw ParseError("liouville alpha must be non-negative");
        spec.designed_alpha = a;
      } else {
        throw ParseError("unknown liouville parameter '" + key + "'");
      }
    }
  } else if (kind == "random") {
    spec.kind = PresetKind::random;
    for (const auto& [key, value] : params()) {
      if (key != "seed") throw ParseError("unknown random parameter '" + key + "'");
      spec.seed = parse_unsigned(value);
    }
  } else if (kind == "rational") {
    spec.kind = PresetKind::rational;
    if (rest.empty()) throw ParseError("rational preset needs entries");
    auto forms = LinearForms::parse(1, static_cast<int>(split_commas(rest).size()), split_commas(rest));
    if (!forms.is_rational()) throw ParseError("rational preset entries must be integers or a/b");
    for (int j = 0; j < forms.cols(); ++j) spec.table.push_back(forms.rational(0, j));
  } else {
    throw ParseError("unknown preset '" + kind + "'");
  }
  return spec;
}

std::vector<int> liouville_exponents(const PresetSpec& spec, const Dims& d) {
  std::vector<int> n;
  if (spec.designed_alpha) {
    const double growth = 1 + (d.m + *spec.designed_alpha) / d.ell;
    n.push_back(1);
    while (static_cast<int>(n.size()) < spec.k_max) {
      double next = std::ceil(n.back() * growth) + 1;
      if (next > 1e6) throw DomainError("liouville exponents grow past the supported range");
      n.push_back(static_cast<int>(next));
    }
  } else {
    long f = 1;
    for (int k = 1; k <= spec.k_max; ++k) {
      f *= k;
      if (f > 1'000'000) throw DomainError("liouville exponents grow past the supported range");
      n.push_back(static_cast<int>(f));
    }
  }
  return n;
}

LinearForms make_preset(const PresetSpec& spec, const Dims& d) {
  const int ell = d.ell, m = d.m;
  switch (spec.kind) {
    case PresetKind::golden:
      if (ell != 1 || m != 1) throw DimensionError("golden preset is defined at (ell, m) = (1, 1)");
      return LinearForms::from_reals(1, 1, {(1 + sqrt(Real(5))) / 2});
    case PresetKind::identity:
      return LinearForms::zero(ell, m);
    case PresetKind::rational:
      if (static_cast<int>(spec.table.size()) != ell * m) {
        throw DimensionError("rational preset has " + std::to_string(spec.table.size()) + " entries, expected " +
                             std::to_string(ell * m));
      }
      return LinearForms::from_rationals(ell, m, spec.table);
    case PresetKind::liouville: {
      Real x = 0;
      for (int n : liouville_exponents(spec, d)) x += boost::multiprecision::ldexp(Real(1), -n);
      std::vector<Real> values;
      int extra = 0;
      for (int i = 0; i < ell; ++i)
        for (int j = 0; j < m; ++j) values.push_back(j == 0 ? Real(x * (i + 1)) : frac_sqrt_prime(extra++));
      return LinearForms::from_reals(ell, m, std::move(values));
    }
    case PresetKind::random: {
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> u(0, 1);
      std::vector<Real> values;
      for (int k = 0; k < ell * m; ++k) values.push_back(Real(u(rng)));
      return LinearForms::from_reals(ell, m, std::move(values));
    }
  }
  throw DomainError("unknown preset");
}

CorrespondenceReport correspondence_check(const LinearForms& L, const std::vector<PrimitiveSolution>& solutions,
                                          HeightKind k, const ApproxFn& phi, double C) {
  CorrespondenceReport report;
  report.k = k;
  report.slack = 1e-6 + C;
  if (L.is_rational()) {
    report.divergent = true;
    return report;
  }
  const auto u = embed_L(L);
  const WeylConstants w(u.s(), u.m);
  const Real& eta = w.eta();
  const Real alpha = k == HeightKind::one ? w.alpha1() : w.alpha_top();
  for (const auto& sol : solutions) {
    CorrespondenceEntry e;
    e.solution = sol;
    // For k = one the solution is (p, q) of L; for k = top it is (b, a) of L^T.
    const IntVector& var = sol.q;
    const IntVector& val = sol.p;
    Real norm2 = 0;
    for (auto x : var) norm2 += Real(x) * x;
    double target = to_double(eta * log(2 * norm2));  // 2 eta ln(sqrt2 |q|_e)
    try {
      e.t = phi.inverse(target);
      e.in_range = std::isfinite(e.t) && e.t >= 0;
    } catch (const DomainError&) {
      e.in_range = false;
    }
    IntVector neg(val.size());
    for (std::size_t i = 0; i < val.size(); ++i) neg[i] = -val[i];
    // A: the contracting part |N q - p|^2 (or |N^T a - b|^2), B: the norm of q (or a).
    Real A = 0;
    if (k == HeightKind::one) {
      auto lq = evaluate_forms(L, var);
      for (std::size_t i = 0; i < lq.size(); ++i) A += (lq[i] - val[i]) * (lq[i] - val[i]);
    } else {
      auto mt = evaluate_forms(L.transpose(), var);
      for (std::size_t i = 0; i < mt.size(); ++i) A += (mt[i] - val[i]) * (mt[i] - val[i]);
    }
    auto height_at = [&](const Real& t) {
      return k == HeightKind::one ? -vector_height(u, t, neg, var) : -dual_vector_height(u, t, var, neg);
    };
    if (e.in_range) {
      e.height = to_double(height_at(Real(e.t)));
      e.margin = e.height - (to_double(alpha) * e.t - phi(e.t));
      e.certified = e.margin >= -report.slack;
    }
    if (A > 0) {
      auto peak = k == HeightKind::one ? peak_time(A, norm2, w.lambda_m(), w.mu_m())
                                       : peak_time(A, norm2, w.mu_m(), w.lambda_m());
      e.peak_t = to_double(peak.t);
      e.peak_height = to_double(-eta * log(peak.value));
      e.peak_margin = e.peak_height - (to_double(alpha) * e.peak_t - phi(e.peak_t));
    } else {
      e.peak_t = e.peak_height = e.peak_margin = std::numeric_limits<double>::infinity();
    }
    if (!e.in_range) {
      ++report.out_of_range;
    } else if (e.certified) {
      ++report.certified;
    } else {
      report.all_certified = false;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::vector<ExcursionSolution> excursion_solutions(const LinearForms& L, const std::vector<ExcursionRecord>& records,
                                                   const ApproxFn& phi) {
  const Dims d(L.rows(), L.cols());
  const auto Phi2 = height_to_approx(phi, d);
  std::vector<ExcursionSolution> out;
  for (const auto& rec : records) {
    const auto& w = rec.witness;
    IntVector first(w.begin(), w.begin() + d.ell), second(w.begin() + d.ell, w.end());
    IntVector p, q;
    LinearForms forms;
    if (rec.k == HeightKind::one) {
      // Witness (p', q) with p' + N q small: the solution is (-p', q).
      q = second;
      for (auto x : first) p.push_back(-x);
      forms = L;
    } else {
      // Witness (a, b) with b - N^T a small: a solution of L^T.
      q = first;
      p = second;
      forms = L.transpose();
    }
    if (max_norm(q) == 0) continue;
    auto canon = canonical_sign(q);
    if (canon != q) {
      q = canon;
      for (auto& x : p) x = -x;
    }
    ExcursionSolution es;
    es.record = rec;
    es.solution = PrimitiveSolution{p, q, residual_of(evaluate_forms(forms, q), p), Real(max_norm(q))};
    try {
      es.bound = Phi2(to_double(es.solution.qnorm));
      es.ok = to_double(es.solution.residual) <= es.bound * (1 + 1e-9);
    } catch (const DomainError&) {
      es.bound = std::numeric_limits<double>::quiet_NaN();
      es.ok = false;
    }
    out.push_back(std::move(es));
  }
  return out;
}

}  // namespace cusplab
