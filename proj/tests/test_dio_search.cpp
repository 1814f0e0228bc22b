#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <tuple>

#include "cusplab/dio_search.hpp"
#include "cusplab/error.hpp"
#include "support.hpp"

using namespace cusplab;
using namespace cusplab::testing;
using Catch::Approx;

namespace {

LinearForms one_by_one(const Real& x) { return LinearForms::from_reals(1, 1, {x}); }

// Convergents p/q of x with q <= bound, by the continued-fraction recursion.
std::vector<std::pair<long, long>> convergents(double x, long bound) {
  std::vector<std::pair<long, long>> out;
  long p0 = 1, q0 = 0, p1 = static_cast<long>(std::floor(x)), q1 = 1;
  double r = x - std::floor(x);
  out.push_back({p1, q1});
  while (r > 1e-12) {
    double inv = 1 / r;
    long a = static_cast<long>(std::floor(inv));
    r = inv - a;
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > bound) break;
    out.push_back({p2, q2});
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
  }
  return out;
}

using Key = std::tuple<IntVector, IntVector>;

// Every primitive (p, q) with 0 < |q|_max <= B and canonical q. Since phi <= 2 here,
// each p_i lies within 2 of (L q)_i, so a window of width 5 per row is exhaustive.
std::set<Key> naive_solutions(const LinearForms& L, const ApproxFn& phi, int B, bool all_p) {
  const int ell = L.rows(), m = L.cols();
  REQUIRE(phi(1.0) <= 2);
  std::set<Key> out;
  IntVector q(m, -B);
  while (true) {
    std::int64_t qn = 0;
    for (auto x : q) qn = std::max<std::int64_t>(qn, std::llabs(x));
    if (qn > 0 && canonical_sign(q) == q) {
      Real bound(phi(static_cast<double>(qn)));
      IntVector centre(ell);
      for (int i = 0; i < ell; ++i) {
        double acc = 0;
        for (int j = 0; j < m; ++j) acc += d(L(i, j)) * q[j];
        centre[i] = static_cast<std::int64_t>(std::llround(acc));
      }
      IntVector off(ell, -4);
      while (true) {
        IntVector p(ell);
        Real res = 0;
        for (int i = 0; i < ell; ++i) {
          p[i] = centre[i] + off[i];
          Real acc = -Real(p[i]);
          for (int j = 0; j < m; ++j) acc += L(i, j) * q[j];
          res = std::max(res, Real(abs(acc)));
        }
        IntVector all(p);
        all.insert(all.end(), q.begin(), q.end());
        if (res <= bound && is_primitive(all) && (all_p || p == best_integer_point(L, q))) out.insert({p, q});
        int k = ell - 1;
        while (k >= 0 && off[k] == 4) off[k--] = -4;
        if (k < 0) break;
        ++off[k];
      }
    }
    int k = m - 1;
    while (k >= 0 && q[k] == B) q[k--] = -B;
    if (k < 0) break;
    ++q[k];
  }
  return out;
}

}  // namespace

TEST_CASE("best integer point", "[dio]") {
  CHECK(best_integer_point(LinearForms::zero(2, 1), {5}) == IntVector{0, 0});
  CHECK(best_integer_point(one_by_one(Real("1.5")), {1}) == IntVector{2});
  CHECK(best_integer_point(one_by_one(Real("2.5")), {1}) == IntVector{2});
  CHECK(best_integer_point(one_by_one(Real("-0.5")), {1}) == IntVector{0});
  auto golden = make_preset(parse_preset("golden"), {1, 1});
  CHECK(best_integer_point(golden, {8}) == IntVector{13});
}

TEST_CASE("presets", "[dio]") {
  auto g = make_preset(parse_preset("golden"), {1, 1});
  CHECK(d(g(0, 0)) == Approx(1.6180339887498949).epsilon(1e-16));
  CHECK_THROWS_AS(make_preset(parse_preset("golden"), {1, 2}), DimensionError);

  auto l = make_preset(parse_preset("liouville:k=4"), {1, 1});
  Real expected = Real(1) / 2 + Real(1) / 4 + Real(1) / 64 + boost::multiprecision::ldexp(Real(1), -24);
  CHECK(l(0, 0) == expected);
  CHECK_FALSE(l.is_rational());

  auto r = make_preset(parse_preset("rational:1/3"), {1, 1});
  CHECK(r.is_rational());
  CHECK(r.rational(0, 0) == Rational{1, 3});
  CHECK(r(0, 0) == Real(1) / 3);
  CHECK_THROWS_AS(make_preset(parse_preset("rational:1/3,1/2"), {1, 1}), DimensionError);

  auto a = make_preset(parse_preset("random:seed=9"), {2, 2});
  auto b = make_preset(parse_preset("random:seed=9"), {2, 2});
  CHECK(a == b);
  CHECK_FALSE(a == make_preset(parse_preset("random:seed=10"), {2, 2}));

  auto designed = liouville_exponents(parse_preset("liouville:k=4,alpha=2"), {1, 2});
  CHECK(designed == std::vector<int>{1, 6, 31, 156});
  CHECK(liouville_exponents(parse_preset("liouville:k=5"), {1, 1}) == std::vector<int>{1, 2, 6, 24, 120});

  CHECK(make_preset(parse_preset("identity"), {2, 3}) == LinearForms::zero(2, 3));
  CHECK_THROWS_AS(parse_preset("golden:k=2"), ParseError);
  CHECK_THROWS_AS(parse_preset("liouville:q=2"), ParseError);
  CHECK_THROWS_AS(parse_preset("rational:0.5"), ParseError);
  CHECK_THROWS_AS(parse_preset("spiral"), ParseError);
}

TEST_CASE("matrix text parsing", "[dio]") {
  int ell = 0, m = 0;
  auto r = parse_matrix_text("2 2\n1/3 -2\n0 5/7\n", &ell, &m);
  CHECK(ell == 2);
  CHECK(m == 2);
  CHECK(r.is_rational());
  CHECK(r.rational(1, 1) == Rational{5, 7});
  auto f = parse_matrix_text("1 2\n0.25 1/3\n");
  CHECK_FALSE(f.is_rational());
  CHECK(f(0, 0) == Real("0.25"));
  CHECK(f(0, 1) == Real(1) / 3);
  CHECK_THROWS_AS(parse_matrix_text("1 2\n0.25\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_text("2 1\n0.25\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_text("x 1\n0.25\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_text("1 1\nabc\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_text("1 1\n1/0\n"), ParseError);
}

TEST_CASE("solutions of the zero matrix", "[dio]") {
  auto sols = enumerate_solutions(LinearForms::zero(1, 1), ApproxFn::power_law(1, -1), 5);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].p == IntVector{0});
  CHECK(sols[0].q == IntVector{1});
  CHECK(sols[0].residual == 0);
}

TEST_CASE("golden ratio solutions are its convergents", "[dio]") {
  auto L = make_preset(parse_preset("golden"), {1, 1});
  auto sols = enumerate_solutions(L, ApproxFn::power_law(1, -1), 100);
  auto cf = convergents((1 + std::sqrt(5.0)) / 2, 100);
  // The first convergent 1/1 is not the nearest integer point of q = 1.
  cf.erase(cf.begin());
  REQUIRE(sols.size() == cf.size());
  for (std::size_t i = 0; i < cf.size(); ++i) {
    CHECK(sols[i].p == IntVector{cf[i].first});
    CHECK(sols[i].q == IntVector{cf[i].second});
    CHECK(d(sols[i].residual * sols[i].qnorm) <= 1);
  }
  CHECK(sols.back().q == IntVector{89});
}

TEST_CASE("search matches the naive oracle", "[dio][oracle]") {
  Rng rng(67);
  for (int k = 0; k < 6; ++k) {
    int ell = 1 + k % 2, m = 1 + (k / 2) % 2;
    auto L = make_preset(parse_preset("random:seed=" + std::to_string(100 + k)), {ell, m});
    int B = m == 1 ? 2000 : 60;
    auto phi = ApproxFn::power_law(1.5, -static_cast<double>(m) / ell);
    for (bool all_p : {false, true}) {
      auto sols = enumerate_solutions(L, phi, B, {all_p});
      std::set<Key> got;
      for (const auto& s : sols) {
        got.insert({s.p, s.q});
        Real res = 0;
        for (int i = 0; i < ell; ++i) {
          Real acc = -Real(s.p[i]);
          for (int j = 0; j < m; ++j) acc += L(i, j) * s.q[j];
          res = std::max(res, Real(abs(acc)));
        }
        CHECK(d(abs(res - s.residual)) < 1e-12);
        CHECK(s.residual <= Real(phi(d(s.qnorm))));
      }
      CHECK(got.size() == sols.size());
      CHECK(got == naive_solutions(L, phi, B, all_p));
      for (std::size_t i = 1; i < sols.size(); ++i) {
        bool ordered = sols[i - 1].qnorm < sols[i].qnorm ||
                       (sols[i - 1].qnorm == sols[i].qnorm && sols[i - 1].residual <= sols[i].residual);
        CHECK(ordered);
      }
    }
  }
}

TEST_CASE("Dirichlet guarantees solutions", "[dio]") {
  Rng rng(71);
  int empty = 0;
  for (int k = 0; k < 100; ++k) {
    auto L = LinearForms::from_reals(1, 2, {Real(uniform(rng, 0, 1)), Real(uniform(rng, 0, 1))});
    if (enumerate_solutions(L, ApproxFn::power_law(1, -2), 1000).empty()) ++empty;
  }
  CHECK(empty == 0);
}

TEST_CASE("correspondence with excursions", "[dio]") {
  Dims d11(1, 1);
  auto phi = approx_to_height(ApproxFn::power_law(1, -1), d11);

  auto golden = make_preset(parse_preset("golden"), d11);
  auto gsols = enumerate_solutions(golden, ApproxFn::power_law(1, -1), 100);
  auto rep = correspondence_check(golden, gsols, HeightKind::one, phi);
  CHECK_FALSE(rep.divergent);
  CHECK(rep.entries.size() == gsols.size());
  CHECK(rep.all_certified);
  for (const auto& e : rep.entries)
    if (e.in_range) CHECK(e.margin >= 0);

  auto zero = correspondence_check(LinearForms::zero(1, 1), {}, HeightKind::one, phi);
  CHECK(zero.divergent);

  auto liou = make_preset(parse_preset("liouville"), d11);
  auto lsols = enumerate_solutions(liou, ApproxFn::power_law(1, -1), 100);
  auto lrep = correspondence_check(liou, lsols, HeightKind::one, ApproxFn::affine(0.9, 0));
  bool found = false;
  for (const auto& e : lrep.entries) {
    if (e.solution.q == IntVector{64}) {
      found = true;
      CHECK(e.solution.p == IntVector{49});
      CHECK(e.certified);
      CHECK(e.peak_margin > 5);
    }
  }
  CHECK(found);
}

TEST_CASE("excursion witnesses are solutions", "[dio]") {
  Dims d11(1, 1);
  auto phi = ApproxFn::affine(0.9, 0);
  auto liou = make_preset(parse_preset("liouville"), d11);
  auto u = embed_L(liou);
  auto trace = trace_heights(u, uniform_grid(40, 400));
  for (auto k : {HeightKind::one, HeightKind::top}) {
    auto recs = excursion_membership(trace, u, k, phi);
    auto sols = excursion_solutions(liou, recs, phi);
    CHECK_FALSE(sols.empty());
    for (const auto& s : sols) CHECK(s.ok);
  }
}

TEST_CASE("transposed solutions are dual excursions", "[dio]") {
  Dims d(1, 2);
  auto L = make_preset(parse_preset("random:seed=3"), d);
  auto M = L.transpose();
  auto Psi = ApproxFn::power_law(1, -static_cast<double>(d.ell) / d.m);
  auto sols = enumerate_solutions(M, Psi, 2000);
  REQUIRE_FALSE(sols.empty());
  auto rep = correspondence_check(L, sols, HeightKind::top, approx_to_height(Psi, Dims(d.m, d.ell)));
  CHECK(rep.all_certified);
  CHECK(rep.certified + rep.out_of_range == sols.size());
  CHECK(rep.certified > 0);
}
