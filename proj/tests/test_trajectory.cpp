#include <catch_amalgamated.hpp>

#include <cmath>

#include "cusplab/dio_search.hpp"
#include "cusplab/error.hpp"
#include "cusplab/trajectory.hpp"
#include "support.hpp"

using namespace cusplab;
using namespace cusplab::testing;
using Catch::Approx;

namespace {

UnipotentParam golden() { return embed_L(make_preset(parse_preset("golden"), {1, 1})); }

UnipotentParam random_unipotent(Rng& rng, int ell, int m) {
  std::vector<Real> v;
  for (int k = 0; k < ell * m; ++k) v.push_back(Real(uniform(rng, -2, 2)));
  return embed_L(LinearForms::from_reals(ell, m, v));
}

IntVector random_vector(Rng& rng, int n, int r) {
  IntVector v(n);
  for (auto& x : v) x = uniform_int(rng, -r, r);
  return v;
}

}  // namespace

TEST_CASE("embeddings", "[trajectory]") {
  auto id = embed_L(LinearForms::zero(2, 3));
  CHECK(id.ell == 2);
  CHECK(id.m == 3);
  CHECK(form_at(id, Real(0)).form.matrix() == RealMatrix::identity(5));

  Real x("0.37");
  auto u = embed_L(LinearForms::from_reals(1, 1, {x}));
  auto f = form_at(u, Real(0)).factor;
  CHECK(f(0, 0) == 1);
  CHECK(f(0, 1) == x);
  CHECK(f(1, 0) == 0);
  CHECK(f(1, 1) == 1);

  auto m = embed_M(LinearForms::from_reals(2, 1, {Real(3), Real(5)}));
  CHECK(m.ell == 1);
  CHECK(m.m == 2);
  CHECK(m.N(0, 0) == 3);
  CHECK(m.N(0, 1) == 5);

  Rng rng(43);
  for (int k = 0; k < 10; ++k) {
    auto L = random_unipotent(rng, 1 + k % 3, 1 + k % 2).N;
    CHECK(embed_M(L.transpose()) == embed_L(L));
    CHECK(embed_M(embed_L(L).N.transpose()) == embed_L(L));
  }
}

TEST_CASE("forms along the ray", "[trajectory]") {
  auto id = embed_L(LinearForms::zero(1, 2));
  auto q = form_at(id, Real(7)).form;
  auto ray = singular_ray(2, Real(7), 3);
  for (int i = 0; i < 3; ++i) CHECK(d(abs(q.matrix()(i, i) - ray.matrix()(i, i))) < 1e-30);

  auto g = form_at(golden(), Real(1)).form;
  CHECK(d(g(IntVector{-2, 1})) == Approx(0.78896667943716313).epsilon(1e-15));

  // Factors square to the form and its dual.
  Rng rng(47);
  for (int k = 0; k < 10; ++k) {
    auto u = random_unipotent(rng, 1 + k % 2, 1 + k % 3);
    auto fa = form_at(u, Real(uniform(rng, 0, 15)));
    auto dual = dual_form(fa.form);
    auto yy = fa.dual_factor.transpose() * fa.dual_factor;
    for (int i = 0; i < u.s(); ++i)
      for (int j = 0; j < u.s(); ++j)
        CHECK(d(abs(yy(i, j) - dual.matrix()(i, j))) < 1e-15 * (1 + d(abs(yy(i, j)))));
  }
}

TEST_CASE("closed-form heights", "[trajectory]") {
  auto id2 = embed_L(LinearForms::zero(1, 1));
  CHECK(d(vector_height(id2, Real(3), {0}, {1})) == Approx(-3).epsilon(1e-25));
  CHECK(d(vector_height(golden(), Real(0), {-3}, {2})) == Approx(1.9800831534068736).epsilon(1e-15));
  auto id3 = embed_L(LinearForms::zero(1, 2));
  CHECK(d(dual_vector_height(id3, Real(10), {1}, {0, 0})) == Approx(-10).epsilon(1e-25));
  CHECK_THROWS_AS(vector_height(id3, Real(1), {0}, {0, 0}), DomainError);

  Rng rng(53);
  for (int k = 0; k < 200; ++k) {
    int ell = 1 + k % 3, m = 1 + (k / 3) % 3;
    auto u = random_unipotent(rng, ell, m);
    Real t(uniform(rng, 0, 20));
    auto a = random_vector(rng, ell, 4), b = random_vector(rng, m, 4);
    if (gcd_of(a) == 0 && gcd_of(b) == 0) b[0] = 1;
    auto form = form_at(u, t).form;
    IntVector ab(a);
    ab.insert(ab.end(), b.begin(), b.end());
    IntVector nab(ab);
    for (int i = 0; i < ell; ++i) nab[i] = -nab[i];
    CHECK(d(abs(vector_height(u, t, a, b) - busemann_vector(ab, form))) < 1e-10);
    CHECK(d(abs(dual_vector_height(u, t, a, b) - busemann_dual(nab, form))) < 1e-10);
  }
}

TEST_CASE("peak times", "[trajectory]") {
  auto p = peak_time(Real(2), Real(2), Real(1), Real(1));
  CHECK(p.t == 0);
  CHECK(p.value == 4);

  Real x = (1 + sqrt(Real(5))) / 2;
  Real A = (2 * x - 3) * (2 * x - 3), B(4);
  Real r = 1 / sqrt(Real(2));
  auto g = peak_time(A, B, r, r);
  CHECK(d(g.t) == Approx(3.0218670115893484).epsilon(1e-14));
  CHECK(d(g.value) == Approx(0.94427190999915879).epsilon(1e-14));
  CHECK(d(-sqrt(Real(2)) * log(g.value)) == Approx(0.081092581183706826).epsilon(1e-13));

  // Grid-search oracle on random instances with unequal rates.
  Rng rng(59);
  for (int k = 0; k < 20; ++k) {
    double a = uniform(rng, 1e-4, 1), b = uniform(rng, 1, 10), gr = uniform(rng, 0.2, 1.5), de = uniform(rng, 0.2, 1.5);
    auto pk = peak_time(Real(a), Real(b), Real(gr), Real(de));
    double best = 1e300, best_t = 0;
    for (int i = 0; i <= 200000; ++i) {
      double t = 40.0 * i / 200000;
      double v = std::exp(gr * t) * a + std::exp(-de * t) * b;
      if (v < best) best = v, best_t = t;
    }
    CHECK(d(pk.value) <= best);
    CHECK(d(pk.value) == Approx(best).epsilon(1e-7));
    CHECK(d(pk.t) == Approx(best_t).margin(1e-3));
  }
  CHECK_THROWS_AS(peak_time(Real(0), Real(1), Real(1), Real(1)), DomainError);
}

TEST_CASE("identity trajectory slopes", "[trajectory]") {
  auto u = embed_L(LinearForms::zero(1, 2));
  auto trace = trace_heights(u, uniform_grid(20, 20));
  REQUIRE(trace.size() == 21);
  for (const auto& s : trace) {
    CHECK(s.h1 == Approx(0.5 * s.t).margin(1e-12));
    CHECK(s.hTop == Approx(s.t).margin(1e-12));
  }
  auto one = height_sample(u, Real(2));
  CHECK(one.h1 == Approx(1.0).epsilon(1e-15));
  CHECK(one.hTop == Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(trace_heights(u, {1.0, 0.5}), DomainError);
}

TEST_CASE("golden trajectory stays low", "[trajectory]") {
  auto u = golden();
  auto trace = trace_heights(u, uniform_grid(40, 400));
  double top = -1e9;
  for (const auto& s : trace) top = std::max(top, s.h1);
  // Oracle: peaks of the convergents, -sqrt2 ln(2 q |q x - p|) at t = sqrt2 ln(q / |q x - p|).
  const double x = (1 + std::sqrt(5.0)) / 2;
  double oracle = 0;
  long a = 1, b = 1;
  while (b < 2'000'000) {
    double r = std::abs(b * x - static_cast<double>(a + b));
    double t = std::sqrt(2.0) * std::log(b / r);
    if (t <= 40) oracle = std::max(oracle, -std::sqrt(2.0) * std::log(2 * b * r));
    long next = a + b;
    a = b;
    b = next;
  }
  CHECK(top <= 0.5);
  CHECK(top == Approx(oracle).epsilon(1e-6));
}

TEST_CASE("Liouville trajectory has a deep excursion", "[trajectory]") {
  auto u = embed_L(make_preset(parse_preset("liouville"), {1, 1}));
  auto trace = trace_heights(u, uniform_grid(40, 400));
  const HeightSample* best = &trace.front();
  for (const auto& s : trace)
    if (s.h1 > best->h1) best = &s;
  CHECK(best->h1 >= 10);
  CHECK(best->witness1 == IntVector{49, -64});
  // Peak value sqrt2 ln(1 / (2 * 64 * |64 x - 49|)) with 64 x - 49 = 2^-18.
  CHECK(best->h1 == Approx(std::sqrt(2.0) * std::log(std::pow(2.0, 18) / 128)).epsilon(1e-6));

  auto records = excursion_membership(trace, u, HeightKind::one, ApproxFn::affine(0.9, 0));
  CHECK(records.size() >= 2);
  for (const auto& r : records) CHECK(r.margin == Approx(r.height - (r.t_peak - 0.9 * r.t_peak)).margin(1e-12));
}

TEST_CASE("excursion membership", "[trajectory]") {
  auto id = embed_L(LinearForms::zero(1, 2));
  auto recs = excursion_membership(id, HeightKind::one, ApproxFn::affine(0, 1), 10, 20);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].t_peak == 10);
  CHECK(recs[0].margin == Approx(1).margin(1e-12));

  auto g = excursion_membership(golden(), HeightKind::one, ApproxFn::affine(0.1, 0), 40, 400);
  for (const auto& r : g) CHECK(r.t_peak < 5);
}

TEST_CASE("rational matrices diverge with a constant offset", "[trajectory]") {
  auto u = embed_L(make_preset(parse_preset("rational:1/3"), {1, 1}));
  auto off = divergence_offsets(u);
  CHECK(d(off.one) == Approx(-std::sqrt(2.0) * std::log(9.0)).epsilon(1e-14));
  CHECK(d(off.top) == Approx(-std::sqrt(2.0) * std::log(9.0)).epsilon(1e-14));
  auto s = height_sample(u, Real(40));
  CHECK(s.h1 - 40 == Approx(d(off.one)).margin(1e-9));
  CHECK(s.hTop - 40 == Approx(d(off.top)).margin(1e-9));

  auto v = embed_L(LinearForms::from_rationals(1, 2, {Rational::make(1, 2), Rational::make(1, 3)}));
  auto ov = divergence_offsets(v);
  WeylConstants w(3, 2);
  // q = (2, 0) or (0, 3) ... the smallest q with q1/2 + q2/3 integral is (2, 0) or (-2, 3): |q|^2 = 4.
  CHECK(d(ov.one) == Approx(-d(w.eta()) * std::log(4.0)).epsilon(1e-14));
  // a = 6 is the smallest with (a/2, a/3) integral.
  CHECK(d(ov.top) == Approx(-d(w.eta()) * std::log(36.0)).epsilon(1e-14));
  auto sv = height_sample(v, Real(40));
  CHECK(sv.h1 - d(w.alpha1()) * 40 == Approx(d(ov.one)).margin(1e-6));
  CHECK(sv.hTop - d(w.alpha_top()) * 40 == Approx(d(ov.top)).margin(1e-6));

  CHECK_THROWS_AS(divergence_offsets(golden()), DomainError);
  CHECK(d(divergence_offsets(embed_L(LinearForms::zero(2, 2))).one) == 0);
}

TEST_CASE("two-path height equality along traces", "[trajectory][property]") {
  Rng rng(61);
  for (int k = 0; k < 6; ++k) {
    auto u = random_unipotent(rng, 1 + k % 2, 1 + (k / 2) % 2);
    auto trace = trace_heights(u, uniform_grid(40, 40));
    for (const auto& s : trace) CHECK(two_path_discrepancy(u, s) < 1e-8);
  }
}

TEST_CASE("transpose gives the identical trace", "[trajectory]") {
  auto L = make_preset(parse_preset("random:seed=5"), {1, 2});
  auto a = trace_heights(embed_L(L), uniform_grid(20, 40));
  auto b = trace_heights(embed_M(L.transpose()), uniform_grid(20, 40));
  CHECK(a == b);
}

TEST_CASE("safe time horizon", "[trajectory]") {
  CHECK(safe_t_max(1, 1, 128) == Approx(88 * std::log(2.0) / std::sqrt(2.0)));
  CHECK(safe_t_max(1, 2, 128) > 40);
  CHECK(safe_t_max(2, 3, 128) > 40);
  CHECK(safe_t_max(1, 1, 64) < 40);
}
