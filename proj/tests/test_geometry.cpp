#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

#include "cusplab/error.hpp"
#include "cusplab/geometry.hpp"
#include "support.hpp"

using namespace cusplab;
using namespace cusplab::testing;
using Catch::Approx;

namespace {

Real e_pow(double x) { return exp(Real(x)); }

IntVector unit(int s, int k) {
  IntVector v(s, 0);
  v[k] = 1;
  return v;
}

}  // namespace

TEST_CASE("act on the identity form", "[geometry]") {
  auto id = SymmetricForm::identity(2);
  RealMatrix b = RealMatrix::identity(2);
  b(0, 1) = 1;
  auto q = act(id, GroupElement::from_matrix(b));
  CHECK(q.matrix()(0, 0) == 1);
  CHECK(q.matrix()(0, 1) == 1);
  CHECK(q.matrix()(1, 0) == 1);
  CHECK(q.matrix()(1, 1) == 2);

  Rng rng(11);
  auto r = random_form(rng, 3);
  CHECK(act(r, GroupElement::identity(3)).matrix() == r.matrix());

  // A rotation stabilizes the identity form.
  RealMatrix rot(2, 2);
  Real c = cos(Real("0.7")), s = sin(Real("0.7"));
  rot(0, 0) = c;
  rot(0, 1) = -s;
  rot(1, 0) = s;
  rot(1, 1) = c;
  auto fixed = act(id, GroupElement::from_matrix(rot));
  CHECK(d(distance(fixed, id)) == Approx(0).margin(1e-20));
}

TEST_CASE("dimension and domain errors", "[geometry]") {
  CHECK_THROWS_AS(act(SymmetricForm::identity(2), GroupElement::identity(3)), DimensionError);
  CHECK_THROWS_AS(busemann_vector(IntVector{0, 0}, SymmetricForm::identity(2)), DomainError);
  CHECK_THROWS_AS(busemann_wall(3, SymmetricForm::identity(3)), DomainError);
  CHECK_THROWS_AS(singular_ray(0, Real(1), 3), DomainError);
  RealMatrix bad = RealMatrix::identity(2);
  bad(0, 0) = 2;
  CHECK_THROWS_AS(SymmetricForm::from_matrix(bad), NumericalBreakdown);
  RealMatrix indef = RealMatrix::identity(2);
  indef(0, 0) = -1;
  indef(1, 1) = -1;
  CHECK_THROWS_AS(SymmetricForm::from_matrix(indef), NumericalBreakdown);
}

TEST_CASE("distance examples", "[geometry]") {
  auto id = SymmetricForm::identity(2);
  std::vector<Real> diag{e_pow(2), e_pow(-2)};
  CHECK(d(distance(id, id)) == Approx(0).margin(1e-30));
  CHECK(d(distance(id, SymmetricForm::diagonal(diag))) == Approx(2 * std::sqrt(2.0)).epsilon(1e-15));
  RealMatrix m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 1;
  CHECK(d(distance(id, SymmetricForm::from_matrix(m))) == Approx(1.3610725787472008).epsilon(1e-15));
}

TEST_CASE("dual form", "[geometry]") {
  auto id = SymmetricForm::identity(3);
  CHECK(dual_form(id).matrix() == id.matrix());
  std::vector<Real> diag{Real(4), Real(1) / 4};
  auto dual = dual_form(SymmetricForm::diagonal(diag));
  CHECK(dual.matrix()(0, 0) == Real(1) / 4);
  CHECK(dual.matrix()(1, 1) == 4);

  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    auto q = random_form(rng, 2 + k % 4);
    auto back = dual_form(dual_form(q));
    for (int i = 0; i < q.dim(); ++i)
      for (int j = 0; j < q.dim(); ++j) CHECK(d(abs(back.matrix()(i, j) - q.matrix()(i, j))) < 1e-12);
  }
}

TEST_CASE("Busemann function of a vector", "[geometry]") {
  CHECK(d(busemann_vector(unit(3, 2), SymmetricForm::identity(3))) == Approx(0).margin(1e-30));
  for (double t : {0.0, 1.0, 5.0}) {
    CHECK(d(busemann_vector(unit(2, 1), singular_ray(1, Real(t), 2))) == Approx(-t).margin(1e-25));
  }
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    auto q = random_form(rng, 3);
    IntVector v{uniform_int(rng, -5, 5), uniform_int(rng, -5, 5), 1};
    IntVector v2{2 * v[0], 2 * v[1], 2};
    Real diff = busemann_vector(v2, q) - busemann_vector(v, q);
    CHECK(d(diff) == Approx(2 * std::sqrt(1.5) * std::log(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("dual Busemann function", "[geometry]") {
  CHECK(d(busemann_dual(unit(3, 0), SymmetricForm::identity(3))) == Approx(0).margin(1e-30));
  for (double t : {0.0, 1.0, 5.0}) {
    CHECK(d(busemann_dual(unit(2, 0), singular_ray(1, Real(t), 2))) == Approx(-t).margin(1e-25));
  }
  for (double t : {1.0, 5.0}) {
    CHECK(d(busemann_dual(unit(3, 0), singular_ray(2, Real(t), 3))) == Approx(-t).margin(1e-25));
  }
}

TEST_CASE("wall Busemann functions", "[geometry]") {
  for (int i = 1; i <= 3; ++i) {
    CHECK(d(busemann_wall(i, SymmetricForm::identity(4))) == Approx(0).margin(1e-30));
    CHECK(d(busemann_wall(i, singular_ray(i, Real(3), 4))) == Approx(-3).epsilon(1e-20));
  }
  Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    int s = 2 + k % 4;
    auto q = random_form(rng, s);
    CHECK(d(abs(busemann_wall(1, q) - busemann_vector(unit(s, s - 1), q))) < 1e-10);
    CHECK(d(abs(busemann_wall(s - 1, q) - busemann_dual(unit(s, 0), q))) < 1e-10);
  }
}

TEST_CASE("singular rays", "[geometry]") {
  CHECK(singular_ray(2, Real(0), 4).matrix() == RealMatrix::identity(4));
  auto r = singular_ray(1, Real(1), 3);
  CHECK(d(log(r.matrix()(0, 0))) == Approx(0.40824829046386302).epsilon(1e-15));
  CHECK(d(log(r.matrix()(1, 1))) == Approx(0.40824829046386302).epsilon(1e-15));
  CHECK(d(log(r.matrix()(2, 2))) == Approx(-0.81649658092772603).epsilon(1e-15));
  CHECK(d(distance(SymmetricForm::identity(5), singular_ray(2, Real("7.5"), 5))) == Approx(7.5).epsilon(1e-10));
  CHECK(d(distance(singular_ray(3, Real(2), 5), singular_ray(3, Real("4.25"), 5))) == Approx(2.25).epsilon(1e-20));
}

TEST_CASE("Weyl constants", "[geometry]") {
  for (int s = 2; s <= 7; ++s) {
    WeylConstants w(s, 1);
    for (int i = 1; i < s; ++i) {
      CHECK(d(squared_norm(w.v(i))) == Approx(1).epsilon(1e-30));
      CHECK(d((s - i) * w.lambda(i) - i * w.mu(i)) == Approx(0).margin(1e-30));
      CHECK(d(dot(w.v(i), w.v(1))) == Approx(std::sqrt(double(s - i) / (i * (s - 1)))).epsilon(1e-12));
      CHECK(d(dot(w.v(i), w.v(s - 1))) == Approx(std::sqrt(double(i) / ((s - i) * (s - 1)))).epsilon(1e-12));
    }
  }
  WeylConstants w(3, 2);
  CHECK(d(w.alpha1()) == Approx(0.5).epsilon(1e-30));
  CHECK(d(w.alpha_top()) == Approx(1.0).epsilon(1e-30));
  CHECK(d(w.alpha1()) == Approx(d(dot(w.v(1), w.v(2)))).epsilon(1e-30));
  CHECK_THROWS_AS(WeylConstants(3, 3), DomainError);
  CHECK_THROWS_AS(w.lambda(0), DomainError);
}

TEST_CASE("chamber heights", "[geometry]") {
  CHECK(d(chamber_height(1, ChamberPoint::origin(4))) == 0);
  auto v1 = horosphere_vertex(1, Real(1), 3);
  auto v2 = horosphere_vertex(2, Real(1), 3);
  CHECK(d(chamber_height(2, v1)) == Approx(-1).epsilon(1e-30));
  // The vertex on r_i has height -f_1 = c (s/i - 1).
  CHECK(d(chamber_height(1, v1)) == Approx(-2).epsilon(1e-30));
  CHECK(d(chamber_height(1, v2)) == Approx(-0.5).epsilon(1e-30));

  WeylConstants w(4, 1);
  std::vector<Real> t;
  for (const auto& x : w.v(1)) t.push_back(Real(3) * x);
  CHECK(d(chamber_height(1, ChamberPoint::from_coordinates(t))) == Approx(-3).epsilon(1e-30));

  CHECK_THROWS_AS(ChamberPoint::from_coordinates({Real(0), Real(1), Real(-1)}), DomainError);
  CHECK_THROWS_AS(ChamberPoint::from_coordinates({Real(1), Real(0)}), DomainError);
}

TEST_CASE("chamber and wall heights agree on diagonal forms", "[geometry]") {
  Rng rng(13);
  for (int k = 0; k < 200; ++k) {
    int s = 2 + k % 5;
    std::vector<double> raw(s);
    for (auto& x : raw) x = uniform(rng, -4, 4);
    std::sort(raw.begin(), raw.end(), std::greater<>());
    double mean = 0;
    for (auto x : raw) mean += x / s;
    std::vector<Real> t;
    for (auto x : raw) t.push_back(Real(x) - Real(mean));
    Real sum = 0;
    for (const auto& x : t) sum += x;
    t.back() -= sum;
    auto p = ChamberPoint::from_coordinates(t);
    auto q = p.as_form();
    Real eta = sqrt(Real(s) / Real(s - 1));
    CHECK(d(abs(busemann_wall(1, q) - eta * t.back())) < 1e-20);
    CHECK(d(abs(busemann_wall(s - 1, q) + eta * t.front())) < 1e-20);
    CHECK(d(abs(busemann_wall(1, q) - chamber_height(1, p))) < 1e-20);
    CHECK(d(abs(busemann_wall(s - 1, q) - chamber_height(s - 1, p))) < 1e-20);
    Real h1 = chamber_height(1, p), htop = chamber_height(s - 1, p);
    CHECK(d((s - 1) * htop - h1) <= 1e-20);
    CHECK(d(h1 - htop / (s - 1)) <= 1e-20);
  }
}

TEST_CASE("Busemann functions are 1-Lipschitz", "[geometry][property]") {
  Rng rng(17);
  for (int k = 0; k < 500; ++k) {
    int s = 2 + k % 3;
    auto q1 = random_form(rng, s, 0.0);
    auto q2 = random_form(rng, s, 0.0);
    Real dist = distance(q1, q2);
    IntVector v(s);
    for (auto& x : v) x = uniform_int(rng, -3, 3);
    if (gcd_of(v) == 0) v[0] = 1;
    int i = static_cast<int>(uniform_int(rng, 1, s - 1));
    CHECK(d(abs(busemann_vector(v, q1) - busemann_vector(v, q2)) - dist) <= 1e-9);
    CHECK(d(abs(busemann_dual(v, q1) - busemann_dual(v, q2)) - dist) <= 1e-9);
    CHECK(d(abs(busemann_wall(i, q1) - busemann_wall(i, q2)) - dist) <= 1e-9);
  }
}

TEST_CASE("distance is a G-invariant metric", "[geometry][property]") {
  Rng rng(19);
  for (int k = 0; k < 100; ++k) {
    int s = 2 + k % 3;
    auto a = random_form(rng, s, 0.0), b = random_form(rng, s, 0.0), c = random_form(rng, s, 0.0);
    auto g = random_group_element(rng, s);
    Real dab = distance(a, b);
    CHECK(d(abs(distance(act(a, g), act(b, g)) - dab)) < 1e-9);
    CHECK(d(abs(distance(b, a) - dab)) < 1e-20);
    CHECK(d(dab - distance(a, c) - distance(c, b)) <= 1e-20);
  }
}
