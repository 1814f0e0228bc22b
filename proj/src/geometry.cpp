#include "cusplab/geometry.hpp"

#include <string>

#include "cusplab/error.hpp"

namespace cusplab {

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::sqrt;

namespace {

Real eta_for(int s) { return sqrt(Real(s) / Real(s - 1)); }

void check_det_one(const Real& det, const char* what) {
  if (abs(det - 1) > det_tolerance()) {
    throw NumericalBreakdown(std::string(what) + ": determinant " + format_real(det, 30) +
                             " differs from 1 beyond tolerance");
  }
}

void check_nonzero(std::span<const Real> v) {
  for (const auto& x : v)
    if (x != 0) return;
  throw DomainError("Busemann function of the zero vector");
}

}  // namespace

SymmetricForm SymmetricForm::identity(int s) {
  if (s < 2) throw DimensionError("dimension must be at least 2");
  return SymmetricForm(RealMatrix::identity(s));
}

SymmetricForm SymmetricForm::diagonal(std::span<const Real> entries) {
  return from_matrix(RealMatrix::diagonal(entries));
}

SymmetricForm SymmetricForm::from_matrix(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("form matrix must be square");
  if (m.rows() < 2) throw DimensionError("dimension must be at least 2");
  RealMatrix sym = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j) {
      Real avg = (m(i, j) + m(j, i)) / 2;
      sym(i, j) = avg;
      sym(j, i) = avg;
    }
  auto l = cholesky_lower(sym);
  Real det = 1;
  for (int i = 0; i < sym.rows(); ++i) det *= l(i, i) * l(i, i);
  check_det_one(det, "form");
  return SymmetricForm(std::move(sym));
}

SymmetricForm SymmetricForm::from_factor(const RealMatrix& y) {
  if (y.rows() != y.cols()) throw DimensionError("factor must be square");
  if (y.rows() < 2) throw DimensionError("dimension must be at least 2");
  Real det = determinant(y);
  check_det_one(det * det, "factored form");
  const int n = y.rows();
  RealMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Real acc = 0;
      for (int k = 0; k < n; ++k) acc += y(k, i) * y(k, j);
      g(i, j) = acc;
      g(j, i) = acc;
    }
  cholesky_lower(g);
  return SymmetricForm(std::move(g));
}

Real SymmetricForm::operator()(std::span<const Real> v) const {
  if (static_cast<int>(v.size()) != dim()) throw DimensionError("vector size differs from form dimension");
  return quadratic_value(matrix_, v);
}

Real SymmetricForm::operator()(const IntVector& v) const {
  auto r = to_real(v);
  return (*this)(r);
}

GroupElement GroupElement::identity(int s) { return GroupElement(RealMatrix::identity(s)); }

GroupElement GroupElement::from_matrix(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("group element must be square");
  check_det_one(determinant(m), "group element");
  return GroupElement(m);
}

GroupElement GroupElement::from_integer_rows(const std::vector<IntVector>& rows) {
  const int n = static_cast<int>(rows.size());
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw DimensionError("integer matrix must be square");
    for (int j = 0; j < n; ++j) m(i, j) = Real(rows[i][j]);
  }
  // Integer entries: the LU determinant is exact up to rounding far below 1/2.
  Real det = determinant(m);
  if (abs(det - 1) > Real("1e-6")) throw DomainError("integer matrix does not have determinant 1");
  return GroupElement(std::move(m));
}

SymmetricForm act(const SymmetricForm& q, const GroupElement& b) {
  if (q.dim() != b.dim()) throw DimensionError("act: form and group element dimensions differ");
  return SymmetricForm::from_matrix(b.matrix().transpose() * q.matrix() * b.matrix());
}

Real distance(const SymmetricForm& q1, const SymmetricForm& q2) {
  if (q1.dim() != q2.dim()) throw DimensionError("distance: dimensions differ");
  const int n = q1.dim();
  auto l = cholesky_lower(q1.matrix());
  // X = L^{-1} M2, then C = L^{-1} X^T = L^{-1} M2 L^{-T}.
  RealMatrix x(n, n);
  for (int j = 0; j < n; ++j) {
    auto col = solve_lower(l, q2.matrix().column(j));
    for (int i = 0; i < n; ++i) x(i, j) = col[i];
  }
  auto xt = x.transpose();
  RealMatrix c(n, n);
  for (int j = 0; j < n; ++j) {
    auto col = solve_lower(l, xt.column(j));
    for (int i = 0; i < n; ++i) c(i, j) = col[i];
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Real avg = (c(i, j) + c(j, i)) / 2;
      c(i, j) = avg;
      c(j, i) = avg;
    }
  Real acc = 0;
  for (const auto& ev : symmetric_eigenvalues(c)) {
    if (!(ev > 0)) throw NumericalBreakdown("distance: non-positive generalized eigenvalue");
    Real lg = log(ev);
    acc += lg * lg;
  }
  return sqrt(acc);
}

SymmetricForm dual_form(const SymmetricForm& q) { return SymmetricForm::from_matrix(inverse(q.matrix())); }

Real busemann_vector(std::span<const Real> v, const SymmetricForm& q) {
  check_nonzero(v);
  return eta_for(q.dim()) * log(q(v));
}

Real busemann_vector(const IntVector& v, const SymmetricForm& q) {
  auto r = to_real(v);
  return busemann_vector(std::span<const Real>(r), q);
}

Real busemann_dual(std::span<const Real> v, const SymmetricForm& q) {
  check_nonzero(v);
  return busemann_vector(v, dual_form(q));
}

Real busemann_dual(const IntVector& v, const SymmetricForm& q) {
  auto r = to_real(v);
  return busemann_dual(std::span<const Real>(r), q);
}

Real busemann_wall(int i, const SymmetricForm& q) {
  const int s = q.dim();
  if (i < 1 || i > s - 1) throw DomainError("wall index out of range");
  RealMatrix block(i, i);
  for (int a = 0; a < i; ++a)
    for (int b = 0; b < i; ++b) block(a, b) = q.matrix()(s - i + a, s - i + b);
  return sqrt(Real(s) / Real((s - i) * i)) * log(determinant(block));
}

SymmetricForm singular_ray(int i, const Real& t, int s) {
  WeylConstants w(s, 1);
  if (i < 1 || i > s - 1) throw DomainError("wall index out of range");
  std::vector<Real> d(s);
  for (int k = 0; k < s; ++k) d[k] = k < s - i ? exp(w.lambda(i) * t) : exp(-w.mu(i) * t);
  return SymmetricForm::diagonal(d);
}

WeylConstants::WeylConstants(int s, int m) : s_(s), m_(m) {
  if (s < 2) throw DimensionError("dimension must be at least 2");
  if (m < 1 || m > s - 1) throw DomainError("distinguished index must lie in [1, s-1]");
  eta_ = eta_for(s);
  lambda_.resize(s);
  mu_.resize(s);
  v_.resize(s);
  for (int i = 1; i <= s - 1; ++i) {
    lambda_[i] = sqrt(Real(i) / Real(s * (s - i)));
    mu_[i] = sqrt(Real(s - i) / Real(s * i));
    std::vector<Real> v(s);
    for (int k = 0; k < s; ++k) v[k] = k < s - i ? lambda_[i] : Real(-mu_[i]);
    v_[i] = std::move(v);
  }
  alpha1_ = eta_ * mu_[m];
  alpha_top_ = eta_ * lambda_[m];
}

void WeylConstants::check_index(int i) const {
  if (i < 1 || i > s_ - 1) throw DomainError("Weyl index out of range");
}

const Real& WeylConstants::lambda(int i) const {
  check_index(i);
  return lambda_[i];
}

const Real& WeylConstants::mu(int i) const {
  check_index(i);
  return mu_[i];
}

const std::vector<Real>& WeylConstants::v(int i) const {
  check_index(i);
  return v_[i];
}

ChamberPoint ChamberPoint::from_coordinates(std::vector<Real> t) {
  if (t.size() < 2) throw DimensionError("chamber point needs at least 2 coordinates");
  Real sum = 0, scale = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    sum += t[k];
    if (abs(t[k]) > scale) scale = abs(t[k]);
    if (k > 0 && t[k] > t[k - 1]) throw DomainError("chamber coordinates must be non-increasing");
  }
  if (abs(sum) > det_tolerance() * (scale + 1)) throw DomainError("chamber coordinates must sum to zero");
  return ChamberPoint(std::move(t));
}

ChamberPoint ChamberPoint::origin(int s) { return from_coordinates(std::vector<Real>(s, Real(0))); }

SymmetricForm ChamberPoint::as_form() const {
  std::vector<Real> d;
  d.reserve(t_.size());
  for (const auto& x : t_) d.push_back(exp(x));
  return SymmetricForm::diagonal(d);
}

Real chamber_height(int i, const ChamberPoint& p) { return chamber_height(i, p, WeylConstants(p.dim(), 1)); }

Real chamber_height(int i, const ChamberPoint& p, const WeylConstants& weyl) {
  if (weyl.s() != p.dim()) throw DimensionError("chamber point and Weyl constants differ in dimension");
  return -dot(p.coordinates(), weyl.v(i));
}

ChamberPoint horosphere_vertex(int i, const Real& c, int s) {
  WeylConstants w(s, 1);
  Real ti = c / dot(w.v(i), w.v(s - 1));
  std::vector<Real> t(s);
  for (int k = 0; k < s; ++k) t[k] = ti * w.v(i)[k];
  return ChamberPoint::from_coordinates(std::move(t));
}

}  // namespace cusplab
