#include "cusplab/linalg.hpp"

#include <algorithm>
#include <utility>

#include "cusplab/error.hpp"

namespace cusplab {

using boost::multiprecision::abs;
using boost::multiprecision::sqrt;

RealMatrix::RealMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Real(0)) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix size");
}

RealMatrix RealMatrix::identity(int n) {
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RealMatrix RealMatrix::diagonal(std::span<const Real> d) {
  const int n = static_cast<int>(d.size());
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<Real> RealMatrix::column(int j) const {
  std::vector<Real> c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  RealMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Real acc = 0;
      for (int k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

std::vector<Real> operator*(const RealMatrix& a, std::span<const Real> v) {
  if (a.cols() != static_cast<int>(v.size())) throw DimensionError("matrix-vector product: size mismatch");
  std::vector<Real> out(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    Real acc = 0;
    for (int k = 0; k < a.cols(); ++k) acc += a(i, k) * v[k];
    out[i] = acc;
  }
  return out;
}

std::vector<Real> to_real(const IntVector& v) {
  std::vector<Real> out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(x);
  return out;
}

Real dot(std::span<const Real> a, std::span<const Real> b) {
  if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
  Real acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Real squared_norm(std::span<const Real> a) { return dot(a, a); }

Real quadratic_value(const RealMatrix& m, std::span<const Real> v) {
  auto mv = m * v;
  return dot(v, mv);
}

Real quadratic_value(const RealMatrix& m, const IntVector& v) {
  auto r = to_real(v);
  return quadratic_value(m, r);
}

RealMatrix cholesky_lower(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("cholesky: matrix not square");
  const int n = m.rows();
  RealMatrix l(n, n);
  for (int j = 0; j < n; ++j) {
    Real d = m(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0)) throw NumericalBreakdown("cholesky: matrix is not positive definite");
    l(j, j) = sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      Real acc = m(i, j);
      for (int k = 0; k < j; ++k) acc -= l(i, k) * l(j, k);
      l(i, j) = acc / l(j, j);
    }
  }
  return l;
}

Real determinant(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant: matrix not square");
  const int n = m.rows();
  RealMatrix a = m;
  Real det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (abs(a(r, c)) > abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0) return Real(0);
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a(c, k), a(piv, k));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      Real f = a(r, c) / a(c, c);
      for (int k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

RealMatrix inverse(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse: matrix not square");
  const int n = m.rows();
  RealMatrix a = m;
  RealMatrix inv = RealMatrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (abs(a(r, c)) > abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0) throw NumericalBreakdown("inverse: matrix is singular at working precision");
    if (piv != c)
      for (int k = 0; k < n; ++k) {
        std::swap(a(c, k), a(piv, k));
        std::swap(inv(c, k), inv(piv, k));
      }
    Real p = a(c, c);
    for (int k = 0; k < n; ++k) {
      a(c, k) /= p;
      inv(c, k) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Real f = a(r, c);
      for (int k = 0; k < n; ++k) {
        a(r, k) -= f * a(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

std::vector<Real> symmetric_eigenvalues(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("eigenvalues: matrix not square");
  const int n = m.rows();
  RealMatrix a = m;
  Real scale = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale += a(i, j) * a(i, j);
  const Real eps = boost::multiprecision::ldexp(Real(1), -2 * static_cast<int>(precision_bits()));
  for (int sweep = 0; sweep < 100; ++sweep) {
    Real off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off <= eps * scale) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0) continue;
        // Rotation zeroing a(p,q), in the stable tangent form.
        Real theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        Real t = (theta >= 0 ? Real(1) : Real(-1)) / (abs(theta) + sqrt(theta * theta + 1));
        Real c = 1 / sqrt(t * t + 1);
        Real s = t * c;
        for (int k = 0; k < n; ++k) {
          Real akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          Real apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<Real> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<Real> solve_lower(const RealMatrix& l, std::span<const Real> b) {
  const int n = l.rows();
  if (static_cast<int>(b.size()) != n) throw DimensionError("solve_lower: size mismatch");
  std::vector<Real> x(n);
  for (int i = 0; i < n; ++i) {
    Real acc = b[i];
    for (int k = 0; k < i; ++k) acc -= l(i, k) * x[k];
    x[i] = acc / l(i, i);
  }
  return x;
}

}  // namespace cusplab
