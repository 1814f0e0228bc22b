#pragma once

#include <span>
#include <vector>

#include "cusplab/linalg.hpp"
#include "cusplab/real.hpp"

namespace cusplab {

/// A positive definite quadratic form of determinant one on R^s, stored as
/// its Gram matrix in the canonical basis. Q(v) = v^T M v.
class SymmetricForm {
 public:
  static SymmetricForm identity(int s);
  static SymmetricForm diagonal(std::span<const Real> entries);

  /// Symmetrizes, then checks positive definiteness and |det - 1| <= tol_det.
  static SymmetricForm from_matrix(const RealMatrix& m);

  /// The form Y^T Y. The determinant check runs on Y itself, which stays
  /// well conditioned when Y is a diagonal scaling of a unipotent.
  static SymmetricForm from_factor(const RealMatrix& y);

  int dim() const { return matrix_.rows(); }
  const RealMatrix& matrix() const { return matrix_; }

  Real operator()(std::span<const Real> v) const;
  Real operator()(const IntVector& v) const;

 private:
  explicit SymmetricForm(RealMatrix m) : matrix_(std::move(m)) {}

  RealMatrix matrix_;
};

/// An element of SL(s, R).
class GroupElement {
 public:
  static GroupElement identity(int s);
  static GroupElement from_matrix(const RealMatrix& m);
  /// Integer matrix given by rows; the determinant must be exactly 1.
  static GroupElement from_integer_rows(const std::vector<IntVector>& rows);

  int dim() const { return matrix_.rows(); }
  const RealMatrix& matrix() const { return matrix_; }

 private:
  explicit GroupElement(RealMatrix m) : matrix_(std::move(m)) {}

  RealMatrix matrix_;
};

/// Right action Q -> B^T M_Q B.
SymmetricForm act(const SymmetricForm& q, const GroupElement& b);

/// Riemannian distance: sqrt(sum (ln ev)^2) over the eigenvalues of
/// M1^{-1} M2, computed as a symmetric problem after a Cholesky split of M1.
Real distance(const SymmetricForm& q1, const SymmetricForm& q2);

/// The form with matrix M^{-1} (the adjugate, since det M = 1).
SymmetricForm dual_form(const SymmetricForm& q);

/// f_v(Q) = eta * ln Q(v) with eta = sqrt(s/(s-1)).
Real busemann_vector(std::span<const Real> v, const SymmetricForm& q);
Real busemann_vector(const IntVector& v, const SymmetricForm& q);

/// f*_v(Q) = eta * ln Q*(v).
Real busemann_dual(std::span<const Real> v, const SymmetricForm& q);
Real busemann_dual(const IntVector& v, const SymmetricForm& q);

/// Busemann function of the wall ray r_i: sqrt(s/((s-i) i)) * ln det Q_i,
/// Q_i the lower-right i x i block.
Real busemann_wall(int i, const SymmetricForm& q);

/// Unit-speed wall ray r_i(t) = diag(e^{lambda_i t} x (s-i), e^{-mu_i t} x i).
SymmetricForm singular_ray(int i, const Real& t, int s);

/// Constants of the Weyl chamber of SL(s): eta, lambda_i, mu_i, the unit
/// vectors v_i and the slopes alpha_1 = eta mu_m, alpha_{s-1} = eta lambda_m
/// for the distinguished index m. Indices are 1-based as in the formulas.
class WeylConstants {
 public:
  WeylConstants(int s, int m);

  int s() const { return s_; }
  int m() const { return m_; }
  int ell() const { return s_ - m_; }
  const Real& eta() const { return eta_; }
  const Real& lambda(int i) const;
  const Real& mu(int i) const;
  const std::vector<Real>& v(int i) const;

  const Real& lambda_m() const { return lambda(m_); }
  const Real& mu_m() const { return mu(m_); }
  const Real& alpha1() const { return alpha1_; }
  const Real& alpha_top() const { return alpha_top_; }

 private:
  void check_index(int i) const;

  int s_;
  int m_;
  Real eta_;
  std::vector<Real> lambda_;
  std::vector<Real> mu_;
  std::vector<std::vector<Real>> v_;
  Real alpha1_;
  Real alpha_top_;
};

/// A point of the closed Weyl chamber in flat coordinates:
/// sum t_i = 0 and t_1 >= ... >= t_s.
class ChamberPoint {
 public:
  /// Validates the chamber conditions (sum within tol_det of zero, relative
  /// to the largest |t_i|).
  static ChamberPoint from_coordinates(std::vector<Real> t);
  static ChamberPoint origin(int s);

  int dim() const { return static_cast<int>(t_.size()); }
  const std::vector<Real>& coordinates() const { return t_; }

  /// The diagonal form diag(e^{t_1}, ..., e^{t_s}).
  SymmetricForm as_form() const;

 private:
  explicit ChamberPoint(std::vector<Real> t) : t_(std::move(t)) {}

  std::vector<Real> t_;
};

/// Restriction of the Busemann function of r_i to the chamber: -<t | v_i>.
Real chamber_height(int i, const ChamberPoint& p);
Real chamber_height(int i, const ChamberPoint& p, const WeylConstants& weyl);

/// Vertex of the polytope {f_{s-1} = -c} within the chamber that lies on
/// the wall ray r_i, i.e. t_i v_i with t_i = c / <v_i | v_{s-1}>.
ChamberPoint horosphere_vertex(int i, const Real& c, int s);

}  // namespace cusplab
