#include "cusplab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <utility>

#include "cusplab/error.hpp"

namespace cusplab {

using boost::multiprecision::abs;
using boost::multiprecision::ceil;
using boost::multiprecision::floor;
using boost::multiprecision::log;
using boost::multiprecision::round;
using boost::multiprecision::sqrt;

namespace {

constexpr std::int64_t kIntLimit = std::int64_t{1} << 62;

std::int64_t to_int_checked(const Real& x) {
  if (abs(x) >= Real(kIntLimit)) throw PrecisionExhausted("lattice coefficient exceeds the 62-bit integer range");
  return x.convert_to<std::int64_t>();
}

std::int64_t add_checked(std::int64_t a, __int128 b) {
  __int128 r = static_cast<__int128>(a) + b;
  if (r >= kIntLimit || r <= -kIntLimit) throw PrecisionExhausted("integer transform overflow");
  return static_cast<std::int64_t>(r);
}

// Gram-Schmidt data of the columns of a basis.
struct Gso {
  std::vector<std::vector<Real>> mu;  // mu[i][j], j < i
  std::vector<Real> norms;            // |b*_i|^2
};

Gso gram_schmidt(const std::vector<std::vector<Real>>& b) {
  const int n = static_cast<int>(b.size());
  Gso g;
  g.mu.assign(n, std::vector<Real>(n, Real(0)));
  g.norms.assign(n, Real(0));
  std::vector<std::vector<Real>> star(n);
  for (int i = 0; i < n; ++i) {
    star[i] = b[i];
    for (int j = 0; j < i; ++j) {
      g.mu[i][j] = dot(b[i], star[j]) / g.norms[j];
      for (std::size_t k = 0; k < star[i].size(); ++k) star[i][k] -= g.mu[i][j] * star[j][k];
    }
    g.norms[i] = squared_norm(star[i]);
    if (!(g.norms[i] > 0)) {
      throw PrecisionExhausted("Gram-Schmidt norm vanished; basis is singular at working precision");
    }
  }
  return g;
}

std::vector<std::vector<Real>> columns_of(const RealMatrix& m) {
  std::vector<std::vector<Real>> cols(m.cols());
  for (int j = 0; j < m.cols(); ++j) cols[j] = m.column(j);
  return cols;
}

// Collects minimizers up to the relative tie tolerance.
class MinimumTracker {
 public:
  explicit MinimumTracker(Real tie) : tie_(std::move(tie)) {}

  // Returns true when the best value decreased.
  bool offer(const Real& value, IntVector v) {
    if (!has_ || value < best_ * (1 - tie_)) {
      const bool improved = true;
      best_ = value;
      has_ = true;
      candidates_.clear();
      candidates_.push_back(std::move(v));
      // Drop earlier ties that are no longer within tolerance.
      return improved;
    }
    if (value <= best_ * (1 + tie_)) {
      candidates_.push_back(std::move(v));
      if (value < best_) best_ = value;
    }
    return false;
  }

  bool has() const { return has_; }
  const Real& best() const { return best_; }

  IntVector witness() const {
    IntVector chosen;
    for (const auto& c : candidates_) {
      IntVector v = canonical_sign(c);
      if (chosen.empty() || v < chosen) chosen = std::move(v);
    }
    return chosen;
  }

 private:
  Real tie_;
  Real best_;
  bool has_ = false;
  std::vector<IntVector> candidates_;
};

class Enumerator {
 public:
  Enumerator(const ReducedBasis& reduced, const RealMatrix& original, std::int64_t budget)
      : n_(reduced.basis.cols()),
        original_(original),
        transform_(reduced.transform),
        gso_(gram_schmidt(columns_of(reduced.basis))),
        budget_(budget),
        tracker_(tie_tolerance()),
        slack_(4 * tie_tolerance()),
        x_(n_, 0) {}

  MinimumCertificate run() {
    radius_ = gso_.norms[0] * (1 + slack_);
    descend(n_ - 1, Real(0));
    MinimumCertificate cert;
    cert.witness = tracker_.witness();
    cert.value = value_of(cert.witness);
    cert.method = MinimumMethod::enumeration;
    cert.certified = !exhausted_;
    cert.nodes = nodes_;
    return cert;
  }

 private:
  Real value_of(const IntVector& v) const {
    auto yv = original_ * std::span<const Real>(to_real(v));
    return squared_norm(yv);
  }

  void leaf() {
    bool zero = std::all_of(x_.begin(), x_.end(), [](std::int64_t c) { return c == 0; });
    if (zero) return;
    const std::size_t dim = transform_[0].size();
    IntVector v(dim, 0);
    for (int j = 0; j < n_; ++j) {
      if (x_[j] == 0) continue;
      for (std::size_t i = 0; i < dim; ++i) {
        v[i] = add_checked(v[i], static_cast<__int128>(transform_[j][i]) * x_[j]);
      }
    }
    Real value = value_of(v);
    tracker_.offer(value, std::move(v));
    Real bound = tracker_.best() * (1 + tie_tolerance()) * (1 + slack_);
    if (bound < radius_) radius_ = bound;
  }

  void descend(int k, const Real& partial) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    Real center = 0;
    for (int i = k + 1; i < n_; ++i) center -= gso_.mu[i][k] * x_[i];
    Real rem = radius_ - partial;
    if (rem < 0) return;
    Real width = sqrt(rem / gso_.norms[k]);
    std::int64_t lo = to_int_checked(ceil(center - width));
    std::int64_t hi = to_int_checked(floor(center + width));
    for (std::int64_t c = lo; c <= hi; ++c) {
      Real d = Real(c) - center;
      Real next = partial + d * d * gso_.norms[k];
      if (next > radius_) continue;
      x_[k] = c;
      if (k == 0) {
        leaf();
      } else {
        descend(k - 1, next);
      }
      if (exhausted_) break;
    }
    x_[k] = 0;
  }

  int n_;
  const RealMatrix& original_;
  const std::vector<IntVector>& transform_;
  Gso gso_;
  std::int64_t budget_;
  MinimumTracker tracker_;
  Real slack_;
  Real radius_;
  IntVector x_;
  std::int64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

std::int64_t gcd_of(const IntVector& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

bool is_primitive(const IntVector& v) { return gcd_of(v) == 1; }

IntVector canonical_sign(IntVector v) {
  for (auto x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

ReducedBasis lll_reduce(const RealMatrix& basis, double delta) {
  if (basis.rows() != basis.cols()) throw DimensionError("lattice basis must be square");
  if (determinant(basis) == 0) throw DomainError("lattice basis is singular");
  const int n = basis.cols();
  auto b = columns_of(basis);
  std::vector<IntVector> u(n, IntVector(n, 0));
  for (int j = 0; j < n; ++j) u[j][j] = 1;

  const Real d(delta);
  Gso g = gram_schmidt(b);
  int k = 1;
  std::int64_t steps = 0;
  while (k < n) {
    if (++steps > 1'000'000) throw PrecisionExhausted("LLL did not terminate; precision too low for this basis");
    for (int j = k - 1; j >= 0; --j) {
      Real r = round(g.mu[k][j]);
      if (r == 0) continue;
      std::int64_t ri = to_int_checked(r);
      for (std::size_t i = 0; i < b[k].size(); ++i) b[k][i] -= r * b[j][i];
      for (int i = 0; i < n; ++i) u[k][i] = add_checked(u[k][i], -static_cast<__int128>(ri) * u[j][i]);
      for (int i = 0; i < j; ++i) g.mu[k][i] -= r * g.mu[j][i];
      g.mu[k][j] -= r;
    }
    if (g.norms[k] >= (d - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      g = gram_schmidt(b);
      k = std::max(k - 1, 1);
    }
  }
  ReducedBasis out;
  out.basis = RealMatrix(basis.rows(), n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < basis.rows(); ++i) out.basis(i, j) = b[j][i];
  out.transform = std::move(u);
  return out;
}

RealMatrix reduce_basis(const RealMatrix& basis) { return lll_reduce(basis).basis; }

MinimumCertificate shortest_vector(const RealMatrix& basis, const EnumerationOptions& opts) {
  ReducedBasis reduced = lll_reduce(basis, opts.delta);
  Enumerator e(reduced, basis, opts.node_budget);
  return e.run();
}

MinimumCertificate shortest_value(const SymmetricForm& q, const EnumerationOptions& opts) {
  // Q(v) = |L^T v|^2 for the Cholesky factor L.
  auto cert = shortest_vector(cholesky_lower(q.matrix()).transpose(), opts);
  cert.value = q(cert.witness);
  return cert;
}

namespace {

Real eta_of(int s) { return sqrt(Real(s) / Real(s - 1)); }

Real certified_log_height(const MinimumCertificate& cert, int s) {
  if (!cert.certified) throw BudgetExceeded("shortest-vector enumeration exceeded its node budget");
  return eta_of(s) * log(cert.value);
}

}  // namespace

Real height_one(const SymmetricForm& q) { return certified_log_height(shortest_value(q), q.dim()); }

Real height_top(const SymmetricForm& q) { return certified_log_height(shortest_value(dual_form(q)), q.dim()); }

Real height_from_basis(const RealMatrix& basis, int s) { return certified_log_height(shortest_vector(basis), s); }

std::vector<IntVector> hyperplane_kernel_basis(const IntVector& w) {
  const int n = static_cast<int>(w.size());
  if (!is_primitive(w)) throw DomainError("hyperplane normal must be primitive");
  // Unimodular column operations reducing the row w to a single +-1 entry;
  // the remaining columns of U then span the kernel of w.
  std::vector<IntVector> u(n, IntVector(n, 0));
  for (int j = 0; j < n; ++j) u[j][j] = 1;
  IntVector r = w;
  while (true) {
    int pivot = -1;
    for (int j = 0; j < n; ++j)
      if (r[j] != 0 && (pivot < 0 || std::llabs(r[j]) < std::llabs(r[pivot]))) pivot = j;
    bool done = true;
    for (int j = 0; j < n; ++j) {
      if (j == pivot || r[j] == 0) continue;
      done = false;
      std::int64_t f = r[j] / r[pivot];
      r[j] -= f * r[pivot];
      for (int i = 0; i < n; ++i) u[j][i] -= f * u[pivot][i];
    }
    if (done) {
      std::vector<IntVector> kernel;
      for (int j = 0; j < n; ++j)
        if (j != pivot) kernel.push_back(u[j]);
      return kernel;
    }
  }
}

CovolumeMinimum hyperplane_covolume_min(const SymmetricForm& q, int bound) {
  const int s = q.dim();
  if (s > 4) throw DomainError("hyperplane covolume oracle is limited to s <= 4");
  if (bound < 1) throw DomainError("bound must be at least 1");
  CovolumeMinimum best;
  bool has = false;
  IntVector w(s, -bound);
  while (true) {
    if (w == canonical_sign(w) && is_primitive(w)) {
      auto kernel = hyperplane_kernel_basis(w);
      RealMatrix gram(s - 1, s - 1);
      for (int a = 0; a < s - 1; ++a)
        for (int b = a; b < s - 1; ++b) {
          auto ka = to_real(kernel[a]);
          auto mkb = q.matrix() * std::span<const Real>(to_real(kernel[b]));
          gram(a, b) = dot(ka, mkb);
          gram(b, a) = gram(a, b);
        }
      Real value = determinant(gram);
      if (!has || value < best.value) {
        best.value = value;
        best.normal = w;
        has = true;
      }
    }
    int k = s - 1;
    while (k >= 0 && w[k] == bound) w[k--] = -bound;
    if (k < 0) break;
    ++w[k];
  }
  // Q*(w) >= |w|^2 / ev_max(M) >= (bound+1)^2 / ev_max(M) outside the box.
  Real ev_max = symmetric_eigenvalues(q.matrix()).back();
  best.certified = best.value <= Real((bound + 1) * (bound + 1)) / ev_max;
  return best;
}

MinimumCertificate brute_force_minimum(const SymmetricForm& q, int box) {
  const int s = q.dim();
  if (s > 4) throw DomainError("brute-force minimum is limited to s <= 4");
  if (box < 1) throw DomainError("box must be at least 1");
  std::vector<double> m(s * s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) m[i * s + j] = to_double(q.matrix()(i, j));

  // Exhaustive double sweep; the last coordinate is innermost with the form
  // split as c0 + x (2 c1 + m_ss x).
  constexpr double kKeep = 1e-8;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, IntVector>> near;
  IntVector v(s, -box);
  const int last = s - 1;
  const double mss = m[last * s + last];
  while (true) {
    double c0 = 0, c1 = 0;
    for (int i = 0; i < last; ++i) {
      for (int j = 0; j < last; ++j) c0 += m[i * s + j] * v[i] * v[j];
      c1 += m[i * s + last] * v[i];
    }
    for (std::int64_t x = -box; x <= box; ++x) {
      double val = c0 + x * (2 * c1 + mss * x);
      if (val <= best * (1 + kKeep)) {
        v[last] = x;
        bool zero = std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c == 0; });
        if (zero) continue;
        if (val < best) best = val;
        near.emplace_back(val, v);
      }
    }
    v[last] = -box;
    int k = last - 1;
    while (k >= 0 && v[k] == box) v[k--] = -box;
    if (k < 0) break;
    ++v[k];
  }
  MinimumTracker tracker(tie_tolerance());
  for (auto& [val, cand] : near) {
    if (val > best * (1 + kKeep)) continue;
    Real exact = q(cand);
    tracker.offer(exact, std::move(cand));
  }
  MinimumCertificate cert;
  cert.witness = tracker.witness();
  cert.value = q(cert.witness);
  cert.method = MinimumMethod::brute_force;
  cert.certified = true;
  return cert;
}

}  // namespace cusplab
