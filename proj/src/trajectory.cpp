#include "cusplab/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <functional>
#include <set>

#include "cusplab/error.hpp"

namespace cusplab {

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::log;

namespace {

struct Factors {
  RealMatrix y;
  RealMatrix y_dual;
};

Factors factors(const UnipotentParam& u, const Real& t) {
  const int ell = u.ell, s = u.s();
  WeylConstants w(s, u.m);
  Real a = exp(w.lambda_m() * t / 2), b = exp(-w.mu_m() * t / 2);
  Factors f{RealMatrix(s, s), RealMatrix(s, s)};
  for (int i = 0; i < ell; ++i) {
    f.y(i, i) = a;
    f.y_dual(i, i) = 1 / a;
    for (int j = 0; j < u.m; ++j) {
      f.y(i, ell + j) = a * u.N(i, j);
      f.y_dual(ell + j, i) = -u.N(i, j) / b;
    }
  }
  for (int j = 0; j < u.m; ++j) {
    f.y(ell + j, ell + j) = b;
    f.y_dual(ell + j, ell + j) = 1 / b;
  }
  return f;
}

void check_nonzero(const IntVector& a, const IntVector& b) {
  auto nz = [](std::int64_t x) { return x != 0; };
  if (std::none_of(a.begin(), a.end(), nz) && std::none_of(b.begin(), b.end(), nz)) {
    throw DomainError("height of the zero vector");
  }
}

// |p + N q|^2 and |q|^2.
std::pair<Real, Real> split_norms(const UnipotentParam& u, const IntVector& p, const IntVector& q) {
  if (static_cast<int>(p.size()) != u.ell || static_cast<int>(q.size()) != u.m) {
    throw DimensionError("vector sizes differ from (ell, m)");
  }
  Real A = 0, B = 0;
  for (int i = 0; i < u.ell; ++i) {
    Real r = p[i];
    for (int j = 0; j < u.m; ++j) r += u.N(i, j) * q[j];
    A += r * r;
  }
  for (int j = 0; j < u.m; ++j) B += Real(q[j]) * q[j];
  return {A, B};
}

// |b - N^T a|^2 and |a|^2 for a dual lattice vector (a, b).
std::pair<Real, Real> dual_split_norms(const UnipotentParam& u, const IntVector& a, const IntVector& b) {
  if (static_cast<int>(a.size()) != u.ell || static_cast<int>(b.size()) != u.m) {
    throw DimensionError("vector sizes differ from (ell, m)");
  }
  Real A = 0, B = 0;
  for (int j = 0; j < u.m; ++j) {
    Real r = b[j];
    for (int i = 0; i < u.ell; ++i) r -= u.N(i, j) * a[i];
    A += r * r;
  }
  for (int i = 0; i < u.ell; ++i) B += Real(a[i]) * a[i];
  return {A, B};
}

std::pair<IntVector, IntVector> split(const IntVector& v, int ell) {
  return {IntVector(v.begin(), v.begin() + ell), IntVector(v.begin() + ell, v.end())};
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  std::int64_t g = std::gcd(a, b);
  __int128 r = static_cast<__int128>(a / g) * b;
  if (r > (std::int64_t{1} << 40)) throw DomainError("common denominator too large");
  return static_cast<std::int64_t>(r);
}

// min |x|^2 over nonzero integer x with rows(x) integral, where rows(x)_i =
// sum_j coef(i, j) x_j and coef given as rationals with common denominator D.
std::int64_t min_integral_norm(int n_rows, int n_vars, const std::function<Rational(int, int)>& coef) {
  std::int64_t D = 1;
  for (int i = 0; i < n_rows; ++i)
    for (int j = 0; j < n_vars; ++j) D = lcm_checked(D, coef(i, j).den);
  double count = std::pow(2.0 * D + 1, n_vars);
  if (count > 2e7) throw DomainError("rational divergence search too large for this denominator");
  IntVector x(n_vars, -D);
  std::int64_t best = -1;
  while (true) {
    std::int64_t norm = 0;
    for (auto v : x) norm += v * v;
    if (norm > 0 && (best < 0 || norm < best)) {
      bool integral = true;
      for (int i = 0; i < n_rows && integral; ++i) {
        __int128 acc = 0;
        for (int j = 0; j < n_vars; ++j) {
          Rational c = coef(i, j);
          acc += static_cast<__int128>(c.num) * (D / c.den) * x[j];
        }
        integral = acc % D == 0;
      }
      if (integral) best = norm;
    }
    int k = n_vars - 1;
    while (k >= 0 && x[k] == D) x[k--] = -D;
    if (k < 0) break;
    ++x[k];
  }
  return best;
}

}  // namespace

UnipotentParam embed_L(const LinearForms& L) { return UnipotentParam{L.rows(), L.cols(), L}; }

UnipotentParam embed_M(const LinearForms& M) { return UnipotentParam{M.cols(), M.rows(), M.transpose()}; }

FormAt form_at(const UnipotentParam& u, const Real& t) {
  auto f = factors(u, t);
  auto form = SymmetricForm::from_factor(f.y);
  return FormAt{std::move(f.y), std::move(f.y_dual), std::move(form)};
}

Real vector_height(const UnipotentParam& u, const Real& t, const IntVector& p, const IntVector& q) {
  check_nonzero(p, q);
  WeylConstants w(u.s(), u.m);
  auto [A, B] = split_norms(u, p, q);
  return w.eta() * log(exp(w.lambda_m() * t) * A + exp(-w.mu_m() * t) * B);
}

Real dual_vector_height(const UnipotentParam& u, const Real& t, const IntVector& a, const IntVector& b) {
  check_nonzero(a, b);
  WeylConstants w(u.s(), u.m);
  IntVector neg(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
  auto [A, B] = dual_split_norms(u, neg, b);
  return w.eta() * log(exp(-w.lambda_m() * t) * B + exp(w.mu_m() * t) * A);
}

PeakTime peak_time(const Real& A, const Real& B, const Real& grow, const Real& decay) {
  if (!(A > 0)) throw DomainError("peak_time: A must be positive (A = 0 is the divergent case)");
  if (!(B > 0)) throw DomainError("peak_time: B must be positive");
  if (!(grow > 0) || !(decay > 0)) throw DomainError("peak_time: rates must be positive");
  Real t = log(decay * B / (grow * A)) / (grow + decay);
  if (t < 0) t = 0;
  return {t, exp(grow * t) * A + exp(-decay * t) * B};
}

HeightSample height_sample(const UnipotentParam& u, const Real& t) {
  WeylConstants w(u.s(), u.m);
  auto f = factors(u, t);
  auto one = shortest_vector(f.y);
  auto top = shortest_vector(f.y_dual);
  if (!one.certified || !top.certified) {
    throw BudgetExceeded("shortest-vector enumeration exceeded its budget at t = " + format_real(t, 10));
  }
  HeightSample s;
  s.t = to_double(t);
  s.h1 = to_double(-w.eta() * log(one.value));
  s.hTop = to_double(-w.eta() * log(top.value));
  s.witness1 = std::move(one.witness);
  s.witnessTop = std::move(top.witness);
  return s;
}

std::vector<HeightSample> trace_heights(const UnipotentParam& u, const std::vector<double>& grid) {
  if (grid.empty()) return {};
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("grid must be strictly ascending");
  WeylConstants w(u.s(), u.m);
  const double lo = grid.front(), hi = grid.back();

  std::vector<HeightSample> samples;
  std::set<double> times;
  auto add = [&](double t) {
    auto it = times.lower_bound(t - 1e-12);
    if (it != times.end() && *it <= t + 1e-12) return false;
    times.insert(t);
    samples.push_back(height_sample(u, Real(t)));
    return true;
  };
  for (double t : grid) add(t);

  std::set<IntVector> seen_one, seen_top;
  for (int round = 0; round < 4; ++round) {
    std::vector<double> extra;
    for (const auto& smp : samples) {
      if (seen_one.insert(smp.witness1).second) {
        auto [p, q] = split(smp.witness1, u.ell);
        auto [A, B] = split_norms(u, p, q);
        if (A > 0 && B > 0) extra.push_back(to_double(peak_time(A, B, w.lambda_m(), w.mu_m()).t));
      }
      if (seen_top.insert(smp.witnessTop).second) {
        auto [a, b] = split(smp.witnessTop, u.ell);
        auto [A, B] = dual_split_norms(u, a, b);
        if (A > 0 && B > 0) extra.push_back(to_double(peak_time(A, B, w.mu_m(), w.lambda_m()).t));
      }
    }
    bool added = false;
    for (double t : extra)
      if (t > lo && t < hi) added = add(t) || added;
    if (!added) break;
  }
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  return samples;
}

std::vector<double> uniform_grid(double t_max, int n) {
  if (n < 1 || !(t_max > 0)) throw DomainError("grid needs t_max > 0 and at least one step");
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = t_max * i / n;
  return g;
}

std::vector<ExcursionRecord> excursion_membership(const std::vector<HeightSample>& trace, const UnipotentParam& u,
                                                  HeightKind k, const ApproxFn& phi) {
  WeylConstants w(u.s(), u.m);
  const double alpha = to_double(k == HeightKind::one ? w.alpha1() : w.alpha_top());
  auto h = [&](std::size_t i) { return k == HeightKind::one ? trace[i].h1 : trace[i].hTop; };
  std::vector<ExcursionRecord> out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    bool peak = (i == 0 || h(i) >= h(i - 1)) && (i + 1 == trace.size() || h(i) >= h(i + 1));
    if (!peak) continue;
    double t = trace[i].t;
    double margin = h(i) - (alpha * t - phi(t));
    if (margin < 0) continue;
    out.push_back({t, k, h(i), k == HeightKind::one ? trace[i].witness1 : trace[i].witnessTop, margin});
  }
  return out;
}

std::vector<ExcursionRecord> excursion_membership(const UnipotentParam& u, HeightKind k, const ApproxFn& phi,
                                                  double t_max, int samples) {
  return excursion_membership(trace_heights(u, uniform_grid(t_max, samples)), u, k, phi);
}

double safe_t_max(int ell, int m, unsigned bits) {
  if (bits <= 40) return 0;
  const double s = ell + m;
  const double sum = std::sqrt(m / (s * ell)) + std::sqrt(ell / (s * m));
  return (bits - 40.0) * std::log(2.0) / sum;
}

DivergenceOffsets divergence_offsets(const UnipotentParam& u) {
  if (!u.N.is_rational()) throw DomainError("divergence offsets need an exactly rational matrix");
  WeylConstants w(u.s(), u.m);
  auto q_norm = min_integral_norm(u.ell, u.m, [&](int i, int j) { return u.N.rational(i, j); });
  auto a_norm = min_integral_norm(u.m, u.ell, [&](int j, int i) { return u.N.rational(i, j); });
  return {-w.eta() * log(Real(q_norm)), -w.eta() * log(Real(a_norm))};
}

double two_path_discrepancy(const UnipotentParam& u, const HeightSample& sample) {
  Real t(sample.t);
  auto at = form_at(u, t);
  const auto& form = at.form;
  auto dual = SymmetricForm::from_factor(at.dual_factor);
  auto [p, q] = split(sample.witness1, u.ell);
  auto [a, b] = split(sample.witnessTop, u.ell);
  IntVector neg(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
  Real closed1 = vector_height(u, t, p, q);
  Real closedTop = dual_vector_height(u, t, neg, b);
  Real assembled1 = busemann_vector(sample.witness1, form);
  Real assembledTop = busemann_vector(sample.witnessTop, dual);
  double worst = 0;
  auto track = [&](const Real& x, const Real& y) { worst = std::max(worst, to_double(abs(x - y))); };
  track(-closed1, Real(sample.h1));
  track(-closedTop, Real(sample.hTop));
  track(closed1, assembled1);
  track(closedTop, assembledTop);
  return worst;
}

}  // namespace cusplab
