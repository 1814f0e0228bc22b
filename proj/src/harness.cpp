#include "cusplab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "cusplab/dio_search.hpp"
#include "cusplab/error.hpp"
#include "cusplab/geometry.hpp"
#include "cusplab/lattice.hpp"
#include "cusplab/trajectory.hpp"
#include "cusplab/transference.hpp"

namespace cusplab {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::string num(double x) { return format_number(x); }

SymmetricForm random_form(Rng& rng, int s) {
  while (true) {
    RealMatrix g(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) g(i, j) = Real(uniform(rng, -2, 2));
    Real det = determinant(g);
    if (abs(det) < Real("0.3")) continue;
    Real scale = boost::multiprecision::pow(abs(det), Real(-1) / s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) g(i, j) *= scale;
    auto f = SymmetricForm::from_factor(g);
    if (symmetric_eigenvalues(f.matrix()).front() > Real("0.02")) return f;
  }
}

void expect(std::vector<CheckResult>& out, std::string name, double worst, double tol) {
  bool ok = worst <= tol;
  out.push_back({std::move(name), ok, "max deviation " + num(worst) + (ok ? " (exact)" : " exceeds " + num(tol))});
}

std::vector<CheckResult> suite_chamber(Rng& rng) {
  std::vector<CheckResult> out;
  double vertex = 0;
  for (int s = 2; s <= 6; ++s)
    for (int c : {1, 5, 10})
      for (int i = 1; i <= s - 1; ++i) {
        auto v = horosphere_vertex(i, Real(c), s);
        double h = -to_double(chamber_height(1, v));
        vertex = std::max(vertex, std::abs(h - c * (static_cast<double>(s) / i - 1)));
        vertex = std::max(vertex, std::abs(to_double(chamber_height(s - 1, v)) + c));
      }
  expect(out, "chamber vertices", vertex, 1e-12);

  double worst = 0;
  for (int s = 2; s <= 5; ++s) {
    WeylConstants w(s, 1);
    for (int k = 0; k < 10000; ++k) {
      std::vector<double> x(s);
      for (auto& e : x) e = uniform(rng, -10, 10);
      std::sort(x.rbegin(), x.rend());
      Real mean = 0;
      for (auto e : x) mean += Real(e) / s;
      std::vector<Real> t;
      for (auto e : x) t.push_back(Real(e) - mean);
      auto p = ChamberPoint::from_coordinates(t);
      double f1 = to_double(chamber_height(1, p, w)), ftop = to_double(chamber_height(s - 1, p, w));
      worst = std::max({worst, (s - 1) * ftop - f1, f1 - ftop / (s - 1)});
    }
  }
  expect(out, "chamber comparison with zero constant", worst, 1e-12);
  return out;
}

std::vector<CheckResult> suite_busemann(Rng& rng) {
  std::vector<CheckResult> out;
  double lip = 0, invol = 0, two_path = 0;
  for (int k = 0; k < 60; ++k) {
    int s = 2 + k % 3;
    auto a = random_form(rng, s), b = random_form(rng, s);
    IntVector v(s);
    for (auto& x : v) x = std::uniform_int_distribution<int>(-3, 3)(rng);
    if (gcd_of(v) == 0) v[0] = 1;
    Real gap = abs(busemann_vector(v, a) - busemann_vector(v, b)) - distance(a, b);
    lip = std::max(lip, to_double(gap));
    auto back = dual_form(dual_form(a));
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) invol = std::max(invol, to_double(abs(back.matrix()(i, j) - a.matrix()(i, j))));
  }
  for (int k = 0; k < 20; ++k) {
    Dims d(1 + k % 2, 1 + (k / 2) % 2);
    std::vector<Real> v;
    for (int i = 0; i < d.ell * d.m; ++i) v.push_back(Real(uniform(rng, -2, 2)));
    auto u = embed_L(LinearForms::from_reals(d.ell, d.m, v));
    two_path = std::max(two_path, two_path_discrepancy(u, height_sample(u, Real(uniform(rng, 0, 30)))));
  }
  expect(out, "1-Lipschitz Busemann functions", lip, 1e-20);
  expect(out, "dual involution", invol, 1e-20);
  expect(out, "two-path height equality", two_path, 1e-8);
  return out;
}

std::vector<CheckResult> suite_svp(Rng& rng) {
  std::vector<CheckResult> out;
  double worst = 0;
  for (int s = 2; s <= 3; ++s)
    for (int k = 0; k < 20; ++k) {
      auto q = random_form(rng, s);
      auto a = shortest_value(q), b = brute_force_minimum(q, 12);
      worst = std::max(worst, to_double(abs(a.value - b.value) / b.value));
    }
  expect(out, "enumeration equals brute force", worst, 1e-20);
  double cov = 0;
  for (int k = 0; k < 10; ++k) {
    auto q = random_form(rng, 3);
    auto dual = shortest_value(dual_form(q));
    auto hyper = hyperplane_covolume_min(q, 6);
    cov = std::max(cov, to_double(abs(dual.value - hyper.value) / dual.value));
  }
  expect(out, "dual minimum equals hyperplane covolume", cov, 1e-20);
  return out;
}

std::vector<CheckResult> suite_pipeline() {
  std::vector<CheckResult> out;
  double worst = 0;
  for (int ell = 1; ell <= 3; ++ell)
    for (int m = 1; m <= 3; ++m)
      for (double a : {0.5, 1.0, 2.0, 5.0}) {
        Dims d(ell, m);
        auto r = powerlaw_pipeline(a, d);
        double closed = ell * a / (m * (ell + m - 1) + (m - 1) * a);
        worst = std::max(worst, std::abs(r.beta - closed));
      }
  expect(out, "pipeline equals closed-form exponent", worst, 1e-9);
  return out;
}

std::vector<CheckResult> suite_correspondence() {
  std::vector<CheckResult> out;
  Dims d(1, 1);
  auto Phi = ApproxFn::power_law(1, -1);
  auto phi = approx_to_height(Phi, d);
  for (const char* name : {"golden", "liouville"}) {
    auto L = make_preset(parse_preset(name), d);
    auto rep = correspondence_check(L, enumerate_solutions(L, Phi, 1000), HeightKind::one, phi);
    out.push_back({std::string(name) + ": solutions are excursions", rep.all_certified,
                   std::to_string(rep.certified) + " certified, " + std::to_string(rep.out_of_range) +
                       " out of range"});
    auto u = embed_L(L);
    auto recs = excursion_membership(u, HeightKind::one, ApproxFn::affine(0.9, 0), 40);
    auto sols = excursion_solutions(L, recs, ApproxFn::affine(0.9, 0));
    bool ok = std::all_of(sols.begin(), sols.end(), [](const ExcursionSolution& x) { return x.ok; });
    out.push_back({std::string(name) + ": excursions are solutions", ok,
                   std::to_string(sols.size()) + " excursion witnesses"});
  }
  return out;
}

void check_two_path(const UnipotentParam& u, const std::vector<HeightSample>& trace, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t n = std::max<std::size_t>(1, trace.size() / 100);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& s = trace[std::uniform_int_distribution<std::size_t>(0, trace.size() - 1)(rng)];
    double gap = two_path_discrepancy(u, s);
    if (!(gap <= 1e-8))
      throw InvariantViolation("two-path height equality fails at t = " + num(s.t) + " (gap " + num(gap) + ")");
  }
}

int run_trace(const ExperimentConfig& cfg) {
  auto L = load_matrix(cfg);
  auto u = embed_L(L);
  if (cfg.samples < 1) throw ParseError("--samples must be positive");
  if (!(cfg.t_max > 0)) throw ParseError("--t-max must be positive");
  double safe = safe_t_max(u.ell, u.m, cfg.precision_bits);
  if (cfg.t_max > safe)
    throw PrecisionExhausted("t_max " + num(cfg.t_max) + " exceeds the precision-safe bound " + num(safe) + " at " +
                             std::to_string(cfg.precision_bits) + " bits");
  auto trace = trace_heights(u, uniform_grid(cfg.t_max, cfg.samples));
  check_two_path(u, trace, cfg.seed);
  write_output(cfg.out, render_trace(trace, u.s(), cfg.slack_constant, cfg.format));
  return kOk;
}

int run_search(const ExperimentConfig& cfg) {
  auto L = load_matrix(cfg);
  if (cfg.bound < 1) throw ParseError("--bound must be positive");
  auto phi = cfg.phi.empty() ? ApproxFn::power_law(1, -static_cast<double>(L.cols()) / L.rows())
                             : parse_approx_fn(cfg.phi);
  auto sols = enumerate_solutions(L, phi, cfg.bound, {cfg.all_p});
  write_output(cfg.out, render_solutions(sols, cfg.format));
  return kOk;
}

int run_transfer(const ExperimentConfig& cfg, std::ostream& out) {
  if (!cfg.ell || !cfg.m) throw ParseError("transfer needs --ell and --m");
  Dims d(*cfg.ell, *cfg.m);
  std::ostringstream text;
  auto rc = ray_constants(d);
  text << "dims: ell=" << d.ell << " m=" << d.m << '\n';
  text << "alpha_1 = " << num(rc.alpha1) << "\nalpha_top = " << num(rc.alpha_top) << '\n';
  text << "dirichlet exponent = " << num(dirichlet_exponent(d)) << '\n';
  std::ostringstream machine;
  machine << "transfer.alpha1\t" << num(rc.alpha1) << "\ntransfer.alpha_top\t" << num(rc.alpha_top) << '\n';
  if (cfg.alpha) {
    double a = *cfg.alpha;
    double beta = transfer_exponent(a, d);
    auto kb = khintchine_bounds(a, d.s() - 1);
    text << "alpha = " << num(a) << "\nbeta = " << num(beta) << '\n';
    text << "khintchine bounds = [" << num(kb.lower) << ", " << num(kb.upper) << "]\n";
    machine << "transfer.alpha\t" << num(a) << "\ntransfer.beta\t" << num(beta) << '\n';
    auto r = powerlaw_pipeline(a, d);
    text << "psi exponent = " << num(r.psi_exponent) << "\nheight slope = " << num(r.phi_slope)
         << "\ntransferred height slope = " << num(r.psi_slope) << '\n';
    machine << "transfer.psi_exponent\t" << num(r.psi_exponent) << '\n';
  }
  if (!cfg.phi.empty()) {
    auto phi = parse_approx_fn(cfg.phi);
    if (phi.kind() == ApproxFn::Kind::power_law) {
      text << "Phi = " << phi.describe() << "\nPsi = " << transfer_FG(phi, d).describe() << '\n';
      text << "height function = " << approx_to_height(phi, d, cfg.slack_constant).describe() << '\n';
    } else {
      text << "phi = " << phi.describe() << "\nray transfer to hTop = "
           << ray_transfer_16(phi, d, cfg.slack_constant).describe() << "\nray transfer hTop to h1 = "
           << ray_transfer_17(phi, d, cfg.slack_constant).describe() << '\n';
      text << "approximating function = " << height_to_approx(phi, d, cfg.slack_constant).describe() << '\n';
    }
  }
  out << text.str();
  if (cfg.out.empty() || cfg.out == "-")
    out << machine.str();
  else
    write_output(cfg.out, machine.str());
  return kOk;
}

int run_verify(const ExperimentConfig& cfg, std::ostream& out) {
  std::vector<std::string> names;
  if (cfg.suite.empty() || cfg.suite == "all")
    names = suite_names();
  else
    names = {cfg.suite};
  bool all = true;
  std::ostringstream text;
  for (const auto& n : names)
    for (const auto& r : run_suite(n, cfg.seed)) {
      text << (r.passed ? "PASS " : "FAIL ") << n << ": " << r.name << ": " << r.detail << '\n';
      all = all && r.passed;
    }
  out << text.str();
  if (!cfg.out.empty() && cfg.out != "-") write_output(cfg.out, text.str());
  if (!all) throw InvariantViolation("verification suite failed");
  return kOk;
}

}  // namespace

LinearForms load_matrix(const ExperimentConfig& cfg) {
  int sources = !cfg.entries.empty() + !cfg.preset.empty() + !cfg.matrix_file.empty();
  if (sources != 1) throw ParseError("give exactly one of --entries, --preset, --matrix-file");
  if (!cfg.matrix_file.empty()) {
    std::ifstream f(cfg.matrix_file, std::ios::binary);
    if (!f) throw IoError("cannot read '" + cfg.matrix_file + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    int ell = 0, m = 0;
    auto L = parse_matrix_text(buf.str(), &ell, &m);
    if ((cfg.ell && *cfg.ell != ell) || (cfg.m && *cfg.m != m))
      throw ParseError("--ell/--m disagree with the matrix file header");
    return L;
  }
  if (!cfg.ell || !cfg.m) throw ParseError("--ell and --m are required");
  Dims d(*cfg.ell, *cfg.m);
  if (!cfg.preset.empty()) return make_preset(parse_preset(cfg.preset), d);
  return LinearForms::parse(d.ell, d.m, cfg.entries);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"chamber", "busemann", "svp-oracle", "transference-pipeline",
                                              "correspondence"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  Rng rng(seed);
  if (suite == "chamber") return suite_chamber(rng);
  if (suite == "busemann") return suite_busemann(rng);
  if (suite == "svp-oracle") return suite_svp(rng);
  if (suite == "transference-pipeline") return suite_pipeline();
  if (suite == "correspondence") return suite_correspondence();
  throw ParseError("unknown suite '" + suite + "'");
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.precision_bits < 64 || cfg.precision_bits > 8192)
      throw ParseError("--precision-bits must lie in [64, 8192]");
    PrecisionScope scope(cfg.precision_bits);
    switch (cfg.command) {
      case Command::trace:
        return run_trace(cfg);
      case Command::search:
        return run_search(cfg);
      case Command::transfer:
        return run_transfer(cfg, out);
      case Command::verify:
        return run_verify(cfg, out);
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const HypothesisViolation& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const PrecisionExhausted& e) {
    err << "precision: " << e.what() << '\n';
    return kPrecisionError;
  } catch (const BudgetExceeded& e) {
    err << "precision: " << e.what() << '\n';
    return kPrecisionError;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kInvariantError;
  } catch (const NumericalBreakdown& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kInvariantError;
  } catch (const IoError& e) {
    err << "io: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace cusplab
