#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cusplab/error.hpp"
#include "cusplab/harness.hpp"

using namespace cusplab;

namespace {

void add_matrix_options(CLI::App* app, ExperimentConfig& cfg) {
  app->add_option("--ell", cfg.ell, "number of linear forms")->check(CLI::PositiveNumber);
  app->add_option("--m", cfg.m, "number of variables")->check(CLI::PositiveNumber);
  app->add_option("--preset", cfg.preset, "golden | identity | liouville[:k=K,alpha=A] | rational:a/b,... | random[:seed=S]");
  app->add_option("--matrix-file", cfg.matrix_file, "text file: header 'ell m', then ell rows of m tokens");
  app->add_option("--entries", cfg.entries, "row-major decimal or a/b entries");
}

void add_common_options(CLI::App* app, ExperimentConfig& cfg, std::string& format) {
  app->add_option("--precision-bits", cfg.precision_bits, "MPFR mantissa bits")->capture_default_str();
  app->add_option("--format", format, "csv | json")->capture_default_str();
  app->add_option("--out", cfg.out, "output path (default stdout)");
  app->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cusp excursions of diagonal trajectories and Diophantine transference"};
  app.require_subcommand(1);
  ExperimentConfig cfg;
  std::string format = "csv";

  auto* trace = app.add_subcommand("trace", "heights h1 and hTop along the trajectory of a matrix");
  add_matrix_options(trace, cfg);
  add_common_options(trace, cfg, format);
  trace->add_option("--t-max", cfg.t_max, "trajectory horizon")->capture_default_str();
  trace->add_option("--samples", cfg.samples, "number of grid intervals")->capture_default_str();
  trace->add_option("--slack-constant", cfg.slack_constant, "constant C in the slack columns")->capture_default_str();

  auto* search = app.add_subcommand("search", "primitive solutions of |Lq - p| <= Phi(|q|)");
  add_matrix_options(search, cfg);
  add_common_options(search, cfg, format);
  search->add_option("--bound", cfg.bound, "search bound on |q|_max")->capture_default_str();
  search->add_option("--phi", cfg.phi, "pow:c=<dec>,e=<dec> (default: the Dirichlet function)");
  search->add_flag("--all-p", cfg.all_p, "report every p within the bound, not only the nearest");

  auto* transfer = app.add_subcommand("transfer", "exponent and function transference");
  transfer->add_option("--ell", cfg.ell, "number of linear forms")->required()->check(CLI::PositiveNumber);
  transfer->add_option("--m", cfg.m, "number of variables")->required()->check(CLI::PositiveNumber);
  transfer->add_option("--alpha", cfg.alpha, "approximation exponent of L");
  transfer->add_option("--phi", cfg.phi, "pow:c=<dec>,e=<dec> | affine:s=<dec>,b=<dec>");
  transfer->add_option("--slack-constant", cfg.slack_constant, "additive constant C")->capture_default_str();
  add_common_options(transfer, cfg, format);

  auto* verify = app.add_subcommand("verify", "named property suites");
  verify->add_option("--suite", cfg.suite, "chamber | busemann | svp-oracle | transference-pipeline | correspondence | all");
  add_common_options(verify, cfg, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    cfg.format = parse_format(format);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  if (*trace) cfg.command = Command::trace;
  if (*search) cfg.command = Command::search;
  if (*transfer) cfg.command = Command::transfer;
  if (*verify) cfg.command = Command::verify;
  return run_experiment(cfg, std::cout, std::cerr);
}
