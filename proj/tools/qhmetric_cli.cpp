// qhmetric: metric operators and Hermitian equivalents of quasi-Hermitian
// matrix Hamiltonians.
//
//   qhmetric analyze  <input.json> | --model NAME [model flags] [options]
//   qhmetric family   ...   symmetry-generator sampling only
//   qhmetric spectrum ...   spectral diagnostics only
//
// Exit codes: 0 every residual within tolerance, 2 some residual failed,
// 1 input or spectral error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qhmetric/errors.hpp"
#include "qhmetric/report.hpp"

namespace {

struct CommandArgs {
  std::string input;
  std::string model;
  qhm::ModelSpec spec;
  double b_im = 0.0;
  double c_im = 0.0;
  double b_re = 1.0;
  double c_re = 1.0;
  std::optional<double> residual_tol;
  std::string out;
  bool no_timestamp = false;
  qhm::AnalyzeOptions options;
};

void add_common(CLI::App* sub, CommandArgs& a) {
  sub->add_option("input", a.input, "Matrix file ({\"dim\", \"entries\": [[re, im], ...]})");
  sub->add_option("--model", a.model, "Built-in model instead of a file")
      ->check(CLI::IsMember({"two_level", "swanson", "random", "random_diagonalizable"}));
  sub->add_option("--b", a.b_re, "two_level: real part of the upper off-diagonal");
  sub->add_option("--b-im", a.b_im, "two_level: imaginary part of b");
  sub->add_option("--c", a.c_re, "two_level: real part of the lower off-diagonal");
  sub->add_option("--c-im", a.c_im, "two_level: imaginary part of c");
  sub->add_option("--d", a.spec.d, "two_level: diagonal shift");
  sub->add_option("--dim", a.spec.dim, "swanson truncation / random matrix size");
  sub->add_option("--omega", a.spec.omega, "swanson: frequency");
  sub->add_option("--alpha", a.spec.alpha, "swanson: a² coefficient");
  sub->add_option("--beta", a.spec.beta, "swanson: a†² coefficient");
  sub->add_option("--model-seed", a.spec.seed, "random: generator seed");
  sub->add_option("--cond-bound", a.spec.cond_bound, "random: condition bound of T0");
  sub->add_option("--tol", a.residual_tol, "Residual tolerance");
  sub->add_option("--samples", a.options.samples, "Number of sampled symmetry generators");
  sub->add_option("--seed", a.options.seed, "Seed of the first sampled generator");
  sub->add_option("--spread", a.options.spread, "Symmetry coefficient range [1/s, s]");
  sub->add_option("--max-dim", a.options.max_dim, "Largest accepted dimension");
  sub->add_option("--out", a.out, "Report path (stdout when omitted)");
  sub->add_flag("--no-timestamp", a.no_timestamp, "Leave the report timestamp empty");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric operators for quasi-Hermitian matrix Hamiltonians"};
  app.require_subcommand(1);
  CommandArgs args;
  CLI::App* analyze = app.add_subcommand("analyze", "Pipeline, commutant and metric family");
  CLI::App* family = app.add_subcommand("family", "Symmetry-generator sampling only");
  CLI::App* spectrum = app.add_subcommand("spectrum", "Spectral diagnostics only");
  for (CLI::App* sub : {analyze, family, spectrum}) add_common(sub, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  qhm::AnalyzeOptions options = args.options;
  try {
    if (const char* env = std::getenv(qhm::kToleranceEnvVar)) {
      options.tol = qhm::apply_tolerance_overrides(options.tol, env);
    }
  } catch (const qhm::ParseError& e) {
    std::cerr << qhm::kToleranceEnvVar << ": " << e.what() << '\n';
    return 1;
  }
  if (args.residual_tol) options.tol.residual_tol = *args.residual_tol;
  options.timestamp = !args.no_timestamp;

  qhm::AnalyzeInput input;
  if (!args.model.empty()) {
    if (!args.input.empty()) {
      std::cerr << "give either an input file or --model, not both\n";
      return 1;
    }
    qhm::ModelSpec spec = args.spec;
    spec.kind = qhm::parse_model_kind(args.model);
    spec.b = {args.b_re, args.b_im};
    spec.c = {args.c_re, args.c_im};
    input = spec;
  } else if (!args.input.empty()) {
    input = std::filesystem::path(args.input);
  } else {
    std::cerr << "an input file or --model is required\n";
    return 1;
  }

  const qhm::Command command = analyze->parsed()  ? qhm::Command::Analyze
                               : family->parsed() ? qhm::Command::Family
                                                  : qhm::Command::Spectrum;
  const qhm::VerificationReport report = qhm::run_command(command, input, options);
  if (args.out.empty()) {
    std::cout << nlohmann::json(report).dump(2) << '\n';
  } else {
    try {
      qhm::write_report(report, args.out);
    } catch (const std::exception& e) {
      std::cerr << e.what() << '\n';
      return 1;
    }
  }
  if (report.error) {
    std::cerr << report.error->kind << ": " << report.error->message << '\n';
  }
  return report.exit_code();
}
