#include "qhmetric/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "qhmetric/errors.hpp"
#include "qhmetric/matrix_io.hpp"

namespace qhm {

using nlohmann::json;

ModelSpec::Kind parse_model_kind(const std::string& name) {
  if (name == "two_level") return ModelSpec::Kind::TwoLevel;
  if (name == "swanson") return ModelSpec::Kind::Swanson;
  if (name == "random" || name == "random_diagonalizable") {
    return ModelSpec::Kind::RandomDiagonalizable;
  }
  throw ParseError("unknown model '" + name + "'");
}

ComplexMatrix ModelSpec::build() const {
  switch (kind) {
    case Kind::TwoLevel: return models::two_level(b, c, d);
    case Kind::Swanson: return models::swanson(dim, omega, alpha, beta);
    case Kind::RandomDiagonalizable:
      if (dim < 1) throw InvalidModelParameters("random: dimension must be positive");
      if (!(cond_bound >= 1.0)) throw InvalidModelParameters("random: cond_bound must be >= 1");
      return models::random_diagonalizable(dim, seed, cond_bound).H;
  }
  throw InvalidModelParameters("unknown model kind");
}

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json complex_list(const std::vector<Complex>& zs) {
  json out = json::array();
  for (const Complex& z : zs) out.push_back(complex_to_json(z));
  return out;
}

std::vector<Complex> complex_list_from_json(const json& j) {
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

json tolerances_to_json(const Tolerances& t) {
  return {{"spectral_reality_tol", t.spectral_reality_tol},
          {"residual_tol", t.residual_tol},
          {"degeneracy_cluster_tol", t.degeneracy_cluster_tol},
          {"positivity_floor", t.positivity_floor},
          {"condition_cap", t.condition_cap}};
}

Tolerances tolerances_from_json(const json& j) {
  Tolerances t;
  t.spectral_reality_tol = j.at("spectral_reality_tol").get<double>();
  t.residual_tol = j.at("residual_tol").get<double>();
  t.degeneracy_cluster_tol = j.at("degeneracy_cluster_tol").get<double>();
  t.positivity_floor = j.at("positivity_floor").get<double>();
  t.condition_cap = j.at("condition_cap").get<double>();
  return t;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct LoadedInput {
  ComplexMatrix H;
  json descriptor;
};

LoadedInput load_input(const AnalyzeInput& input, const AnalyzeOptions& options) {
  LoadedInput out;
  if (const auto* path = std::get_if<std::filesystem::path>(&input)) {
    out.descriptor = {{"file", path->string()}};
    out.H = io::read_matrix(*path);
  } else {
    const auto& model = std::get<ModelSpec>(input);
    out.descriptor = model.describe();
    out.H = model.build();
  }
  if (out.H.rows() > options.max_dim) {
    std::ostringstream os;
    os << "dimension " << out.H.rows() << " exceeds the configured maximum " << options.max_dim;
    throw ParseError(os.str());
  }
  return out;
}

void record_error(VerificationReport& report, const Error& e) {
  ReportError err{std::string(to_string(e.kind())), e.what(), {}, std::nullopt};
  if (const auto* cs = dynamic_cast<const ComplexSpectrum*>(&e)) err.eigenvalues = cs->offending();
  if (const auto* nd = dynamic_cast<const NonDiagonalizable*>(&e)) err.condition = nd->condition();
  if (const auto* ic = dynamic_cast<const IllConditioned*>(&e)) err.condition = ic->condition();
  const bool residual_failure =
      e.kind() == ErrorKind::ResidualExceeded || e.kind() == ErrorKind::NotHermitianEquivalent;
  report.verdict = residual_failure ? "fail" : "error";
  report.error = std::move(err);
}

void record_spectrum(VerificationReport& report, const SpectralData& spectral) {
  report.eigenvalues = spectral.eigenvalues;
  report.cond_T = spectral.cond_T;
  report.clusters = spectral.clusters;
  report.residuals["diag"] = spectral.diagonalization_residual;
}

void record_family(VerificationReport& report, const EquivalencePair& pair,
                   const AnalyzeOptions& options) {
  const CommutantBasis cb = commutant_basis(pair.h, pair.spectral->clusters, options.tol);
  report.commutant_dimension = cb.real_dimension;
  report.residuals["commutant"] = cb.max_commutator_residual;

  // Each member depends only on its own seed.
  std::vector<std::future<FamilyMemberSummary>> jobs;
  for (int i = 0; i < options.samples; ++i) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(i);
    jobs.push_back(std::async(std::launch::async, [&, seed] {
      const SymmetryGenerator S = sample_positive_symmetry(cb, seed, options.spread);
      const MetricFamilyMember member = metric_from_symmetry(pair.metric, S, pair.H, options.tol);
      return FamilyMemberSummary{seed, member.residuals,
                                 all_within(member.residuals, options.tol.residual_tol)};
    }));
  }
  for (auto& job : jobs) report.family.push_back(job.get());
  for (const auto& member : report.family) {
    for (const auto& [key, value] : member.residuals) {
      report.family_max[key] = std::max(report.family_max[key], value);
    }
  }
}

void finalize_verdict(VerificationReport& report) {
  if (report.error) return;
  const double tol = report.tolerances.residual_tol;
  bool pass = all_within(report.residuals, tol);
  for (const auto& member : report.family) pass = pass && member.pass;
  report.verdict = pass ? "pass" : "fail";
}

void record_pipeline(VerificationReport& report, const EquivalencePair& pair) {
  record_spectrum(report, *pair.spectral);
  report.eta = pair.metric.eta;
  report.rho = pair.metric.rho;
  report.h = pair.h;
  report.residuals["ph"] = pair.metric.pseudo_hermiticity_residual.value_or(0.0);
  report.residuals["H=H"] = pair.similarity_residual;
  report.residuals["h=111"] = pair.hermiticity_residual;
  report.residuals["h="] = pair.polar_residual.value_or(0.0);
  report.residuals["spectrum"] = pair.spectrum_residual.value_or(0.0);
}

}  // namespace

json ModelSpec::describe() const {
  switch (kind) {
    case Kind::TwoLevel:
      return {{"model", "two_level"}, {"b", complex_to_json(b)}, {"c", complex_to_json(c)},
              {"d", d}};
    case Kind::Swanson:
      return {{"model", "swanson"}, {"dim", dim}, {"omega", omega}, {"alpha", alpha},
              {"beta", beta}};
    case Kind::RandomDiagonalizable:
      return {{"model", "random"}, {"n", dim}, {"seed", seed}, {"cond_bound", cond_bound}};
  }
  return {};
}

int VerificationReport::exit_code() const {
  if (verdict == "pass") return 0;
  if (verdict == "fail") return 2;
  return 1;
}

void to_json(json& j, const VerificationReport& r) {
  j = json::object();
  j["format"] = "qhmetric-report";
  j["version"] = 1;
  j["command"] = r.command;
  j["timestamp"] = r.timestamp;
  j["input"] = r.input;
  j["tolerances"] = tolerances_to_json(r.tolerances);
  j["eigenvalues"] = complex_list(r.eigenvalues);
  j["cond_T"] = r.cond_T ? json(*r.cond_T) : json(nullptr);
  j["clusters"] = r.clusters;
  j["eta"] = r.eta ? io::matrix_to_json(*r.eta) : json(nullptr);
  j["rho"] = r.rho ? io::matrix_to_json(*r.rho) : json(nullptr);
  j["h"] = r.h ? io::matrix_to_json(*r.h) : json(nullptr);
  j["residuals"] = r.residuals;
  j["commutant_dimension"] = r.commutant_dimension ? json(*r.commutant_dimension) : json(nullptr);
  json members = json::array();
  json seeds = json::array();
  for (const auto& m : r.family) {
    members.push_back({{"seed", m.seed}, {"residuals", m.residuals}, {"pass", m.pass}});
    seeds.push_back(m.seed);
  }
  j["family"] = {{"count", r.family.size()}, {"seeds", seeds}, {"members", members},
                 {"max_residuals", r.family_max}};
  j["verdict"] = r.verdict;
  if (r.error) {
    j["error"] = {{"kind", r.error->kind},
                  {"message", r.error->message},
                  {"eigenvalues", complex_list(r.error->eigenvalues)},
                  {"condition", r.error->condition ? json(*r.error->condition) : json(nullptr)}};
  } else {
    j["error"] = nullptr;
  }
}

void from_json(const json& j, VerificationReport& r) {
  r = VerificationReport{};
  r.command = j.at("command").get<std::string>();
  r.timestamp = j.value("timestamp", "");
  r.input = j.at("input");
  r.tolerances = tolerances_from_json(j.at("tolerances"));
  r.eigenvalues = complex_list_from_json(j.at("eigenvalues"));
  if (!j.at("cond_T").is_null()) r.cond_T = j["cond_T"].get<double>();
  r.clusters = j.at("clusters").get<Clusters>();
  for (const char* key : {"eta", "rho", "h"}) {
    if (j.at(key).is_null()) continue;
    ComplexMatrix m = io::matrix_from_json(j[key]);
    if (std::string(key) == "eta") r.eta = std::move(m);
    else if (std::string(key) == "rho") r.rho = std::move(m);
    else r.h = std::move(m);
  }
  r.residuals = j.at("residuals").get<ResidualMap>();
  if (!j.at("commutant_dimension").is_null()) {
    r.commutant_dimension = j["commutant_dimension"].get<int>();
  }
  const json& family = j.at("family");
  for (const auto& m : family.at("members")) {
    r.family.push_back({m.at("seed").get<std::uint64_t>(), m.at("residuals").get<ResidualMap>(),
                        m.at("pass").get<bool>()});
  }
  r.family_max = family.at("max_residuals").get<ResidualMap>();
  r.verdict = j.at("verdict").get<std::string>();
  if (!j.at("error").is_null()) {
    const json& e = j["error"];
    ReportError err{e.at("kind").get<std::string>(), e.at("message").get<std::string>(),
                    complex_list_from_json(e.at("eigenvalues")), std::nullopt};
    if (!e.at("condition").is_null()) err.condition = e["condition"].get<double>();
    r.error = std::move(err);
  }
}

VerificationReport run_command(Command command, const AnalyzeInput& input,
                               const AnalyzeOptions& options) {
  VerificationReport report;
  report.command = command == Command::Analyze  ? "analyze"
                   : command == Command::Family ? "family"
                                                : "spectrum";
  report.tolerances = options.tol;
  if (options.timestamp) report.timestamp = utc_timestamp();
  try {
    options.tol.validate();
    if (options.samples < 0) throw ParseError("samples must be non-negative");
    if (const auto* path = std::get_if<std::filesystem::path>(&input)) {
      report.input = {{"file", path->string()}};
    } else {
      report.input = std::get<ModelSpec>(input).describe();
    }
    const LoadedInput loaded = load_input(input, options);

    if (command == Command::Spectrum) {
      record_spectrum(report, eig_decompose(loaded.H, options.tol));
    } else {
      const EquivalencePair pair = full_pipeline(loaded.H, options.tol);
      if (command == Command::Analyze) {
        record_pipeline(report, pair);
      } else {
        record_spectrum(report, *pair.spectral);
        report.residuals["ph"] = pair.metric.pseudo_hermiticity_residual.value_or(0.0);
      }
      record_family(report, pair, options);
    }
    finalize_verdict(report);
  } catch (const Error& e) {
    record_error(report, e);
  } catch (const std::invalid_argument& e) {
    report.verdict = "error";
    report.error = ReportError{"InvalidInput", e.what(), {}, std::nullopt};
  }
  return report;
}

VerificationReport run_analyze(const AnalyzeInput& input, const AnalyzeOptions& options) {
  return run_command(Command::Analyze, input, options);
}

VerificationReport run_family(const AnalyzeInput& input, const AnalyzeOptions& options) {
  return run_command(Command::Family, input, options);
}

VerificationReport run_spectrum(const AnalyzeInput& input, const AnalyzeOptions& options) {
  return run_command(Command::Spectrum, input, options);
}

void write_report(const VerificationReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << json(report).dump(2) << '\n';
}

VerificationReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in).get<VerificationReport>();
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Tolerances apply_tolerance_overrides(Tolerances base, const std::string& spec) {
  std::string normalized = spec;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream tokens(normalized);
  std::string token;
  while (tokens >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ParseError("tolerance override '" + token + "' lacks '='");
    const std::string key = token.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(token.substr(eq + 1), &used);
      if (used != token.size() - eq - 1) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError("tolerance override '" + token + "' has a malformed value");
    }
    if (key == "spectral_reality_tol") base.spectral_reality_tol = value;
    else if (key == "residual_tol") base.residual_tol = value;
    else if (key == "degeneracy_cluster_tol") base.degeneracy_cluster_tol = value;
    else if (key == "positivity_floor") base.positivity_floor = value;
    else if (key == "condition_cap") base.condition_cap = value;
    else throw ParseError("unknown tolerance '" + key + "'");
  }
  return base;
}

}  // namespace qhm
