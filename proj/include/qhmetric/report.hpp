#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qhmetric/models.hpp"
#include "qhmetric/symmetry.hpp"

namespace qhm {

/// A Hamiltonian described by one of the built-in model generators.
struct ModelSpec {
  enum class Kind { TwoLevel, Swanson, RandomDiagonalizable };

  Kind kind = Kind::TwoLevel;
  // two_level
  Complex b{1.0, 0.0};
  Complex c{1.0, 0.0};
  double d = 0.0;
  // swanson
  int dim = 20;
  double omega = 2.0;
  double alpha = 0.3;
  double beta = 0.5;
  // random_diagonalizable (dim doubles as n)
  std::uint64_t seed = 0;
  double cond_bound = 100.0;

  ComplexMatrix build() const;
  nlohmann::json describe() const;
};

ModelSpec::Kind parse_model_kind(const std::string& name);

using AnalyzeInput = std::variant<std::filesystem::path, ModelSpec>;

enum class Command { Analyze, Family, Spectrum };

struct AnalyzeOptions {
  Tolerances tol;
  int samples = 5;
  std::uint64_t seed = 0;
  double spread = 10.0;
  int max_dim = 512;
  std::optional<std::filesystem::path> out;
  bool timestamp = true;
};

struct ReportError {
  std::string kind;
  std::string message;
  std::vector<Complex> eigenvalues;  // offending eigenvalues, if any
  std::optional<double> condition;
};

struct FamilyMemberSummary {
  std::uint64_t seed = 0;
  ResidualMap residuals;
  bool pass = false;
};

/// Everything a CLI run certified, in the form written to disk.
struct VerificationReport {
  std::string command;
  nlohmann::json input;
  Tolerances tolerances;
  std::vector<Complex> eigenvalues;
  std::optional<double> cond_T;
  Clusters clusters;
  std::optional<ComplexMatrix> eta;
  std::optional<ComplexMatrix> rho;
  std::optional<ComplexMatrix> h;
  ResidualMap residuals;
  std::optional<int> commutant_dimension;
  std::vector<FamilyMemberSummary> family;
  ResidualMap family_max;
  std::string verdict;  // "pass", "fail" or "error"
  std::optional<ReportError> error;
  std::string timestamp;

  /// 0 on pass, 2 on a residual failure, 1 on input or spectral errors.
  int exit_code() const;
};

void to_json(nlohmann::json& j, const VerificationReport& r);
void from_json(const nlohmann::json& j, VerificationReport& r);

VerificationReport run_command(Command command, const AnalyzeInput& input,
                               const AnalyzeOptions& options);

/// Full pipeline, commutant and `samples` family members.
VerificationReport run_analyze(const AnalyzeInput& input, const AnalyzeOptions& options);

/// Symmetry-generator sampling only: pipeline metric plus family residuals.
VerificationReport run_family(const AnalyzeInput& input, const AnalyzeOptions& options);

/// Spectral diagnostics only.
VerificationReport run_spectrum(const AnalyzeInput& input, const AnalyzeOptions& options);

void write_report(const VerificationReport& report, const std::filesystem::path& path);
VerificationReport read_report(const std::filesystem::path& path);

/// Applies "key=value" pairs separated by commas or whitespace, e.g.
/// "residual_tol=1e-9,condition_cap=1e6". Throws ParseError on unknown keys.
Tolerances apply_tolerance_overrides(Tolerances base, const std::string& spec);

/// Name of the environment variable read by the CLI.
inline constexpr const char* kToleranceEnvVar = "QHMETRIC_TOLERANCES";

}  // namespace qhm
