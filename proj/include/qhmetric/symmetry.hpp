#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qhmetric/metric.hpp"
#include "qhmetric/spectral.hpp"

namespace qhm {

/// Named residuals, keyed by the identity they check.
using ResidualMap = std::map<std::string, double>;

/// Real basis of the Hermitian commutant {X = X† : [X, h] = 0}.
struct CommutantBasis {
  ComplexMatrix h;
  ComplexMatrix eigenvectors;  // columns, grouped by cluster
  Clusters clusters;
  std::vector<ComplexMatrix> basis;
  std::vector<ComplexMatrix> projectors;  // one per cluster
  int real_dimension = 0;
  double max_commutator_residual = 0.0;
  double projector_residual = 0.0;
};

CommutantBasis commutant_basis(const ComplexMatrix& h, const Clusters& clusters,
                               const Tolerances& tol = {});

/// Clusters h's own eigenvalues first.
CommutantBasis commutant_basis(const ComplexMatrix& h, const Tolerances& tol = {});

/// Positive spectrum and unitary mixer for one degeneracy cluster.
struct ClusterCoefficients {
  std::vector<double> values;  // d_k positive numbers
  ComplexMatrix mixer;         // d_k × d_k unitary
};

struct SymmetryGenerator {
  ComplexMatrix S;
  ComplexMatrix sigma;  // sqrt(S)
  std::vector<ClusterCoefficients> coefficients;
  double commutation_residual = 0.0;  // ‖[S, h]‖ / (‖S‖·‖h‖)
  double sqrt_residual = 0.0;         // ‖σ² − S‖ / ‖S‖
};

/// S = Σ_k V_k·W_k·diag(s_k)·W_k†·V_k† in the eigenbasis V of h. Throws
/// NotPositiveDefinite for non-positive coefficients and
/// std::invalid_argument for shape mismatches.
SymmetryGenerator symmetry_from_coefficients(const CommutantBasis& cb,
                                             std::vector<ClusterCoefficients> coefficients);

/// Draws coefficients log-uniformly from [1/spread, spread] and Haar-random
/// mixers for each cluster. Deterministic in (seed, spread).
SymmetryGenerator sample_positive_symmetry(const CommutantBasis& cb, std::uint64_t seed,
                                           double spread = 10.0);

/// One member η′₊ = ρSρ of the metric family with every intermediate operator.
struct MetricFamilyMember {
  SymmetryGenerator S;
  MetricOperator eta_prime;
  ComplexMatrix rho_prime;
  ComplexMatrix h_prime;
  ComplexMatrix A;
  ComplexMatrix U;
  ComplexMatrix B;
  ResidualMap residuals;
};

/// Builds η′₊ = ρSρ, ρ′ = sqrt(η′₊), A = ρ′ρ⁻¹, U = Aσ⁻¹, B = ρU and records
/// the residual of each identity relating them. Residuals are recorded, not
/// enforced; see all_within().
MetricFamilyMember metric_from_symmetry(const MetricOperator& metric,
                                        const SymmetryGenerator& S,
                                        const ComplexMatrix& H,
                                        const Tolerances& tol = {});

struct Intertwiner {
  ComplexMatrix A;
  ComplexMatrix S;
  ResidualMap residuals;
};

/// A = ρ′ρ⁻¹ and S = A†A for two metrics of the same H. Throws
/// ResidualExceeded naming the first identity above residual_tol.
Intertwiner intertwiner_from_metrics(const ComplexMatrix& rho, const ComplexMatrix& rho_prime,
                                     const ComplexMatrix& h, const ComplexMatrix& h_prime,
                                     const Tolerances& tol = {});

/// Diagnostic residuals "B-ph" (‖B† − σBσ⁻¹‖/‖B‖) and "eta=BB" (‖BB† − η‖/‖η‖).
ResidualMap verify_B_relations(const ComplexMatrix& B, const ComplexMatrix& sigma,
                               const ComplexMatrix& eta, const Tolerances& tol = {});

/// The identity keys every family member carries.
const std::vector<std::string>& family_identity_keys();

bool all_within(const ResidualMap& residuals, double tol);

}  // namespace qhm
