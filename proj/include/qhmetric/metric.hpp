#pragma once

#include <optional>

#include "qhmetric/linalg.hpp"
#include "qhmetric/spectral.hpp"

namespace qhm {

/// Positive-definite metric η₊ with its positive square root ρ.
struct MetricOperator {
  ComplexMatrix eta;
  ComplexMatrix rho;
  double min_eigenvalue = 0.0;
  double hermiticity_residual = 0.0;  // ‖η − η†‖ / ‖η‖ before symmetrization
  double sqrt_residual = 0.0;         // ‖ρ² − η‖ / ‖η‖
  /// ‖H†η − ηH‖ / (‖η‖·‖H‖); set once the metric is certified against H.
  std::optional<double> pseudo_hermiticity_residual;
};

/// H together with its Hermitian equivalent h = ρ·H·ρ⁻¹.
struct EquivalencePair {
  ComplexMatrix H;
  ComplexMatrix h;
  MetricOperator metric;
  std::optional<ComplexMatrix> U;        // polar unitary of T
  std::optional<SpectralData> spectral;  // when produced by full_pipeline
  double hermiticity_residual = 0.0;     // ‖h − h†‖ / ‖h‖ before symmetrization
  double similarity_residual = 0.0;      // ‖ρH − hρ‖ / (‖ρ‖·‖H‖)
  std::optional<double> spectrum_residual;  // max |λ_h − λ_H| / ‖H‖
  std::optional<double> polar_residual;     // ‖U†H_dU − h‖ / ‖H‖
};

/// η₊ = T†T and ρ = sqrt_pd(η₊). Throws SingularTransform when η₊ is not
/// positive-definite above positivity_floor.
MetricOperator metric_from_T(const ComplexMatrix& T, const Tolerances& tol = {});

/// ‖H†η − ηH‖ / (‖η‖·‖H‖).
double verify_pseudo_hermitian(const ComplexMatrix& H, const ComplexMatrix& eta);

/// Records the pseudo-Hermiticity residual of `metric` against H; throws
/// ResidualExceeded("ph") above residual_tol.
void certify_metric(MetricOperator& metric, const ComplexMatrix& H,
                    const Tolerances& tol = {});

/// h = ρ·H·ρ⁻¹ (via a linear solve), gated on Hermiticity and then
/// symmetrized. Throws NotHermitianEquivalent if h is not Hermitian.
EquivalencePair hermitian_equivalent(const ComplexMatrix& H, const MetricOperator& metric,
                                     const Tolerances& tol = {});

/// As above, and additionally checks isospectrality against the certified
/// spectrum and recovers the polar unitary U of T, comparing U†H_dU with h.
EquivalencePair hermitian_equivalent(const ComplexMatrix& H, const MetricOperator& metric,
                                     const SpectralData& spectral,
                                     const Tolerances& tol = {});

/// eig_decompose → metric_from_T → certify_metric → hermitian_equivalent.
EquivalencePair full_pipeline(const ComplexMatrix& H, const Tolerances& tol = {});

}  // namespace qhm
