#pragma once

#include <vector>

#include "qhmetric/linalg.hpp"

namespace qhm {

/// Groups of indices into an ascending eigenvalue list; each group is a
/// contiguous run of numerically coincident eigenvalues.
using Clusters = std::vector<std::vector<int>>;

/// Diagonalization H = T⁻¹·H_d·T with the rows of T left eigenvectors.
struct SpectralData {
  std::vector<Complex> eigenvalues;  // raw solver output, ascending by (re, im)
  ComplexMatrix T;                   // unit rows, leading entry real positive
  RealVector H_d;                    // certified-real diagonal of H_d
  double cond_T = 1.0;
  Clusters clusters;
  double diagonalization_residual = 0.0;  // ‖T·H − H_d·T‖ / (‖H‖·‖T‖)
  double max_imaginary = 0.0;             // max |Im λ| / max(|λ|, 1)

  ComplexMatrix diagonal() const;
};

/// Diagonalizes a general matrix and certifies a real spectrum and a
/// well-conditioned eigenbasis.
///
/// Left eigenvectors are taken as conjugated right eigenvectors of H†. Rows
/// are normalized to unit length and phase-fixed so that the first entry of
/// non-negligible magnitude is real positive. Rows belonging to a degenerate
/// cluster are replaced by an orthonormal basis of the cluster's left
/// eigenspace, so the resulting metric T†T does not depend on the solver's
/// arbitrary choice inside the eigenspace.
///
/// Throws ComplexSpectrum when some |Im λ| exceeds
/// spectral_reality_tol·max(|λ|, 1), and NonDiagonalizable when a cluster's
/// eigenspace is rank-deficient or cond(T) exceeds condition_cap.
SpectralData eig_decompose(const ComplexMatrix& H, const Tolerances& tol = {});

/// Partitions an ascending real list: neighbours whose gap is at most
/// degeneracy_cluster_tol·max(spread, 1) share a cluster.
Clusters cluster_degeneracies(const std::vector<double>& eigenvalues,
                              const Tolerances& tol = {});

/// Normalizes each row to unit length and makes its leading entry real
/// positive.
void normalize_rows(ComplexMatrix& t);

}  // namespace qhm
