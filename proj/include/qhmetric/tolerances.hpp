#pragma once

namespace qhm {

/// Relative thresholds shared by every certification gate.
struct Tolerances {
  double spectral_reality_tol = 1e-9;
  double residual_tol = 1e-8;
  double degeneracy_cluster_tol = 1e-7;
  double positivity_floor = 1e-10;
  double condition_cap = 1e8;

  /// Throws std::invalid_argument unless all fields are positive and
  /// condition_cap > 1.
  void validate() const;
};

}  // namespace qhm
