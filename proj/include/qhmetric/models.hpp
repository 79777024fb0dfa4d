#pragma once

#include <cstdint>

#include "qhmetric/linalg.hpp"
#include "qhmetric/spectral.hpp"

namespace qhm::models {

/// d·I + [[0, b], [c, 0]] with spectrum d ± sqrt(bc). Requires bc real
/// positive, or b = conj(c).
ComplexMatrix two_level(Complex b, Complex c, double d);

/// Number-basis truncation of ω(a†a + 1/2) + α a² + β a†².
ComplexMatrix swanson(int dim, double omega, double alpha, double beta);

struct RandomModel {
  ComplexMatrix H;
  SpectralData ground_truth;
  RealVector D;         // diagonal in generation order
  ComplexMatrix T0;     // generating transform, H = T0⁻¹·D·T0
};

/// H = T0⁻¹·D·T0 with D real (entries in [-5, 5]) and
/// T0 = W1·diag(s)·W2, W Haar unitaries and s log-uniform in [1, cond_bound].
RandomModel random_diagonalizable(int n, std::uint64_t seed, double cond_bound = 100.0);

}  // namespace qhm::models
