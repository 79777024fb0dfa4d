#pragma once

#include <random>

#include "qhmetric/linalg.hpp"

namespace qhm {

using Rng = std::mt19937_64;

/// n×n matrix with independent standard complex Gaussian entries.
ComplexMatrix gaussian_matrix(int n, Rng& rng);

/// Haar-distributed unitary (QR of a Gaussian matrix with the phases of R's
/// diagonal divided out).
ComplexMatrix haar_unitary(int n, Rng& rng);

/// exp(uniform(log lo, log hi)).
double log_uniform(double lo, double hi, Rng& rng);

}  // namespace qhm
