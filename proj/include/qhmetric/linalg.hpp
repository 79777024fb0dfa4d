#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qhmetric/tolerances.hpp"

namespace qhm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Matrices with Frobenius norm below this are treated as zero by the
/// relative residual helpers.
inline constexpr double kZeroNorm = 1e-300;

/// Throws std::invalid_argument unless `m` is non-empty, square and finite.
void require_well_formed(const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& m);

/// ‖a‖ / scale, falling back to the absolute value when scale is below
/// kZeroNorm.
double relative(double numerator, double scale);

/// ‖M − M†‖ / ‖M‖.
double hermiticity_residual(const ComplexMatrix& m);

/// Returns (M + M†)/2, or throws NotHermitian if ‖M − M†‖ exceeds
/// residual_tol·‖M‖.
ComplexMatrix symmetrize_checked(const ComplexMatrix& m, const Tolerances& tol);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEig {
  RealVector eigenvalues;  // ascending
  ComplexMatrix vectors;   // unitary, columns are eigenvectors
};

HermitianEig hermitian_eig(const ComplexMatrix& m, const Tolerances& tol);

/// Unique Hermitian positive-definite square root.
ComplexMatrix sqrt_pd(const ComplexMatrix& m, const Tolerances& tol);

struct PolarFactors {
  ComplexMatrix unitary;
  ComplexMatrix rho;  // |T| = sqrt(T†T)
};

/// T = U·ρ with ρ = sqrt(T†T) and U = T·ρ⁻¹.
PolarFactors polar_decompose(const ComplexMatrix& t, const Tolerances& tol);

/// Solves M·X = rhs by partial-pivot LU. Throws SingularTransform for an
/// exactly singular M and IllConditioned when the reciprocal condition
/// estimate exceeds condition_cap.
ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& rhs,
                    const Tolerances& tol = {});

/// X·M = rhs, i.e. rhs·M⁻¹, for Hermitian M.
ComplexMatrix solve_right_hermitian(const ComplexMatrix& m, const ComplexMatrix& rhs,
                                    const Tolerances& tol = {});

/// 2-norm condition number σ_max/σ_min (infinity if singular).
double condition_number(const ComplexMatrix& m);

}  // namespace qhm
