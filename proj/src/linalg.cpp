#include "qhmetric/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qhmetric/errors.hpp"

namespace qhm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::SingularTransform: return "SingularTransform";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::ComplexSpectrum: return "ComplexSpectrum";
    case ErrorKind::NonDiagonalizable: return "NonDiagonalizable";
    case ErrorKind::NotHermitianEquivalent: return "NotHermitianEquivalent";
    case ErrorKind::ResidualExceeded: return "ResidualExceeded";
    case ErrorKind::InvalidModelParameters: return "InvalidModelParameters";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string residual_message(const std::string& identity, double residual, double tolerance) {
  std::ostringstream os;
  os << "identity '" << identity << "' residual " << residual << " exceeds " << tolerance;
  return os.str();
}

}  // namespace

ResidualExceeded::ResidualExceeded(std::string identity, double residual, double tolerance)
    : Error(ErrorKind::ResidualExceeded, residual_message(identity, residual, tolerance)),
      identity_(std::move(identity)),
      residual_(residual) {}

void Tolerances::validate() const {
  if (!(spectral_reality_tol > 0) || !(residual_tol > 0) || !(degeneracy_cluster_tol > 0) ||
      !(positivity_floor > 0) || !(condition_cap > 1)) {
    throw std::invalid_argument(
        "tolerances must be strictly positive and condition_cap must exceed 1");
  }
}

void require_well_formed(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument("matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

double relative(double numerator, double scale) {
  return scale < kZeroNorm ? numerator : numerator / scale;
}

double hermiticity_residual(const ComplexMatrix& m) {
  return relative((m - m.adjoint()).norm(), m.norm());
}

ComplexMatrix symmetrize_checked(const ComplexMatrix& m, const Tolerances& tol) {
  require_well_formed(m);
  const double r = hermiticity_residual(m);
  if (r > tol.residual_tol) {
    std::ostringstream os;
    os << "matrix is not Hermitian: relative residual " << r;
    throw NotHermitian(os.str());
  }
  return (m + m.adjoint()) / 2.0;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

HermitianEig hermitian_eig(const ComplexMatrix& m, const Tolerances& tol) {
  const ComplexMatrix sym = symmetrize_checked(m, tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

ComplexMatrix spectral_function(const HermitianEig& eig, const RealVector& values) {
  ComplexMatrix r = eig.vectors * values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return (r + r.adjoint()) / 2.0;
}

}  // namespace

ComplexMatrix sqrt_pd(const ComplexMatrix& m, const Tolerances& tol) {
  const HermitianEig eig = hermitian_eig(m, tol);
  const double floor = tol.positivity_floor * m.norm();
  const double lowest = eig.eigenvalues(0);
  if (!(lowest > floor)) {
    std::ostringstream os;
    os << "smallest eigenvalue " << lowest << " is below the positivity floor " << floor;
    throw NotPositiveDefinite(os.str());
  }
  return spectral_function(eig, eig.eigenvalues.cwiseSqrt());
}

PolarFactors polar_decompose(const ComplexMatrix& t, const Tolerances& tol) {
  require_well_formed(t);
  const double norm = t.norm();
  const RealVector singular = Eigen::BDCSVD<ComplexMatrix>(t).singularValues();
  const double smallest = singular(singular.size() - 1);
  if (!(smallest > tol.positivity_floor * norm)) {
    std::ostringstream os;
    os << "transform is numerically singular: smallest singular value " << smallest;
    throw SingularTransform(os.str());
  }
  // Eigenvalues of T†T are the squared singular values, so the floor applies
  // squared here.
  Tolerances gram_tol = tol;
  gram_tol.positivity_floor = tol.positivity_floor * tol.positivity_floor;
  ComplexMatrix rho = sqrt_pd(t.adjoint() * t, gram_tol);
  ComplexMatrix unitary = solve_right_hermitian(rho, t, tol);
  return {std::move(unitary), std::move(rho)};
}

ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& rhs, const Tolerances& tol) {
  require_well_formed(m);
  if (rhs.rows() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Eigen::PartialPivLU<ComplexMatrix> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > 0) || !std::isfinite(rcond)) {
    throw SingularTransform("solve: matrix is singular");
  }
  if (1.0 / rcond > tol.condition_cap) {
    std::ostringstream os;
    os << "solve: condition estimate " << 1.0 / rcond << " exceeds cap " << tol.condition_cap;
    throw IllConditioned(os.str(), 1.0 / rcond);
  }
  ComplexMatrix x = lu.solve(rhs);
  if (!x.allFinite()) throw SingularTransform("solve: non-finite solution");
  return x;
}

ComplexMatrix solve_right_hermitian(const ComplexMatrix& m, const ComplexMatrix& rhs,
                                    const Tolerances& tol) {
  return solve(m, rhs.adjoint(), tol).adjoint();
}

double condition_number(const ComplexMatrix& m) {
  const RealVector s = Eigen::BDCSVD<ComplexMatrix>(m).singularValues();
  const double smallest = s(s.size() - 1);
  if (!(smallest > 0)) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

}  // namespace qhm
