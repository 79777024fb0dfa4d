#include "qhmetric/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qhmetric/errors.hpp"

namespace qhm {

MetricOperator metric_from_T(const ComplexMatrix& T, const Tolerances& tol) {
  require_well_formed(T);
  MetricOperator m;
  const ComplexMatrix gram = T.adjoint() * T;
  m.hermiticity_residual = hermiticity_residual(gram);
  m.eta = (gram + gram.adjoint()) / 2.0;

  const HermitianEig eig = hermitian_eig(m.eta, tol);
  m.min_eigenvalue = eig.eigenvalues(0);
  const double floor = tol.positivity_floor * m.eta.norm();
  if (!(m.min_eigenvalue > floor)) {
    std::ostringstream os;
    os << "T is numerically singular: smallest eigenvalue of T†T is " << m.min_eigenvalue;
    throw SingularTransform(os.str());
  }
  m.rho = sqrt_pd(m.eta, tol);
  m.sqrt_residual = relative((m.rho * m.rho - m.eta).norm(), m.eta.norm());
  return m;
}

double verify_pseudo_hermitian(const ComplexMatrix& H, const ComplexMatrix& eta) {
  return relative((H.adjoint() * eta - eta * H).norm(), eta.norm() * H.norm());
}

void certify_metric(MetricOperator& metric, const ComplexMatrix& H, const Tolerances& tol) {
  const double r = verify_pseudo_hermitian(H, metric.eta);
  metric.pseudo_hermiticity_residual = r;
  if (r > tol.residual_tol) throw ResidualExceeded("ph", r, tol.residual_tol);
}

EquivalencePair hermitian_equivalent(const ComplexMatrix& H, const MetricOperator& metric,
                                     const Tolerances& tol) {
  require_well_formed(H);
  EquivalencePair pair;
  pair.H = H;
  pair.metric = metric;

  const ComplexMatrix& rho = metric.rho;
  // h = ρHρ⁻¹ solves h·ρ = ρ·H.
  const ComplexMatrix h = solve_right_hermitian(rho, rho * H, tol);
  pair.hermiticity_residual = hermiticity_residual(h);
  if (pair.hermiticity_residual > tol.residual_tol) {
    std::ostringstream os;
    os << "ρHρ⁻¹ is not Hermitian: relative residual " << pair.hermiticity_residual;
    throw NotHermitianEquivalent(os.str());
  }
  pair.h = (h + h.adjoint()) / 2.0;
  pair.similarity_residual =
      relative((rho * H - pair.h * rho).norm(), rho.norm() * H.norm());
  if (pair.similarity_residual > tol.residual_tol) {
    throw ResidualExceeded("H=H", pair.similarity_residual, tol.residual_tol);
  }
  return pair;
}

EquivalencePair hermitian_equivalent(const ComplexMatrix& H, const MetricOperator& metric,
                                     const SpectralData& spectral, const Tolerances& tol) {
  EquivalencePair pair = hermitian_equivalent(H, metric, tol);
  const double scale = std::max(H.norm(), kZeroNorm);

  const HermitianEig eig = hermitian_eig(pair.h, tol);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    worst = std::max(worst, std::abs(eig.eigenvalues(i) - spectral.H_d(i)));
  }
  pair.spectrum_residual = relative(worst, scale);
  if (*pair.spectrum_residual > tol.residual_tol) {
    throw ResidualExceeded("spectrum", *pair.spectrum_residual, tol.residual_tol);
  }

  PolarFactors polar = polar_decompose(spectral.T, tol);
  const ComplexMatrix from_polar =
      polar.unitary.adjoint() * spectral.diagonal() * polar.unitary;
  pair.polar_residual = relative((from_polar - pair.h).norm(), H.norm());
  if (*pair.polar_residual > tol.residual_tol) {
    throw ResidualExceeded("h=", *pair.polar_residual, tol.residual_tol);
  }
  pair.U = std::move(polar.unitary);
  pair.spectral = spectral;
  return pair;
}

EquivalencePair full_pipeline(const ComplexMatrix& H, const Tolerances& tol) {
  const SpectralData spectral = eig_decompose(H, tol);
  MetricOperator metric = metric_from_T(spectral.T, tol);
  certify_metric(metric, H, tol);
  return hermitian_equivalent(H, metric, spectral, tol);
}

}  // namespace qhm
