#include "qhmetric/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qhmetric/errors.hpp"

namespace qhm {

namespace {

// Entries of a unit row below this magnitude are skipped when choosing the
// phase-fixing entry.
constexpr double kPhaseThreshold = 1e-8;

}  // namespace

ComplexMatrix SpectralData::diagonal() const {
  return H_d.cast<Complex>().asDiagonal();
}

void normalize_rows(ComplexMatrix& t) {
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const double norm = t.row(i).norm();
    if (norm == 0.0) continue;
    t.row(i) /= norm;
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      const Complex z = t(i, j);
      if (std::abs(z) > kPhaseThreshold) {
        t.row(i) *= std::conj(z) / std::abs(z);
        t(i, j) = Complex(std::abs(z), 0.0);
        break;
      }
    }
  }
}

Clusters cluster_degeneracies(const std::vector<double>& eigenvalues, const Tolerances& tol) {
  Clusters clusters;
  if (eigenvalues.empty()) return clusters;
  const double spread = eigenvalues.back() - eigenvalues.front();
  const double threshold = tol.degeneracy_cluster_tol * std::max(spread, 1.0);
  clusters.push_back({0});
  for (std::size_t i = 1; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] - eigenvalues[i - 1] <= threshold) {
      clusters.back().push_back(static_cast<int>(i));
    } else {
      clusters.push_back({static_cast<int>(i)});
    }
  }
  return clusters;
}

SpectralData eig_decompose(const ComplexMatrix& H, const Tolerances& tol) {
  require_well_formed(H);
  tol.validate();
  const Eigen::Index n = H.rows();

  // Right eigenvectors of H† are conjugated left eigenvectors of H.
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(H.adjoint(), true);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed to converge");
  }

  std::vector<Complex> lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) lambda[i] = std::conj(solver.eigenvalues()(i));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (lambda[a].real() != lambda[b].real()) return lambda[a].real() < lambda[b].real();
    return lambda[a].imag() < lambda[b].imag();
  });

  SpectralData out;
  out.eigenvalues.reserve(n);
  out.T.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues.push_back(lambda[order[i]]);
    out.T.row(i) = solver.eigenvectors().col(order[i]).adjoint();
  }

  std::vector<Complex> offending;
  for (const Complex& z : out.eigenvalues) {
    const double scaled = std::abs(z.imag()) / std::max(std::abs(z), 1.0);
    out.max_imaginary = std::max(out.max_imaginary, scaled);
    if (scaled > tol.spectral_reality_tol) offending.push_back(z);
  }
  if (!offending.empty()) {
    std::ostringstream os;
    os << "spectrum is not real:";
    for (const Complex& z : offending) os << " (" << z.real() << (z.imag() < 0 ? "" : "+")
                                          << z.imag() << "i)";
    throw ComplexSpectrum(os.str(), std::move(offending));
  }

  std::vector<double> real_parts(n);
  for (Eigen::Index i = 0; i < n; ++i) real_parts[i] = out.eigenvalues[i].real();
  out.clusters = cluster_degeneracies(real_parts, tol);

  out.H_d.resize(n);
  for (const auto& cluster : out.clusters) {
    double mean = 0.0;
    for (int i : cluster) mean += real_parts[i];
    mean /= static_cast<double>(cluster.size());
    for (int i : cluster) out.H_d(i) = mean;
    if (cluster.size() < 2) continue;

    // Orthonormal basis of the cluster's left eigenspace: the right singular
    // vectors of (H − λI)† with the smallest singular values. A defective
    // cluster has fewer than d small singular values and fails the
    // diagonalization residual below.
    const auto d = static_cast<Eigen::Index>(cluster.size());
    const ComplexMatrix shifted =
        (H - Complex(mean, 0.0) * ComplexMatrix::Identity(n, n)).adjoint();
    Eigen::BDCSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
    const ComplexMatrix null_space = svd.matrixV().rightCols(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      out.T.row(cluster[k]) = null_space.col(k).adjoint();
    }
  }
  normalize_rows(out.T);

  const double residual = (out.T * H - out.diagonal() * out.T).norm();
  out.diagonalization_residual = relative(residual, H.norm() * out.T.norm());
  out.cond_T = condition_number(out.T);
  if (!(out.cond_T <= tol.condition_cap)) {
    std::ostringstream os;
    os << "eigenvector transform condition " << out.cond_T << " exceeds cap "
       << tol.condition_cap;
    throw NonDiagonalizable(os.str(), out.cond_T);
  }
  if (out.diagonalization_residual > tol.residual_tol) {
    std::ostringstream os;
    os << "left eigenvectors do not diagonalize H: relative residual "
       << out.diagonalization_residual;
    throw NonDiagonalizable(os.str(), out.cond_T);
  }
  return out;
}

}  // namespace qhm
