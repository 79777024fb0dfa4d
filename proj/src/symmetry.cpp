#include "qhmetric/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qhmetric/errors.hpp"
#include "qhmetric/random.hpp"

namespace qhm {

namespace {

void require_partition(const Clusters& clusters, Eigen::Index n) {
  std::vector<int> seen(n, 0);
  for (const auto& cluster : clusters) {
    if (cluster.empty()) throw std::invalid_argument("empty degeneracy cluster");
    for (int i : cluster) {
      if (i < 0 || i >= n || seen[i]++) {
        throw std::invalid_argument("clusters do not partition the eigenvalue indices");
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != n) {
    throw std::invalid_argument("clusters do not cover every eigenvalue index");
  }
}

// Columns of the eigenvector matrix belonging to cluster k.
ComplexMatrix cluster_columns(const CommutantBasis& cb, std::size_t k) {
  Eigen::Index offset = 0;
  for (std::size_t j = 0; j < k; ++j) offset += static_cast<Eigen::Index>(cb.clusters[j].size());
  return cb.eigenvectors.middleCols(offset, static_cast<Eigen::Index>(cb.clusters[k].size()));
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

double commutator_residual(const ComplexMatrix& x, const ComplexMatrix& h) {
  return relative(commutator(x, h).norm(), x.norm() * h.norm());
}

}  // namespace

CommutantBasis commutant_basis(const ComplexMatrix& h, const Clusters& clusters,
                               const Tolerances& tol) {
  CommutantBasis cb;
  cb.h = symmetrize_checked(h, tol);
  const Eigen::Index n = cb.h.rows();
  require_partition(clusters, n);
  cb.clusters = clusters;

  const HermitianEig eig = hermitian_eig(cb.h, tol);
  cb.eigenvectors.resize(n, n);
  Eigen::Index col = 0;
  for (const auto& cluster : clusters) {
    for (int i : cluster) cb.eigenvectors.col(col++) = eig.vectors.col(i);
  }

  ComplexMatrix projector_sum = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    const ComplexMatrix V = cluster_columns(cb, k);
    const auto d = V.cols();
    const ComplexMatrix P = V * V.adjoint();
    cb.projector_residual = std::max(
        {cb.projector_residual, relative((P * P - P).norm(), P.norm()), hermiticity_residual(P)});
    projector_sum += P;
    cb.projectors.push_back(P);

    // Hermitian d×d basis: E_jj, (E_jl + E_lj)/√2, i(E_jl − E_lj)/√2.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < d; ++j) {
      cb.basis.push_back(V.col(j) * V.col(j).adjoint());
      for (Eigen::Index l = j + 1; l < d; ++l) {
        const ComplexMatrix jl = V.col(j) * V.col(l).adjoint();
        cb.basis.push_back((jl + jl.adjoint()) * inv_sqrt2);
        cb.basis.push_back((jl - jl.adjoint()) * Complex(0.0, inv_sqrt2));
      }
    }
    cb.real_dimension += static_cast<int>(d * d);
  }
  cb.projector_residual =
      std::max(cb.projector_residual,
               relative((projector_sum - ComplexMatrix::Identity(n, n)).norm(),
                        std::sqrt(static_cast<double>(n))));
  if (cb.projector_residual > tol.residual_tol) {
    throw ResidualExceeded("projectors", cb.projector_residual, tol.residual_tol);
  }

  for (const ComplexMatrix& b : cb.basis) {
    cb.max_commutator_residual = std::max(cb.max_commutator_residual, commutator_residual(b, cb.h));
  }
  if (cb.max_commutator_residual > tol.residual_tol) {
    throw ResidualExceeded("sym", cb.max_commutator_residual, tol.residual_tol);
  }
  return cb;
}

CommutantBasis commutant_basis(const ComplexMatrix& h, const Tolerances& tol) {
  const HermitianEig eig = hermitian_eig(h, tol);
  const std::vector<double> values(eig.eigenvalues.data(),
                                   eig.eigenvalues.data() + eig.eigenvalues.size());
  return commutant_basis(h, cluster_degeneracies(values, tol), tol);
}

SymmetryGenerator symmetry_from_coefficients(const CommutantBasis& cb,
                                             std::vector<ClusterCoefficients> coefficients) {
  if (coefficients.size() != cb.clusters.size()) {
    throw std::invalid_argument("one coefficient block is required per cluster");
  }
  const Eigen::Index n = cb.h.rows();
  SymmetryGenerator gen;
  gen.S = ComplexMatrix::Zero(n, n);
  gen.sigma = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < cb.clusters.size(); ++k) {
    auto& block = coefficients[k];
    const auto d = static_cast<Eigen::Index>(cb.clusters[k].size());
    if (static_cast<Eigen::Index>(block.values.size()) != d) {
      throw std::invalid_argument("coefficient count does not match cluster size");
    }
    if (block.mixer.size() == 0) block.mixer = ComplexMatrix::Identity(d, d);
    if (block.mixer.rows() != d || block.mixer.cols() != d) {
      throw std::invalid_argument("mixer shape does not match cluster size");
    }
    RealVector s(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      s(i) = block.values[i];
      if (!(s(i) > 0) || !std::isfinite(s(i))) {
        throw NotPositiveDefinite("symmetry coefficients must be positive and finite");
      }
    }
    const ComplexMatrix W = cluster_columns(cb, k) * block.mixer;
    gen.S += W * s.cast<Complex>().asDiagonal() * W.adjoint();
    gen.sigma += W * s.cwiseSqrt().cast<Complex>().asDiagonal() * W.adjoint();
  }
  gen.S = hermitian_part(gen.S);
  gen.sigma = hermitian_part(gen.sigma);
  gen.coefficients = std::move(coefficients);
  gen.commutation_residual = commutator_residual(gen.S, cb.h);
  gen.sqrt_residual = relative((gen.sigma * gen.sigma - gen.S).norm(), gen.S.norm());
  return gen;
}

SymmetryGenerator sample_positive_symmetry(const CommutantBasis& cb, std::uint64_t seed,
                                           double spread) {
  if (!(spread > 0) || !std::isfinite(spread)) {
    throw std::invalid_argument("spread must be positive and finite");
  }
  const double hi = std::max(spread, 1.0 / spread);
  const double lo = 1.0 / hi;
  Rng rng(seed);
  std::vector<ClusterCoefficients> coefficients;
  coefficients.reserve(cb.clusters.size());
  for (const auto& cluster : cb.clusters) {
    const int d = static_cast<int>(cluster.size());
    ClusterCoefficients block;
    block.values.reserve(d);
    for (int i = 0; i < d; ++i) block.values.push_back(log_uniform(lo, hi, rng));
    block.mixer = d == 1 ? ComplexMatrix::Identity(1, 1) : haar_unitary(d, rng);
    coefficients.push_back(std::move(block));
  }
  return symmetry_from_coefficients(cb, std::move(coefficients));
}

const std::vector<std::string>& family_identity_keys() {
  static const std::vector<std::string> keys = {
      "ph", "hh", "sim", "sym", "S", "eta-prime", "A-ph",
      "A=US", "B-ph", "eta=BB", "eta-form", "eta-prime-3"};
  return keys;
}

bool all_within(const ResidualMap& residuals, double tol) {
  return std::all_of(residuals.begin(), residuals.end(),
                     [tol](const auto& kv) { return kv.second <= tol; });
}

ResidualMap verify_B_relations(const ComplexMatrix& B, const ComplexMatrix& sigma,
                               const ComplexMatrix& eta, const Tolerances& tol) {
  ResidualMap out;
  const ComplexMatrix conjugated = solve_right_hermitian(sigma, sigma * B, tol);
  out["B-ph"] = relative((B.adjoint() - conjugated).norm(), B.norm());
  out["eta=BB"] = relative((B * B.adjoint() - eta).norm(), eta.norm());
  return out;
}

MetricFamilyMember metric_from_symmetry(const MetricOperator& metric, const SymmetryGenerator& S,
                                        const ComplexMatrix& H, const Tolerances& tol) {
  require_well_formed(H);
  const ComplexMatrix& rho = metric.rho;
  const ComplexMatrix& sigma = S.sigma;
  const ComplexMatrix h = hermitian_equivalent(H, metric, tol).h;

  MetricFamilyMember m;
  m.S = S;
  const ComplexMatrix eta_prime = hermitian_part(rho * S.S * rho);
  m.eta_prime.eta = eta_prime;
  m.eta_prime.hermiticity_residual = 0.0;
  m.rho_prime = sqrt_pd(eta_prime, tol);
  m.eta_prime.rho = m.rho_prime;
  m.eta_prime.min_eigenvalue = hermitian_eig(eta_prime, tol).eigenvalues(0);
  m.eta_prime.sqrt_residual =
      relative((m.rho_prime * m.rho_prime - eta_prime).norm(), eta_prime.norm());
  m.eta_prime.pseudo_hermiticity_residual = verify_pseudo_hermitian(H, eta_prime);

  m.A = solve_right_hermitian(rho, m.rho_prime, tol);
  m.U = solve_right_hermitian(sigma, m.A, tol);
  m.B = rho * m.U;
  m.h_prime = solve_right_hermitian(m.rho_prime, m.rho_prime * H, tol);

  const Eigen::Index n = H.rows();
  const ComplexMatrix AdA = m.A.adjoint() * m.A;
  const double eta_norm = eta_prime.norm();
  ResidualMap& r = m.residuals;
  r["ph"] = *m.eta_prime.pseudo_hermiticity_residual;
  r["hh"] = hermiticity_residual(m.h_prime);
  r["sim"] = relative((m.h_prime * m.A - m.A * h).norm(), m.h_prime.norm() * m.A.norm());
  r["sym"] = commutator_residual(AdA, h);
  r["S"] = relative((AdA - S.S).norm(), S.S.norm());
  r["eta-prime"] = relative((eta_prime - rho * AdA * rho).norm(), eta_norm);
  r["A-ph"] = relative((rho * m.A.adjoint() - m.A * rho).norm(), rho.norm() * m.A.norm());
  r["A=US"] = std::max(relative((m.A - m.U * sigma).norm(), m.A.norm()),
                       (m.U.adjoint() * m.U - ComplexMatrix::Identity(n, n)).norm());
  for (const auto& [key, value] : verify_B_relations(m.B, sigma, metric.eta, tol)) r[key] = value;
  r["eta-form"] = relative((m.rho_prime * m.rho_prime - rho * S.S * rho).norm(), eta_norm);
  const ComplexMatrix sr = sigma * rho;
  r["eta-prime-3"] = relative((eta_prime - sr.adjoint() * sr).norm(), eta_norm);
  return m;
}

Intertwiner intertwiner_from_metrics(const ComplexMatrix& rho, const ComplexMatrix& rho_prime,
                                     const ComplexMatrix& h, const ComplexMatrix& h_prime,
                                     const Tolerances& tol) {
  Intertwiner out;
  out.A = solve_right_hermitian(rho, rho_prime, tol);
  out.S = hermitian_part(out.A.adjoint() * out.A);
  const ComplexMatrix eta_prime = rho_prime * rho_prime;

  // Checked in this order; the first failure is reported.
  const std::vector<std::pair<std::string, double>> checks = {
      {"sim", relative((h_prime * out.A - out.A * h).norm(), h_prime.norm() * out.A.norm())},
      {"sym", commutator_residual(out.S, h)},
      {"A-ph", relative((rho * out.A.adjoint() - out.A * rho).norm(), rho.norm() * out.A.norm())},
      {"eta-prime", relative((eta_prime - rho * out.S * rho).norm(), eta_prime.norm())},
  };
  for (const auto& [key, value] : checks) out.residuals[key] = value;
  for (const auto& [key, value] : checks) {
    if (value > tol.residual_tol) throw ResidualExceeded(key, value, tol.residual_tol);
  }
  return out;
}

}  // namespace qhm
