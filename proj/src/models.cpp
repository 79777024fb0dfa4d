#include "qhmetric/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qhmetric/errors.hpp"
#include "qhmetric/random.hpp"

namespace qhm::models {

namespace {

constexpr double kParameterTol = 1e-12;

}  // namespace

ComplexMatrix two_level(Complex b, Complex c, double d) {
  if (!std::isfinite(b.real()) || !std::isfinite(b.imag()) || !std::isfinite(c.real()) ||
      !std::isfinite(c.imag()) || !std::isfinite(d)) {
    throw InvalidModelParameters("two_level: parameters must be finite");
  }
  const double scale = std::max({std::abs(b), std::abs(c), 1.0});
  const bool hermitian = std::abs(b - std::conj(c)) <= kParameterTol * scale;
  const Complex bc = b * c;
  const bool real_positive =
      std::abs(bc.imag()) <= kParameterTol * std::abs(bc) && bc.real() > 0.0;
  if (!hermitian && !real_positive) {
    std::ostringstream os;
    os << "two_level: b·c = " << bc << " is not real positive and b ≠ conj(c)";
    throw InvalidModelParameters(os.str());
  }
  ComplexMatrix H(2, 2);
  H << Complex(d, 0.0), b, c, Complex(d, 0.0);
  return H;
}

ComplexMatrix swanson(int dim, double omega, double alpha, double beta) {
  if (dim < 4) throw InvalidModelParameters("swanson: truncation dimension must be at least 4");
  if (!(omega > 0) || !std::isfinite(omega) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidModelParameters("swanson: omega must be positive, alpha and beta finite");
  }
  ComplexMatrix H = ComplexMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    H(n, n) = omega * (n + 0.5);
    if (n + 2 < dim) {
      const double ladder = std::sqrt(static_cast<double>(n + 1) * (n + 2));
      H(n, n + 2) = alpha * ladder;  // a²
      H(n + 2, n) = beta * ladder;   // a†²
    }
  }
  return H;
}

RandomModel random_diagonalizable(int n, std::uint64_t seed, double cond_bound) {
  if (n < 1) throw std::invalid_argument("random_diagonalizable: n must be positive");
  if (!(cond_bound >= 1.0)) throw std::invalid_argument("random_diagonalizable: cond_bound < 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> eigen_dist(-5.0, 5.0);

  RandomModel model;
  model.D.resize(n);
  for (int i = 0; i < n; ++i) model.D(i) = eigen_dist(rng);
  const ComplexMatrix W1 = haar_unitary(n, rng);
  const ComplexMatrix W2 = haar_unitary(n, rng);
  RealVector s(n);
  for (int i = 0; i < n; ++i) s(i) = cond_bound > 1.0 ? log_uniform(1.0, cond_bound, rng) : 1.0;
  model.T0 = W1 * s.cast<Complex>().asDiagonal() * W2;

  const ComplexMatrix D = model.D.cast<Complex>().asDiagonal();
  model.H = model.T0.partialPivLu().solve(D * model.T0);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return model.D(a) < model.D(b); });
  SpectralData& truth = model.ground_truth;
  truth.T.resize(n, n);
  truth.H_d.resize(n);
  std::vector<double> sorted(n);
  for (int i = 0; i < n; ++i) {
    truth.T.row(i) = model.T0.row(order[i]);
    truth.H_d(i) = model.D(order[i]);
    sorted[i] = truth.H_d(i);
    truth.eigenvalues.emplace_back(truth.H_d(i), 0.0);
  }
  normalize_rows(truth.T);
  truth.clusters = cluster_degeneracies(sorted);
  truth.cond_T = condition_number(truth.T);
  truth.diagonalization_residual =
      relative((truth.T * model.H - truth.diagonal() * truth.T).norm(),
               model.H.norm() * truth.T.norm());
  return model;
}

}  // namespace qhm::models
