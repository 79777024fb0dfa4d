#include <cmath>

#include <gtest/gtest.h>

#include "qhmetric/errors.hpp"
#include "qhmetric/models.hpp"
#include "qhmetric/symmetry.hpp"
#include "test_support.hpp"

namespace qhm {
namespace {

using testing::from_real;
using testing::max_abs_diff;

// h = W·diag(values)·W† for a random unitary W.
ComplexMatrix conjugated_diagonal(const std::vector<double>& values, Rng& rng) {
  const int n = static_cast<int>(values.size());
  const ComplexMatrix W = haar_unitary(n, rng);
  RealVector d(n);
  for (int i = 0; i < n; ++i) d(i) = values[i];
  const ComplexMatrix h = W * d.cast<Complex>().asDiagonal() * W.adjoint();
  return (h + h.adjoint()) / 2.0;
}

TEST(CommutantBasis, DiagonalNondegenerate) {
  const ComplexMatrix h = from_real({{1, 0}, {0, 2}});
  const CommutantBasis cb = commutant_basis(h);
  EXPECT_EQ(cb.real_dimension, 2);
  EXPECT_EQ(testing::brute_force_commutant_dimension(h), 2);
  ASSERT_EQ(cb.basis.size(), 2u);
  EXPECT_LE(max_abs_diff(cb.basis[0], from_real({{1, 0}, {0, 0}})), 1e-15);
  EXPECT_LE(max_abs_diff(cb.basis[1], from_real({{0, 0}, {0, 1}})), 1e-15);
}

TEST(CommutantBasis, IdentityCommutesWithEverything) {
  const CommutantBasis cb = commutant_basis(ComplexMatrix::Identity(2, 2));
  EXPECT_EQ(cb.real_dimension, 4);
  EXPECT_EQ(cb.basis.size(), 4u);
  EXPECT_EQ(testing::brute_force_commutant_dimension(ComplexMatrix::Identity(2, 2)), 4);
}

TEST(CommutantBasis, NondegenerateMatchesBruteForce) {
  Rng rng(11);
  for (int n = 1; n <= 5; ++n) {
    const ComplexMatrix h = testing::random_hermitian(n, rng);
    const CommutantBasis cb = commutant_basis(h);
    EXPECT_EQ(cb.real_dimension, n);
    EXPECT_EQ(testing::brute_force_commutant_dimension(h), n);
  }
}

TEST(CommutantBasis, DimensionLawOnCraftedClusters) {
  Rng rng(12);
  const std::vector<std::pair<std::vector<double>, int>> cases = {
      {{-1, 2}, 2}, {{1, 1, 4}, 5}, {{3, 3, 3}, 9}, {{-2, -2, 5, 5}, 8}};
  for (const auto& [values, expected] : cases) {
    const ComplexMatrix h = conjugated_diagonal(values, rng);
    const CommutantBasis cb = commutant_basis(h);
    EXPECT_EQ(cb.real_dimension, expected);
    EXPECT_EQ(static_cast<int>(cb.basis.size()), expected);
    EXPECT_EQ(testing::brute_force_commutant_dimension(h), expected);
    EXPECT_LE(cb.max_commutator_residual, 1e-12);
    EXPECT_LE(cb.projector_residual, 1e-12);
  }
}

TEST(CommutantBasis, BasisIsHermitianAndLinearlyIndependent) {
  Rng rng(13);
  const ComplexMatrix h = conjugated_diagonal({0, 0, 1, 1}, rng);
  const CommutantBasis cb = commutant_basis(h);
  Eigen::MatrixXcd stacked(16, cb.basis.size());
  for (std::size_t i = 0; i < cb.basis.size(); ++i) {
    EXPECT_LE(hermiticity_residual(cb.basis[i]), 1e-15);
    stacked.col(i) = cb.basis[i].reshaped();
  }
  // Real-orthonormal under Re tr(X†Y).
  const Eigen::MatrixXd gram = (stacked.adjoint() * stacked).real();
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(8, 8)).norm(), 1e-12);
}

TEST(CommutantBasis, Errors) {
  EXPECT_THROW(commutant_basis(from_real({{1, 1}, {0, 2}})), NotHermitian);
  EXPECT_THROW(commutant_basis(from_real({{1, 0}, {0, 2}}), Clusters{{0}}), std::invalid_argument);
  // Claiming a degeneracy that h does not have breaks the commutation check.
  EXPECT_THROW(commutant_basis(from_real({{1, 0}, {0, 2}}), Clusters{{0, 1}}), ResidualExceeded);
}

TEST(SymmetryFromCoefficients, UnitCoefficientsGiveIdentity) {
  Rng rng(14);
  const CommutantBasis cb = commutant_basis(conjugated_diagonal({1, 1, 3}, rng));
  std::vector<ClusterCoefficients> ones = {{{1.0, 1.0}, haar_unitary(2, rng)}, {{1.0}, {}}};
  const SymmetryGenerator S = symmetry_from_coefficients(cb, ones);
  EXPECT_LE(max_abs_diff(S.S, ComplexMatrix::Identity(3, 3)), 1e-14);
  EXPECT_LE(max_abs_diff(S.sigma, ComplexMatrix::Identity(3, 3)), 1e-14);
}

TEST(SymmetryFromCoefficients, DiagonalCase) {
  const CommutantBasis cb = commutant_basis(from_real({{1, 0}, {0, 2}}));
  const SymmetryGenerator S = symmetry_from_coefficients(cb, {{{2.0}, {}}, {{3.0}, {}}});
  EXPECT_LE(max_abs_diff(S.S, from_real({{2, 0}, {0, 3}})), 1e-15);
  EXPECT_LE(max_abs_diff(S.sigma, from_real({{std::sqrt(2.0), 0}, {0, std::sqrt(3.0)}})), 1e-15);
}

TEST(SymmetryFromCoefficients, Errors) {
  const CommutantBasis cb = commutant_basis(from_real({{1, 0}, {0, 2}}));
  EXPECT_THROW(symmetry_from_coefficients(cb, {{{2.0}, {}}}), std::invalid_argument);
  EXPECT_THROW(symmetry_from_coefficients(cb, {{{2.0}, {}}, {{-1.0}, {}}}), NotPositiveDefinite);
}

TEST(SamplePositiveSymmetry, PropertyOverSeeds) {
  Rng rng(15);
  const ComplexMatrix h = conjugated_diagonal({-1, 0.5, 0.5, 2, 2, 2}, rng);
  const CommutantBasis cb = commutant_basis(h);
  const double spread = 10.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SymmetryGenerator S = sample_positive_symmetry(cb, seed, spread);
    EXPECT_LE(commutator(S.S, h).norm(), 1e-10 * S.S.norm() * h.norm());
    EXPECT_GE(hermitian_eig(S.S, {}).eigenvalues(0), 1.0 / spread - 1e-12);
    EXPECT_LE(hermitian_eig(S.S, {}).eigenvalues(5), spread + 1e-12);
    EXPECT_LE(S.sqrt_residual, 1e-12);
  }
}

TEST(SamplePositiveSymmetry, Deterministic) {
  Rng rng(16);
  const CommutantBasis cb = commutant_basis(conjugated_diagonal({1, 1, 2, 5}, rng));
  const SymmetryGenerator a = sample_positive_symmetry(cb, 99, 4.0);
  const SymmetryGenerator b = sample_positive_symmetry(cb, 99, 4.0);
  EXPECT_TRUE(a.S == b.S);
  EXPECT_FALSE(a.S == sample_positive_symmetry(cb, 100, 4.0).S);
}

TEST(MetricFromSymmetry, IdentityGeneratorReproducesMetric) {
  const ComplexMatrix H = from_real({{1, 1}, {0, 2}});
  const EquivalencePair pair = full_pipeline(H);
  const CommutantBasis cb = commutant_basis(pair.h, pair.spectral->clusters);
  const SymmetryGenerator S = symmetry_from_coefficients(cb, {{{1.0}, {}}, {{1.0}, {}}});
  const MetricFamilyMember m = metric_from_symmetry(pair.metric, S, H);
  const ComplexMatrix I = ComplexMatrix::Identity(2, 2);
  EXPECT_LE(max_abs_diff(m.eta_prime.eta, pair.metric.eta), 1e-14);
  EXPECT_LE(max_abs_diff(m.A, I), 1e-14);
  EXPECT_LE(max_abs_diff(m.U, I), 1e-14);
  EXPECT_LE(max_abs_diff(m.B, pair.metric.rho), 1e-14);
}

TEST(MetricFromSymmetry, HermitianHamiltonianFreedomIsCommutant) {
  Rng rng(17);
  const ComplexMatrix H = conjugated_diagonal({0, 0, 1, 3}, rng);
  const EquivalencePair pair = full_pipeline(H);
  const CommutantBasis cb = commutant_basis(pair.h, pair.spectral->clusters);
  const SymmetryGenerator S = sample_positive_symmetry(cb, 3);
  const MetricFamilyMember m = metric_from_symmetry(pair.metric, S, H);
  EXPECT_LE((m.eta_prime.eta - S.S).norm(), 1e-10 * S.S.norm());
  EXPECT_LE((m.A - S.sigma).norm(), 1e-10 * S.sigma.norm());
  EXPECT_LE((m.U - ComplexMatrix::Identity(4, 4)).norm(), 1e-10);
}

TEST(MetricFromSymmetry, UpperTriangularSeed42) {
  const ComplexMatrix H = from_real({{1, 1}, {0, 2}});
  const EquivalencePair pair = full_pipeline(H);
  EXPECT_LE(max_abs_diff(pair.metric.eta, from_real({{0.5, -0.5}, {-0.5, 1.5}})), 1e-12);
  const CommutantBasis cb = commutant_basis(pair.h, pair.spectral->clusters);
  const MetricFamilyMember m =
      metric_from_symmetry(pair.metric, sample_positive_symmetry(cb, 42), H);
  for (const std::string& key : family_identity_keys()) {
    ASSERT_TRUE(m.residuals.count(key)) << key;
    EXPECT_LE(m.residuals.at(key), 1e-9) << key;
  }
  EXPECT_LE(verify_pseudo_hermitian(H, m.eta_prime.eta), 1e-9);
}

TEST(MetricFromSymmetry, FamilyValidityOverEnsemble) {
  for (int trial = 0; trial < 60; ++trial) {
    const auto model = models::random_diagonalizable(2 + trial % 7, 20000 + trial);
    const EquivalencePair pair = full_pipeline(model.H);
    const CommutantBasis cb = commutant_basis(pair.h, pair.spectral->clusters);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const MetricFamilyMember m =
          metric_from_symmetry(pair.metric, sample_positive_symmetry(cb, seed), model.H);
      EXPECT_TRUE(all_within(m.residuals, 1e-8)) << "trial " << trial << " seed " << seed;
      EXPECT_LE((m.U.adjoint() * m.U - ComplexMatrix::Identity(m.U.rows(), m.U.rows())).norm(),
                1e-9);
    }
  }
}

TEST(IntertwinerFromMetrics, TrivialCases) {
  Rng rng(18);
  const ComplexMatrix rho = testing::random_pd(3, rng);
  const ComplexMatrix h = testing::random_hermitian(3, rng);
  Intertwiner same = intertwiner_from_metrics(rho, rho, h, h);
  EXPECT_LE(max_abs_diff(same.A, ComplexMatrix::Identity(3, 3)), 1e-12);
  EXPECT_LE(max_abs_diff(same.S, ComplexMatrix::Identity(3, 3)), 1e-12);

  const CommutantBasis cb = commutant_basis(h);
  const SymmetryGenerator S0 = sample_positive_symmetry(cb, 5);
  const ComplexMatrix I = ComplexMatrix::Identity(3, 3);
  // h′ = σ h σ⁻¹ = h since σ commutes with h.
  const Intertwiner it = intertwiner_from_metrics(I, S0.sigma, h, h);
  EXPECT_LE(max_abs_diff(it.A, S0.sigma), 1e-12);
  EXPECT_LE(max_abs_diff(it.S, S0.S), 1e-12);
}

TEST(IntertwinerFromMetrics, IndependentFamilyMembers) {
  for (int trial = 0; trial < 40; ++trial) {
    const auto model = models::random_diagonalizable(2 + trial % 7, 30000 + trial);
    const EquivalencePair pair = full_pipeline(model.H);
    const CommutantBasis cb = commutant_basis(pair.h, pair.spectral->clusters);
    const MetricFamilyMember a =
        metric_from_symmetry(pair.metric, sample_positive_symmetry(cb, 1), model.H);
    const MetricFamilyMember b =
        metric_from_symmetry(pair.metric, sample_positive_symmetry(cb, 2), model.H);
    const ComplexMatrix ha = (a.h_prime + a.h_prime.adjoint()) / 2.0;
    const ComplexMatrix hb = (b.h_prime + b.h_prime.adjoint()) / 2.0;
    Intertwiner it;
    ASSERT_NO_THROW(it = intertwiner_from_metrics(a.rho_prime, b.rho_prime, ha, hb));
    for (const auto& [key, value] : it.residuals) EXPECT_LE(value, 1e-9) << key;
  }
}

TEST(IntertwinerFromMetrics, NamesFirstFailure) {
  Rng rng(19);
  const ComplexMatrix h = from_real({{1, 0}, {0, 2}});
  const ComplexMatrix unrelated = from_real({{1, 0.3}, {0.3, 2}});
  try {
    intertwiner_from_metrics(ComplexMatrix::Identity(2, 2), testing::random_pd(2, rng), h,
                             unrelated);
    FAIL() << "expected ResidualExceeded";
  } catch (const ResidualExceeded& e) {
    EXPECT_EQ(e.identity(), "sim");
  }
}

TEST(VerifyBRelations, Examples) {
  Rng rng(20);
  const ComplexMatrix rho = testing::random_pd(3, rng);
  const ResidualMap trivial =
      verify_B_relations(rho, ComplexMatrix::Identity(3, 3), rho * rho);
  EXPECT_LE(trivial.at("B-ph"), 1e-14);
  EXPECT_LE(trivial.at("eta=BB"), 1e-14);

  const ComplexMatrix H = from_real({{0, 1}, {4, 0}});
  const EquivalencePair pair = full_pipeline(H);
  const CommutantBasis cb = commutant_basis(pair.h, pair.spectral->clusters);
  const SymmetryGenerator S = sample_positive_symmetry(cb, 8);
  const MetricFamilyMember m = metric_from_symmetry(pair.metric, S, H);
  const ResidualMap fam = verify_B_relations(m.B, S.sigma, pair.metric.eta);
  EXPECT_LE(fam.at("B-ph"), 1e-9);
  EXPECT_LE(fam.at("eta=BB"), 1e-9);

  const ResidualMap bad = verify_B_relations(gaussian_matrix(3, rng),
                                             testing::random_pd(3, rng), testing::random_pd(3, rng));
  EXPECT_GT(bad.at("B-ph"), 1e-3);
  EXPECT_GT(bad.at("eta=BB"), 1e-3);
}

}  // namespace
}  // namespace qhm
