#include "grassde/objectives.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "grassde/manifold.hpp"
#include "grassde/reference_data.hpp"
#include "test_support.hpp"

namespace grassde {
namespace {

using testing::gaussian_matrix;
using testing::random_frame;

Matrix basis(std::size_t n, std::initializer_list<std::size_t> axes) {
  Matrix q(n, axes.size());
  std::size_t j = 0;
  for (std::size_t a : axes) q(a, j++) = 1.0;
  return q;
}

TEST(PcaTrace, Extremes) {
  const Matrix sigma = build_sigma_linear(20);
  EXPECT_DOUBLE_EQ(eval_pca_trace(sigma, basis(20, {0, 1, 2, 3, 4})), -90.0);
  EXPECT_DOUBLE_EQ(eval_pca_trace(sigma, basis(20, {15, 16, 17, 18, 19})), -15.0);
}

TEST(PcaTrace, RandomFramesWithinEigenvalueBounds) {
  const Matrix sigma = build_sigma_linear(20);
  RandomStream rng(1);
  for (int t = 0; t < 200; ++t) {
    const double captured = -eval_pca_trace(sigma, random_frame(20, 5, rng));
    EXPECT_GE(captured, 15.0 - 1e-9);
    EXPECT_LE(captured, 90.0 + 1e-9);
  }
  EXPECT_THROW(eval_pca_trace(build_sigma_linear(19), random_frame(20, 5, rng)), DimensionError);
}

TEST(Chordal, Values) {
  const Matrix p = refdata::load_p1().q;
  EXPECT_NEAR(eval_chordal(p, p), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(eval_chordal(basis(20, {0, 1, 2, 3, 4}), basis(20, {5, 6, 7, 8, 9})), 5.0);
  RandomStream rng(2);
  EXPECT_NEAR(eval_chordal(p, matmul(p, testing::random_orthogonal(5, rng))), 0.0, 1e-10);
  EXPECT_THROW(eval_chordal(p, basis(20, {0, 1})), DimensionError);
}

TEST(Chordal, BoundedForOrthonormalInputs) {
  RandomStream rng(3);
  for (int t = 0; t < 200; ++t) {
    const double f = eval_chordal(random_frame(20, 5, rng), random_frame(20, 5, rng));
    EXPECT_GE(f, -1e-9);
    EXPECT_LE(f, 5.0 + 1e-9);
  }
}

TEST(Bimodal, Values) {
  const Matrix p1 = basis(20, {0, 1, 2, 3, 4});
  const Matrix p2 = basis(20, {3, 4, 5, 6, 7});
  EXPECT_DOUBLE_EQ(eval_bimodal(p1, p2, p1), 5.0);
  EXPECT_DOUBLE_EQ(eval_bimodal(p1, p2, basis(20, {10, 11, 12, 13, 14})), 0.0);
  EXPECT_DOUBLE_EQ(eval_bimodal(p1, p2, basis(20, {0, 5, 6, 7, 9})), 3.0);
}

TEST(Bimodal, StoredReferencesEvaluateToK) {
  // ||Q^T P||_F^2 <= k for orthonormal frames, so nothing above 5 is
  // reachable. After re-orthonormalizing the stored matrices the value at
  // each reference is exactly the bound.
  const Matrix p1 = refdata::load_p1().q;
  const Matrix p2 = refdata::load_p2().q;
  EXPECT_NEAR(eval_bimodal(p1, p2, p1), 5.0, 1e-12);
  EXPECT_NEAR(eval_bimodal(p1, p2, p2), 5.0, 1e-12);
  const double cross = frobenius_norm_sq(matmul(transpose(p1), p2));
  EXPECT_NEAR(cross, 0.27457363028288345, 1e-9);  // numpy on the stored values
}

TEST(Bimodal, BoundedForOrthonormalInputs) {
  RandomStream rng(4);
  for (int t = 0; t < 200; ++t) {
    const double f = eval_bimodal(random_frame(20, 5, rng), random_frame(20, 5, rng), random_frame(20, 5, rng));
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 5.0 + 1e-12);
  }
}

TEST(Logdet, Values) {
  const Matrix a = build_a_spiked(20);
  RandomStream rng(5);
  EXPECT_NEAR(eval_logdet(Matrix::identity(20), random_frame(20, 5, rng)), 0.0, 1e-12);
  EXPECT_NEAR(eval_logdet(a, basis(20, {0, 1, 2, 3, 4})), -std::log(90.0), 1e-12);
  EXPECT_NEAR(eval_logdet(a, basis(20, {0, 1, 7, 11, 19})), -std::log(90.0), 1e-12);
  EXPECT_NEAR(eval_logdet(a, basis(20, {2, 3, 4, 5, 6})), 0.0, 1e-12);
}

TEST(Logdet, NotPositiveDefiniteSignalsBadInput) {
  Matrix a = Matrix::identity(4);
  a(3, 3) = -1.0;
  EXPECT_THROW(eval_logdet(a, basis(4, {2, 3})), NotPositiveDefiniteError);
  EXPECT_THROW(ObjectiveSpec::logdet(a), NotPositiveDefiniteError);
}

TEST(Builders, Spectra) {
  const double d3[] = {3, 2, 1};
  EXPECT_EQ(build_sigma_linear(3), Matrix::diagonal(d3));
  const Matrix sigma = build_sigma_linear(20);
  EXPECT_EQ(trace(sigma), 210.0);
  const double d4[] = {10, 9, 1, 1};
  EXPECT_EQ(build_a_spiked(4), Matrix::diagonal(d4));
  EXPECT_NEAR(cholesky_logdet(build_a_spiked(5)), std::log(90.0), 1e-12);
  EXPECT_THROW(build_a_spiked(1), DimensionError);
}

/// Independent per-candidate loop over explicit entries.
double cluster_residual_oracle(const Matrix& x, const std::vector<Matrix>& refs, const Matrix& q) {
  const std::size_t n = x.rows(), m = x.cols(), k = q.cols();
  double best = std::numeric_limits<double>::infinity();
  for (const Matrix& xi : refs) {
    double total = 0.0;
    for (std::size_t col = 0; col < m; ++col) {
      std::vector<double> coeff(k, 0.0);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t row = 0; row < n; ++row) coeff[a] += q(row, a) * xi(row, col);
      for (std::size_t row = 0; row < n; ++row) {
        double proj = 0.0;
        for (std::size_t a = 0; a < k; ++a) proj += q(row, a) * coeff[a];
        const double diff = x(row, col) - proj;
        total += diff * diff;
      }
    }
    best = std::min(best, total);
  }
  return best;
}

TEST(ClusterResidual, MatchesBruteForceOnSmallProblem) {
  RandomStream rng(6);
  for (int t = 0; t < 100; ++t) {
    const Matrix x = gaussian_matrix(6, 3, rng);
    const std::vector<Matrix> refs{gaussian_matrix(6, 3, rng), gaussian_matrix(6, 3, rng)};
    const Matrix q = random_frame(6, 2, rng);
    const double oracle = cluster_residual_oracle(x, refs, q);
    EXPECT_NEAR(eval_cluster_residual(x, refs, q), oracle, 1e-12 * std::max(1.0, oracle));
  }
}

TEST(ClusterResidual, SingleReferenceIsProjectionResidual) {
  RandomStream rng(7);
  const Matrix x = gaussian_matrix(20, 12, rng);
  const Matrix q = random_frame(20, 5, rng);
  const Matrix residual = x - matmul(q, matmul(transpose(q), x));
  EXPECT_NEAR(eval_cluster_residual(x, {x}, q), frobenius_norm_sq(residual), 1e-10);
}

TEST(ClusterResidual, GroundTruthIsExactZero) {
  RandomStream rng(8);
  const std::vector<Matrix> p{refdata::load_p1().q, refdata::load_p2().q, refdata::load_p3().q};
  const std::vector<Matrix> refs = build_cluster_data(p, 12, rng);
  ASSERT_EQ(refs.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    ASSERT_EQ(refs[i].rows(), 20u);
    ASSERT_EQ(refs[i].cols(), 12u);
    EXPECT_LT(frobenius_norm(refs[i] - matmul(p[i], matmul(transpose(p[i]), refs[i]))), 1e-10);
    EXPECT_LT(eval_cluster_residual(refs[i], refs, p[i]), 1e-20);
    // Z_i = P_i^T X_i has full row rank k.
    EXPECT_NO_THROW(thin_qr(transpose(matmul(transpose(p[i]), refs[i]))));
  }
  EXPECT_THROW(eval_cluster_residual(refs[0], {gaussian_matrix(20, 11, rng)}, p[0]), DimensionError);
}

TEST(ObjectiveSpecTest, DispatchAndValidation) {
  const Matrix q = basis(20, {0, 1, 2, 3, 4});
  const auto pca = ObjectiveSpec::pca_trace(build_sigma_linear(20));
  EXPECT_EQ(pca.kind(), ObjectiveKind::PcaTrace);
  EXPECT_EQ(pca.ambient_dim(), 20u);
  EXPECT_DOUBLE_EQ(pca(q), -90.0);
  EXPECT_EQ(to_string(ObjectiveKind::ClusterResidual), "cluster_residual");

  Matrix skew = build_sigma_linear(3);
  skew(0, 1) = 1.0;
  EXPECT_THROW(ObjectiveSpec::pca_trace(skew), DimensionError);
  EXPECT_THROW(ObjectiveSpec::chordal(2.0 * q), DimensionError);
  EXPECT_THROW(ObjectiveSpec::cluster_residual(Matrix(20, 3), {}), DimensionError);
}

// Every objective is a function of span(q) only.
TEST(RightActionInvariance, AllFiveObjectives) {
  RandomStream rng(9);
  const Matrix p1 = refdata::load_p1().q;
  const Matrix p2 = refdata::load_p2().q;
  RandomStream data_rng(10);
  std::vector<Matrix> refs = build_cluster_data({p1, p2, refdata::load_p3().q}, 12, data_rng);
  const std::vector<ObjectiveSpec> objectives{
      ObjectiveSpec::pca_trace(build_sigma_linear(20)), ObjectiveSpec::chordal(p1), ObjectiveSpec::bimodal(p1, p2),
      ObjectiveSpec::logdet(build_a_spiked(20)), ObjectiveSpec::cluster_residual(refs[1], refs)};

  for (const ObjectiveSpec& obj : objectives) {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const Matrix q = random_frame(20, 5, rng);
      const Matrix s = thin_qr(gaussian_matrix(5, 5, rng)).q;
      worst = std::max(worst, std::abs(obj(matmul(q, s)) - obj(q)));
    }
    EXPECT_LT(worst, 1e-9) << to_string(obj.kind());
  }
}

}  // namespace
}  // namespace grassde
