#include "grassde/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_support.hpp"

namespace grassde {
namespace {

using testing::gaussian_matrix;
using testing::max_abs_diff;

TEST(Matmul, IdentityLeavesMatrixUnchanged) {
  const Matrix m{{1, 2}, {3, 4}, {5, 6}};
  EXPECT_EQ(matmul(Matrix::identity(3), m), m);
}

TEST(Matmul, DiagonalProduct) {
  const double a[] = {2, 3};
  const double b[] = {5, 7};
  const double expected[] = {10, 21};
  EXPECT_EQ(matmul(Matrix::diagonal(a), Matrix::diagonal(b)), Matrix::diagonal(expected));
}

TEST(Matmul, MatchesTripleLoop) {
  RandomStream rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = gaussian_matrix(4, 3, rng);
    const Matrix b = gaussian_matrix(3, 2, rng);
    EXPECT_LT(max_abs_diff(matmul(a, b), testing::naive_product(a, b)), 1e-14);
  }
}

TEST(Matmul, RejectsInnerDimensionMismatch) {
  EXPECT_THROW(matmul(Matrix(2, 3), Matrix(2, 3)), DimensionError);
}

TEST(MatrixTest, RejectsNonFiniteData) {
  EXPECT_THROW(Matrix(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()}), DimensionError);
  EXPECT_THROW(Matrix(1, 1, {std::numeric_limits<double>::infinity()}), DimensionError);
  EXPECT_THROW(Matrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
}

TEST(Transpose, IsAnInvolution) {
  RandomStream rng(3);
  const Matrix m = gaussian_matrix(5, 3, rng);
  EXPECT_EQ(transpose(transpose(m)), m);
}

TEST(Transpose, RowBecomesColumn) {
  const Matrix row{{1, 2, 3, 4}};
  const Matrix col = transpose(row);
  ASSERT_EQ(col.rows(), 4u);
  ASSERT_EQ(col.cols(), 1u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(col(i, 0), row(0, i));
}

TEST(Transpose, OrthonormalFactorGivesIdentityGram) {
  RandomStream rng(5);
  const Matrix q = thin_qr(gaussian_matrix(20, 5, rng)).q;
  EXPECT_LT(frobenius_norm(matmul(transpose(q), q) - Matrix::identity(5)), 1e-12);
}

TEST(FrobeniusNormSq, Basics) {
  EXPECT_EQ(frobenius_norm_sq(Matrix(3, 4)), 0.0);
  EXPECT_DOUBLE_EQ(frobenius_norm_sq(Matrix::identity(5)), 5.0);
}

TEST(FrobeniusNormSq, EqualsTraceOfGram) {
  RandomStream rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = gaussian_matrix(1 + rng.index(8), 1 + rng.index(8), rng);
    const double direct = frobenius_norm_sq(a);
    EXPECT_NEAR(direct, trace(matmul(transpose(a), a)), 1e-12 * direct);
  }
}

TEST(FrobeniusNormSq, SameSpanAlignmentIsK) {
  RandomStream rng(23);
  const Matrix q = thin_qr(gaussian_matrix(20, 5, rng)).q;
  const Matrix s = thin_qr(gaussian_matrix(5, 5, rng)).q;
  EXPECT_NEAR(frobenius_norm_sq(matmul(transpose(q), matmul(q, s))), 5.0, 1e-12);
}

TEST(Trace, Values) {
  EXPECT_EQ(trace(Matrix::identity(7)), 7.0);
  std::vector<double> d;
  for (int v = 20; v >= 1; --v) d.push_back(v);
  const Matrix sigma = Matrix::diagonal(d);
  EXPECT_EQ(trace(sigma), 210.0);
  const Matrix q = Matrix::identity(20).columns(0, 5);
  EXPECT_DOUBLE_EQ(trace(matmul(transpose(q), matmul(sigma, q))), 90.0);
}

TEST(Trace, RejectsNonSquare) { EXPECT_THROW(trace(Matrix(2, 3)), DimensionError); }

TEST(ThinQr, OrthonormalInputIsFixedPoint) {
  RandomStream rng(29);
  const Matrix q0 = testing::random_frame(20, 5, rng);
  const QrResult qr = thin_qr(q0);
  EXPECT_LT(max_abs_diff(qr.q, q0), 1e-12);
  EXPECT_LT(max_abs_diff(qr.r, Matrix::identity(5)), 1e-12);
}

TEST(ThinQr, SingleColumn) {
  const QrResult qr = thin_qr(Matrix{{3}, {0}, {0}});
  EXPECT_EQ(qr.q, (Matrix{{1}, {0}, {0}}));
  EXPECT_EQ(qr.r, (Matrix{{3}}));

  const QrResult neg = thin_qr(Matrix{{-3}, {0}, {0}});
  EXPECT_EQ(neg.q, (Matrix{{-1}, {0}, {0}}));
  EXPECT_EQ(neg.r, (Matrix{{3}}));
}

TEST(ThinQr, ReconstructionAndOrthonormalityOnGaussianInput) {
  RandomStream rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix y = gaussian_matrix(20, 5, rng);
    const QrResult qr = thin_qr(y);
    EXPECT_LE(frobenius_norm(y - matmul(qr.q, qr.r)), 1e-10 * frobenius_norm(y));
    EXPECT_LT(frobenius_norm(matmul(transpose(qr.q), qr.q) - Matrix::identity(5)), 1e-12);
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_GE(qr.r(i, i), 0.0);
      for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(qr.r(i, j), 0.0);
    }
  }
}

TEST(ThinQr, MatchesGramSchmidtFactor) {
  // With a positive diagonal the thin QR factor is unique, so an independent
  // orthogonalization must agree.
  RandomStream rng(37);
  const Matrix y = gaussian_matrix(12, 4, rng);
  EXPECT_LT(max_abs_diff(thin_qr(y).q, testing::gram_schmidt(y)), 1e-12);
}

TEST(ThinQr, RankDeficiencyReportsColumn) {
  Matrix y{{1, 2, 0}, {2, 4, 1}, {3, 6, 0}, {4, 8, 1}};
  try {
    (void)thin_qr(y);
    FAIL() << "expected RankDeficientError";
  } catch (const RankDeficientError& e) {
    EXPECT_EQ(e.column(), 1u);
  }
  EXPECT_THROW(thin_qr(Matrix(4, 2)), RankDeficientError);
}

TEST(ThinQr, RejectsWideInput) { EXPECT_THROW(thin_qr(Matrix(2, 3)), DimensionError); }

TEST(CholeskyLogdet, KnownValues) {
  EXPECT_EQ(cholesky_logdet(Matrix::identity(5)), 0.0);
  const double d[] = {10, 9, 1, 1, 1};
  EXPECT_NEAR(cholesky_logdet(Matrix::diagonal(d)), 4.499809670330265, 1e-12);
}

TEST(CholeskyLogdet, DiagonalIsSumOfLogs) {
  RandomStream rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> d(1 + rng.index(10));
    double expected = 0.0;
    for (double& x : d) {
      x = 0.01 + 100.0 * rng.uniform();
      expected += std::log(x);
    }
    EXPECT_NEAR(cholesky_logdet(Matrix::diagonal(d)), expected, 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST(CholeskyLogdet, MatchesEigenvalueProduct) {
  RandomStream rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = gaussian_matrix(5, 5, rng);
    Matrix spd = matmul(transpose(m), m) + Matrix::identity(5);
    double oracle = 0.0;
    for (double ev : testing::jacobi_eigenvalues(spd)) oracle += std::log(ev);
    EXPECT_NEAR(cholesky_logdet(spd), oracle, 1e-10);
  }
}

TEST(CholeskyLogdet, Errors) {
  EXPECT_THROW(cholesky_logdet(Matrix{{1, 2}, {2, 1}}), NotPositiveDefiniteError);
  EXPECT_THROW(cholesky_logdet(Matrix{{1, 0.5}, {0, 1}}), DimensionError);
  EXPECT_THROW(cholesky_logdet(Matrix(2, 3)), DimensionError);
}

TEST(InvertSmall, KnownValues) {
  EXPECT_EQ(invert_small(Matrix::identity(4)), Matrix::identity(4));
  EXPECT_EQ(invert_small(Matrix{{2, 0}, {0, 4}}), (Matrix{{0.5, 0}, {0, 0.25}}));
}

TEST(InvertSmall, ResidualOnRandomWellConditioned) {
  RandomStream rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix s = gaussian_matrix(5, 5, rng) + 5.0 * Matrix::identity(5);
    EXPECT_LT(frobenius_norm(matmul(s, invert_small(s)) - Matrix::identity(5)), 1e-8);
  }
}

TEST(InvertSmall, Errors) {
  EXPECT_THROW(invert_small(Matrix{{1, 2}, {2, 4}}), SingularMatrixError);
  EXPECT_THROW(invert_small(Matrix(2, 3)), DimensionError);
  EXPECT_THROW(invert_small(Matrix::identity(17)), DimensionError);
}

}  // namespace
}  // namespace grassde
