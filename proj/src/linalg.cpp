#include "grassde/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace grassde {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("Matrix: data length " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  require_finite(*this, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw DimensionError("Matrix: ragged initializer list");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(*this, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m, "Matrix::diagonal");
  return m;
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
  if (first + count > cols_) {
    throw DimensionError("Matrix::columns: range exceeds column count");
  }
  Matrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double aip = a(i, p);
      if (aip == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aip * b(p, j);
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "operator-");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] -= bd[i];
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "operator+");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] += bd[i];
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (double& x : c.data()) x *= s;
  return c;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionError("hconcat: row counts differ");
  }
  Matrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

double frobenius_norm_sq(const Matrix& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return s;
}

double frobenius_norm(const Matrix& a) { return std::sqrt(frobenius_norm_sq(a)); }

double trace(const Matrix& a) {
  if (!a.is_square()) {
    throw DimensionError("trace: matrix is not square");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

void require_finite(const Matrix& a, const char* context) {
  for (double x : a.data()) {
    if (!std::isfinite(x)) {
      throw DimensionError(std::string(context) + ": non-finite entry");
    }
  }
}

QrResult thin_qr(const Matrix& y) {
  const std::size_t m = y.rows();
  const std::size_t n = y.cols();
  if (m < n || n == 0) {
    throw DimensionError("thin_qr: expects rows >= cols > 0");
  }
  require_finite(y, "thin_qr");

  const double tol = kRankTolerance * frobenius_norm(y);

  // Householder vectors are stored below the diagonal of `work`, with the
  // leading component kept separately in `vhead`.
  Matrix work = y;
  std::vector<double> vhead(n, 0.0);
  std::vector<double> beta(n, 0.0);

  for (std::size_t j = 0; j < n; ++j) {
    double sigma = 0.0;
    for (std::size_t i = j + 1; i < m; ++i) sigma += work(i, j) * work(i, j);
    const double x0 = work(j, j);
    const double norm_x = std::sqrt(x0 * x0 + sigma);

    if (norm_x <= tol) {
      throw RankDeficientError(j, "thin_qr: rank deficient at column " + std::to_string(j));
    }
    if (sigma == 0.0) {
      // Already reduced; identity reflector.
      beta[j] = 0.0;
      vhead[j] = 1.0;
      continue;
    }

    const double alpha = x0 >= 0.0 ? -norm_x : norm_x;
    const double v0 = x0 - alpha;
    vhead[j] = v0;
    const double vnorm_sq = v0 * v0 + sigma;
    beta[j] = 2.0 / vnorm_sq;

    // Apply H = I - beta v v^T to the trailing columns.
    for (std::size_t c = j + 1; c < n; ++c) {
      double dot = v0 * work(j, c);
      for (std::size_t i = j + 1; i < m; ++i) dot += work(i, j) * work(i, c);
      dot *= beta[j];
      work(j, c) -= dot * v0;
      for (std::size_t i = j + 1; i < m; ++i) work(i, c) -= dot * work(i, j);
    }
    work(j, j) = alpha;
  }

  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) r(i, j) = work(i, j);

  // Q = H_0 H_1 ... H_{n-1} applied to the first n columns of I.
  Matrix q(m, n);
  for (std::size_t i = 0; i < n; ++i) q(i, i) = 1.0;
  for (std::size_t jj = n; jj-- > 0;) {
    if (beta[jj] == 0.0) continue;
    const double v0 = vhead[jj];
    for (std::size_t c = jj; c < n; ++c) {
      double dot = v0 * q(jj, c);
      for (std::size_t i = jj + 1; i < m; ++i) dot += work(i, jj) * q(i, c);
      dot *= beta[jj];
      q(jj, c) -= dot * v0;
      for (std::size_t i = jj + 1; i < m; ++i) q(i, c) -= dot * work(i, jj);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(r(i, i)) < tol) {
      throw RankDeficientError(i, "thin_qr: rank deficient at column " + std::to_string(i));
    }
    if (r(i, i) < 0.0) {
      for (std::size_t j = i; j < n; ++j) r(i, j) = -r(i, j);
      for (std::size_t row = 0; row < m; ++row) q(row, i) = -q(row, i);
    }
  }
  return {std::move(q), std::move(r)};
}

double cholesky_logdet(const Matrix& s) {
  if (!s.is_square()) {
    throw DimensionError("cholesky_logdet: matrix is not square");
  }
  require_finite(s, "cholesky_logdet");
  const std::size_t n = s.rows();
  if (frobenius_norm(s - transpose(s)) >= 1e-10 * frobenius_norm(s)) {
    throw DimensionError("cholesky_logdet: matrix is not symmetric");
  }

  Matrix l(n, n);
  double logdet = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double d = s(j, j);
    for (std::size_t p = 0; p < j; ++p) d -= l(j, p) * l(j, p);
    if (!(d > 0.0)) {
      throw NotPositiveDefiniteError("cholesky_logdet: non-positive pivot at " + std::to_string(j));
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    logdet += std::log(ljj);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t p = 0; p < j; ++p) v -= l(i, p) * l(j, p);
      l(i, j) = v / ljj;
    }
  }
  return 2.0 * logdet;
}

Matrix invert_small(const Matrix& s) {
  if (!s.is_square()) {
    throw DimensionError("invert_small: matrix is not square");
  }
  const std::size_t n = s.rows();
  if (n == 0 || n > kMaxSmallInverse) {
    throw DimensionError("invert_small: size " + std::to_string(n) + " outside [1, 16]");
  }
  require_finite(s, "invert_small");

  double scale = 0.0;
  for (double x : s.data()) scale = std::max(scale, std::abs(x));
  const double tol = std::numeric_limits<double>::epsilon() * static_cast<double>(n) * scale;

  Matrix a = s;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(a(i, col)) > std::abs(a(pivot, col))) pivot = i;
    if (!(std::abs(a(pivot, col)) > tol)) {
      throw SingularMatrixError("invert_small: matrix is singular to working precision");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(pivot, j));
        std::swap(inv(col, j), inv(pivot, j));
      }
    }
    const double d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const double f = a(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace grassde
