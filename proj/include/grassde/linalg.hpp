#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace grassde {

/// Raised when operand shapes are incompatible or an input violates a
/// structural precondition (square, symmetric, finite).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thin QR found a numerically zero pivot.
class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(std::size_t column, const std::string& what)
      : std::runtime_error(what), column_(column) {}

  /// Zero-based index of the first column whose pivot fell below tolerance.
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class NotPositiveDefiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of doubles.
///
/// Entries are required to be finite whenever the matrix is built from
/// caller-supplied data.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  /// Columns [first, first + count) as a new matrix.
  Matrix columns(std::size_t first, std::size_t count) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// Horizontal concatenation [a b].
Matrix hconcat(const Matrix& a, const Matrix& b);

double frobenius_norm_sq(const Matrix& a);
double frobenius_norm(const Matrix& a);
double trace(const Matrix& a);

/// Throws DimensionError if any entry is NaN or infinite.
void require_finite(const Matrix& a, const char* context);

struct QrResult {
  Matrix q;  // rows x cols, orthonormal columns
  Matrix r;  // cols x cols, upper triangular, r(i,i) >= 0
};

/// Relative pivot tolerance used by thin_qr: |r_ii| < tol * ||y||_F is rank
/// deficient.
inline constexpr double kRankTolerance = 1e-12;

/// Householder thin QR with a nonnegative diagonal on r. An input whose
/// columns are already orthonormal comes back unchanged (up to rounding)
/// with r close to the identity.
QrResult thin_qr(const Matrix& y);

/// log det of a symmetric positive definite matrix through its Cholesky
/// factor.
double cholesky_logdet(const Matrix& s);

/// Inverse of a small (at most 16 x 16) square matrix by Gauss-Jordan
/// elimination with partial pivoting.
Matrix invert_small(const Matrix& s);

inline constexpr std::size_t kMaxSmallInverse = 16;

}  // namespace grassde
