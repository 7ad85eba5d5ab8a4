#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "grassde/linalg.hpp"
#include "grassde/random.hpp"

namespace grassde {

/// Gr(k, n): k-dimensional subspaces of R^n, searched in R^d with d = n * k.
class GrassmannShape {
 public:
  GrassmannShape(std::size_t n, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t d() const noexcept { return n_ * k_; }

  friend bool operator==(const GrassmannShape&, const GrassmannShape&) = default;

 private:
  std::size_t n_;
  std::size_t k_;
};

using Genome = std::vector<double>;

/// Thin QR failed while mapping a vector onto the manifold.
class ProjectionError : public RankDeficientError {
 public:
  using RankDeficientError::RankDeficientError;
};

/// Row-major bijection R^d -> Mat(n, k): entry (i, j) = v[i * k + j].
Matrix reshape(std::span<const double> v, const GrassmannShape& shape);

/// Inverse of reshape.
Genome flatten(const Matrix& m);

/// Orthonormalizes the n x k matrix form of v by thin QR and returns the
/// flattened Q factor. Idempotent on its own output.
Genome project(std::span<const double> v, const GrassmannShape& shape);

/// ||Q^T Q - I_k||_F.
double orthonormality_residual(const Matrix& q);

/// Residual above which a frame is rejected as non-orthonormal.
inline constexpr double kOrthonormalTolerance = 1e-6;
/// Frames with residual in (kOrthonormalTolerance, kRepairTolerance] are
/// re-orthonormalized on load instead of being rejected.
inline constexpr double kRepairTolerance = 1e-3;

/// k - ||Q^T P||_F^2 for orthonormal n x k frames; zero iff the spans agree.
double chordal_distance_sq(const Matrix& q, const Matrix& p);

/// Uniformly distributed point on Gr(k, n): Gaussian entries, then project.
/// Retries a rank-deficient draw up to three times.
Genome random_point(const GrassmannShape& shape, RandomStream& rng);

/// ||R^T R - I_k||_F with R = (P^T Q)^{-1}. Near zero when Q and P span the
/// same subspace; throws SingularMatrixError when P^T Q is singular.
double alignment_orthogonality(const Matrix& p, const Matrix& q);

/// A user-supplied reference frame after validation.
struct ReferenceFrame {
  Matrix q;
  double residual_before = 0.0;
  double residual_after = 0.0;
  bool repaired = false;
};

/// Accepts frames with residual <= 1e-6 as-is, re-orthonormalizes frames up
/// to 1e-3 through thin_qr, and rejects anything worse with DimensionError.
ReferenceFrame accept_reference(const Matrix& p);

}  // namespace grassde
