#include "grassde/manifold.hpp"

#include <string>

namespace grassde {

GrassmannShape::GrassmannShape(std::size_t n, std::size_t k) : n_(n), k_(k) {
  if (k < 1 || k >= n) {
    throw DimensionError("GrassmannShape: need 1 <= k < n, got n=" + std::to_string(n) +
                         " k=" + std::to_string(k));
  }
}

Matrix reshape(std::span<const double> v, const GrassmannShape& shape) {
  if (v.size() != shape.d()) {
    throw DimensionError("reshape: vector length " + std::to_string(v.size()) + " != d = " +
                         std::to_string(shape.d()));
  }
  return Matrix(shape.n(), shape.k(), Genome(v.begin(), v.end()));
}

Genome flatten(const Matrix& m) {
  const auto d = m.data();
  return Genome(d.begin(), d.end());
}

Genome project(std::span<const double> v, const GrassmannShape& shape) {
  const Matrix y = reshape(v, shape);
  try {
    return flatten(thin_qr(y).q);
  } catch (const RankDeficientError& e) {
    throw ProjectionError(e.column(), std::string("project: ") + e.what());
  }
}

double orthonormality_residual(const Matrix& q) {
  return frobenius_norm(matmul(transpose(q), q) - Matrix::identity(q.cols()));
}

namespace {

void require_frame(const Matrix& m, const char* what) {
  if (orthonormality_residual(m) > kOrthonormalTolerance) {
    throw DimensionError(std::string(what) + ": frame is not orthonormal");
  }
}

}  // namespace

double chordal_distance_sq(const Matrix& q, const Matrix& p) {
  if (q.rows() != p.rows() || q.cols() != p.cols()) {
    throw DimensionError("chordal_distance_sq: frames have different shapes");
  }
  require_frame(q, "chordal_distance_sq");
  require_frame(p, "chordal_distance_sq");
  return static_cast<double>(q.cols()) - frobenius_norm_sq(matmul(transpose(q), p));
}

Genome random_point(const GrassmannShape& shape, RandomStream& rng) {
  constexpr int kAttempts = 3;
  Genome g(shape.d());
  for (int attempt = 1;; ++attempt) {
    for (double& x : g) x = rng.normal();
    try {
      return project(g, shape);
    } catch (const ProjectionError&) {
      if (attempt == kAttempts) throw;
    }
  }
}

double alignment_orthogonality(const Matrix& p, const Matrix& q) {
  if (q.rows() != p.rows() || q.cols() != p.cols()) {
    throw DimensionError("alignment_orthogonality: frames have different shapes");
  }
  const Matrix r = invert_small(matmul(transpose(p), q));
  return frobenius_norm(matmul(transpose(r), r) - Matrix::identity(r.rows()));
}

ReferenceFrame accept_reference(const Matrix& p) {
  if (p.rows() <= p.cols()) {
    throw DimensionError("accept_reference: expected a tall n x k frame");
  }
  ReferenceFrame out;
  out.residual_before = orthonormality_residual(p);
  if (out.residual_before <= kOrthonormalTolerance) {
    out.q = p;
  } else if (out.residual_before <= kRepairTolerance) {
    out.q = thin_qr(p).q;
    out.repaired = true;
  } else {
    throw DimensionError("accept_reference: orthonormality residual " +
                         std::to_string(out.residual_before) + " exceeds repair band");
  }
  out.residual_after = orthonormality_residual(out.q);
  return out;
}

}  // namespace grassde
