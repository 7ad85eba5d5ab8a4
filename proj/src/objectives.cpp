#include "grassde/objectives.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <type_traits>

#include "grassde/manifold.hpp"

namespace grassde {

namespace {

void require_frame_shape(const Matrix& ref, const Matrix& q, const char* op) {
  if (ref.rows() != q.rows() || ref.cols() != q.cols()) {
    throw DimensionError(std::string(op) + ": reference is " + std::to_string(ref.rows()) + "x" +
                         std::to_string(ref.cols()) + ", frame is " + std::to_string(q.rows()) +
                         "x" + std::to_string(q.cols()));
  }
}

void require_square_for(const Matrix& a, const Matrix& q, const char* op) {
  if (!a.is_square() || a.rows() != q.rows()) {
    throw DimensionError(std::string(op) + ": expected an n x n matrix with n = frame rows");
  }
}

void require_symmetric(const Matrix& a, const char* op) {
  if (!a.is_square() || frobenius_norm(a - transpose(a)) > 1e-10 * frobenius_norm(a)) {
    throw DimensionError(std::string(op) + ": matrix must be square and symmetric");
  }
}

void require_orthonormal(const Matrix& p, const char* op) {
  if (p.rows() <= p.cols() || orthonormality_residual(p) > kOrthonormalTolerance) {
    throw DimensionError(std::string(op) + ": reference frame is not orthonormal");
  }
}

double alignment(const Matrix& q, const Matrix& p) { return frobenius_norm_sq(matmul(transpose(q), p)); }

}  // namespace

double eval_pca_trace(const Matrix& sigma, const Matrix& q) {
  require_square_for(sigma, q, "eval_pca_trace");
  return -trace(matmul(transpose(q), matmul(sigma, q)));
}

double eval_chordal(const Matrix& p_ref, const Matrix& q) {
  require_frame_shape(p_ref, q, "eval_chordal");
  return static_cast<double>(q.cols()) - alignment(q, p_ref);
}

double eval_bimodal(const Matrix& p1, const Matrix& p2, const Matrix& q) {
  require_frame_shape(p1, q, "eval_bimodal");
  require_frame_shape(p2, q, "eval_bimodal");
  return std::max(alignment(q, p1), alignment(q, p2));
}

double eval_logdet(const Matrix& a, const Matrix& q) {
  require_square_for(a, q, "eval_logdet");
  Matrix s = matmul(transpose(q), matmul(a, q));
  // q^T a q is symmetric in exact arithmetic; remove the rounding skew.
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j) s(i, j) = s(j, i) = 0.5 * (s(i, j) + s(j, i));
  return -cholesky_logdet(s);
}

double eval_cluster_residual(const Matrix& x, const std::vector<Matrix>& refs, const Matrix& q) {
  if (refs.empty()) {
    throw DimensionError("eval_cluster_residual: no reference matrices");
  }
  if (x.rows() != q.rows()) {
    throw DimensionError("eval_cluster_residual: data rows differ from frame rows");
  }
  const Matrix qt = transpose(q);
  double best = std::numeric_limits<double>::infinity();
  for (const Matrix& xi : refs) {
    if (xi.rows() != x.rows() || xi.cols() != x.cols()) {
      throw DimensionError("eval_cluster_residual: reference shape differs from data shape");
    }
    best = std::min(best, frobenius_norm_sq(x - matmul(q, matmul(qt, xi))));
  }
  return best;
}

Matrix build_sigma_linear(std::size_t n) {
  if (n < 1) throw DimensionError("build_sigma_linear: n must be positive");
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) s(i, i) = static_cast<double>(n - i);
  return s;
}

Matrix build_a_spiked(std::size_t n) {
  if (n < 2) throw DimensionError("build_a_spiked: n must be at least 2");
  Matrix a = Matrix::identity(n);
  a(0, 0) = 10.0;
  a(1, 1) = 9.0;
  return a;
}

std::vector<Matrix> build_cluster_data(const std::vector<Matrix>& p_list, std::size_t m,
                                       RandomStream& rng) {
  if (m < 1) throw DimensionError("build_cluster_data: m must be positive");
  std::vector<Matrix> out;
  out.reserve(p_list.size());
  for (const Matrix& p : p_list) {
    require_orthonormal(p, "build_cluster_data");
    Matrix z(p.cols(), m);
    for (double& v : z.data()) v = rng.normal();
    out.push_back(matmul(p, z));
  }
  return out;
}

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::PcaTrace: return "pca_trace";
    case ObjectiveKind::ChordalToRef: return "chordal_to_ref";
    case ObjectiveKind::BimodalMax: return "bimodal_max";
    case ObjectiveKind::LogDetVolume: return "logdet_volume";
    case ObjectiveKind::ClusterResidual: return "cluster_residual";
  }
  return "unknown";
}

ObjectiveSpec ObjectiveSpec::pca_trace(Matrix sigma) {
  require_symmetric(sigma, "pca_trace");
  return ObjectiveSpec(PcaTrace{std::move(sigma)});
}

ObjectiveSpec ObjectiveSpec::chordal(Matrix p_ref) {
  require_orthonormal(p_ref, "chordal");
  return ObjectiveSpec(ChordalToRef{std::move(p_ref)});
}

ObjectiveSpec ObjectiveSpec::bimodal(Matrix p1, Matrix p2) {
  require_orthonormal(p1, "bimodal");
  require_orthonormal(p2, "bimodal");
  if (p1.rows() != p2.rows() || p1.cols() != p2.cols()) {
    throw DimensionError("bimodal: reference frames differ in shape");
  }
  return ObjectiveSpec(BimodalMax{std::move(p1), std::move(p2)});
}

ObjectiveSpec ObjectiveSpec::logdet(Matrix a) {
  require_symmetric(a, "logdet");
  // Positive definiteness of the whole matrix implies it on every subspace.
  (void)cholesky_logdet(a);
  return ObjectiveSpec(LogDetVolume{std::move(a)});
}

ObjectiveSpec ObjectiveSpec::cluster_residual(Matrix x, std::vector<Matrix> refs) {
  if (refs.empty()) throw DimensionError("cluster_residual: no reference matrices");
  for (const Matrix& r : refs) {
    if (r.rows() != x.rows() || r.cols() != x.cols()) {
      throw DimensionError("cluster_residual: reference shape differs from data shape");
    }
  }
  return ObjectiveSpec(ClusterResidual{std::move(x), std::move(refs)});
}

std::size_t ObjectiveSpec::ambient_dim() const {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PcaTrace>) return p.sigma.rows();
        else if constexpr (std::is_same_v<T, ChordalToRef>) return p.p.rows();
        else if constexpr (std::is_same_v<T, BimodalMax>) return p.p1.rows();
        else if constexpr (std::is_same_v<T, LogDetVolume>) return p.a.rows();
        else return p.x.rows();
      },
      payload_);
}

double ObjectiveSpec::evaluate(const Matrix& q) const {
  return std::visit(
      [&q](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PcaTrace>) return eval_pca_trace(p.sigma, q);
        else if constexpr (std::is_same_v<T, ChordalToRef>) return eval_chordal(p.p, q);
        else if constexpr (std::is_same_v<T, BimodalMax>) return eval_bimodal(p.p1, p.p2, q);
        else if constexpr (std::is_same_v<T, LogDetVolume>) return eval_logdet(p.a, q);
        else return eval_cluster_residual(p.x, p.refs, q);
      },
      payload_);
}

}  // namespace grassde
