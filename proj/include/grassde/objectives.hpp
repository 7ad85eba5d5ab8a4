#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "grassde/linalg.hpp"
#include "grassde/random.hpp"

namespace grassde {

// Benchmark objectives on Gr(k, n). Every evaluation takes an orthonormal
// n x k frame q and depends only on span(q). All are phrased for
// minimization.

/// -tr(q^T sigma q). The negated value is the variance captured by span(q).
double eval_pca_trace(const Matrix& sigma, const Matrix& q);

/// k - ||q^T p_ref||_F^2, the squared chordal distance to span(p_ref).
double eval_chordal(const Matrix& p_ref, const Matrix& q);

/// max(||q^T p1||_F^2, ||q^T p2||_F^2).
double eval_bimodal(const Matrix& p1, const Matrix& p2, const Matrix& q);

/// -log det(q^T a q) for symmetric positive definite a.
double eval_logdet(const Matrix& a, const Matrix& q);

/// min_i ||x - q q^T refs[i]||_F^2.
double eval_cluster_residual(const Matrix& x, const std::vector<Matrix>& refs, const Matrix& q);

/// diag(n, n-1, ..., 1).
Matrix build_sigma_linear(std::size_t n);

/// diag(10, 9, 1, ..., 1).
Matrix build_a_spiked(std::size_t n);

/// X_i = P_i Z_i with Z_i a k x m matrix of standard Gaussians drawn from
/// `rng` in order i = 1..r, row-major within each Z_i.
std::vector<Matrix> build_cluster_data(const std::vector<Matrix>& p_list, std::size_t m,
                                       RandomStream& rng);

enum class ObjectiveKind { PcaTrace, ChordalToRef, BimodalMax, LogDetVolume, ClusterResidual };

std::string_view to_string(ObjectiveKind kind);

struct PcaTrace {
  Matrix sigma;
};
struct ChordalToRef {
  Matrix p;
};
struct BimodalMax {
  Matrix p1;
  Matrix p2;
};
struct LogDetVolume {
  Matrix a;
};
struct ClusterResidual {
  Matrix x;
  std::vector<Matrix> refs;
};

/// One of the five benchmark objectives together with its fixed data.
/// Factories validate the data; the payload is immutable afterwards.
class ObjectiveSpec {
 public:
  using Payload = std::variant<PcaTrace, ChordalToRef, BimodalMax, LogDetVolume, ClusterResidual>;

  static ObjectiveSpec pca_trace(Matrix sigma);
  static ObjectiveSpec chordal(Matrix p_ref);
  static ObjectiveSpec bimodal(Matrix p1, Matrix p2);
  static ObjectiveSpec logdet(Matrix a);
  static ObjectiveSpec cluster_residual(Matrix x, std::vector<Matrix> refs);

  ObjectiveKind kind() const noexcept { return static_cast<ObjectiveKind>(payload_.index()); }
  const Payload& payload() const noexcept { return payload_; }

  /// Ambient dimension n the objective expects.
  std::size_t ambient_dim() const;

  double evaluate(const Matrix& q) const;
  double operator()(const Matrix& q) const { return evaluate(q); }

 private:
  explicit ObjectiveSpec(Payload p) : payload_(std::move(p)) {}
  Payload payload_;
};

}  // namespace grassde
