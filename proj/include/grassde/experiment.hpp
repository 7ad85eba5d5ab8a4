#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grassde/de.hpp"
#include "grassde/manifold.hpp"

namespace grassde {

inline constexpr std::uint64_t kDefaultMasterSeed = 42;

/// Offset added to the master seed to seed the cluster data generator, so
/// X_1..X_3 are shared by all three cluster experiments.
inline constexpr std::uint64_t kClusterDataSeedOffset = 100;

/// Partial DEConfig; unset fields keep the defaults.
struct ConfigOverrides {
  std::optional<std::size_t> np;
  std::optional<std::size_t> max_generations;
  /// Master seed. Each experiment runs with master + its ordinal.
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> stagnation_window;
  std::optional<double> stagnation_tol;
  std::optional<std::size_t> workers;
};

struct ExperimentReport {
  std::string experiment_id;
  DEConfig config;
  GrassmannShape shape{20, 5};
  double best_fitness = 0.0;
  /// best_fitness with the sign flipped for the maximization experiment.
  double reported_value = 0.0;
  std::map<std::string, double> diagnostics;
  std::vector<double> history;
  std::vector<double> mean_history;
  Genome best_genome;
  std::size_t evaluations = 0;
  std::string termination;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
  /// Empty on success, otherwise what went wrong.
  std::string error;

  bool ok() const noexcept { return error.empty(); }
  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// pca, chordal, bimodal, logdet, cluster1, cluster2, cluster3.
const std::vector<std::string>& experiment_ids();

bool is_experiment_id(std::string_view id);

/// Position of id in experiment_ids(); throws std::invalid_argument if
/// unknown.
std::size_t experiment_ordinal(std::string_view id);

DEConfig make_config(const ConfigOverrides& overrides, std::string_view id);

/// Builds the experiment's objective on Gr(5, 20), runs DE and fills in the
/// diagnostics. Throws std::invalid_argument for an unknown id; evaluation
/// failures propagate.
ExperimentReport run_experiment(std::string_view id, const ConfigOverrides& overrides);

/// Runs every experiment in order. A failing experiment yields a report with
/// `error` set; the rest still run.
std::vector<ExperimentReport> run_all(const ConfigOverrides& overrides);

/// Orthonormal n x k frame spanning a k-dimensional subspace of the
/// orthogonal complement of span(basis).
Matrix complement_frame(const Matrix& basis, std::size_t k);

}  // namespace grassde
