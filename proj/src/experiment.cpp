#include "grassde/experiment.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "grassde/objectives.hpp"
#include "grassde/reference_data.hpp"

namespace grassde {

namespace {

constexpr std::size_t kN = 20;
constexpr std::size_t kK = 5;
constexpr std::size_t kClusterColumns = 12;

Matrix leading_basis(std::size_t n, std::size_t k) { return Matrix::identity(n).columns(0, k); }

std::vector<Matrix> cluster_references(std::uint64_t master_seed) {
  RandomStream rng(master_seed + kClusterDataSeedOffset);
  return build_cluster_data({refdata::load_p1().q, refdata::load_p2().q, refdata::load_p3().q},
                            kClusterColumns, rng);
}

struct Setup {
  ObjectiveSpec objective;
  bool negate_report = false;
};

Setup make_setup(std::string_view id, std::uint64_t master_seed) {
  if (id == "pca") return {ObjectiveSpec::pca_trace(build_sigma_linear(kN)), true};
  if (id == "chordal") return {ObjectiveSpec::chordal(refdata::load_p1().q)};
  if (id == "bimodal") return {ObjectiveSpec::bimodal(refdata::load_p1().q, refdata::load_p2().q)};
  if (id == "logdet") return {ObjectiveSpec::logdet(build_a_spiked(kN))};
  const std::size_t which = experiment_ordinal(id) - experiment_ordinal("cluster1");
  std::vector<Matrix> refs = cluster_references(master_seed);
  Matrix x = refs.at(which);
  return {ObjectiveSpec::cluster_residual(std::move(x), std::move(refs))};
}

void add_diagnostics(ExperimentReport& report, const ObjectiveSpec& objective, const Matrix& q) {
  auto& diag = report.diagnostics;
  diag["orthonormality_residual"] = orthonormality_residual(q);
  const std::string& id = report.experiment_id;

  if (id == "pca") {
    diag["chordal_to_truth"] = chordal_distance_sq(q, leading_basis(kN, kK));
    diag["theoretical_optimum"] = 90.0;
  } else if (id == "chordal") {
    const ReferenceFrame p1 = refdata::load_p1();
    diag["chordal_to_truth"] = chordal_distance_sq(q, p1.q);
    diag["alignment_orthogonality"] = alignment_orthogonality(p1.q, q);
    diag["reference_residual_before_repair"] = p1.residual_before;
  } else if (id == "bimodal") {
    const Matrix p1 = refdata::load_p1().q;
    const Matrix p2 = refdata::load_p2().q;
    diag["alignment_p1"] = frobenius_norm_sq(matmul(transpose(q), p1));
    diag["alignment_p2"] = frobenius_norm_sq(matmul(transpose(q), p2));
    diag["f_at_p1"] = objective.evaluate(p1);
    diag["f_at_p2"] = objective.evaluate(p2);
    diag["complement_witness_value"] = objective.evaluate(complement_frame(hconcat(p1, p2), kK));
  } else if (id == "logdet") {
    diag["gap_to_optimum"] = report.best_fitness + std::log(90.0);
    diag["top2_alignment"] = frobenius_norm_sq(matmul(transpose(q), leading_basis(kN, 2)));
  } else {
    const std::size_t which = experiment_ordinal(id) - experiment_ordinal("cluster1");
    const std::array<ReferenceFrame, 3> truth{refdata::load_p1(), refdata::load_p2(), refdata::load_p3()};
    diag["chordal_to_truth"] = chordal_distance_sq(q, truth.at(which).q);
    diag["f_at_truth"] = objective.evaluate(truth.at(which).q);
  }
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"pca",    "chordal",  "bimodal", "logdet",
                                            "cluster1", "cluster2", "cluster3"};
  return ids;
}

bool is_experiment_id(std::string_view id) {
  const auto& ids = experiment_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::size_t experiment_ordinal(std::string_view id) {
  const auto& ids = experiment_ids();
  const auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) {
    throw std::invalid_argument("unknown experiment '" + std::string(id) + "'");
  }
  return static_cast<std::size_t>(it - ids.begin());
}

DEConfig make_config(const ConfigOverrides& overrides, std::string_view id) {
  DEConfig config;
  if (overrides.np) config.np = *overrides.np;
  if (overrides.max_generations) config.max_generations = *overrides.max_generations;
  if (overrides.stagnation_window) config.stagnation_window = *overrides.stagnation_window;
  if (overrides.stagnation_tol) config.stagnation_tol = *overrides.stagnation_tol;
  if (overrides.workers) config.workers = *overrides.workers;
  config.seed = overrides.seed.value_or(kDefaultMasterSeed) + experiment_ordinal(id);
  return config;
}

ExperimentReport run_experiment(std::string_view id, const ConfigOverrides& overrides) {
  const std::uint64_t master = overrides.seed.value_or(kDefaultMasterSeed);
  ExperimentReport report;
  report.experiment_id = std::string(id);
  report.config = make_config(overrides, id);
  report.config.validate();
  report.seed = report.config.seed;
  report.shape = GrassmannShape(kN, kK);

  const Setup setup = make_setup(id, master);
  const auto start = std::chrono::steady_clock::now();
  const RunResult result = run(report.config, report.shape, setup.objective,
                               [&report](std::size_t, double, double mean) {
                                 report.mean_history.push_back(mean);
                               });
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  report.best_fitness = result.best_fitness;
  report.reported_value = setup.negate_report ? -result.best_fitness : result.best_fitness;
  report.history = result.history;
  report.best_genome = result.best_genome;
  report.evaluations = result.evaluations;
  report.termination = to_string(result.termination);
  add_diagnostics(report, setup.objective, reshape(result.best_genome, report.shape));
  return report;
}

std::vector<ExperimentReport> run_all(const ConfigOverrides& overrides) {
  std::vector<ExperimentReport> reports;
  for (const std::string& id : experiment_ids()) {
    try {
      reports.push_back(run_experiment(id, overrides));
    } catch (const std::exception& e) {
      ExperimentReport failed;
      failed.experiment_id = id;
      try {
        failed.config = make_config(overrides, id);
        failed.seed = failed.config.seed;
      } catch (const std::exception&) {
      }
      failed.error = e.what();
      reports.push_back(std::move(failed));
    }
  }
  return reports;
}

Matrix complement_frame(const Matrix& basis, std::size_t k) {
  const std::size_t n = basis.rows();
  if (basis.cols() + k > n) {
    throw DimensionError("complement_frame: complement has dimension below k");
  }
  const Matrix q = thin_qr(basis).q;

  // Greedy: repeatedly take the standard basis vector with the largest
  // component outside span(q) and the columns already chosen.
  Matrix cols(n, 0);
  for (std::size_t c = 0; c < k; ++c) {
    const Matrix spanned = cols.cols() == 0 ? q : hconcat(q, cols);
    double best_norm = -1.0;
    Matrix best_vec(n, 1);
    for (std::size_t j = 0; j < n; ++j) {
      Matrix v(n, 1);
      v(j, 0) = 1.0;
      for (int pass = 0; pass < 2; ++pass) v = v - matmul(spanned, matmul(transpose(spanned), v));
      const double norm = frobenius_norm(v);
      if (norm > best_norm) {
        best_norm = norm;
        best_vec = v;
      }
    }
    cols = hconcat(cols, (1.0 / best_norm) * best_vec);
  }
  return thin_qr(cols).q;
}

}  // namespace grassde
