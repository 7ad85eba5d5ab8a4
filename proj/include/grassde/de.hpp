#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grassde/linalg.hpp"
#include "grassde/manifold.hpp"
#include "grassde/objectives.hpp"
#include "grassde/random.hpp"

namespace grassde {

/// Self-adaptive DE settings. Defaults are sized for d = n * k around 100.
struct DEConfig {
  std::size_t np = 50;
  std::size_t max_generations = 5000;
  double f_init = 0.5;
  double cr_init = 0.9;
  double f_l = 0.1;
  double f_u = 0.9;
  double tau1 = 0.1;
  double tau2 = 0.1;
  std::uint64_t seed = 42;
  /// Stop when the best fitness improved by less than stagnation_tol over
  /// this many generations. Zero disables the check.
  std::size_t stagnation_window = 200;
  double stagnation_tol = 1e-10;
  /// Threads used for fitness evaluation. Results do not depend on it.
  std::size_t workers = 1;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;

  friend bool operator==(const DEConfig&, const DEConfig&) = default;
};

struct Individual {
  Genome genome;
  double f = 0.0;
  double cr = 0.0;
  double fitness = 0.0;
};

enum class Termination { MaxGenerations, Stagnation };

std::string to_string(Termination t);

struct RunResult {
  Genome best_genome;
  double best_fitness = 0.0;
  /// Best fitness after each completed generation.
  std::vector<double> history;
  std::size_t evaluations = 0;
  Termination termination = Termination::MaxGenerations;
};

/// Objective evaluated on the n x k matrix form of a projected genome.
/// Must be pure: it may be called concurrently.
using Objective = std::function<double(const Matrix&)>;

/// Receives (generation, best_fitness, mean_fitness) after every generation.
using ProgressCallback = std::function<void(std::size_t, double, double)>;

/// An objective returned a non-finite value (or threw) during a run.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::size_t generation, std::size_t index, const std::string& what)
      : std::runtime_error(what), generation_(generation), index_(index) {}

  /// Zero for the initial population, g for the g-th generation.
  std::size_t generation() const noexcept { return generation_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t generation_;
  std::size_t index_;
};

// Single-step operators. The engine composes these; they are public so the
// mechanics can be checked in isolation.

struct MutationIndices {
  std::size_t r1;
  std::size_t r2;
  std::size_t r3;
};

/// Draws r1, r2, r3 uniformly without replacement from {0..np-1} \ {target}.
MutationIndices draw_mutation_indices(std::size_t np, std::size_t target, RandomStream& rng);

/// rand/1 mutant x_r1 + f * (x_r2 - x_r3), before projection.
Genome mutate(std::span<const Individual> population, const MutationIndices& idx, double f);

struct CrossoverResult {
  Genome trial;
  /// Component always inherited from the mutant.
  std::size_t forced;
};

/// Binomial crossover. Draws the forced index first, then one uniform per
/// component; component j comes from the mutant if alpha_j <= cr or
/// j == forced.
CrossoverResult crossover(std::span<const double> target, std::span<const double> mutant, double cr,
                          RandomStream& rng);

/// Greedy selection: the trial replaces the target only if strictly better.
/// Throws std::domain_error on NaN fitness.
const Individual& select(const Individual& target, const Individual& trial);

struct ControlParams {
  double f;
  double cr;
};

/// jDE refresh: f <- f_l + r1 * f_u if r2 < tau1; cr <- r3 if r4 < tau2.
/// Always consumes four uniforms, in the order r1, r2, r3, r4.
ControlParams adapt(const ControlParams& current, const DEConfig& config, RandomStream& rng);

/// DE on Gr(k, n) with a QR projection after mutation and after crossover.
///
/// Each generation draws every random number from the single seeded stream
/// in a fixed sequential order; only the trial evaluations run in parallel.
class DifferentialEvolution {
 public:
  DifferentialEvolution(DEConfig config, GrassmannShape shape, Objective objective);

  /// Builds and evaluates the initial population. Called by run() if needed.
  void initialize();

  /// Advances one generation. Requires initialize().
  void step();

  RunResult run(const ProgressCallback& progress = {});

  const std::vector<Individual>& population() const noexcept { return population_; }
  std::size_t generation() const noexcept { return generation_; }
  std::size_t evaluations() const noexcept { return evaluations_; }
  double best_fitness() const;
  const Individual& best() const;

 private:
  Genome project_or_resample(const Genome& v);
  std::vector<double> evaluate_all(const std::vector<Genome>& genomes);

  DEConfig config_;
  GrassmannShape shape_;
  Objective objective_;
  RandomStream rng_;
  std::vector<Individual> population_;
  std::size_t generation_ = 0;
  std::size_t evaluations_ = 0;
  bool initialized_ = false;
};

RunResult run(const DEConfig& config, const GrassmannShape& shape, const Objective& objective,
              const ProgressCallback& progress = {});

/// Checks that the objective's ambient dimension matches shape.n().
RunResult run(const DEConfig& config, const GrassmannShape& shape, const ObjectiveSpec& objective,
              const ProgressCallback& progress = {});

}  // namespace grassde
