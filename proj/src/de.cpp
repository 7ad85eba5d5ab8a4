#include "grassde/de.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

namespace grassde {

void DEConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("DEConfig: " + msg); };
  if (np < 4) fail("np must be at least 4");
  if (max_generations < 1) fail("max_generations must be positive");
  if (!(f_l > 0.0)) fail("f_l must be positive");
  if (!(f_u >= 0.0) || !(f_l + f_u <= 1.0)) fail("need f_u >= 0 and f_l + f_u <= 1");
  if (!(tau1 >= 0.0 && tau1 <= 1.0) || !(tau2 >= 0.0 && tau2 <= 1.0)) fail("tau1, tau2 must lie in [0, 1]");
  if (!(f_init >= 0.0 && std::isfinite(f_init))) fail("f_init must be finite and nonnegative");
  if (!(cr_init >= 0.0 && cr_init <= 1.0)) fail("cr_init must lie in [0, 1]");
  if (!(stagnation_tol >= 0.0)) fail("stagnation_tol must be nonnegative");
  if (workers < 1) fail("workers must be at least 1");
}

std::string to_string(Termination t) {
  return t == Termination::Stagnation ? "stagnation" : "max_generations";
}

MutationIndices draw_mutation_indices(std::size_t np, std::size_t target, RandomStream& rng) {
  std::size_t r1, r2, r3;
  do { r1 = rng.index(np); } while (r1 == target);
  do { r2 = rng.index(np); } while (r2 == target || r2 == r1);
  do { r3 = rng.index(np); } while (r3 == target || r3 == r1 || r3 == r2);
  return {r1, r2, r3};
}

Genome mutate(std::span<const Individual> population, const MutationIndices& idx, double f) {
  const Genome& x1 = population[idx.r1].genome;
  const Genome& x2 = population[idx.r2].genome;
  const Genome& x3 = population[idx.r3].genome;
  Genome v(x1.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = x1[j] + f * (x2[j] - x3[j]);
  return v;
}

CrossoverResult crossover(std::span<const double> target, std::span<const double> mutant, double cr,
                          RandomStream& rng) {
  if (target.size() != mutant.size() || target.empty()) {
    throw DimensionError("crossover: target and mutant lengths differ");
  }
  const std::size_t d = target.size();
  CrossoverResult out{Genome(d), rng.index(d)};
  for (std::size_t j = 0; j < d; ++j) {
    const double alpha = rng.uniform();
    out.trial[j] = (alpha <= cr || j == out.forced) ? mutant[j] : target[j];
  }
  return out;
}

const Individual& select(const Individual& target, const Individual& trial) {
  if (std::isnan(target.fitness) || std::isnan(trial.fitness)) {
    throw std::domain_error("select: NaN fitness");
  }
  return trial.fitness < target.fitness ? trial : target;
}

ControlParams adapt(const ControlParams& current, const DEConfig& config, RandomStream& rng) {
  const double r1 = rng.uniform();
  const double r2 = rng.uniform();
  const double r3 = rng.uniform();
  const double r4 = rng.uniform();
  ControlParams next = current;
  if (r2 < config.tau1) next.f = config.f_l + r1 * config.f_u;
  if (r4 < config.tau2) next.cr = r3;
  return next;
}

DifferentialEvolution::DifferentialEvolution(DEConfig config, GrassmannShape shape, Objective objective)
    : config_(std::move(config)), shape_(shape), objective_(std::move(objective)), rng_(config_.seed) {
  config_.validate();
  if (!objective_) {
    throw std::invalid_argument("DifferentialEvolution: empty objective");
  }
}

Genome DifferentialEvolution::project_or_resample(const Genome& v) {
  try {
    return project(v, shape_);
  } catch (const ProjectionError&) {
    return random_point(shape_, rng_);
  } catch (const DimensionError&) {
    // Non-finite components (overflowing F * difference) are equally
    // unrepresentable on the manifold.
    return random_point(shape_, rng_);
  }
}

std::vector<double> DifferentialEvolution::evaluate_all(const std::vector<Genome>& genomes) {
  const std::size_t count = genomes.size();
  std::vector<double> fitness(count, 0.0);
  std::vector<std::exception_ptr> errors(count);

  auto work = [&](std::size_t offset, std::size_t stride) {
    for (std::size_t i = offset; i < count; i += stride) {
      try {
        fitness[i] = objective_(reshape(genomes[i], shape_));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t workers = std::min(config_.workers, count);
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w, workers);
    work(0, workers);
  }
  evaluations_ += count;

  for (std::size_t i = 0; i < count; ++i) {
    const std::string where = "generation " + std::to_string(generation_) + ", individual " + std::to_string(i);
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        throw EvaluationError(generation_, i, "objective failed at " + where + ": " + e.what());
      }
    }
    if (!std::isfinite(fitness[i])) {
      throw EvaluationError(generation_, i, "objective returned a non-finite value at " + where);
    }
  }
  return fitness;
}

void DifferentialEvolution::initialize() {
  population_.clear();
  generation_ = 0;
  evaluations_ = 0;

  std::vector<Genome> genomes;
  genomes.reserve(config_.np);
  for (std::size_t i = 0; i < config_.np; ++i) genomes.push_back(random_point(shape_, rng_));

  const std::vector<double> fitness = evaluate_all(genomes);
  population_.reserve(config_.np);
  for (std::size_t i = 0; i < config_.np; ++i) {
    population_.push_back(Individual{std::move(genomes[i]), config_.f_init, config_.cr_init, fitness[i]});
  }
  initialized_ = true;
}

void DifferentialEvolution::step() {
  if (!initialized_) {
    throw std::logic_error("DifferentialEvolution::step before initialize");
  }
  ++generation_;
  const std::size_t np = population_.size();

  // Mutate, project, crossover, project: all draws sequential in i.
  std::vector<Genome> trials;
  trials.reserve(np);
  for (std::size_t i = 0; i < np; ++i) {
    const MutationIndices idx = draw_mutation_indices(np, i, rng_);
    const Genome mutant = project_or_resample(mutate(population_, idx, population_[i].f));
    CrossoverResult cx = crossover(population_[i].genome, mutant, population_[i].cr, rng_);
    trials.push_back(project_or_resample(cx.trial));
  }

  const std::vector<double> fitness = evaluate_all(trials);

  for (std::size_t i = 0; i < np; ++i) {
    Individual candidate{std::move(trials[i]), population_[i].f, population_[i].cr, fitness[i]};
    if (&select(population_[i], candidate) == &candidate) {
      population_[i].genome = std::move(candidate.genome);
      population_[i].fitness = candidate.fitness;
    }
  }

  for (Individual& ind : population_) {
    const ControlParams next = adapt({ind.f, ind.cr}, config_, rng_);
    ind.f = next.f;
    ind.cr = next.cr;
  }
}

const Individual& DifferentialEvolution::best() const {
  if (population_.empty()) {
    throw std::logic_error("DifferentialEvolution::best on empty population");
  }
  return *std::min_element(population_.begin(), population_.end(),
                           [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
}

double DifferentialEvolution::best_fitness() const { return best().fitness; }

RunResult DifferentialEvolution::run(const ProgressCallback& progress) {
  if (!initialized_) initialize();

  RunResult result;
  result.history.reserve(config_.max_generations);
  // best_so_far[g] is the best fitness after generation g; entry 0 is the
  // initial population.
  std::vector<double> best_so_far{best_fitness()};
  best_so_far.reserve(config_.max_generations + 1);

  while (true) {
    step();
    const double best = best_fitness();
    best_so_far.push_back(best);
    result.history.push_back(best);

    if (progress) {
      double mean = 0.0;
      for (const Individual& ind : population_) mean += ind.fitness;
      progress(generation_, best, mean / static_cast<double>(population_.size()));
    }

    const std::size_t w = config_.stagnation_window;
    if (w > 0 && generation_ >= w && best_so_far[generation_ - w] - best < config_.stagnation_tol) {
      result.termination = Termination::Stagnation;
      break;
    }
    if (generation_ >= config_.max_generations) {
      result.termination = Termination::MaxGenerations;
      break;
    }
  }

  const Individual& b = best();
  result.best_genome = b.genome;
  result.best_fitness = b.fitness;
  result.evaluations = evaluations_;
  return result;
}

RunResult run(const DEConfig& config, const GrassmannShape& shape, const Objective& objective,
              const ProgressCallback& progress) {
  DifferentialEvolution de(config, shape, objective);
  return de.run(progress);
}

RunResult run(const DEConfig& config, const GrassmannShape& shape, const ObjectiveSpec& objective,
              const ProgressCallback& progress) {
  if (objective.ambient_dim() != shape.n()) {
    throw DimensionError("run: objective expects n = " + std::to_string(objective.ambient_dim()) +
                         ", shape has n = " + std::to_string(shape.n()));
  }
  return run(config, shape, Objective([&objective](const Matrix& q) { return objective.evaluate(q); }),
             progress);
}

}  // namespace grassde
