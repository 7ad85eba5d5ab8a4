#include "grassde/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "grassde/csv.hpp"
#include "grassde/experiment.hpp"
#include "grassde/manifold.hpp"
#include "grassde/reference_data.hpp"
#include "grassde/report.hpp"

namespace grassde {

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct GlobalFlags {
  std::optional<std::size_t> np;
  std::optional<std::size_t> max_gens;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> stagnation_window;
  std::optional<double> stagnation_tol;
  std::size_t threads = 1;
  std::string format = "json";
  std::string output;
  bool quiet = false;
  bool timing = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const GlobalFlags& flags) {
  if (flags.seed) return *flags.seed;
  if (const char* env = std::getenv("GRASSDE_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("GRASSDE_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  return kDefaultMasterSeed;
}

ConfigOverrides to_overrides(const GlobalFlags& flags) {
  ConfigOverrides o;
  o.np = flags.np;
  o.max_generations = flags.max_gens;
  o.seed = resolve_seed(flags);
  o.stagnation_window = flags.stagnation_window;
  o.stagnation_tol = flags.stagnation_tol;
  o.workers = flags.threads;
  return o;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void print_summary(const ExperimentReport& r, std::ostream& os) {
  if (!r.ok()) {
    os << r.experiment_id << ": FAILED: " << r.error << '\n';
    return;
  }
  os << r.experiment_id << ": best_fitness=" << fmt(r.best_fitness) << " reported_value=" << fmt(r.reported_value)
     << " generations=" << r.history.size() << " evaluations=" << r.evaluations << " termination=" << r.termination
     << " seed=" << r.seed << '\n';
}

int emit(const std::vector<ExperimentReport>& reports, const GlobalFlags& flags, std::ostream& out,
         std::ostream& err) {
  const ReportFormat format = parse_report_format(flags.format);
  const EmitOptions opts{flags.timing};
  if (!flags.quiet) {
    for (const auto& r : reports) print_summary(r, err);
  }
  try {
    if (flags.output.empty()) {
      out << (format == ReportFormat::Json ? reports_to_json(reports, opts) : reports_to_csv(reports, opts));
    } else {
      emit_report(reports, format, flags.output, opts);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  for (const auto& r : reports)
    if (!r.ok()) return kExitFailure;
  return 0;
}

int do_project(const std::string& input, std::size_t n, std::size_t k, const GlobalFlags& flags, std::ostream& out,
               std::ostream& err) {
  const GrassmannShape shape(n, k);
  Matrix m;
  try {
    m = read_csv_matrix(input);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  if (m.size() != shape.d()) {
    throw UsageError("input has " + std::to_string(m.size()) + " values, expected n*k = " + std::to_string(shape.d()));
  }
  Genome projected;
  try {
    projected = project(m.data(), shape);
  } catch (const ProjectionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  const std::string text = format_csv_matrix(reshape(projected, shape));
  if (flags.output.empty()) {
    out << text;
    return 0;
  }
  std::ofstream file(flags.output, std::ios::binary | std::ios::trunc);
  if (!(file << text)) {
    err << "error: cannot write '" << flags.output << "'\n";
    return kExitFailure;
  }
  return 0;
}

int do_show_refs(std::ostream& out) {
  struct Entry {
    const char* name;
    std::string_view text;
    ReferenceFrame frame;
  };
  const Entry entries[] = {{"P1", refdata::p1_csv(), refdata::load_p1()},
                           {"P2", refdata::p2_csv(), refdata::load_p2()},
                           {"P3", refdata::p3_csv(), refdata::load_p3()}};
  for (const auto& e : entries) {
    char hash[24];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(refdata::fnv1a64(e.text)));
    out << "# " << e.name << " " << e.frame.q.rows() << "x" << e.frame.q.cols() << " fnv1a64=" << hash
        << " residual_before=" << fmt(e.frame.residual_before) << " residual_after=" << fmt(e.frame.residual_after)
        << " repaired=" << (e.frame.repaired ? "yes" : "no") << '\n'
        << e.text << '\n';
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential evolution on the Grassmann manifold Gr(k, n)", "grassde"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--np", flags.np, "Population size (>= 4)");
  app.add_option("--max-gens", flags.max_gens, "Maximum number of generations");
  app.add_option("--seed", flags.seed, "Master seed (falls back to GRASSDE_SEED, then 42)");
  app.add_option("--stagnation-window", flags.stagnation_window, "Generations without progress before stopping");
  app.add_option("--stagnation-tol", flags.stagnation_tol, "Minimum improvement over the stagnation window");
  app.add_option("--threads", flags.threads, "Threads for fitness evaluation")->check(CLI::PositiveNumber);
  app.add_option("--format", flags.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", flags.output, "Output path (default: stdout)");
  app.add_flag("--quiet", flags.quiet, "Suppress per-experiment summaries on stderr");
  app.add_flag("--timing", flags.timing, "Include wall-clock time in reports");

  std::string experiment;
  auto* run_cmd = app.add_subcommand("run", "Run one benchmark experiment");
  run_cmd->add_option("--experiment", experiment, "Experiment id")
      ->required()
      ->check(CLI::IsMember(experiment_ids()));

  auto* run_all_cmd = app.add_subcommand("run-all", "Run every benchmark experiment");

  std::string input;
  std::size_t n = 0;
  std::size_t k = 0;
  auto* project_cmd = app.add_subcommand("project", "Project an n x k matrix (CSV) onto Gr(k, n)");
  project_cmd->add_option("--input", input, "CSV file with n*k values")->required();
  project_cmd->add_option("--n", n, "Ambient dimension")->required();
  project_cmd->add_option("--k", k, "Subspace dimension")->required();

  auto* refs_cmd = app.add_subcommand("show-refs", "Print the embedded reference frames");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) {
      std::vector<ExperimentReport> reports;
      const ConfigOverrides overrides = to_overrides(flags);
      try {
        reports.push_back(run_experiment(experiment, overrides));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      } catch (const std::exception& e) {
        err << "error: " << experiment << ": " << e.what() << '\n';
        return kExitFailure;
      }
      return emit(reports, flags, out, err);
    }
    if (*run_all_cmd) {
      const ConfigOverrides overrides = to_overrides(flags);
      make_config(overrides, experiment_ids().front()).validate();
      return emit(run_all(overrides), flags, out, err);
    }
    if (*project_cmd) return do_project(input, n, k, flags, out, err);
    if (*refs_cmd) return do_show_refs(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace grassde
