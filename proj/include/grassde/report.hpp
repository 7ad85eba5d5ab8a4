#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "grassde/experiment.hpp"

namespace grassde {

enum class ReportFormat { Json, Csv };

/// Parses "json" or "csv"; throws std::invalid_argument otherwise.
ReportFormat parse_report_format(std::string_view name);

struct EmitOptions {
  /// Wall-clock time varies between runs, so it is left out unless asked
  /// for; without it the output is byte-identical for a given seed.
  bool include_timing = false;
};

/// Top-level JSON array, one object per experiment, lower_snake_case keys.
std::string reports_to_json(const std::vector<ExperimentReport>& reports, const EmitOptions& opts = {});
std::vector<ExperimentReport> reports_from_json(std::string_view text);

/// One row per experiment; diagnostics are flattened into `diag_<name>`
/// columns over the union of names across reports.
std::string reports_to_csv(const std::vector<ExperimentReport>& reports, const EmitOptions& opts = {});

/// Header `generation,best_fitness,mean_fitness`, then one line per
/// generation.
std::string trace_to_csv(const ExperimentReport& report);

/// `<dir>/<stem>_<id>_trace.csv` next to the summary file.
std::string trace_path(const std::string& summary_path, const std::string& experiment_id);

/// Writes the document to `path`; for CSV also writes one trace file per
/// experiment. Throws std::runtime_error on I/O failure.
void emit_report(const std::vector<ExperimentReport>& reports, ReportFormat format, const std::string& path,
                 const EmitOptions& opts = {});

}  // namespace grassde
