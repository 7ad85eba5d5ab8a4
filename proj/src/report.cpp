#include "grassde/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace grassde {

using nlohmann::json;

namespace {

json config_to_json(const DEConfig& c) {
  // workers is an execution setting and does not affect results.
  return json{{"np", c.np},
              {"max_generations", c.max_generations},
              {"f_init", c.f_init},
              {"cr_init", c.cr_init},
              {"f_l", c.f_l},
              {"f_u", c.f_u},
              {"tau1", c.tau1},
              {"tau2", c.tau2},
              {"seed", c.seed},
              {"stagnation_window", c.stagnation_window},
              {"stagnation_tol", c.stagnation_tol}};
}

DEConfig config_from_json(const json& j) {
  DEConfig c;
  j.at("np").get_to(c.np);
  j.at("max_generations").get_to(c.max_generations);
  j.at("f_init").get_to(c.f_init);
  j.at("cr_init").get_to(c.cr_init);
  j.at("f_l").get_to(c.f_l);
  j.at("f_u").get_to(c.f_u);
  j.at("tau1").get_to(c.tau1);
  j.at("tau2").get_to(c.tau2);
  j.at("seed").get_to(c.seed);
  j.at("stagnation_window").get_to(c.stagnation_window);
  j.at("stagnation_tol").get_to(c.stagnation_tol);
  return c;
}

json report_to_json(const ExperimentReport& r, const EmitOptions& opts) {
  json j{{"experiment_id", r.experiment_id},
         {"status", r.ok() ? "ok" : "error"},
         {"seed", r.seed},
         {"config", config_to_json(r.config)},
         {"shape", json{{"n", r.shape.n()}, {"k", r.shape.k()}, {"d", r.shape.d()}}},
         {"best_fitness", r.best_fitness},
         {"reported_value", r.reported_value},
         {"diagnostics", r.diagnostics},
         {"evaluations", r.evaluations},
         {"generations", r.history.size()},
         {"termination", r.termination},
         {"history", r.history},
         {"mean_history", r.mean_history},
         {"best_genome", r.best_genome}};
  if (!r.ok()) j["error"] = r.error;
  if (opts.include_timing) j["wall_time"] = r.wall_time;
  return j;
}

ExperimentReport report_from_json(const json& j) {
  ExperimentReport r;
  j.at("experiment_id").get_to(r.experiment_id);
  j.at("seed").get_to(r.seed);
  r.config = config_from_json(j.at("config"));
  const json& shape = j.at("shape");
  r.shape = GrassmannShape(shape.at("n").get<std::size_t>(), shape.at("k").get<std::size_t>());
  j.at("best_fitness").get_to(r.best_fitness);
  j.at("reported_value").get_to(r.reported_value);
  j.at("diagnostics").get_to(r.diagnostics);
  j.at("evaluations").get_to(r.evaluations);
  j.at("termination").get_to(r.termination);
  j.at("history").get_to(r.history);
  j.at("mean_history").get_to(r.mean_history);
  j.at("best_genome").get_to(r.best_genome);
  if (j.contains("error")) j.at("error").get_to(r.error);
  if (j.contains("wall_time")) j.at("wall_time").get_to(r.wall_time);
  return r;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing '" + path + "'");
  }
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

std::string reports_to_json(const std::vector<ExperimentReport>& reports, const EmitOptions& opts) {
  json doc = json::array();
  for (const auto& r : reports) doc.push_back(report_to_json(r, opts));
  return doc.dump(2) + "\n";
}

std::vector<ExperimentReport> reports_from_json(std::string_view text) {
  const json doc = json::parse(text);
  if (!doc.is_array()) {
    throw std::invalid_argument("report document must be a JSON array");
  }
  std::vector<ExperimentReport> out;
  for (const json& j : doc) out.push_back(report_from_json(j));
  return out;
}

std::string reports_to_csv(const std::vector<ExperimentReport>& reports, const EmitOptions& opts) {
  std::set<std::string> diag_names;
  for (const auto& r : reports)
    for (const auto& [name, _] : r.diagnostics) diag_names.insert(name);

  std::string out =
      "experiment_id,status,seed,n,k,np,max_generations,generations,evaluations,termination,"
      "best_fitness,reported_value";
  if (opts.include_timing) out += ",wall_time";
  for (const auto& name : diag_names) out += ",diag_" + name;
  out += '\n';

  for (const auto& r : reports) {
    out += r.experiment_id + ',' + (r.ok() ? "ok" : "error") + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.shape.n()) + ',' + std::to_string(r.shape.k()) + ',' + std::to_string(r.config.np) +
           ',' + std::to_string(r.config.max_generations) + ',' + std::to_string(r.history.size()) + ',' +
           std::to_string(r.evaluations) + ',' + r.termination + ',' + fmt(r.best_fitness) + ',' +
           fmt(r.reported_value);
    if (opts.include_timing) out += ',' + fmt(r.wall_time);
    for (const auto& name : diag_names) {
      out += ',';
      if (auto it = r.diagnostics.find(name); it != r.diagnostics.end()) out += fmt(it->second);
    }
    out += '\n';
  }
  return out;
}

std::string trace_to_csv(const ExperimentReport& report) {
  std::string out = "generation,best_fitness,mean_fitness\n";
  for (std::size_t g = 0; g < report.history.size(); ++g) {
    out += std::to_string(g + 1) + ',' + fmt(report.history[g]) + ',';
    if (g < report.mean_history.size()) out += fmt(report.mean_history[g]);
    out += '\n';
  }
  return out;
}

std::string trace_path(const std::string& summary_path, const std::string& experiment_id) {
  const std::filesystem::path p(summary_path);
  return (p.parent_path() / (p.stem().string() + "_" + experiment_id + "_trace.csv")).string();
}

void emit_report(const std::vector<ExperimentReport>& reports, ReportFormat format, const std::string& path,
                 const EmitOptions& opts) {
  if (format == ReportFormat::Json) {
    write_file(path, reports_to_json(reports, opts));
    return;
  }
  write_file(path, reports_to_csv(reports, opts));
  for (const auto& r : reports) write_file(trace_path(path, r.experiment_id), trace_to_csv(r));
}

}  // namespace grassde
