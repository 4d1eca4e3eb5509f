#include "bregfix/experiment.hpp"

#include "bregfix/errors.hpp"
#include "bregfix/verify.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>

namespace bregfix {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.17g}", v);
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : "nan"; }

std::string point_text(const Point& x) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < x.dim(); ++i) {
    if (i > 0) s += ", ";
    s += num(x[i]);
  }
  return s + "]";
}

RunResult execute(const BuiltExperiment& built) {
  if (built.use_two_scheme) return run_two(built.config, built.mappings.at(0), built.mappings.at(1));
  return run_family(built.config, built.mappings);
}

int outcome_code(const RunResult& r) {
  if (r.audit_violations > 0) return exit_code::kAuditViolation;
  if (r.status == RunStatus::IterBudget) return exit_code::kIterBudget;
  return exit_code::kOk;
}

double distance_to_reference(const RunResult& r, const SolverConfig& cfg) {
  if (!cfg.reference_p) return std::numeric_limits<double>::quiet_NaN();
  return distance_euclidean(r.final_point, *cfg.reference_p);
}

void write_trace(std::ostream& os, const RunResult& r, std::size_t mapping_count) {
  os << trace_header(mapping_count) << '\n';
  for (const TraceRecord& rec : r.trace) {
    os << rec.n << ',' << num(rec.residual_max());
    for (double v : rec.residuals) os << ',' << num(v);
    os << ',' << num(rec.step_size) << ',' << num(rec.dist_to_ref) << ',' << num(rec.fejer_gap) << '\n';
  }
}

void write_summary(std::ostream& os, const RunResult& r, const BuiltExperiment& built) {
  os << "status: " << to_string(r.status) << '\n';
  os << "iterations: " << r.iterations << '\n';
  os << "final_point: " << point_text(r.final_point) << '\n';
  os << "audits_run: " << r.audits_run << '\n';
  os << "audit_violations: " << r.audit_violations << '\n';
  if (built.config.reference_p) {
    os << "reference: " << point_text(*built.config.reference_p) << '\n';
    os << "distance_to_reference: " << num(distance_to_reference(r, built.config)) << '\n';
  }
  if (built.reference_residual) os << "reference_vi_residual: " << num(*built.reference_residual) << '\n';
  const double residual = r.trace.empty() ? std::numeric_limits<double>::quiet_NaN() : r.trace.back().residual_max();
  os << "final_residual_max: " << num(residual) << '\n';
  for (const std::string& w : built.warnings) os << "warning: " << w << '\n';
  for (const std::string& w : r.warnings) os << "warning: " << w << '\n';
  for (const AuditReport& report : r.failed_audits) {
    for (const AuditEntry& e : report.violations()) {
      os << "violation: n=" << report.n << " " << e.name << " slack=" << num(e.slack) << '\n';
    }
  }
}

std::vector<double> number_list(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) return {};
  const nlohmann::json& v = j[key];
  if (!v.is_array()) throw SchemaError(key + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw SchemaError(key + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

struct Cell {
  Sequence alpha;
  Sequence beta;
};

struct CellOutcome {
  std::string row;
  int code = exit_code::kOk;
};

std::string sequence_label(const Sequence& s) {
  return s.kind() == Sequence::Kind::Constant ? "constant" : "power";
}

double sequence_parameter(const Sequence& s) {
  return s.kind() == Sequence::Kind::Constant ? s.value() : s.exponent();
}

CellOutcome run_cell(ExperimentSpec spec, const Cell& cell, std::size_t index) {
  spec.schedules.alpha = cell.alpha;
  spec.schedules.beta = cell.beta;
  CellOutcome out;
  std::vector<std::string> flags = schedule_warnings(spec.schedules);
  std::string status = "error";
  std::string iterations = "0";
  std::string dist = "nan";
  std::string residual = "nan";
  std::string violations = "0";
  try {
    if (auto defect = schedule_defect(spec.schedules, spec.mappings.size())) throw ScheduleViolation(*defect);
    const BuiltExperiment built = build(spec);
    const RunResult r = execute(built);
    status = to_string(r.status);
    iterations = std::to_string(r.iterations);
    dist = num(distance_to_reference(r, built.config));
    residual = r.trace.empty() ? "nan" : num(r.trace.back().residual_max());
    violations = std::to_string(r.audit_violations);
    out.code = outcome_code(r);
  } catch (const std::exception& e) {
    flags.push_back(std::string("error: ") + e.what());
    out.code = exit_code::kFailure;
  }
  std::string warning;
  for (const std::string& f : flags) {
    if (!warning.empty()) warning += "; ";
    warning += f;
  }
  for (char& ch : warning) {
    if (ch == ',' || ch == '"' || ch == '\n') ch = ' ';
  }
  out.row = fmt::format("{},{},{},{},{},{},{},{},{},{}", index, sequence_label(cell.alpha),
                        num(sequence_parameter(cell.alpha)), num(cell.beta(0)), status, iterations, dist, residual,
                        violations, warning.empty() ? "" : "ScheduleWarning: " + warning);
  return out;
}

int severity(int code) {
  switch (code) {
    case exit_code::kFailure:
      return 3;
    case exit_code::kAuditViolation:
      return 2;
    case exit_code::kIterBudget:
      return 1;
    default:
      return 0;
  }
}

}  // namespace

std::string trace_header(std::size_t mapping_count) {
  std::string h = "n,residual_max";
  for (std::size_t i = 1; i <= mapping_count; ++i) h += ",residual_" + std::to_string(i);
  return h + ",step_size,dist_to_ref,fejer_gap";
}

int cmd_run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  const std::string prefix = spec.run.output;
  std::ofstream trace(prefix + ".trace.csv");
  std::ofstream summary(prefix + ".summary");
  std::ofstream config(prefix + ".config.json");
  if (!trace || !summary || !config) {
    err << "error: cannot write output files with prefix '" << prefix << "'\n";
    return exit_code::kIoError;
  }
  config << to_json(spec);

  RunResult result;
  BuiltExperiment built;
  try {
    built = build(spec);
    result = execute(built);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kFailure;
  }

  write_trace(trace, result, built.mappings.size());
  std::ostringstream text;
  write_summary(text, result, built);
  summary << text.str();
  out << text.str();
  trace.flush();
  summary.flush();
  config.flush();
  if (!trace || !summary || !config) {
    err << "error: writing output files failed\n";
    return exit_code::kIoError;
  }
  return outcome_code(result);
}

int cmd_verify(std::string_view suite, std::uint64_t seed, bool sabotage, std::ostream& out, std::ostream& err) {
  if (!is_suite_name(suite)) {
    err << "error: unknown suite '" << suite << "'\n";
    return exit_code::kUsage;
  }
  std::vector<GeometryPtr> override;
  if (sabotage) {
    for (GeometryPtr g : standard_geometries()) override.push_back(sabotage_conjugate_gradient(std::move(g)));
  }
  bool ok = true;
  for (const SuiteReport& r : run_suites(suite, seed, out, override)) ok = ok && r.passed();
  return ok ? exit_code::kOk : exit_code::kFailure;
}

SweepGrid parse_grid_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!j.is_object()) throw SchemaError("grid: expected an object");
  for (const auto& item : j.items()) {
    if (item.key() != "alpha_exponent" && item.key() != "alpha_constant" && item.key() != "beta") {
      throw SchemaError(item.key() + ": unknown key");
    }
  }
  return {number_list(j, "alpha_exponent"), number_list(j, "alpha_constant"), number_list(j, "beta")};
}

SweepGrid parse_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open grid file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_grid_text(buffer.str());
}

int cmd_sweep(const ExperimentSpec& spec, const SweepGrid& grid, std::ostream& out, std::ostream& err) {
  if (grid.empty()) {
    err << "error: the sweep grid is empty\n";
    return exit_code::kUsage;
  }
  std::vector<Sequence> alphas;
  for (double a : grid.alpha_exponent) alphas.push_back(Sequence::power(a));
  for (double a : grid.alpha_constant) alphas.push_back(Sequence::constant(a));
  if (alphas.empty()) alphas.push_back(spec.schedules.alpha);
  std::vector<Sequence> betas;
  for (double b : grid.beta) betas.push_back(Sequence::constant(b));
  if (betas.empty()) betas.push_back(spec.schedules.beta);

  std::vector<std::future<CellOutcome>> cells;
  std::size_t index = 0;
  for (const Sequence& a : alphas) {
    for (const Sequence& b : betas) {
      cells.push_back(std::async(std::launch::async, run_cell, spec, Cell{a, b}, index++));
    }
  }

  const std::string path = spec.run.output + ".sweep.csv";
  std::ofstream csv(path);
  if (!csv) {
    err << "error: cannot write '" << path << "'\n";
    for (auto& f : cells) f.wait();
    return exit_code::kIoError;
  }
  csv << "cell,alpha_kind,alpha_param,beta,status,iterations,final_dist_to_ref,residual_max,audit_violations,"
         "warning\n";
  int code = exit_code::kOk;
  for (auto& f : cells) {
    const CellOutcome cell = f.get();
    csv << cell.row << '\n';
    out << cell.row << '\n';
    if (severity(cell.code) > severity(code)) code = cell.code;
  }
  csv.flush();
  if (!csv) {
    err << "error: writing '" << path << "' failed\n";
    return exit_code::kIoError;
  }
  return code;
}

}  // namespace bregfix
