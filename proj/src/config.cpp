#include "bregfix/config.hpp"

#include "bregfix/errors.hpp"
#include "bregfix/fixtures.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace bregfix {

using nlohmann::json;
using nlohmann::ordered_json;

bool MappingSpec::operator==(const MappingSpec& other) const {
  auto same = [](const auto& a, const auto& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
  };
  return kind == other.kind && set == other.set && same(m, other.m) && same(q, other.q) && step == other.step;
}

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) { throw SchemaError(path + ": " + what); }

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void allow_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) schema(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      schema(join(path, item.key()), "unknown key");
    }
  }
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(join(path, key), "missing required key");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  return j.get<double>();
}

std::uint64_t unsigned_integer(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) schema(path, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

Eigen::VectorXd vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], index(path, i));
  return v;
}

Eigen::MatrixXd matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array of rows");
  const Eigen::VectorXd first = vector(j[0], index(path, 0));
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), first.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Eigen::VectorXd row = vector(j[i], index(path, i));
    if (row.size() != m.cols()) schema(index(path, i), "rows have different lengths");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

void check_dim(Eigen::Index got, Eigen::Index want, const std::string& path) {
  if (got != want) {
    throw DimensionMismatch(path + ": has dimension " + std::to_string(got) + ", geometry has " +
                            std::to_string(want));
  }
}

ConvexSet parse_set(const json& j, const std::string& path) {
  const std::string type = string(require(j, path, "type"), join(path, "type"));
  try {
    if (type == "whole_space") {
      allow_keys(j, path, {"type"});
      return WholeSpace{};
    }
    if (type == "halfspace" || type == "hyperplane") {
      allow_keys(j, path, {"type", "a", "b"});
      DualPoint a(vector(require(j, path, "a"), join(path, "a")));
      const double b = number(require(j, path, "b"), join(path, "b"));
      if (type == "halfspace") return Halfspace{std::move(a), b};
      return Hyperplane{std::move(a), b};
    }
    if (type == "box") {
      allow_keys(j, path, {"type", "lo", "hi"});
      Point lo(vector(require(j, path, "lo"), join(path, "lo")));
      Point hi(vector(require(j, path, "hi"), join(path, "hi")));
      if (lo.dim() != hi.dim()) schema(path, "lo and hi differ in length");
      return Box{std::move(lo), std::move(hi)};
    }
    if (type == "simplex") {
      allow_keys(j, path, {"type", "s"});
      return ScaledSimplex{j.contains("s") ? number(j["s"], join(path, "s")) : 1.0};
    }
    if (type == "intersection") {
      allow_keys(j, path, {"type", "members"});
      const json& members = require(j, path, "members");
      if (!members.is_array() || members.empty()) schema(join(path, "members"), "expected a nonempty array");
      Intersection out;
      for (std::size_t i = 0; i < members.size(); ++i) {
        out.members.push_back(parse_set(members[i], index(join(path, "members"), i)));
      }
      return out;
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const DomainViolation& e) {
    schema(path, e.what());
  }
  schema(join(path, "type"), "unknown set type '" + type + "'");
}

Sequence parse_sequence(const json& j, const std::string& path) {
  if (j.is_number()) return Sequence::constant(j.get<double>());
  const std::string type = string(require(j, path, "type"), join(path, "type"));
  if (type == "constant") {
    allow_keys(j, path, {"type", "value"});
    return Sequence::constant(number(require(j, path, "value"), join(path, "value")));
  }
  if (type == "power") {
    allow_keys(j, path, {"type", "exponent", "scale"});
    const double exponent = number(require(j, path, "exponent"), join(path, "exponent"));
    const double scale = j.contains("scale") ? number(j["scale"], join(path, "scale")) : 1.0;
    return Sequence::power(exponent, scale);
  }
  schema(join(path, "type"), "unknown sequence type '" + type + "'");
}

MappingSpec parse_mapping(const json& j, const std::string& path, Eigen::Index dim) {
  const std::string type = string(require(j, path, "type"), join(path, "type"));
  MappingSpec m;
  if (type == "identity") {
    allow_keys(j, path, {"type"});
    m.kind = MappingSpec::Kind::Identity;
  } else if (type == "projection") {
    allow_keys(j, path, {"type", "set"});
    m.kind = MappingSpec::Kind::Projection;
    m.set = parse_set(require(j, path, "set"), join(path, "set"));
    if (auto d = m.set.dim()) check_dim(*d, dim, join(path, "set"));
  } else if (type == "resolvent") {
    allow_keys(j, path, {"type", "M", "q", "step"});
    m.kind = MappingSpec::Kind::Resolvent;
    m.m = matrix(require(j, path, "M"), join(path, "M"));
    m.q = j.contains("q") ? vector(j["q"], join(path, "q")) : Eigen::VectorXd::Zero(dim);
    m.step = j.contains("step") ? number(j["step"], join(path, "step")) : 1.0;
    check_dim(m.m.rows(), dim, join(path, "M"));
    check_dim(m.m.cols(), dim, join(path, "M"));
    check_dim(m.q.size(), dim, join(path, "q"));
    if (!(m.step > 0.0)) schema(join(path, "step"), "must be positive");
    try {
      MonotoneAffineOperator check(m.m, m.q);
    } catch (const DomainViolation& e) {
      schema(join(path, "M"), e.what());
    }
  } else {
    schema(join(path, "type"), "unknown mapping type '" + type + "'");
  }
  return m;
}

ScheduleSet parse_schedules(const json& j) {
  const std::string path = "schedules";
  allow_keys(j, path, {"alpha", "beta", "c", "theta", "delta", "gamma", "family_weights"});
  ScheduleSet s;
  std::pair<const char*, Sequence*> fields[] = {{"alpha", &s.alpha}, {"beta", &s.beta},   {"c", &s.c},
                                                {"theta", &s.theta}, {"delta", &s.delta}, {"gamma", &s.gamma}};
  for (auto& [key, seq] : fields) {
    if (j.contains(key)) *seq = parse_sequence(j[key], join(path, key));
  }
  if (j.contains("family_weights")) {
    const Eigen::VectorXd w = vector(j["family_weights"], join(path, "family_weights"));
    s.family_weights.assign(w.data(), w.data() + w.size());
  }
  return s;
}

RunSpec parse_run(const json& j) {
  const std::string path = "run";
  allow_keys(j, path, {"max_iter", "residual_tol", "audit", "seed", "output", "scheme", "trace_every"});
  RunSpec r;
  if (j.contains("max_iter")) r.max_iter = unsigned_integer(j["max_iter"], "run.max_iter");
  if (j.contains("residual_tol")) r.residual_tol = number(j["residual_tol"], "run.residual_tol");
  if (j.contains("audit")) {
    if (!j["audit"].is_boolean()) schema("run.audit", "expected true or false");
    r.audit = j["audit"].get<bool>();
  }
  if (j.contains("seed")) r.seed = unsigned_integer(j["seed"], "run.seed");
  if (j.contains("output")) r.output = string(j["output"], "run.output");
  if (j.contains("scheme")) r.scheme = string(j["scheme"], "run.scheme");
  if (j.contains("trace_every")) r.trace_every = unsigned_integer(j["trace_every"], "run.trace_every");

  if (r.max_iter == 0) schema("run.max_iter", "must be positive");
  if (!(r.residual_tol > 0.0)) schema("run.residual_tol", "must be positive");
  if (r.trace_every == 0) schema("run.trace_every", "must be positive");
  if (r.output.empty()) schema("run.output", "must not be empty");
  if (r.scheme != "auto" && r.scheme != "two" && r.scheme != "family") {
    schema("run.scheme", "expected one of auto, two, family");
  }
  return r;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  // nlohmann reports the byte after the offending character.
  return {line, column > 1 ? column - 1 : column};
}

ordered_json set_json(const ConvexSet& set);

ordered_json vector_json(const Eigen::VectorXd& v) { return ordered_json(std::vector<double>(v.data(), v.data() + v.size())); }

ordered_json set_json(const ConvexSet& set) {
  return std::visit(
      [](const auto& s) -> ordered_json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return {{"type", "whole_space"}};
        } else if constexpr (std::is_same_v<T, Halfspace> || std::is_same_v<T, Hyperplane>) {
          return {{"type", std::is_same_v<T, Halfspace> ? "halfspace" : "hyperplane"},
                  {"a", vector_json(s.a.vec())},
                  {"b", s.b}};
        } else if constexpr (std::is_same_v<T, Box>) {
          return {{"type", "box"}, {"lo", vector_json(s.lo.vec())}, {"hi", vector_json(s.hi.vec())}};
        } else if constexpr (std::is_same_v<T, ScaledSimplex>) {
          return {{"type", "simplex"}, {"s", s.s}};
        } else {
          ordered_json members = ordered_json::array();
          for (const ConvexSet& m : s.members) members.push_back(set_json(m));
          return {{"type", "intersection"}, {"members", members}};
        }
      },
      set.variant());
}

ordered_json sequence_json(const Sequence& s) {
  if (s.kind() == Sequence::Kind::Constant) return {{"type", "constant"}, {"value", s.value()}};
  return {{"type", "power"}, {"exponent", s.exponent()}, {"scale", s.value()}};
}

}  // namespace

ExperimentSpec parse_config_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << e.what();
    throw ParseError(os.str());
  }
  allow_keys(root, "", {"geometry", "ambient", "mappings", "schedules", "anchor", "start", "run", "reference"});

  ExperimentSpec spec;
  const json& g = require(root, "", "geometry");
  allow_keys(g, "geometry", {"name", "dim", "p"});
  spec.geometry.name = string(require(g, "geometry", "name"), "geometry.name");
  const std::uint64_t dim = unsigned_integer(require(g, "geometry", "dim"), "geometry.dim");
  if (dim == 0) schema("geometry.dim", "must be positive");
  spec.geometry.dim = static_cast<Eigen::Index>(dim);
  if (g.contains("p")) {
    if (spec.geometry.name != "p_power") schema("geometry.p", "only meaningful for p_power");
    spec.geometry.p = number(g["p"], "geometry.p");
  } else if (spec.geometry.name == "p_power") {
    schema("geometry.p", "missing required key");
  }
  GeometryPtr geom;
  try {
    geom = make_geometry(spec.geometry.name, spec.geometry.p);
  } catch (const DomainViolation& e) {
    schema(spec.geometry.name == "p_power" ? "geometry.p" : "geometry.name", e.what());
  }
  const Eigen::Index d = spec.geometry.dim;

  if (root.contains("ambient")) {
    spec.ambient = parse_set(root["ambient"], "ambient");
    if (auto ad = spec.ambient.dim()) check_dim(*ad, d, "ambient");
  }

  const json& mappings = require(root, "", "mappings");
  if (!mappings.is_array() || mappings.empty()) schema("mappings", "expected a nonempty array");
  for (std::size_t i = 0; i < mappings.size(); ++i) {
    spec.mappings.push_back(parse_mapping(mappings[i], index("mappings", i), d));
  }

  if (root.contains("schedules")) spec.schedules = parse_schedules(root["schedules"]);
  if (auto defect = schedule_defect(spec.schedules, spec.mappings.size())) schema("schedules", *defect);

  auto point = [&](const char* key) {
    Point x(vector(require(root, "", key), key));
    check_dim(x.dim(), d, key);
    if (!geom->in_interior(x)) schema(key, "not in the interior of the geometry's domain");
    return x;
  };
  spec.anchor = point("anchor");
  spec.start = root.contains("start") ? point("start") : spec.anchor;

  if (root.contains("run")) spec.run = parse_run(root["run"]);
  if (spec.run.scheme == "two" && spec.mappings.size() != 2) {
    schema("run.scheme", "the two-mapping scheme needs exactly 2 mappings");
  }

  if (root.contains("reference") && !root["reference"].is_null()) {
    Point p(vector(root["reference"], "reference"));
    check_dim(p.dim(), d, "reference");
    spec.reference = std::move(p);
  }
  return spec;
}

ExperimentSpec parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string to_json(const ExperimentSpec& spec) {
  ordered_json root;
  ordered_json geometry = {{"name", spec.geometry.name}, {"dim", spec.geometry.dim}};
  if (spec.geometry.name == "p_power") geometry["p"] = spec.geometry.p;
  root["geometry"] = geometry;
  root["ambient"] = set_json(spec.ambient);

  ordered_json mappings = ordered_json::array();
  for (const MappingSpec& m : spec.mappings) {
    switch (m.kind) {
      case MappingSpec::Kind::Identity:
        mappings.push_back({{"type", "identity"}});
        break;
      case MappingSpec::Kind::Projection:
        mappings.push_back({{"type", "projection"}, {"set", set_json(m.set)}});
        break;
      case MappingSpec::Kind::Resolvent: {
        ordered_json rows = ordered_json::array();
        for (Eigen::Index i = 0; i < m.m.rows(); ++i) rows.push_back(vector_json(m.m.row(i).transpose()));
        mappings.push_back({{"type", "resolvent"}, {"M", rows}, {"q", vector_json(m.q)}, {"step", m.step}});
        break;
      }
    }
  }
  root["mappings"] = mappings;

  const ScheduleSet& s = spec.schedules;
  ordered_json schedules = {{"alpha", sequence_json(s.alpha)}, {"beta", sequence_json(s.beta)},
                            {"c", sequence_json(s.c)},         {"theta", sequence_json(s.theta)},
                            {"delta", sequence_json(s.delta)}, {"gamma", sequence_json(s.gamma)}};
  if (!s.family_weights.empty()) schedules["family_weights"] = s.family_weights;
  root["schedules"] = schedules;

  root["anchor"] = vector_json(spec.anchor.vec());
  root["start"] = vector_json(spec.start.vec());
  root["run"] = {{"max_iter", spec.run.max_iter},       {"residual_tol", spec.run.residual_tol},
                 {"audit", spec.run.audit},             {"seed", spec.run.seed},
                 {"output", spec.run.output},           {"scheme", spec.run.scheme},
                 {"trace_every", spec.run.trace_every}};
  if (spec.reference) root["reference"] = vector_json(spec.reference->vec());
  return root.dump(2) + "\n";
}

BuiltExperiment build(const ExperimentSpec& spec) {
  BuiltExperiment out;
  GeometryPtr geom = make_geometry(spec.geometry.name, spec.geometry.p);

  SolverConfig& cfg = out.config;
  cfg.geom = geom;
  cfg.ambient = spec.ambient;
  cfg.u = spec.anchor;
  cfg.x0 = spec.start;
  cfg.schedules = spec.schedules;
  cfg.max_iter = spec.run.max_iter;
  cfg.residual_tol = spec.run.residual_tol;
  cfg.audit = spec.run.audit;
  cfg.trace_every = spec.run.trace_every;

  for (const MappingSpec& m : spec.mappings) {
    switch (m.kind) {
      case MappingSpec::Kind::Identity:
        out.mappings.push_back(identity_mapping());
        break;
      case MappingSpec::Kind::Projection:
        out.mappings.push_back(projection_mapping(geom, m.set));
        break;
      case MappingSpec::Kind::Resolvent:
        out.mappings.push_back(resolvent_mapping(geom, MonotoneAffineOperator(m.m, m.q), m.step));
        break;
    }
  }
  out.use_two_scheme = spec.run.scheme == "two" || (spec.run.scheme == "auto" && out.mappings.size() == 2);

  if (spec.reference) {
    cfg.reference_p = spec.reference;
  } else {
    try {
      const std::vector<ConvexSet> sets = common_fixed_sets(out.mappings, cfg.ambient);
      ReferenceOptions options;
      options.seed = spec.run.seed;
      ProjectionResult ref = reference_limit(*geom, sets, cfg.u, options);
      cfg.reference_p = ref.point;
      out.reference_residual = ref.vi_residual;
    } catch (const Error& e) {
      out.warnings.push_back(std::string("no reference limit: ") + e.what());
    }
  }
  return out;
}

}  // namespace bregfix
