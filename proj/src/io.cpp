#include "edgestab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "edgestab/error.hpp"

#ifndef EDGESTAB_VERSION
#define EDGESTAB_VERSION "0.0.0"
#endif

namespace edgestab {

using nlohmann::json;

std::string_view tool_version() { return EDGESTAB_VERSION; }

json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double read_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  throw Error(ErrorCode::SchemaError, "expected a number, got " + j.dump());
}

namespace {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, path + ": " + what);
}

std::vector<double> coeff_array(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) schema(path + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

Entry parse_cell(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "cell must be an object");
  std::string type;
  if (j.contains("type")) {
    if (!j["type"].is_string()) schema(path + ".type", "expected a string");
    type = j["type"].get<std::string>();
  } else if (j.contains("vertices")) {
    type = "polytope";
  } else if (j.contains("lower") || j.contains("upper")) {
    type = "interval";
  } else {
    schema(path, "cell needs 'vertices' or 'lower'/'upper'");
  }
  if (type == "polytope") {
    if (!j.contains("vertices") || !j["vertices"].is_array()) schema(path + ".vertices", "expected an array");
    PolytopeEntry e;
    const auto& v = j["vertices"];
    for (std::size_t i = 0; i < v.size(); ++i)
      e.vertices.emplace_back(coeff_array(v[i], path + ".vertices[" + std::to_string(i) + "]"));
    return e;
  }
  if (type == "interval") {
    if (!j.contains("lower")) schema(path + ".lower", "missing");
    if (!j.contains("upper")) schema(path + ".upper", "missing");
    IntervalEntry e{coeff_array(j["lower"], path + ".lower"), coeff_array(j["upper"], path + ".upper")};
    if (e.lower.size() != e.upper.size()) schema(path, "lower and upper differ in length");
    return e;
  }
  schema(path + ".type", "unknown cell type '" + type + "'");
}

Tolerances parse_tolerances(const json& j, Tolerances t) {
  if (!j.is_object()) schema("tolerances", "expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = "tolerances." + key;
    if (!value.is_number()) schema(path, "expected a number");
    if (key == "boundary_grid") t.boundary_grid = value.get<int>();
    else if (key == "refine_depth") t.refine_depth = value.get<int>();
    else if (key == "box_depth") t.box_depth = value.get<int>();
    else if (key == "zero_margin") t.zero_margin = value.get<double>();
    else if (key == "degree_eps") t.degree_eps = value.get<double>();
    else if (key == "max_sweep_steps") t.max_sweep_steps = value.get<std::uint64_t>();
    else schema(path, "unknown tolerance");
  }
  return t;
}

}  // namespace

json region_to_json(const Region& r) {
  switch (r.kind) {
    case Region::Kind::HurwitzHalfPlane: return {{"type", "hurwitz"}};
    case Region::Kind::ShiftedHalfPlane: return {{"type", "shifted"}, {"sigma", r.sigma}};
    case Region::Kind::Disk:
      return {{"type", "disk"}, {"center", {r.center.real(), r.center.imag()}}, {"radius", r.radius}};
  }
  return {{"type", "hurwitz"}};
}

Region region_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) schema("region", "expected {type, ...}");
  const auto type = j["type"].get<std::string>();
  if (type == "hurwitz") return Region::hurwitz();
  if (type == "shifted") {
    if (!j.contains("sigma") || !j["sigma"].is_number()) schema("region.sigma", "expected a number");
    return Region::shifted(j["sigma"].get<double>());
  }
  if (type == "disk") {
    Complex c{0.0, 0.0};
    if (j.contains("center")) {
      const auto& cj = j["center"];
      if (cj.is_number()) c = {cj.get<double>(), 0.0};
      else if (cj.is_array() && cj.size() == 2 && cj[0].is_number() && cj[1].is_number())
        c = {cj[0].get<double>(), cj[1].get<double>()};
      else schema("region.center", "expected [re, im]");
    }
    double radius = 1.0;
    if (j.contains("radius")) {
      if (!j["radius"].is_number()) schema("region.radius", "expected a number");
      radius = j["radius"].get<double>();
    }
    if (!(radius > 0)) schema("region.radius", "must be positive");
    return Region::disk(c, radius);
  }
  schema("region.type", "unknown region '" + type + "'");
}

Region parse_region_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "hurwitz" && rest.empty()) return Region::hurwitz();
    if (kind == "shifted") return Region::shifted(std::stod(rest));
    if (kind == "disk") {
      if (rest.empty()) return Region::disk({0.0, 0.0}, 1.0);
      std::vector<double> v;
      std::stringstream ss(rest);
      for (std::string item; std::getline(ss, item, ',');) v.push_back(std::stod(item));
      if (v.size() != 3) throw std::invalid_argument("disk needs re,im,radius");
      if (!(v[2] > 0)) throw std::invalid_argument("radius");
      return Region::disk({v[0], v[1]}, v[2]);
    }
  } catch (const std::exception&) {
  }
  schema("--region", "expected hurwitz | shifted:<sigma> | disk:<re>,<im>,<radius>, got '" + spec + "'");
}

ParsedFamily parse_family_text(const std::string& text, bool check) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    schema("line " + std::to_string(line), "malformed JSON");
  }
  if (!j.is_object()) schema("$", "top level must be an object");

  ParsedFamily out;
  out.digest = fnv1a_hex(text);
  MatrixFamily& fam = out.family;

  if (!j.contains("entries")) {
    // a single cell is a 1x1 family
    fam.n = 1;
    fam.entries.push_back(parse_cell(j, "$"));
    if (j.contains("region")) fam.region = region_from_json(j["region"]);
  } else {
    const auto& rows = j["entries"];
    if (!rows.is_array() || rows.empty()) schema("entries", "expected an n x n array");
    const std::size_t n = rows.size();
    if (j.contains("n")) {
      if (!j["n"].is_number_integer() || j["n"].get<long long>() != static_cast<long long>(n))
        schema("n", "does not match the number of rows in entries");
    }
    for (std::size_t r = 0; r < n; ++r) {
      const std::string path = "entries[" + std::to_string(r) + "]";
      if (!rows[r].is_array() || rows[r].size() != n) schema(path, "row length differs from n; grid must be square");
      for (std::size_t c = 0; c < n; ++c)
        fam.entries.push_back(parse_cell(rows[r][c], path + "[" + std::to_string(c) + "]"));
    }
    fam.n = static_cast<int>(n);
    if (j.contains("region")) fam.region = region_from_json(j["region"]);
  }

  if (j.contains("mode")) {
    if (!j["mode"].is_string()) schema("mode", "expected a string");
    const auto mode = j["mode"].get<std::string>();
    if (mode != "polytope" && mode != "interval") schema("mode", "expected polytope or interval");
    if (std::string(to_string(fam.mode())) != mode)
      schema("mode", "declared '" + mode + "' but cells are " + std::string(to_string(fam.mode())));
  }
  if (j.contains("tolerances")) {
    out.tolerances = parse_tolerances(j["tolerances"], out.tolerances);
    out.has_tolerances = true;
  }

  if (!check) return out;
  const auto diags = validate(fam, true);
  if (!diags.empty()) {
    const auto& d = diags.front();
    std::string where = d.row >= 0 ? "entries[" + std::to_string(d.row) + "][" + std::to_string(d.col) + "]" : "$";
    throw Error(ErrorCode::ValidationFailure, where + ": " + std::string(to_string(d.kind)) + ": " + d.message);
  }
  return out;
}

ParsedFamily parse_family(const std::filesystem::path& path, bool check) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SchemaError, path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_family_text(ss.str(), check);
}

// ---------------------------------------------------------------- reports

bool operator==(const AnalysisReport& a, const AnalysisReport& b) {
  auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  if (a.summaries.size() != b.summaries.size()) return false;
  for (std::size_t i = 0; i < a.summaries.size(); ++i) {
    const auto& x = a.summaries[i];
    const auto& y = b.summaries[i];
    if (x.index != y.index || x.status != y.status || !same(x.margin, y.margin) || x.reason != y.reason) return false;
  }
  const auto& ta = a.tolerances;
  const auto& tb = b.tolerances;
  return a.tool_version == b.tool_version && a.input_digest == b.input_digest && a.mode == b.mode &&
         a.region == b.region && a.config_count == b.config_count && a.status == b.status &&
         same(a.margin, b.margin) && a.reason == b.reason && a.witness == b.witness &&
         ta.boundary_grid == tb.boundary_grid && ta.refine_depth == tb.refine_depth &&
         ta.box_depth == tb.box_depth && ta.zero_margin == tb.zero_margin && ta.degree_eps == tb.degree_eps &&
         ta.max_sweep_steps == tb.max_sweep_steps && a.wall_time_s == b.wall_time_s;
}

AnalysisReport make_report(const FamilyAnalysis& analysis, const MatrixFamily& fam, const Tolerances& tol,
                           const std::string& digest) {
  AnalysisReport r;
  r.tool_version = std::string(tool_version());
  r.input_digest = digest;
  r.mode = std::string(to_string(fam.mode()));
  r.region = fam.region;
  r.config_count = analysis.config_count;
  r.summaries = analysis.summaries;
  r.status = analysis.verdict.status;
  r.margin = analysis.verdict.margin;
  r.reason = analysis.verdict.reason;
  r.tolerances = tol;
  if (analysis.verdict.witness && analysis.witness_config) {
    const auto& w = *analysis.verdict.witness;
    const auto& cfg = *analysis.witness_config;
    WitnessBlock b;
    b.config_index = w.config_index;
    for (int s : cfg.sigma) b.sigma.push_back(s + 1);
    b.vertex_choice = cfg.vertex_choice;
    b.edge_choice = cfg.edge_choice;
    for (const auto& e : cfg.edges) {
      b.edge_p0.push_back(e.p0.coeffs());
      b.edge_p1.push_back(e.p1.coeffs());
    }
    b.lambda.assign(static_cast<std::size_t>(cfg.n), 0.0);
    for (std::size_t p = 0; p < w.lambda.size(); ++p)
      b.lambda[static_cast<std::size_t>(cfg.param_columns[p])] = w.lambda[p];
    b.determinant = w.determinant.coeffs();
    b.root_re = w.root.real();
    b.root_im = w.root.imag();
    b.root_margin = w.root_margin;
    r.witness = std::move(b);
  }
  return r;
}

namespace {

json tolerances_json(const Tolerances& t) {
  return {{"boundary_grid", t.boundary_grid}, {"refine_depth", t.refine_depth},  {"box_depth", t.box_depth},
          {"zero_margin", t.zero_margin},     {"degree_eps", t.degree_eps},      {"max_sweep_steps", t.max_sweep_steps}};
}

Status status_from(const std::string& s) {
  for (Status st : {Status::RobustlyStable, Status::Unstable, Status::Degenerate, Status::Inconclusive})
    if (to_string(st) == s) return st;
  throw Error(ErrorCode::SchemaError, "unknown status '" + s + "'");
}

}  // namespace

json to_json(const AnalysisReport& r) {
  json j;
  j["tool_version"] = r.tool_version;
  j["input_digest"] = r.input_digest;
  j["mode"] = r.mode;
  j["region"] = region_to_json(r.region);
  j["configuration_count"] = r.config_count;
  json configs = json::array();
  for (const auto& s : r.summaries)
    configs.push_back({{"index", s.index}, {"status", to_string(s.status)}, {"margin", number(s.margin)}, {"reason", s.reason}});
  j["configurations"] = std::move(configs);
  j["verdict"] = {{"status", to_string(r.status)}, {"margin", number(r.margin)}, {"reason", r.reason}};
  if (r.witness) {
    const auto& w = *r.witness;
    j["witness"] = {{"configuration_index", w.config_index},
                    {"sigma", w.sigma},
                    {"vertex_choice", w.vertex_choice},
                    {"edge_choice", w.edge_choice},
                    {"edge_p0", w.edge_p0},
                    {"edge_p1", w.edge_p1},
                    {"lambda", w.lambda},
                    {"determinant", w.determinant},
                    {"root", {w.root_re, w.root_im}},
                    {"root_margin", number(w.root_margin)}};
  } else {
    j["witness"] = nullptr;
  }
  j["tolerances"] = tolerances_json(r.tolerances);
  if (r.wall_time_s) j["wall_time_s"] = *r.wall_time_s;
  return j;
}

AnalysisReport report_from_json(const json& j) {
  try {
    AnalysisReport r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.input_digest = j.at("input_digest").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.region = region_from_json(j.at("region"));
    r.config_count = j.at("configuration_count").get<std::uint64_t>();
    for (const auto& c : j.at("configurations"))
      r.summaries.push_back({c.at("index").get<std::uint64_t>(), status_from(c.at("status").get<std::string>()),
                             read_number(c.at("margin")), c.at("reason").get<std::string>()});
    const auto& v = j.at("verdict");
    r.status = status_from(v.at("status").get<std::string>());
    r.margin = read_number(v.at("margin"));
    r.reason = v.at("reason").get<std::string>();
    if (!j.at("witness").is_null()) {
      const auto& w = j.at("witness");
      WitnessBlock b;
      b.config_index = w.at("configuration_index").get<std::uint64_t>();
      b.sigma = w.at("sigma").get<std::vector<int>>();
      b.vertex_choice = w.at("vertex_choice").get<std::vector<int>>();
      b.edge_choice = w.at("edge_choice").get<std::vector<int>>();
      b.edge_p0 = w.at("edge_p0").get<std::vector<std::vector<double>>>();
      b.edge_p1 = w.at("edge_p1").get<std::vector<std::vector<double>>>();
      b.lambda = w.at("lambda").get<std::vector<double>>();
      b.determinant = w.at("determinant").get<std::vector<double>>();
      b.root_re = w.at("root").at(0).get<double>();
      b.root_im = w.at("root").at(1).get<double>();
      b.root_margin = read_number(w.at("root_margin"));
      r.witness = std::move(b);
    }
    r.tolerances = parse_tolerances(j.at("tolerances"), Tolerances{});
    if (j.contains("wall_time_s")) r.wall_time_s = j["wall_time_s"].get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("report: ") + e.what());
  }
}

json to_json(const SampleReport& r) {
  json params = json::array();
  for (const auto& p : r.worst_member.params) params.push_back(p);
  return {{"samples", r.samples},
          {"worst_margin", number(r.worst_margin)},
          {"worst_member", params},
          {"worst_root", {r.worst_root.real(), r.worst_root.imag()}},
          {"verdict", to_string(r.outcome)}};
}

}  // namespace edgestab
