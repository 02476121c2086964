#include "stone/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "stone/error.hpp"

namespace stone::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

double number_at(const json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  parse_error(what + " must be a number");
}

std::vector<std::string> labels_at(const json& doc) {
  std::vector<std::string> labels;
  if (!doc.contains("labels")) return labels;
  if (!doc["labels"].is_array()) parse_error("\"labels\" must be an array");
  for (const auto& l : doc["labels"]) {
    if (l.is_string()) {
      labels.push_back(l.get<std::string>());
    } else if (l.is_number_integer()) {
      labels.push_back(std::to_string(l.get<long long>()));
    } else {
      parse_error("labels must be strings");
    }
  }
  return labels;
}

std::vector<std::vector<double>> matrix_at(const json& rows, const std::string& what) {
  if (!rows.is_array()) parse_error(what + " must be an array of arrays");
  std::vector<std::vector<double>> out;
  for (const auto& row : rows) {
    if (!row.is_array()) parse_error(what + " must be an array of arrays");
    std::vector<double> r;
    for (const auto& v : row) r.push_back(number_at(v, what + " entries"));
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t index_at(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) parse_error(what + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

// JSON has no infinity.
json num(double v) { return std::isinf(v) ? json("inf") : json(v); }

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IO, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IO, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::IO, "write failed for " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

json to_json(ExtReal value) {
  return value.is_infinite() ? json("inf") : json(value.value());
}

ExtReal ext_real_from_json(const json& value) {
  if (value.is_string() && value.get<std::string>() == "inf") return ExtReal::infinity();
  if (value.is_number()) return ExtReal(value.get<double>());
  parse_error("expected a number or \"inf\"");
}

SpaceDocument space_from_json(const json& doc) {
  if (!doc.is_object()) parse_error("space document must be an object");
  auto labels = labels_at(doc);
  if (doc.contains("dist")) {
    return {validate_space(matrix_at(doc["dist"], "\"dist\""), std::move(labels)), std::nullopt};
  }
  if (doc.contains("points")) {
    LpExponent p;
    if (doc.contains("p")) {
      const json& pj = doc["p"];
      if (pj.is_string() && pj.get<std::string>() == "inf") {
        p = LpExponent::inf();
      } else if (pj.is_number() && pj.get<double>() >= 1.0) {
        p.p = pj.get<double>();
      } else {
        parse_error("\"p\" must be a number >= 1 or \"inf\"");
      }
    }
    auto pts = matrix_at(doc["points"], "\"points\"");
    FiniteMetricSpace space = space_from_points(std::move(pts), p);
    if (!labels.empty()) {
      space = validate_space(space.matrix(), std::move(labels), kDefaultTriangleTolerance,
                             space.vector_points());
    }
    return {space, std::nullopt};
  }
  if (doc.contains("tree")) {
    const json& t = doc["tree"];
    if (!t.is_object() || !t.contains("edges") || !t["edges"].is_array()) {
      parse_error("\"tree\" needs an \"edges\" array");
    }
    std::vector<TreeEdge> edges;
    std::size_t vertices = 1;
    for (const auto& e : t["edges"]) {
      if (!e.is_array() || e.size() != 3) parse_error("tree edges are [u, v, length]");
      TreeEdge edge{index_at(e[0], "edge endpoint"), index_at(e[1], "edge endpoint"),
                    number_at(e[2], "edge length")};
      vertices = std::max({vertices, edge.u + 1, edge.v + 1});
      edges.push_back(edge);
    }
    if (!labels.empty()) vertices = std::max(vertices, labels.size());
    const std::size_t root = t.contains("root") ? index_at(t["root"], "\"root\"") : 0;
    RootedTree tree(vertices, std::move(edges), root, labels);
    FiniteMetricSpace space = tree.space();
    return {space, std::move(tree)};
  }
  parse_error("space document needs \"dist\", \"points\" or \"tree\"");
}

json space_to_json(const FiniteMetricSpace& space) {
  json doc;
  doc["labels"] = space.labels();
  if (const auto& pts = space.vector_points()) {
    doc["points"] = pts->coords;
    doc["p"] = pts->p.infinite ? json("inf") : json(pts->p.p);
  } else {
    doc["dist"] = space.matrix();
  }
  return doc;
}

json tree_to_json(const RootedTree& tree) {
  json edges = json::array();
  for (const auto& e : tree.edges()) edges.push_back(json::array({e.u, e.v, e.length}));
  json doc;
  if (!tree.labels().empty()) doc["labels"] = tree.labels();
  doc["tree"] = {{"edges", edges}, {"root", tree.root()}};
  return doc;
}

json cover_to_json(const Cover& cover) {
  json doc;
  doc["members"] = cover.members();
  if (!cover.labels().empty()) doc["labels"] = cover.labels();
  return doc;
}

Cover cover_from_json(const json& doc, const FiniteMetricSpace& space) {
  if (!doc.is_object() || !doc.contains("members") || !doc["members"].is_array()) {
    parse_error("cover document needs a \"members\" array");
  }
  std::vector<PointSet> members;
  for (const auto& m : doc["members"]) {
    if (!m.is_array()) parse_error("cover members are index arrays");
    PointSet member;
    for (const auto& x : m) member.push_back(index_at(x, "member index"));
    members.push_back(std::move(member));
  }
  return Cover(space, std::move(members), labels_at(doc));
}

json metrics_to_json(const CoverMetrics& metrics) {
  return {{"diameter", metrics.diameter},
          {"lebesgue", to_json(metrics.lebesgue)},
          {"max_multiplicity", metrics.max_multiplicity}};
}

CoverMetrics metrics_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("diameter") || !doc.contains("lebesgue") ||
      !doc.contains("max_multiplicity")) {
    parse_error("metrics need diameter, lebesgue and max_multiplicity");
  }
  CoverMetrics m;
  m.diameter = number_at(doc["diameter"], "diameter");
  m.lebesgue = ext_real_from_json(doc["lebesgue"]);
  m.max_multiplicity = index_at(doc["max_multiplicity"], "max_multiplicity");
  return m;
}

std::string format_number(double value) {
  if (std::isinf(value) && value > 0) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_number(ExtReal value) {
  return value.is_infinite() ? std::string("inf") : format_number(value.value());
}

std::string curves_to_csv(const std::vector<ModulusCurve>& curves) {
  std::string out = "kind,argument,value\n";
  for (const auto& curve : curves) {
    for (const auto& s : curve.samples) {
      out += to_string(curve.kind) + "," + format_number(s.argument) + "," + format_number(s.value) + "\n";
    }
  }
  return out;
}

std::vector<ModulusCurve> curves_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "kind,argument,value") {
    parse_error("curve CSV must start with kind,argument,value");
  }
  auto parse_double = [](const std::string& cell) {
    if (cell == "inf") return ExtReal::infinity();
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) parse_error("bad number '" + cell + "'");
    return ExtReal(v);
  };
  std::vector<ModulusCurve> curves;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = line.find(',', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) parse_error("CSV rows have three cells");
    const std::string kind_name = line.substr(0, a);
    ModulusKind kind;
    if (kind_name == "coarse") {
      kind = ModulusKind::Coarse;
    } else if (kind_name == "uniform") {
      kind = ModulusKind::Uniform;
    } else {
      parse_error("unknown curve kind '" + kind_name + "'");
    }
    const ExtReal arg = parse_double(line.substr(a + 1, b - a - 1));
    if (arg.is_infinite()) parse_error("curve arguments are finite");
    if (curves.empty() || curves.back().kind != kind) curves.push_back({kind, {}});
    curves.back().samples.push_back({arg.value(), parse_double(line.substr(b + 1))});
  }
  return curves;
}

json violation_to_json(const CheckViolation& v) {
  return {{"rule", v.rule}, {"argument", num(v.argument)}, {"epsilon", v.epsilon},
          {"lhs", to_json(v.lhs)}, {"rhs", to_json(v.rhs)}};
}

json to_json(const DualityReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back(violation_to_json(v));
  return {{"pass", report.pass}, {"checks", report.checks}, {"violations", violations}};
}

json to_json(const SmallConstantReport& report) {
  json failing = json::array();
  for (double a : report.failing_arguments) failing.push_back(num(a));
  return {{"C", report.C},
          {"D", report.D},
          {"bound", num(report.bound)},
          {"hypothesis_holds", report.hypothesis_holds},
          {"conclusion_holds", report.conclusion_holds},
          {"pass", report.pass},
          {"failing_arguments", failing}};
}

json to_json(const LinearTypeReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back(violation_to_json(v));
  return {{"C", report.C},
          {"coarse_side", report.coarse_side},
          {"uniform_side", report.uniform_side},
          {"pass", report.pass},
          {"violations", violations},
          {"caveat", report.caveat}};
}

json to_json(const DistortionReport& report) {
  auto pair = [](const std::optional<std::pair<PointIndex, PointIndex>>& p) {
    return p ? json::array({p->first, p->second}) : json(nullptr);
  };
  return {{"K", report.K},
          {"L", report.L},
          {"tolerance", report.tolerance},
          {"pairs", report.pairs},
          {"upper_slack", num(report.upper_slack)},
          {"lower_slack", num(report.lower_slack)},
          {"upper_violation", pair(report.upper_violation)},
          {"lower_violation", pair(report.lower_violation)},
          {"lipschitz", num(report.lipschitz)},
          {"inverse_lipschitz", num(report.inverse_lipschitz)},
          {"distortion", report.distortion ? num(*report.distortion) : json(nullptr)},
          {"non_injective", report.non_injective},
          {"support", {{"min", report.support.min}, {"max", report.support.max}, {"mean", report.support.mean}}},
          {"pass", report.pass}};
}

json to_json(const EmbeddingConfig& config) {
  json doc = {{"t", config.t},
              {"eps", config.eps},
              {"lambda", config.lambda},
              {"base_point", config.base_point},
              {"D", config.D},
              {"cover_kind", to_string(config.cover_kind)}};
  doc["C"] = config.C ? json(*config.C) : json(nullptr);
  doc["scales"] = config.scales ? json::array({config.scales->min, config.scales->max}) : json(nullptr);
  return doc;
}

json embedding_to_json(const Embedding& embedding, const FiniteMetricSpace& space) {
  json points = json::object();
  for (PointIndex x = 0; x < embedding.points.size(); ++x) {
    json coords = json::object();
    for (const auto& [id, v] : embedding.points[x].entries()) coords[id.to_string()] = v;
    points[space.label(x)] = coords;
  }
  std::size_t failed = 0;
  json first_failure = nullptr;
  for (const auto& w : embedding.witnesses) {
    if (w.holds) continue;
    if (failed++ == 0) {
      first_failure = {{"x", w.x}, {"y", w.y}, {"n", w.n}, {"member", w.member},
                       {"fx", w.fx}, {"fy", w.fy}, {"required", w.required}};
    }
  }
  return {{"K", embedding.K},
          {"L", embedding.L},
          {"config", to_json(embedding.config)},
          {"points", points},
          {"report", to_json(embedding.report)},
          {"checks",
           {{"coordinates_lipschitz", embedding.coordinates_lipschitz},
            {"coordinates_bounded", embedding.coordinates_bounded},
            {"witnessed_pairs", embedding.witnesses.size()},
            {"failed_witnesses", failed},
            {"first_failed_witness", first_failure}}}};
}

std::vector<SparseNonnegativeSequence> embedding_points_from_json(
    const json& doc, const std::vector<std::string>& labels) {
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_object()) {
    parse_error("embedding document needs a \"points\" object");
  }
  std::vector<SparseNonnegativeSequence> out;
  for (const auto& label : labels) {
    if (!doc["points"].contains(label)) parse_error("no image for point '" + label + "'");
    SparseNonnegativeSequence f;
    for (const auto& [key, value] : doc["points"][label].items()) {
      const auto id = CoordinateId::parse(key);
      if (!id) parse_error("bad coordinate id '" + key + "'");
      f.set(*id, number_at(value, "coordinate value"));
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace stone::io
