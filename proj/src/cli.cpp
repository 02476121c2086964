#include "stone/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include "stone/catalog.hpp"
#include "stone/embedding.hpp"
#include "stone/error.hpp"
#include "stone/io.hpp"
#include "stone/moduli.hpp"

namespace stone {

namespace {

using io::json;

struct InputOptions {
  std::string path;
  std::string generator;
  std::uint64_t seed = 0;
  GeneratorParams params;
  std::string p = "2";
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path, "Space JSON file");
  cmd->add_option("--generator", in.generator,
                  "Generate the space instead: random-integer, lp-point-cloud, weighted-tree, lp-ball-grid");
  cmd->add_option("--seed", in.seed, "Generator seed");
  cmd->add_option("--size", in.params.n, "Generator point count");
  cmd->add_option("--dim", in.params.dim, "Generator dimension");
  cmd->add_option("--p", in.p, "Generator norm exponent (number or inf)");
  cmd->add_option("--radius", in.params.radius, "Ball-grid radius");
}

LpExponent parse_exponent(const std::string& text) {
  if (text == "inf") return LpExponent::inf();
  try {
    const double p = std::stod(text);
    if (p >= 1.0) return {p, false};
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::BadParams, "norm exponent must be >= 1 or inf");
}

io::SpaceDocument load_input(const InputOptions& in) {
  if (in.path.empty() == in.generator.empty()) {
    throw Error(ErrorKind::ParseError, "give exactly one of an input file or --generator");
  }
  if (!in.path.empty()) return io::space_from_json(io::read_json_file(in.path));
  const auto kind = parse_generator_kind(in.generator);
  if (!kind) throw Error(ErrorKind::BadParams, "unknown generator '" + in.generator + "'");
  GeneratorParams params = in.params;
  params.p = parse_exponent(in.p);
  if (*kind == GeneratorKind::WeightedTree) {
    RootedTree tree(params.n, random_tree_edges(params, in.seed), 0);
    return {tree.space(), tree};
  }
  return {generate_space(*kind, params, in.seed), std::nullopt};
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad number '" + cell + "' in list");
    }
  }
  return out;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IO:
    case ErrorKind::ParseError: return kExitInput;
    case ErrorKind::CliqueCapExceeded:
    case ErrorKind::TooLarge: return kExitResource;
    default: return kExitFailed;
  }
}

json error_json(const Error& e) {
  return {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}, {"witness", e.witness()}};
}

json bound_check(const std::string& name, const json& value, const json& bound, bool pass) {
  return {{"name", name}, {"value", value}, {"bound", bound}, {"pass", pass}};
}

// ---------------------------------------------------------------------------

struct ValidateCmd {
  InputOptions in;
};

int run_validate(const ValidateCmd& cmd, std::ostream& out) {
  const auto doc = load_input(cmd.in);
  out << dump({{"valid", true},
               {"points", doc.space.size()},
               {"diameter", doc.space.diameter()},
               {"min_distance", io::to_json(doc.space.min_positive_distance())}});
  return kExitOk;
}

struct GenerateCmd {
  InputOptions in;
  std::string output;
};

int run_generate(const GenerateCmd& cmd, std::ostream& out) {
  const auto doc = load_input(cmd.in);
  emit(cmd.output, dump(doc.tree ? io::tree_to_json(*doc.tree) : io::space_to_json(doc.space)), out);
  return kExitOk;
}

struct DeltaCmd {
  InputOptions in;
  std::string kind = "both";
  std::string grid;
  bool oracle = false;
  std::string output;
};

int run_delta(const DeltaCmd& cmd, std::ostream& out) {
  const auto doc = load_input(cmd.in);
  const std::size_t cap = clique_cap_from_env();
  const auto grid = parse_list(cmd.grid);
  std::vector<ModulusCurve> curves;
  if (cmd.kind == "coarse" || cmd.kind == "both") {
    curves.push_back(modulus_curve(doc.space, ModulusKind::Coarse, grid, cap));
  }
  if (cmd.kind == "uniform" || cmd.kind == "both") {
    curves.push_back(modulus_curve(doc.space, ModulusKind::Uniform, grid, cap));
  }
  if (curves.empty()) throw Error(ErrorKind::BadParams, "--kind is coarse, uniform or both");
  if (!cmd.oracle) {
    emit(cmd.output, io::curves_to_csv(curves), out);
    return kExitOk;
  }
  const ModulusOracle oracle(doc.space);
  std::string csv = "kind,argument,value,oracle\n";
  bool agree = true;
  for (const auto& curve : curves) {
    for (const auto& s : curve.samples) {
      const ExtReal ref =
          curve.kind == ModulusKind::Coarse ? oracle.coarse(s.argument) : oracle.uniform(s.argument);
      agree = agree && ref == s.value;
      csv += to_string(curve.kind) + "," + io::format_number(s.argument) + "," +
             io::format_number(s.value) + "," + io::format_number(ref) + "\n";
    }
  }
  emit(cmd.output, csv, out);
  return agree ? kExitOk : kExitFailed;
}

struct CheckCmd {
  InputOptions in;
  std::string rule = "duality";
  std::string grid;
  std::string epsilons = "0.1,0.01";
  double C = 1.0;
  double D = 0.0;
  std::string output;
};

int run_check(const CheckCmd& cmd, std::ostream& out) {
  const auto doc = load_input(cmd.in);
  const std::size_t cap = clique_cap_from_env();
  auto grid = parse_list(cmd.grid);
  json report;
  bool pass = false;
  if (cmd.rule == "duality") {
    if (grid.empty()) grid = default_grid(doc.space);
    const auto r = check_duality(doc.space, grid, parse_list(cmd.epsilons), cap);
    report = io::to_json(r);
    pass = r.pass;
  } else if (cmd.rule == "small-c") {
    const auto r = check_small_c(doc.space, cmd.C, cmd.D, grid, cap);
    report = io::to_json(r);
    pass = r.pass;
  } else if (cmd.rule == "linear-type") {
    const auto r = check_linear_type(doc.space, cmd.C, grid, cap);
    report = io::to_json(r);
    pass = r.pass;
  } else {
    throw Error(ErrorKind::BadParams, "--rule is duality, small-c or linear-type");
  }
  report["rule"] = cmd.rule;
  emit(cmd.output, dump(report), out);
  return pass ? kExitOk : kExitFailed;
}

struct CoverCmd {
  InputOptions in;
  std::string kind = "clique";
  double R = 1.0;
  double r = 2.0;
  double eps = 0.25;
  std::int64_t n = 1;
  std::size_t dimension = 0;
  std::string boundary = "half-open";
  std::string query;
  std::string output;
};

json finite_cover_report(const Cover& cover, std::vector<json> checks) {
  const CoverMetrics m = cover_metrics(cover, clique_cap_from_env());
  bool pass = true;
  for (const auto& c : checks) pass = pass && c["pass"].get<bool>();
  return {{"cover", io::cover_to_json(cover)},
          {"metrics", io::metrics_to_json(m)},
          {"checks", checks},
          {"pass", pass}};
}

SparseNonnegativeSequence parse_sparse_query(const std::string& text) {
  SparseNonnegativeSequence f;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    const auto eq = cell.find('=');
    const auto id = eq == std::string::npos ? std::nullopt : CoordinateId::parse(cell.substr(0, eq));
    if (!id) throw Error(ErrorKind::ParseError, "c0 queries look like n:tau=value,...");
    const auto v = parse_list(cell.substr(eq + 1));
    if (v.size() != 1) throw Error(ErrorKind::ParseError, "bad value in '" + cell + "'");
    f.set(*id, v.front());
  }
  return f;
}

int run_cover(const CoverCmd& cmd, std::ostream& out) {
  const std::size_t cap = clique_cap_from_env();
  json report;
  if (cmd.kind == "linf-grid") {
    const auto f = parse_list(cmd.query);
    const std::size_t dim = cmd.dimension == 0 ? f.size() : cmd.dimension;
    const LinfGridCover grid(dim, cmd.n);
    const auto x = grid.locate(f);
    const auto holders = grid.containing(f);
    const bool located = grid.contains(f, x);
    const bool bounded = holders.size() <= grid.multiplicity_bound();
    report = {{"query", f},
              {"locate", x},
              {"containing", holders},
              {"count", holders.size()},
              {"checks", {bound_check("multiplicity", holders.size(), grid.multiplicity_bound(), bounded),
                          bound_check("locate_contains_query", located, true, located)}},
              {"member_diameter", grid.member_diameter()},
              {"pass", located && bounded}};
  } else if (cmd.kind == "c0-grid") {
    const auto f = parse_sparse_query(cmd.query);
    const C0PlusGridCover grid(cmd.R, cmd.n);
    const GridCellIndex cell = grid.locate(f);
    const auto holders = grid.containing(f);
    auto cell_json = [](const GridCellIndex& c) {
      json o = json::object();
      for (const auto& [id, x] : c.offsets) o[id.to_string()] = x;
      return o;
    };
    json cells = json::array();
    for (const auto& c : holders) cells.push_back(cell_json(c));
    const double bound = grid.multiplicity_bound(grid.essential_support(f).size());
    const bool located = grid.contains(f, cell);
    const bool bounded = static_cast<double>(holders.size()) <= bound;
    report = {{"locate", cell_json(cell)},
              {"containing", cells},
              {"count", holders.size()},
              {"checks", {bound_check("multiplicity", holders.size(), bound, bounded),
                          bound_check("locate_contains_query", located, true, located)}},
              {"member_diameter_bound", grid.member_diameter_bound()},
              {"pass", located && bounded}};
  } else {
    const auto doc = load_input(cmd.in);
    if (cmd.kind == "clique") {
      const Cover cover = clique_cover(doc.space, cmd.R, cap);
      const ExtReal leb = lebesgue_number(cover, cap);
      const double diam = cover_diameter(cover);
      report = finite_cover_report(
          cover, {bound_check("lebesgue", io::to_json(leb), cmd.R, leb >= ExtReal(cmd.R)),
                  bound_check("diameter", diam, cmd.R, diam <= cmd.R)});
    } else if (cmd.kind == "greedy") {
      const auto order = natural_order(doc.space);
      const auto sep = greedy_separable_cover(doc.space, cmd.r, cmd.eps, order);
      const ExtReal leb = lebesgue_number(sep.cover, cap);
      const double diam = cover_diameter(sep.cover);
      const double floor = cmd.r / 2.0 - cmd.eps;
      report = finite_cover_report(
          sep.cover, {bound_check("lebesgue", io::to_json(leb), floor, leb >= ExtReal(floor)),
                      bound_check("diameter", diam, cmd.r, diam <= cmd.r)});
    } else if (cmd.kind == "tree") {
      if (!doc.tree) throw Error(ErrorKind::BadTree, "tree covers need a tree input");
      TreeBoundary boundary = TreeBoundary::HalfOpen;
      if (cmd.boundary == "closed") {
        boundary = TreeBoundary::Closed;
      } else if (cmd.boundary != "half-open") {
        throw Error(ErrorKind::BadParams, "--boundary is half-open or closed");
      }
      const TreeCover tc = tree_cover(*doc.tree, cmd.R, cmd.n, boundary);
      const ExtReal leb = lebesgue_number(tc.cover, cap);
      const double diam = cover_diameter(tc.cover);
      const std::size_t mult = max_multiplicity(tc.cover);
      const double diam_bound = 2.0 * (cmd.R + 1.0 / static_cast<double>(cmd.n));
      const auto mult_bound = static_cast<std::size_t>(cmd.n * static_cast<std::int64_t>(std::ceil(cmd.R)) + 1);
      report = finite_cover_report(
          tc.cover, {bound_check("lebesgue", io::to_json(leb), cmd.R, leb >= ExtReal(cmd.R)),
                     bound_check("diameter", diam, diam_bound, diam <= diam_bound),
                     bound_check("multiplicity", mult, mult_bound, mult <= mult_bound)});
    } else {
      throw Error(ErrorKind::BadParams, "unknown cover kind '" + cmd.kind + "'");
    }
  }
  report["kind"] = cmd.kind;
  emit(cmd.output, dump(report), out);
  return report["pass"].get<bool>() ? kExitOk : kExitFailed;
}

struct EmbedCmd {
  InputOptions in;
  EmbeddingConfig config;
  std::optional<double> C;
  std::string scales;
  std::string cover_kind = "clique";
  std::string output;
};

std::optional<ScaleRange> parse_scales(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto dots = text.find("..");
  ScaleRange r;
  try {
    if (dots == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const std::string lo = text.substr(0, dots);
    const std::string hi = text.substr(dots + 2);
    r.min = std::stoll(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    r.max = std::stoll(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "--scales takes n_min..n_max");
  }
  return r;
}

int run_embed(const EmbedCmd& cmd, std::ostream& out) {
  const auto doc = load_input(cmd.in);
  EmbeddingConfig config = cmd.config;
  config.C = cmd.C;
  config.scales = parse_scales(cmd.scales);
  config.cover_kind = parse_scale_cover_kind(cmd.cover_kind);
  config.clique_cap = clique_cap_from_env();
  const Embedding e = embed(doc.space, config);
  json result = io::embedding_to_json(e, doc.space);
  const bool pass = e.report.pass && e.coordinates_lipschitz && e.coordinates_bounded &&
                    result["checks"]["failed_witnesses"].get<std::size_t>() == 0;
  result["pass"] = pass;
  emit(cmd.output, dump(result), out);
  return pass ? kExitOk : kExitFailed;
}

struct ReportCmd {
  std::vector<std::string> inputs;
  std::string output;
};

int run_report(const ReportCmd& cmd, std::ostream& out) {
  const bool csv = std::filesystem::path(cmd.inputs.front()).extension() == ".csv";
  if (cmd.inputs.size() == 1) {
    emit(cmd.output, io::read_text_file(cmd.inputs.front()), out);
    return kExitOk;
  }
  if (csv) {
    std::string merged;
    std::string header;
    for (const auto& path : cmd.inputs) {
      std::istringstream in(io::read_text_file(path));
      std::string line;
      if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, path + " is empty");
      if (header.empty()) {
        header = line;
      } else if (line != header) {
        throw Error(ErrorKind::ParseError, path + " has a different header");
      }
      while (std::getline(in, line)) {
        if (!line.empty()) merged += path + "," + line + "\n";
      }
    }
    emit(cmd.output, "source," + header + "\n" + merged, out);
    return kExitOk;
  }
  json reports = json::array();
  for (const auto& path : cmd.inputs) reports.push_back({{"source", path}, {"content", io::read_json_file(path)}});
  emit(cmd.output, dump({{"reports", reports}}), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covering moduli, covers and embeddings of finite metric spaces"};
  app.require_subcommand(1);

  ValidateCmd validate;
  auto* validate_cmd = app.add_subcommand("validate", "Check that a space is a metric");
  add_input_options(validate_cmd, validate.in);

  GenerateCmd generate;
  auto* generate_cmd = app.add_subcommand("generate", "Write a generated space as JSON");
  add_input_options(generate_cmd, generate.in);
  generate_cmd->add_option("-o,--output", generate.output, "Output file");

  DeltaCmd delta;
  auto* delta_cmd = app.add_subcommand("delta", "Modulus curves as CSV");
  add_input_options(delta_cmd, delta.in);
  delta_cmd->add_option("--kind", delta.kind, "coarse, uniform or both");
  delta_cmd->add_option("--grid", delta.grid, "Extra arguments, comma separated");
  delta_cmd->add_flag("--oracle", delta.oracle, "Add the brute-force column (at most 4 points)");
  delta_cmd->add_option("-o,--output", delta.output, "Output file");

  CheckCmd check;
  auto* check_cmd = app.add_subcommand("check", "Duality and growth checks as JSON");
  add_input_options(check_cmd, check.in);
  check_cmd->add_option("--rule", check.rule, "duality, small-c or linear-type");
  check_cmd->add_option("--grid", check.grid, "Arguments, comma separated");
  check_cmd->add_option("--epsilons", check.epsilons, "Duality offsets, comma separated");
  check_cmd->add_option("--C", check.C, "Growth constant");
  check_cmd->add_option("--D", check.D, "Additive constant");
  check_cmd->add_option("-o,--output", check.output, "Output file");

  CoverCmd cover;
  auto* cover_cmd = app.add_subcommand("cover", "Build a cover and check its bounds");
  add_input_options(cover_cmd, cover.in);
  cover_cmd->add_option("--kind", cover.kind, "clique, greedy, tree, linf-grid or c0-grid");
  cover_cmd->add_option("--R", cover.R, "Lebesgue target (clique, tree, c0-grid)");
  cover_cmd->add_option("--r", cover.r, "Diameter bound (greedy)");
  cover_cmd->add_option("--eps", cover.eps, "Exclusion radius (greedy)");
  cover_cmd->add_option("--n", cover.n, "Grid resolution (tree, linf-grid, c0-grid)");
  cover_cmd->add_option("--dimension", cover.dimension, "Dimension (linf-grid)");
  cover_cmd->add_option("--boundary", cover.boundary, "half-open or closed (tree)");
  cover_cmd->add_option("--query", cover.query, "Point to locate (grid kinds)");
  cover_cmd->add_option("-o,--output", cover.output, "Output file");

  EmbedCmd embed_opts;
  auto* embed_cmd = app.add_subcommand("embed", "Embed into c0+ and certify the distortion");
  add_input_options(embed_cmd, embed_opts.in);
  embed_cmd->add_option("--t", embed_opts.config.t, "Scale ratio t > 1");
  embed_cmd->add_option("--eps", embed_opts.config.eps, "Slack in (0, 1)");
  embed_cmd->add_option("--lambda", embed_opts.config.lambda, "lambda > 0");
  embed_cmd->add_option("--base-point", embed_opts.config.base_point, "Base point index");
  embed_cmd->add_option("--C", embed_opts.C, "Growth constant (derived when omitted)");
  embed_cmd->add_option("--D", embed_opts.config.D, "Additive constant");
  embed_cmd->add_option("--scales", embed_opts.scales, "Scale range n_min..n_max");
  embed_cmd->add_option("--cover-kind", embed_opts.cover_kind, "clique or greedy");
  embed_cmd->add_option("-o,--output", embed_opts.output, "Output file");

  ReportCmd report;
  auto* report_cmd = app.add_subcommand("report", "Merge curves or reports");
  report_cmd->add_option("inputs", report.inputs, "Files to merge")->required();
  report_cmd->add_option("-o,--output", report.output, "Output file");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  if (!argv.empty()) argv.pop_back();
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitInput;
  }

  try {
    if (*validate_cmd) return run_validate(validate, out);
    if (*generate_cmd) return run_generate(generate, out);
    if (*delta_cmd) return run_delta(delta, out);
    if (*check_cmd) return run_check(check, out);
    if (*cover_cmd) return run_cover(cover, out);
    if (*embed_cmd) return run_embed(embed_opts, out);
    if (*report_cmd) return run_report(report, out);
  } catch (const Error& e) {
    const json diag = error_json(e);
    if (*validate_cmd) {
      json doc = diag;
      doc["valid"] = false;
      out << dump(doc);
    }
    err << diag.dump() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return kExitFailed;
  }
  return kExitInput;
}

}  // namespace stone
