// One PASS/FAIL line per acceptance criterion; nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "stone/catalog.hpp"
#include "stone/embedding.hpp"
#include "stone/moduli.hpp"
#include "stone/sparse.hpp"
#include "support.hpp"

using namespace stone;
using stone::testing::random_space;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o = body();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    o.pass = false;
    o.detail += " (over time limit)";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %-28s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string count(const char* what, std::size_t n) { return std::string(what) + "=" + std::to_string(n); }

// Every 3-point matrix with sides in {1,2,3} obeying the triangle inequality.
std::vector<FiniteMetricSpace> integer_triangles() {
  std::vector<FiniteMetricSpace> out;
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      for (int c = 1; c <= 3; ++c) {
        if (a > b + c || b > a + c || c > a + b) continue;
        const double x = a, y = b, z = c;
        out.push_back(validate_space({{0, x, y}, {x, 0, z}, {y, z, 0}}));
      }
    }
  }
  return out;
}

Outcome oracle_equivalence() {
  std::vector<FiniteMetricSpace> spaces = integer_triangles();
  const std::size_t triangles = spaces.size();
  for (std::uint64_t seed = 0; seed < 100; ++seed) spaces.push_back(random_space(seed, 4));
  std::size_t checks = 0;
  std::size_t mismatches = 0;
  for (const auto& s : spaces) {
    const ModulusOracle oracle(s);
    for (double a : default_grid(s)) {
      checks += 2;
      mismatches += oracle.coarse(a) != ExtReal(delta_coarse(s, a));
      mismatches += oracle.uniform(a) != delta_uniform(s, a);
    }
  }
  return {mismatches == 0, count("triangles", triangles) + " " + count("checks", checks) + " " +
                               count("mismatches", mismatches)};
}

Outcome coarse_below_argument() {
  std::size_t checks = 0;
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = random_space(seed, 10);
    for (double R : default_grid(s)) {
      ++checks;
      violations += delta_coarse(s, R) > R;
    }
  }
  return {violations == 0, count("checks", checks) + " " + count("violations", violations)};
}

// Twenty arguments spread over the default grid, which holds every distance
// and its floating-point neighbours.
std::vector<double> twenty_points(const FiniteMetricSpace& s) {
  const auto grid = default_grid(s);
  std::vector<double> out;
  for (std::size_t k = 0; k < 20; ++k) out.push_back(grid[k * (grid.size() - 1) / 19]);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Outcome duality() {
  std::size_t checks = 0;
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = random_space(seed, 8);
    const auto rep = check_duality(s, twenty_points(s), {0.1, 0.01});
    checks += rep.checks;
    violations += rep.violations.size();
  }
  return {violations == 0, count("checks", checks) + " " + count("violations", violations)};
}

Outcome small_constant() {
  std::size_t instances = 0;
  std::size_t hypothesis = 0;
  std::size_t counterexamples = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = random_space(seed, 8);
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const double C = 0.095 * i;
        const double D = s.diameter() * 0.15 * j;
        const auto rep = check_small_c(s, C, D, default_grid(s));
        ++instances;
        hypothesis += rep.hypothesis_holds;
        counterexamples += rep.hypothesis_holds && s.diameter() > rep.bound + 1e-9;
      }
    }
  }
  return {counterexamples == 0, count("instances", instances) + " " + count("hypothesis_held", hypothesis) +
                                    " " + count("counterexamples", counterexamples)};
}

struct EmbeddingRuns {
  std::size_t runs = 0;
  std::size_t pairs = 0;
  std::size_t failed_reports = 0;
  std::size_t nonzero_L = 0;
  std::size_t witnesses = 0;
  std::size_t failed_witnesses = 0;
  double max_C = 0.0;
};

EmbeddingRuns embedding_runs() {
  EmbeddingRuns r;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = random_space(seed, 50);
    EmbeddingConfig c;  // t = 1.5, eps = lambda = 0.25, D = 0, C derived
    const Embedding e = embed(s, c);
    ++r.runs;
    r.pairs += e.report.pairs;
    r.failed_reports += !(e.report.pass && e.report.tolerance == 1e-9);
    r.nonzero_L += e.L != 0.0;
    r.max_C = std::max(r.max_C, *e.config.C);
    const double expected_K = 2 * c.t * (*e.config.C + c.lambda) / (1 - c.eps);
    r.failed_reports += std::abs(e.K - expected_K) > 1e-12 * expected_K;
    for (const auto& w : e.witnesses) {
      ++r.witnesses;
      const double floor = e.K * (1 - c.eps) * std::pow(c.t, static_cast<double>(w.n)) / 2;
      const CoordinateId id{w.n, static_cast<std::int64_t>(w.member)};
      const bool ok = w.holds && w.fx >= floor && w.fy == 0.0 && e.points[w.x].get(id) == w.fx &&
                      e.points[w.y].get(id) == 0.0;
      r.failed_witnesses += !ok;
    }
    if (e.witnesses.size() != s.size() * (s.size() - 1) / 2) ++r.failed_witnesses;
  }
  return r;
}

Outcome folding() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(0, 6);
  std::uniform_int_distribution<std::int64_t> id(0, 9);
  std::uniform_real_distribution<double> value(-5.0, 5.0);
  auto sample = [&] {
    SignedSparseSequence f;
    for (int k = size(rng); k > 0; --k) f.set({id(rng) % 3 - 1, id(rng)}, value(rng));
    return f;
  };
  std::size_t violations = 0;
  for (int k = 0; k < 10000; ++k) {
    const auto f = sample();
    const auto h = sample();
    const double d = sup_distance(f, h);
    const double e = sup_distance(fold_to_positive(f), fold_to_positive(h));
    violations += !(d / 2 <= e && e <= d);
  }
  SignedSparseSequence plus;
  SignedSparseSequence minus;
  plus.set({0, 0}, 1.0);
  minus.set({0, 0}, -1.0);
  const double ratio = sup_distance(fold_to_positive(plus), fold_to_positive(minus)) / sup_distance(plus, minus);
  return {violations == 0 && ratio == 0.5,
          count("pairs", 10000) + " " + count("violations", violations) + " witness_ratio=" + std::to_string(ratio)};
}

Outcome catalog() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t violations = 0;

  // Greedy separable covers.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = random_space(seed, 12);
    const double r = s.diameter() * (0.1 + 0.8 * unit(rng));
    const double eps = r / 2 * (0.05 + 0.9 * unit(rng));
    auto order = natural_order(s);
    std::shuffle(order.begin(), order.end(), rng);
    const auto sep = greedy_separable_cover(s, r, eps, order);
    violations += cover_diameter(sep.cover) > r;
    violations += lebesgue_number(sep.cover) < ExtReal(r / 2 - eps);
  }

  // Tree covers.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorParams params;
    params.n = 6 + seed % 10;
    const RootedTree tree(params.n, random_tree_edges(params, seed), seed % params.n);
    const double R = 0.25 + 3.0 * unit(rng);
    const std::int64_t n = 1 + static_cast<std::int64_t>(seed % 4);
    const TreeCover tc = tree_cover(tree, R, n);
    violations += lebesgue_number(tc.cover) < ExtReal(R);
    violations += cover_diameter(tc.cover) > 2 * (R + 1.0 / static_cast<double>(n));
    violations += max_multiplicity(tc.cover) > static_cast<std::size_t>(n * std::ceil(R) + 1);
  }

  // l-infinity grids: locator holds the unit ball, multiplicity bound.
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  for (int inst = 0; inst < 100; ++inst) {
    const LinfGridCover grid(1 + inst % 3, 1 + inst % 4);
    std::vector<double> f(grid.dimension());
    for (auto& v : f) v = coord(rng);
    const auto cell = grid.locate(f);
    violations += grid.containing(f).size() > grid.multiplicity_bound();
    for (int k = 0; k < 1000; ++k) {
      std::vector<double> g(f);
      for (auto& v : g) v += (2 * unit(rng) - 1) * (1 - 1e-12);
      violations += !grid.contains(g, cell);
    }
  }
  const LinfGridCover line(1, 1);
  const std::vector<double> half{0.5};
  const std::size_t interior = line.containing(half).size();
  violations += interior != 3 || line.multiplicity_bound() != 3;

  // c0+ grids: locator holds 1000 sampled ball points per instance.
  std::uniform_real_distribution<double> value(0.0, 6.0);
  for (int inst = 0; inst < 100; ++inst) {
    const double R = 0.25 + 0.25 * (inst % 8);
    const C0PlusGridCover grid(R, 1 + inst % 4);
    SparseNonnegativeSequence f;
    for (int k = 0; k < 1 + inst % 4; ++k) f.set({inst % 3, k}, value(rng));
    const auto cell = grid.locate(f);
    for (int k = 0; k < 1000; ++k) {
      SparseNonnegativeSequence g;
      for (const auto& [xi, v] : f.entries()) g.set(xi, std::max(0.0, v + (2 * unit(rng) - 1) * R * (1 - 1e-12)));
      g.set({9, 9}, unit(rng) * R * (1 - 1e-12));
      violations += !(sup_distance(f, g) < R && grid.contains(g, cell));
    }
    const auto holders = grid.containing(f);
    violations += static_cast<double>(holders.size()) > grid.multiplicity_bound(grid.essential_support(f).size());
  }
  return {violations == 0, "instances=400 " + count("linf_interior_count", interior) + " " +
                               count("violations", violations)};
}

Outcome witness_families() {
  std::size_t bad = 0;
  std::string detail;
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto rep = c0_lower_bound_witness(m, 1.0, 1.9, 0.01);
    bool ok = rep.families.size() == (std::size_t{1} << m) && rep.families_below_R && rep.unions_above_D0 &&
              rep.max_family_diameter < 1.0 && rep.min_cross_union_diameter > 1.9;
    for (const auto& f : rep.families) ok = ok && f.contains_zero && f.element_diameter < 1.0;
    bad += !ok;
    detail += std::to_string(rep.families.size()) + (m < 6 ? "," : "");
  }
  return {bad == 0, "families=" + detail};
}

Outcome exploratory() {
  std::string detail;
  for (auto p : {LpExponent{1.0, false}, LpExponent{2.0, false}, LpExponent::inf()}) {
    GeneratorParams params;
    params.dim = 2;
    params.p = p;
    params.radius = 3.0;
    const auto s = generate_space(GeneratorKind::LpBallGrid, params, 0);
    detail += "p=" + (p.infinite ? std::string("inf") : std::to_string(static_cast<int>(p.p))) +
              ":sup_ratio=" + std::to_string(coarse_ratio_sup(s)) + " ";
  }
  // One-sided check: members of the l-infinity grid have diameter <= 2 + 1/n.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::size_t violations = 0;
  for (std::int64_t n = 1; n <= 4; ++n) {
    const LinfGridCover grid(2, n);
    const std::vector<std::int64_t> cell{0, 0};
    std::vector<std::vector<double>> inside;
    for (int k = 0; k < 20000; ++k) {
      std::vector<double> f{coord(rng), coord(rng)};
      if (grid.contains(f, cell)) inside.push_back(f);
    }
    for (const auto& a : inside) {
      for (const auto& b : inside) {
        violations += lp_distance(a, b, LpExponent::inf()) > grid.member_diameter();
      }
    }
  }
  detail += count("grid_diameter_violations", violations);
  return {violations == 0, detail};
}

}  // namespace

int main() {
  run(1, "oracle-equivalence", 60, oracle_equivalence);
  run(2, "coarse-modulus-below-R", 0, coarse_below_argument);
  run(3, "monotonicity-duality", 120, duality);
  run(4, "small-constant-sweep", 0, small_constant);

  EmbeddingRuns runs;
  run(5, "bi-lipschitz-embedding", 300, [&] {
    runs = embedding_runs();
    return Outcome{runs.failed_reports == 0 && runs.nonzero_L == 0,
                   count("runs", runs.runs) + " " + count("pairs", runs.pairs) + " " +
                       count("failed", runs.failed_reports) + " max_C=" + std::to_string(runs.max_C)};
  });
  run(6, "lower-bound-witnesses", 0, [&] {
    return Outcome{runs.witnesses > 0 && runs.failed_witnesses == 0,
                   count("witnesses", runs.witnesses) + " " + count("failed", runs.failed_witnesses)};
  });
  run(7, "catalog-certificates", 0, catalog);
  run(8, "folding-map", 0, folding);
  run(9, "witness-families", 0, witness_families);
  run(10, "exploratory-lp-nets", 0, exploratory);
  return failures == 0 ? 0 : 1;
}
