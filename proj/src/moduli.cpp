#include "stone/moduli.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stone/error.hpp"

namespace stone {

std::string to_string(ModulusKind kind) {
  return kind == ModulusKind::Coarse ? "coarse" : "uniform";
}

double delta_coarse(const FiniteMetricSpace& space, double R, std::size_t clique_cap) {
  if (R < 0.0) throw Error(ErrorKind::BadParams, "coarse modulus needs R >= 0");
  double best = 0.0;
  enumerate_maximal_cliques(
      ThresholdGraph(space, R, Threshold::Below),
      [&](const VertexSet& clique) {
        best = std::max(best, space.set_diameter(to_point_set(clique)));
        return true;
      },
      clique_cap);
  return best;
}

double delta_coarse(const FiniteMetricSpace& space, ExtReal R, std::size_t clique_cap) {
  if (R.is_infinite()) return space.diameter();
  return delta_coarse(space, R.value(), clique_cap);
}

ExtReal delta_uniform(const FiniteMetricSpace& space, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::BadParams, "uniform modulus needs r > 0");
  const auto& v = space.distinct_distances();
  const auto it = std::upper_bound(v.begin(), v.end(), r);
  if (it == v.end()) return ExtReal::infinity();
  return *it;
}

ExtReal delta_uniform_via_cover(const FiniteMetricSpace& space, double r, std::size_t clique_cap) {
  if (!(r > 0.0)) throw Error(ErrorKind::BadParams, "uniform modulus needs r > 0");
  Cover cover(space, maximal_cliques(ThresholdGraph(space, r, Threshold::AtMost), clique_cap));
  return lebesgue_number(cover, clique_cap);
}

ModulusOracle::ModulusOracle(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  if (n > kOracleMaxPoints) {
    throw Error(ErrorKind::TooLarge, "oracle is limited to " +
                                         std::to_string(kOracleMaxPoints) + " points",
                {static_cast<long long>(n)});
  }
  // Subsets are bitmasks s in [1, 2^n); a family is a bitmask over subsets,
  // bit s-1 standing for subset s.
  const std::size_t subsets = (std::size_t{1} << n) - 1;
  std::vector<double> diam(subsets + 1, 0.0);
  std::vector<std::uint32_t> below(subsets + 1, 0);  // family bits of subsets of s
  for (std::size_t s = 1; s <= subsets; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if ((s >> i & 1U) && (s >> j & 1U)) diam[s] = std::max(diam[s], space.distance(i, j));
      }
    }
    for (std::size_t e = 1; e <= subsets; ++e) {
      if ((e & s) == e) below[s] |= std::uint32_t{1} << (e - 1);
    }
  }
  const std::size_t families = std::size_t{1} << subsets;
  for (std::size_t fam = 1; fam < families; ++fam) {
    std::size_t united = 0;
    std::uint32_t contained = 0;
    double fam_diam = 0.0;
    for (std::size_t s = 1; s <= subsets; ++s) {
      if (fam >> (s - 1) & 1U) {
        united |= s;
        contained |= below[s];
        fam_diam = std::max(fam_diam, diam[s]);
      }
    }
    if (united != subsets) continue;
    // Lebesgue number: least diameter of a subset inside no member.
    ExtReal leb = ExtReal::infinity();
    for (std::size_t e = 1; e <= subsets; ++e) {
      if (!(contained >> (e - 1) & 1U) && ExtReal(diam[e]) < leb) leb = diam[e];
    }
    families_.push_back({fam_diam, leb});
  }
}

ExtReal ModulusOracle::coarse(double R) const {
  ExtReal best = ExtReal::infinity();
  for (const auto& f : families_) {
    if (f.lebesgue >= ExtReal(R) && ExtReal(f.diameter) < best) best = f.diameter;
  }
  return best;
}

ExtReal ModulusOracle::uniform(double r) const {
  ExtReal best = 0.0;
  for (const auto& f : families_) {
    if (f.diameter <= r && f.lebesgue > best) best = f.lebesgue;
  }
  return best;
}

ExtReal delta_oracle(const FiniteMetricSpace& space, ModulusKind kind, double argument) {
  const ModulusOracle oracle(space);
  return kind == ModulusKind::Coarse ? oracle.coarse(argument) : oracle.uniform(argument);
}

std::vector<double> default_grid(const FiniteMetricSpace& space) {
  const auto& v = space.distinct_distances();
  std::vector<double> grid;
  if (v.empty()) return {1.0};
  const double inf = std::numeric_limits<double>::infinity();
  grid.push_back(v.front() / 2.0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    grid.push_back(std::nextafter(v[k], 0.0));
    grid.push_back(v[k]);
    grid.push_back(std::nextafter(v[k], inf));
    if (k + 1 < v.size()) grid.push_back((v[k] + v[k + 1]) / 2.0);
  }
  grid.push_back(2.0 * v.back());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

namespace {

std::vector<double> merged_grid(const FiniteMetricSpace& space, const std::vector<double>& extra,
                                bool positive_only) {
  std::vector<double> grid = default_grid(space);
  grid.insert(grid.end(), extra.begin(), extra.end());
  std::erase_if(grid, [&](double a) {
    return !std::isfinite(a) || a < 0.0 || (positive_only && a == 0.0);
  });
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

ModulusCurve modulus_curve(const FiniteMetricSpace& space, ModulusKind kind,
                           const std::vector<double>& grid, std::size_t clique_cap) {
  ModulusCurve curve{kind, {}};
  for (double a : merged_grid(space, grid, kind == ModulusKind::Uniform)) {
    const ExtReal value = kind == ModulusKind::Coarse ? ExtReal(delta_coarse(space, a, clique_cap))
                                                      : delta_uniform(space, a);
    if (!curve.samples.empty() && value < curve.samples.back().value) {
      throw std::logic_error("modulus curve decreases at argument " + std::to_string(a));
    }
    curve.samples.push_back({a, value});
  }
  return curve;
}

DualityReport check_duality(const FiniteMetricSpace& space, const std::vector<double>& grid,
                            const std::vector<double>& epsilons, std::size_t clique_cap) {
  DualityReport report;
  std::vector<double> args(grid.begin(), grid.end());
  std::erase_if(args, [](double a) { return !(a > 0.0) || !std::isfinite(a); });
  std::sort(args.begin(), args.end());
  args.erase(std::unique(args.begin(), args.end()), args.end());

  auto fail = [&](CheckViolation v) {
    report.pass = false;
    report.violations.push_back(std::move(v));
  };

  ExtReal prev_c = 0.0;
  ExtReal prev_u = 0.0;
  for (double a : args) {
    const double dc = delta_coarse(space, a, clique_cap);
    const ExtReal du = delta_uniform(space, a);
    ++report.checks;
    if (ExtReal(dc) < prev_c) fail({"monotone-coarse", a, 0.0, dc, prev_c});
    if (du < prev_u) fail({"monotone-uniform", a, 0.0, du, prev_u});
    prev_c = dc;
    prev_u = du;

    for (double eps : epsilons) {
      if (!(eps > 0.0)) continue;
      // Du(Dc(R) + eps) >= R
      const ExtReal lhs2 = delta_uniform(space, dc + eps);
      ++report.checks;
      if (lhs2 < ExtReal(a)) fail({"duality-coarse-to-uniform", a, eps, lhs2, a});
      // Dc(Du(r) - eps) <= r, only for 0 < eps < Du(r)
      if (du > ExtReal(eps)) {
        const double lhs3 = delta_coarse(space, du - eps, clique_cap);
        ++report.checks;
        if (lhs3 > a) fail({"duality-uniform-to-coarse", a, eps, lhs3, a});
      }
    }
  }
  return report;
}

SmallConstantReport check_small_c(const FiniteMetricSpace& space, double C, double D,
                                  const std::vector<double>& grid, std::size_t clique_cap) {
  if (!(C >= 0.0 && C < 1.0) || !(D >= 0.0)) {
    throw Error(ErrorKind::BadParams, "need 0 <= C < 1 and D >= 0");
  }
  SmallConstantReport report;
  report.C = C;
  report.D = D;
  report.bound = D / (1.0 - C);
  std::vector<double> extra(grid.begin(), grid.end());
  const double inf = std::numeric_limits<double>::infinity();
  for (double m : {1.0, 1.5, 2.0, 4.0}) extra.push_back(m * report.bound);
  extra.push_back(std::nextafter(report.bound, inf));
  extra.push_back(std::nextafter(space.diameter(), inf));
  extra.push_back(2.0 * space.diameter() + 1.0);
  report.arguments = merged_grid(space, extra, false);
  for (double R : report.arguments) {
    if (delta_coarse(space, R, clique_cap) > C * R + D) {
      report.hypothesis_holds = false;
      report.failing_arguments.push_back(R);
    }
  }
  report.conclusion_holds = space.diameter() <= report.bound + kSmallConstantTolerance;
  report.pass = !(report.hypothesis_holds && !report.conclusion_holds);
  return report;
}

LinearTypeReport check_linear_type(const FiniteMetricSpace& space, double C,
                                   const std::vector<double>& grid, std::size_t clique_cap) {
  if (!(C > 0.0)) throw Error(ErrorKind::BadParams, "linear-type constant must be positive");
  LinearTypeReport report;
  report.C = C;
  report.caveat =
      "both sides are evaluated only at sampled arguments; agreement on the grid is "
      "necessary for the equivalence, not a proof of it";
  for (double a : merged_grid(space, grid, false)) {
    const double dc = delta_coarse(space, a, clique_cap);
    if (dc > C * a) {
      report.coarse_side = false;
      report.violations.push_back({"coarse-linear", a, 0.0, dc, C * a});
    }
    if (a > 0.0) {
      const ExtReal du = delta_uniform(space, a);
      if (du < ExtReal(a / C)) {
        report.uniform_side = false;
        report.violations.push_back({"uniform-linear", a, 0.0, du, a / C});
      }
    }
  }
  report.pass = report.coarse_side == report.uniform_side;
  return report;
}

double coarse_ratio_sup(const FiniteMetricSpace& space, std::size_t clique_cap) {
  double best = 0.0;
  for (double R : default_grid(space)) {
    if (R > 0.0) best = std::max(best, delta_coarse(space, R, clique_cap) / R);
  }
  return best;
}

}  // namespace stone
