#pragma once

// Shared fixtures and brute-force references for the test suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "stone/cover.hpp"
#include "stone/metric_space.hpp"

namespace stone::testing {

inline FiniteMetricSpace line_space(const std::vector<double>& xs) {
  std::vector<std::vector<double>> m(xs.size(), std::vector<double>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) m[i][j] = std::abs(xs[i] - xs[j]);
  }
  return validate_space(m);
}

inline FiniteMetricSpace line_space(std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i);
  return line_space(xs);
}

inline FiniteMetricSpace equilateral(std::size_t n, double d = 1.0) {
  std::vector<std::vector<double>> m(n, std::vector<double>(n, d));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0.0;
  return validate_space(m);
}

/// Cycles through integer matrices, l1/l2/linf clouds and weighted trees.
inline FiniteMetricSpace random_space(std::uint64_t seed, std::size_t n) {
  GeneratorParams params;
  params.n = n;
  switch (seed % 5) {
    case 0: return generate_space(GeneratorKind::RandomInteger, params, seed);
    case 1: params.p = {1.0, false}; return generate_space(GeneratorKind::LpPointCloud, params, seed);
    case 2: return generate_space(GeneratorKind::LpPointCloud, params, seed);
    case 3: params.p = LpExponent::inf(); return generate_space(GeneratorKind::LpPointCloud, params, seed);
    default: return generate_space(GeneratorKind::WeightedTree, params, seed);
  }
}

inline PointSet bits_to_set(std::uint64_t mask, std::size_t n) {
  PointSet s;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1U) s.push_back(i);
  }
  return s;
}

/// min diam(E) over subsets E contained in no member, by enumerating every subset.
inline ExtReal brute_lebesgue(const Cover& cover) {
  const std::size_t n = cover.space().size();
  std::vector<std::uint64_t> members;
  for (const auto& m : cover.members()) {
    std::uint64_t bits = 0;
    for (PointIndex x : m) bits |= std::uint64_t{1} << x;
    members.push_back(bits);
  }
  ExtReal best = ExtReal::infinity();
  for (std::uint64_t e = 1; e < (std::uint64_t{1} << n); ++e) {
    const bool covered = std::any_of(members.begin(), members.end(),
                                     [&](std::uint64_t m) { return (e & ~m) == 0; });
    if (covered) continue;
    const PointSet set = bits_to_set(e, n);
    const ExtReal d = cover.space().set_diameter(set);
    if (d < best) best = d;
  }
  return best;
}

inline std::vector<PointSet> random_members(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::vector<PointSet> members;
  std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << n) - 1);
  for (std::size_t k = 0; k < count; ++k) members.push_back(bits_to_set(mask(rng), n));
  // Singletons keep the family a cover.
  for (std::size_t x = 0; x < n; ++x) {
    if (std::none_of(members.begin(), members.end(), [&](const PointSet& m) {
          return std::find(m.begin(), m.end(), x) != m.end();
        })) {
      members.push_back({x});
    }
  }
  return members;
}

}  // namespace stone::testing
