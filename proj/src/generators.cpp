#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "stone/error.hpp"
#include "stone/metric_space.hpp"

namespace stone {

FiniteMetricSpace space_from_points(std::vector<std::vector<double>> points,
                                    LpExponent p) {
  if (points.empty()) throw Error(ErrorKind::BadParams, "no points");
  if (!p.infinite && !(p.p >= 1.0)) throw Error(ErrorKind::BadParams, "p must lie in [1, inf]");
  const std::size_t dim = points.front().size();
  for (const auto& pt : points) {
    if (pt.size() != dim) throw Error(ErrorKind::BadParams, "points of different dimension");
  }
  const std::size_t n = points.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m[i][j] = m[j][i] = lp_distance(points[i], points[j], p);
    }
  }
  return validate_space(m, {}, kDefaultTriangleTolerance, VectorPoints{std::move(points), p});
}

FiniteMetricSpace space_from_tree(std::size_t vertex_count,
                                  const std::vector<TreeEdge>& edges) {
  if (vertex_count == 0) throw Error(ErrorKind::BadTree, "tree without vertices");
  if (edges.size() + 1 != vertex_count) {
    throw Error(ErrorKind::BadTree, "a tree on V vertices has V-1 edges");
  }
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(vertex_count);
  for (const auto& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count || e.u == e.v) {
      throw Error(ErrorKind::BadTree, "edge endpoint out of range");
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw Error(ErrorKind::BadTree, "edge lengths must be positive");
    }
    adj[e.u].emplace_back(e.v, e.length);
    adj[e.v].emplace_back(e.u, e.length);
  }
  std::vector<std::vector<double>> m(vertex_count, std::vector<double>(vertex_count, -1.0));
  for (std::size_t s = 0; s < vertex_count; ++s) {
    // Tree: a DFS gives path lengths directly.
    std::vector<std::size_t> stack{s};
    m[s][s] = 0.0;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (auto [v, len] : adj[u]) {
        if (m[s][v] < 0.0) {
          m[s][v] = m[s][u] + len;
          stack.push_back(v);
        }
      }
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
      if (m[s][v] < 0.0) throw Error(ErrorKind::BadTree, "tree is not connected");
    }
  }
  // Path sums in different orders can differ in the last bit.
  for (std::size_t i = 0; i < vertex_count; ++i) {
    for (std::size_t j = i + 1; j < vertex_count; ++j) m[j][i] = m[i][j];
  }
  return validate_space(m);
}

std::optional<GeneratorKind> parse_generator_kind(const std::string& name) {
  if (name == "random-integer") return GeneratorKind::RandomInteger;
  if (name == "lp-point-cloud") return GeneratorKind::LpPointCloud;
  if (name == "weighted-tree") return GeneratorKind::WeightedTree;
  if (name == "lp-ball-grid") return GeneratorKind::LpBallGrid;
  return std::nullopt;
}

namespace {

FiniteMetricSpace random_integer_space(const GeneratorParams& params, std::mt19937_64& rng) {
  if (params.n == 0 || params.max_weight < 1) {
    throw Error(ErrorKind::BadParams, "random-integer needs n >= 1 and max_weight >= 1");
  }
  const std::size_t n = params.n;
  std::uniform_int_distribution<int> weight(1, params.max_weight);
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = weight(rng);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = std::min(m[i][j], m[i][k] + m[k][j]);
    }
  }
  return validate_space(m);
}

FiniteMetricSpace point_cloud(const GeneratorParams& params, std::mt19937_64& rng) {
  if (params.n == 0 || params.dim == 0 || !(params.extent > 0.0)) {
    throw Error(ErrorKind::BadParams, "point cloud needs n, dim >= 1 and extent > 0");
  }
  std::uniform_real_distribution<double> coord(0.0, params.extent);
  std::vector<std::vector<double>> pts(params.n, std::vector<double>(params.dim));
  for (auto& pt : pts) {
    for (auto& c : pt) c = coord(rng);
  }
  return space_from_points(std::move(pts), params.p);
}

FiniteMetricSpace ball_grid(const GeneratorParams& params) {
  if (params.dim == 0 || !(params.step > 0.0) || !(params.radius >= 0.0)) {
    throw Error(ErrorKind::BadParams, "grid needs dim >= 1, step > 0, radius >= 0");
  }
  const auto reach = static_cast<long long>(std::floor(params.radius / params.step));
  std::vector<std::vector<double>> pts;
  std::vector<long long> idx(params.dim, -reach);
  const std::vector<double> origin(params.dim, 0.0);
  while (true) {
    std::vector<double> pt(params.dim);
    for (std::size_t k = 0; k < params.dim; ++k) pt[k] = static_cast<double>(idx[k]) * params.step;
    if (lp_distance(pt, origin, params.p) <= params.radius * (1.0 + 1e-12)) pts.push_back(pt);
    std::size_t k = 0;
    while (k < params.dim && idx[k] == reach) idx[k++] = -reach;
    if (k == params.dim) break;
    ++idx[k];
  }
  return space_from_points(std::move(pts), params.p);
}

}  // namespace

std::vector<TreeEdge> random_tree_edges(const GeneratorParams& params, std::uint64_t seed) {
  if (params.n == 0 || !(params.min_length > 0.0) || !(params.max_length > params.min_length)) {
    throw Error(ErrorKind::BadParams, "tree needs n >= 1 and 0 < min_length < max_length");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> length(params.min_length, params.max_length);
  std::vector<TreeEdge> edges;
  for (std::size_t v = 1; v < params.n; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    const std::size_t u = parent(rng);
    edges.push_back({u, v, length(rng)});
  }
  return edges;
}

FiniteMetricSpace generate_space(GeneratorKind kind, const GeneratorParams& params,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (kind) {
    case GeneratorKind::RandomInteger: return random_integer_space(params, rng);
    case GeneratorKind::LpPointCloud: return point_cloud(params, rng);
    case GeneratorKind::WeightedTree: return space_from_tree(params.n, random_tree_edges(params, seed));
    case GeneratorKind::LpBallGrid: return ball_grid(params);
  }
  throw Error(ErrorKind::BadParams, "unknown generator kind");
}

}  // namespace stone
