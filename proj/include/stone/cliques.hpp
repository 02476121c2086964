#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <functional>
#include <vector>

#include "stone/metric_space.hpp"

namespace stone {

using VertexSet = boost::dynamic_bitset<>;

inline constexpr std::size_t kDefaultCliqueCap = 1'000'000;

/// Reads STONE_CLIQUE_CAP, falling back to kDefaultCliqueCap.
std::size_t clique_cap_from_env();

enum class Threshold { Below, AtMost };  // edge iff d < value / d <= value

/// Simple undirected graph on the points of a space, as adjacency bitsets.
class ThresholdGraph {
 public:
  ThresholdGraph(const FiniteMetricSpace& space, double value, Threshold rule);

  std::size_t size() const { return adjacency_.size(); }
  const VertexSet& neighbours(std::size_t v) const { return adjacency_[v]; }

 private:
  std::vector<VertexSet> adjacency_;
};

/// Called once per maximal clique; return false to stop the enumeration.
using CliqueVisitor = std::function<bool(const VertexSet&)>;

/// Bron-Kerbosch with Tomita pivoting over a degeneracy ordering.
/// Visits every maximal clique exactly once, in a deterministic order.
/// Throws CliqueCapExceeded once more than `cap` cliques have been produced.
/// Returns the number of cliques visited.
std::size_t enumerate_maximal_cliques(const ThresholdGraph& graph, const CliqueVisitor& visit,
                                      std::size_t cap = kDefaultCliqueCap);

/// All maximal cliques as sorted point sets, in enumeration order.
std::vector<PointSet> maximal_cliques(const ThresholdGraph& graph,
                                      std::size_t cap = kDefaultCliqueCap);

PointSet to_point_set(const VertexSet& set);

}  // namespace stone
