#include "stone/cliques.hpp"

#include <cstdlib>
#include <string>

#include "stone/error.hpp"

namespace stone {

std::size_t clique_cap_from_env() {
  if (const char* raw = std::getenv("STONE_CLIQUE_CAP")) {
    try {
      std::size_t used = 0;
      const unsigned long long cap = std::stoull(raw, &used);
      if (used == std::string(raw).size() && cap > 0) return static_cast<std::size_t>(cap);
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::BadParams, "STONE_CLIQUE_CAP must be a positive integer");
  }
  return kDefaultCliqueCap;
}

ThresholdGraph::ThresholdGraph(const FiniteMetricSpace& space, double value, Threshold rule)
    : adjacency_(space.size(), VertexSet(space.size())) {
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      const double d = space.distance(i, j);
      const bool edge = rule == Threshold::Below ? d < value : d <= value;
      if (edge) {
        adjacency_[i].set(j);
        adjacency_[j].set(i);
      }
    }
  }
}

PointSet to_point_set(const VertexSet& set) {
  PointSet out;
  out.reserve(set.count());
  for (auto v = set.find_first(); v != VertexSet::npos; v = set.find_next(v)) out.push_back(v);
  return out;
}

namespace {

class BronKerbosch {
 public:
  BronKerbosch(const ThresholdGraph& graph, const CliqueVisitor& visit, std::size_t cap)
      : graph_(graph), visit_(visit), cap_(cap) {}

  // Returns false once the visitor asked to stop.
  bool expand(VertexSet& clique, VertexSet candidates, VertexSet excluded) {
    if (candidates.none()) {
      if (excluded.none()) return emit(clique);
      return true;
    }
    // Pivot maximising |candidates ∩ N(u)| over candidates ∪ excluded.
    std::size_t pivot = VertexSet::npos;
    std::size_t best = 0;
    const VertexSet pool = candidates | excluded;
    for (auto u = pool.find_first(); u != VertexSet::npos; u = pool.find_next(u)) {
      const std::size_t score = (candidates & graph_.neighbours(u)).count();
      if (pivot == VertexSet::npos || score > best) {
        pivot = u;
        best = score;
      }
    }
    const VertexSet branch = candidates - graph_.neighbours(pivot);
    for (auto v = branch.find_first(); v != VertexSet::npos; v = branch.find_next(v)) {
      const VertexSet& nv = graph_.neighbours(v);
      clique.set(v);
      if (!expand(clique, candidates & nv, excluded & nv)) return false;
      clique.reset(v);
      candidates.reset(v);
      excluded.set(v);
    }
    return true;
  }

  std::size_t count() const { return count_; }

 private:
  bool emit(const VertexSet& clique) {
    if (++count_ > cap_) {
      throw Error(ErrorKind::CliqueCapExceeded,
                  "maximal clique enumeration exceeded the cap of " + std::to_string(cap_),
                  {static_cast<long long>(cap_)});
    }
    return visit_(clique);
  }

  const ThresholdGraph& graph_;
  const CliqueVisitor& visit_;
  std::size_t cap_;
  std::size_t count_ = 0;
};

// Matula-Beck smallest-last ordering.
std::vector<std::size_t> degeneracy_order(const ThresholdGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<std::size_t> degree(n);
  VertexSet remaining(n);
  remaining.set();
  for (std::size_t v = 0; v < n; ++v) degree[v] = graph.neighbours(v).count();
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = VertexSet::npos;
    for (auto v = remaining.find_first(); v != VertexSet::npos; v = remaining.find_next(v)) {
      if (pick == VertexSet::npos || degree[v] < degree[pick]) pick = v;
    }
    order.push_back(pick);
    remaining.reset(pick);
    const VertexSet nb = graph.neighbours(pick) & remaining;
    for (auto u = nb.find_first(); u != VertexSet::npos; u = nb.find_next(u)) --degree[u];
  }
  return order;
}

}  // namespace

std::size_t enumerate_maximal_cliques(const ThresholdGraph& graph, const CliqueVisitor& visit,
                                      std::size_t cap) {
  const std::size_t n = graph.size();
  BronKerbosch bk(graph, visit, cap);
  if (n == 0) return 0;
  VertexSet later(n);
  later.set();
  VertexSet clique(n);
  for (std::size_t v : degeneracy_order(graph)) {
    later.reset(v);
    const VertexSet& nv = graph.neighbours(v);
    VertexSet earlier = ~later;
    earlier.reset(v);
    clique.set(v);
    if (!bk.expand(clique, later & nv, earlier & nv)) break;
    clique.reset(v);
  }
  return bk.count();
}

std::vector<PointSet> maximal_cliques(const ThresholdGraph& graph, std::size_t cap) {
  std::vector<PointSet> out;
  enumerate_maximal_cliques(
      graph,
      [&](const VertexSet& c) {
        out.push_back(to_point_set(c));
        return true;
      },
      cap);
  return out;
}

}  // namespace stone
