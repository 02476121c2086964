#include <cmath>
#include <map>
#include <queue>

#include "stone/catalog.hpp"
#include "stone/error.hpp"

namespace stone {

RootedTree::RootedTree(std::size_t vertex_count, std::vector<TreeEdge> edges, std::size_t root,
                       std::vector<std::string> labels)
    : root_(root), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (vertex_count == 0) throw Error(ErrorKind::BadTree, "tree has no vertices");
  if (root >= vertex_count) throw Error(ErrorKind::BadTree, "root is not a vertex");
  if (!labels_.empty() && labels_.size() != vertex_count) {
    throw Error(ErrorKind::BadTree, "label count does not match vertex count");
  }
  if (edges_.size() + 1 != vertex_count) {
    throw Error(ErrorKind::BadTree, "a tree on n vertices has n - 1 edges");
  }
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(vertex_count);
  for (const auto& e : edges_) {
    if (e.u >= vertex_count || e.v >= vertex_count || e.u == e.v) {
      throw Error(ErrorKind::BadTree, "edge endpoint out of range or loop");
    }
    if (!std::isfinite(e.length) || !(e.length > 0.0)) {
      throw Error(ErrorKind::BadTree, "edge lengths must be positive and finite");
    }
    adj[e.u].emplace_back(e.v, e.length);
    adj[e.v].emplace_back(e.u, e.length);
  }
  parent_.assign(vertex_count, vertex_count);
  level_.assign(vertex_count, 0);
  depth_.assign(vertex_count, 0.0);
  parent_[root] = root;
  std::queue<std::size_t> queue;
  queue.push(root);
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (const auto& [v, len] : adj[u]) {
      if (parent_[v] != vertex_count) continue;
      parent_[v] = u;
      level_[v] = level_[u] + 1;
      depth_[v] = depth_[u] + len;
      ++reached;
      queue.push(v);
    }
  }
  if (reached != vertex_count) throw Error(ErrorKind::BadTree, "edges do not connect the tree");
  space_ = space_from_tree(vertex_count, edges_);
  if (!labels_.empty()) space_ = validate_space(space_.matrix(), labels_);
}

bool RootedTree::is_ancestor(std::size_t ancestor, std::size_t v) const {
  while (level_[v] > level_[ancestor]) v = parent_[v];
  return v == ancestor;
}

TreePoint last_common_ancestor(const RootedTree& tree, std::span<const PointIndex> subset) {
  if (subset.empty()) throw Error(ErrorKind::BadParams, "empty vertex set");
  std::size_t a = subset.front();
  for (PointIndex b : subset) {
    if (b >= tree.size()) throw Error(ErrorKind::BadParams, "vertex out of range");
    while (!tree.is_ancestor(a, b)) a = tree.parent(a);
  }
  return {a, tree.depth(a)};
}

TreeAnchor snap_to_anchor(const RootedTree& tree, const TreePoint& p, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "n must be >= 1");
  const double scale = static_cast<double>(n);
  const auto m = static_cast<std::int64_t>(std::floor(scale * p.depth));
  if (m <= 0) return {tree.root(), 0};
  std::size_t v = p.vertex;
  while (v != tree.root() &&
         static_cast<std::int64_t>(std::floor(scale * tree.depth(tree.parent(v)))) >= m) {
    v = tree.parent(v);
  }
  return {v, m};
}

TreeCover tree_cover(const RootedTree& tree, double R, std::int64_t n, TreeBoundary boundary) {
  if (!(R > 0.0) || !std::isfinite(R) || n < 1) {
    throw Error(ErrorKind::BadParams, "tree cover needs R > 0 and n >= 1");
  }
  const double scale = static_cast<double>(n);
  const double reach = scale * R + 1.0;
  auto within = [&](double gap) { return boundary == TreeBoundary::Closed ? gap <= reach : gap < reach; };
  auto vertex_label = [&](std::size_t v) {
    return tree.labels().empty() ? std::to_string(v) : tree.labels()[v];
  };

  std::vector<TreeAnchor> anchors{{tree.root(), 0}};
  for (std::size_t c = 0; c < tree.size(); ++c) {
    if (c == tree.root()) continue;
    const auto first = static_cast<std::int64_t>(std::floor(scale * tree.depth(tree.parent(c)))) + 1;
    const auto last = static_cast<std::int64_t>(std::floor(scale * tree.depth(c)));
    for (std::int64_t m = first; m <= last; ++m) anchors.push_back({c, m});
  }

  std::vector<PointSet> members;
  std::vector<std::string> labels;
  std::vector<TreeAnchor> kept;
  for (const auto& anchor : anchors) {
    PointSet member;
    for (std::size_t s = 0; s < tree.size(); ++s) {
      if (!tree.is_ancestor(anchor.vertex, s)) continue;
      if (within(scale * tree.depth(s) - static_cast<double>(anchor.step))) member.push_back(s);
    }
    if (member.empty()) continue;
    members.push_back(std::move(member));
    labels.push_back(vertex_label(anchor.vertex) + "@" + std::to_string(anchor.step));
    kept.push_back(anchor);
  }

  std::map<PointSet, std::size_t> index_of;
  TreeCover out{Cover(tree.space(), members, labels), R, n, {}};
  for (std::size_t k = 0; k < out.cover.size(); ++k) index_of.emplace(out.cover.member(k), k);
  for (std::size_t i = 0; i < kept.size(); ++i) out.anchor_member.emplace(kept[i], index_of.at(members[i]));
  return out;
}

}  // namespace stone
