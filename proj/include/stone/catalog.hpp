#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stone/cliques.hpp"
#include "stone/cover.hpp"
#include "stone/metric_space.hpp"
#include "stone/sparse.hpp"

namespace stone {

// ---------------------------------------------------------------------------
// Finite covers

/// Maximal cliques of the d < R graph: every set of diameter < R lies in a
/// member, and every member has diameter < R.
Cover clique_cover(const FiniteMetricSpace& space, double R,
                   std::size_t clique_cap = kDefaultCliqueCap);

struct SeparableCover {
  Cover cover;
  /// For each member, the enumeration position j of its centre x_j.
  std::vector<std::size_t> positions;
};

/// U_j = B_{r/2}(x_j) minus the eps-balls around x_1..x_{j-1}, for the
/// points x_j taken in `enumeration` order; empty U_j are dropped.
/// Diameter <= r, Lebesgue number >= r/2 - eps, and x lies only in U_j with
/// j <= min{k : d(x, x_k) < eps}. Throws BadParams unless 0 < eps < r/2 and
/// `enumeration` is a permutation of the points.
SeparableCover greedy_separable_cover(const FiniteMetricSpace& space, double r, double eps,
                                      std::span<const PointIndex> enumeration);

/// Identity enumeration 0, 1, ..., n-1.
std::vector<PointIndex> natural_order(const FiniteMetricSpace& space);

// ---------------------------------------------------------------------------
// Parametric covers of infinite ambient spaces

/// Cover of l_inf^N by the translated cubes
///   U_x = { f : f(j) in x_j/n + (-1, 1 + 1/n) for all j },  x in Z^N.
class LinfGridCover {
 public:
  LinfGridCover(std::size_t dimension, std::int64_t n);

  std::size_t dimension() const { return dimension_; }
  std::int64_t n() const { return n_; }

  bool contains(std::span<const double> f, std::span<const std::int64_t> x) const;
  /// An index x with B_1(f) inside U_x.
  std::vector<std::int64_t> locate(std::span<const double> f) const;
  /// For a finite set of diameter < 2: locate() at the coordinatewise
  /// midpoint (sup + inf)/2, whose unit ball holds the whole set.
  std::vector<std::int64_t> locate_set(const std::vector<std::vector<double>>& points) const;
  /// Every x with f in U_x, in lexicographic order.
  std::vector<std::vector<std::int64_t>> containing(std::span<const double> f) const;

  /// (2n + 1)^N
  std::uint64_t multiplicity_bound() const;
  /// 2 + 1/n
  double member_diameter() const;

 private:
  std::vector<std::int64_t> axis_candidates(double coordinate) const;

  std::size_t dimension_;
  std::int64_t n_;
};

/// Index of a cell of the c0+ grid: a finite support M and nonnegative
/// offsets on it. Offsets outside M are zero.
struct GridCellIndex {
  std::map<CoordinateId, std::int64_t> offsets;

  std::int64_t offset(CoordinateId id) const;
  /// Same cell with zero offsets dropped; equal cells have equal canonical forms.
  GridCellIndex canonical() const;
  friend bool operator==(const GridCellIndex&, const GridCellIndex&) = default;
  friend auto operator<=>(const GridCellIndex&, const GridCellIndex&) = default;
};

/// Cover of the positive cone of c0 by the cells
///   U_{M,x} = { f : f(xi) in x_xi/n + [0, 2R + 1/n) for every xi }.
class C0PlusGridCover {
 public:
  C0PlusGridCover(double R, std::int64_t n);

  double R() const { return R_; }
  std::int64_t n() const { return n_; }

  bool contains(const SparseNonnegativeSequence& f, const GridCellIndex& cell) const;
  /// M = {xi : f(xi) >= 1/n}, x_xi = max(0, floor(n (f(xi) - R))); the ball
  /// B_R(f) lies in the returned cell. The floor is clamped at zero since
  /// offsets are nonnegative and so are the coordinates of the cone.
  GridCellIndex locate(const SparseNonnegativeSequence& f) const;
  /// locate() at the coordinatewise midpoint (sup + inf)/2 of a finite set.
  GridCellIndex locate_set(const std::vector<SparseNonnegativeSequence>& points) const;
  /// Support {xi : f(xi) >= 1/n}; any cell holding f has canonical support inside it.
  std::vector<CoordinateId> essential_support(const SparseNonnegativeSequence& f) const;
  /// All canonical cells containing f.
  std::vector<GridCellIndex> containing(const SparseNonnegativeSequence& f) const;

  /// (2n ceil(R) + 1)^|M|
  double multiplicity_bound(std::size_t support_size) const;
  /// 2R + 1/n
  double member_diameter_bound() const;

 private:
  double R_;
  std::int64_t n_;
};

// ---------------------------------------------------------------------------
// Rooted trees

/// Finite rooted tree with positive edge lengths. Throws BadTree unless the
/// edges form a spanning tree and the root is a vertex.
class RootedTree {
 public:
  RootedTree(std::size_t vertex_count, std::vector<TreeEdge> edges, std::size_t root,
             std::vector<std::string> labels = {});

  std::size_t size() const { return parent_.size(); }
  std::size_t root() const { return root_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Parent vertex; the root is its own parent.
  std::size_t parent(std::size_t v) const { return parent_[v]; }
  double depth(std::size_t v) const { return depth_[v]; }
  /// Whether `ancestor` lies on the path from the root to `v` (inclusive).
  bool is_ancestor(std::size_t ancestor, std::size_t v) const;
  /// Shortest-path metric on the vertices.
  const FiniteMetricSpace& space() const { return space_; }

 private:
  std::size_t root_;
  std::vector<TreeEdge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> level_;
  std::vector<double> depth_;
  FiniteMetricSpace space_;
};

/// A point of the tree given by its depth on the path from the root to
/// `vertex`, with `vertex` the lowest vertex whose parent edge holds it.
struct TreePoint {
  std::size_t vertex = 0;
  double depth = 0.0;
};

/// Last common ancestor of a nonempty vertex set (always a vertex here).
TreePoint last_common_ancestor(const RootedTree& tree, std::span<const PointIndex> subset);

/// Anchor point at depth step/n on the parent edge of `vertex`; the root
/// anchor is (root, 0).
struct TreeAnchor {
  std::size_t vertex = 0;
  std::int64_t step = 0;
  friend auto operator<=>(const TreeAnchor&, const TreeAnchor&) = default;
};

/// Radius test for membership in U_t. HalfOpen uses d(t, s) < R + 1/n,
/// which keeps the multiplicity at most n ceil(R) + 1; Closed is the
/// literal d(t, s) <= R + 1/n and admits one extra anchor when n depth(s)
/// and n R are both integers.
enum class TreeBoundary { HalfOpen, Closed };

struct TreeCover {
  Cover cover;
  double R = 0.0;
  std::int64_t n = 1;
  /// Member index of each anchor with a nonempty member.
  std::map<TreeAnchor, std::size_t> anchor_member;
};

/// U_t = {s : t between root and s, d(t, s) within R + 1/n} for anchors t
/// at depths m/n. Lebesgue number >= R, diameter <= 2(R + 1/n).
TreeCover tree_cover(const RootedTree& tree, double R, std::int64_t n,
                     TreeBoundary boundary = TreeBoundary::HalfOpen);

/// The anchor at depth floor(n depth(p))/n on the root path of p.
TreeAnchor snap_to_anchor(const RootedTree& tree, const TreePoint& p, std::int64_t n);

// ---------------------------------------------------------------------------
// Lower-bound witnesses for c0

struct WitnessFamily {
  std::vector<int> signs;                        // +1 / -1 per coordinate
  std::vector<SignedSparseSequence> elements;    // 0, low and high extremes
  double interval_diameter = 0.0;                // sup-norm diameter of the whole box
  double element_diameter = 0.0;                 // diameter of the emitted elements
  bool contains_zero = false;
};

struct WitnessReport {
  std::size_t support_size = 0;
  double R = 0.0;
  double D0 = 0.0;
  double eta = 0.0;
  double lower = 0.0;            // D0/8 - R/4
  double upper = 0.0;            // D0/4 + R/2
  double eta_threshold = 0.0;    // unions exceed D0 iff eta < R/2 - D0/4
  std::vector<WitnessFamily> families;
  double max_family_diameter = 0.0;
  double min_cross_union_diameter = 0.0;
  bool families_below_R = false;
  bool unions_above_D0 = false;
};

/// The boxes {sum C_t e_t : eps_t C_t in (D0/8 - R/4, D0/4 + R/2)} for all
/// sign patterns eps on |M| coordinates, represented by 0 and the extreme
/// elements pulled inside by eta. Throws BadParams unless 0 < D0 < 2R and
/// 0 < eta < D0/4 + R/2.
WitnessReport c0_lower_bound_witness(std::size_t support_size, double R, double D0, double eta);

}  // namespace stone
