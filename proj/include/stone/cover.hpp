#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stone/cliques.hpp"
#include "stone/extended.hpp"
#include "stone/metric_space.hpp"

namespace stone {

/// A finite cover of a finite metric space. Members are stored as sorted
/// index sets; duplicate members are collapsed on construction (the first
/// occurrence and its label are kept). Throws NotACover if a member is
/// empty or out of range, or if some point is left uncovered.
class Cover {
 public:
  Cover(FiniteMetricSpace space, std::vector<PointSet> members,
        std::vector<std::string> labels = {});

  const FiniteMetricSpace& space() const { return space_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<PointSet>& members() const { return members_; }
  const PointSet& member(std::size_t k) const { return members_[k]; }
  const VertexSet& member_bits(std::size_t k) const { return bits_[k]; }
  /// Empty when the cover was built without labels.
  const std::vector<std::string>& labels() const { return labels_; }
  /// Indices of the members containing point x, increasing.
  const std::vector<std::size_t>& members_containing(PointIndex x) const {
    return incidence_[x];
  }

  /// Index of a member containing every point of `set`, if any.
  std::optional<std::size_t> find_superset(const VertexSet& set) const;

 private:
  FiniteMetricSpace space_;
  std::vector<PointSet> members_;
  std::vector<VertexSet> bits_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> incidence_;
};

struct CoverMetrics {
  double diameter = 0.0;
  ExtReal lebesgue;
  std::size_t max_multiplicity = 0;
};

/// Max member diameter; 0 for covers by singletons.
double cover_diameter(const Cover& cover);

/// Exact Lebesgue number: the least diameter of a subset contained in no
/// member, +inf when every subset is contained in some member. A subset has
/// diameter <= v iff it is a clique of the d <= v graph, so it suffices to
/// test maximal cliques at each distinct distance; the failure predicate is
/// monotone in v, so the thresholds are bisected.
ExtReal lebesgue_number(const Cover& cover, std::size_t clique_cap = kDefaultCliqueCap);

/// True iff every subset of diameter < R lies in some member, i.e.
/// lebesgue_number(cover) >= R. One clique enumeration.
bool lebesgue_at_least(const Cover& cover, double R, std::size_t clique_cap = kDefaultCliqueCap);

/// Largest number of members containing a single point.
std::size_t max_multiplicity(const Cover& cover);

CoverMetrics cover_metrics(const Cover& cover, std::size_t clique_cap = kDefaultCliqueCap);

/// Cover of `source` by the nonempty preimages f^{-1}(V). Throws NotACover
/// if f is not a total map into the target cover's space.
Cover pullback_cover(std::span<const PointIndex> f, const FiniteMetricSpace& source,
                     const Cover& target_cover);

/// Guarantees a pullback inherits from the target cover through the
/// moduli of f: Lebesgue >= sup{t : omega_f(t) < L(target)} and
/// diameter <= sup{t : rho_f(t) <= diam(target)}.
struct PullbackBounds {
  ExtReal lebesgue_lower;
  double diameter_upper = 0.0;
};
PullbackBounds pullback_bounds(std::span<const PointIndex> f, const FiniteMetricSpace& source,
                               const Cover& target_cover,
                               std::size_t clique_cap = kDefaultCliqueCap);

/// Keeps the members meeting `dense_subset`. Throws NotACover when the
/// retained members no longer cover the space.
Cover prune_cover(const Cover& cover, std::span<const PointIndex> dense_subset);

/// max_x d(x, dense_subset). If the pruned family is a cover, its Lebesgue
/// number is at least L(cover) - density_radius.
double density_radius(const FiniteMetricSpace& space, std::span<const PointIndex> dense_subset);

/// The same members on the point cloud scaled by `factor`. Distances of the
/// scaled space are factor * d, so diameter and Lebesgue number scale by
/// exactly `factor`. Throws NotVectorSpace for spaces without coordinates.
Cover scale_cover(const Cover& cover, double factor);

}  // namespace stone
