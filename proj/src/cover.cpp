#include "stone/cover.hpp"

#include <algorithm>
#include <map>

#include "stone/error.hpp"

namespace stone {

Cover::Cover(FiniteMetricSpace space, std::vector<PointSet> members,
             std::vector<std::string> labels)
    : space_(std::move(space)) {
  const std::size_t n = space_.size();
  if (!labels.empty() && labels.size() != members.size()) {
    throw Error(ErrorKind::NotACover, "member label count does not match member count");
  }
  std::map<PointSet, std::size_t> seen;
  for (std::size_t k = 0; k < members.size(); ++k) {
    PointSet m = std::move(members[k]);
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (m.empty()) {
      throw Error(ErrorKind::NotACover, "cover member is empty", {static_cast<long long>(k)});
    }
    if (m.back() >= n) {
      throw Error(ErrorKind::NotACover, "cover member references a point outside the space",
                  {static_cast<long long>(k)});
    }
    if (seen.contains(m)) continue;
    seen.emplace(m, members_.size());
    if (!labels.empty()) labels_.push_back(std::move(labels[k]));
    members_.push_back(std::move(m));
  }
  incidence_.resize(n);
  bits_.reserve(members_.size());
  for (std::size_t k = 0; k < members_.size(); ++k) {
    VertexSet bits(n);
    for (PointIndex x : members_[k]) {
      bits.set(x);
      incidence_[x].push_back(k);
    }
    bits_.push_back(std::move(bits));
  }
  for (PointIndex x = 0; x < n; ++x) {
    if (incidence_[x].empty()) {
      throw Error(ErrorKind::NotACover, "point " + std::to_string(x) + " is not covered",
                  {static_cast<long long>(x)});
    }
  }
}

std::optional<std::size_t> Cover::find_superset(const VertexSet& set) const {
  const auto first = set.find_first();
  if (first == VertexSet::npos) return members_.empty() ? std::nullopt : std::optional<std::size_t>(0);
  for (std::size_t k : incidence_[first]) {
    if (set.is_subset_of(bits_[k])) return k;
  }
  return std::nullopt;
}

double cover_diameter(const Cover& cover) {
  double diam = 0.0;
  for (const auto& m : cover.members()) diam = std::max(diam, cover.space().set_diameter(m));
  return diam;
}

namespace {

// True iff some maximal clique of the d <= v graph lies in no member.
bool has_uncovered_clique(const Cover& cover, double v, std::size_t cap) {
  bool uncovered = false;
  enumerate_maximal_cliques(
      ThresholdGraph(cover.space(), v, Threshold::AtMost),
      [&](const VertexSet& clique) {
        if (!cover.find_superset(clique)) {
          uncovered = true;
          return false;
        }
        return true;
      },
      cap);
  return uncovered;
}

}  // namespace

ExtReal lebesgue_number(const Cover& cover, std::size_t clique_cap) {
  const auto& v = cover.space().distinct_distances();
  if (v.empty() || !has_uncovered_clique(cover, v.back(), clique_cap)) {
    return ExtReal::infinity();
  }
  // Invariant: threshold v[hi] fails; thresholds below lo all pass.
  std::size_t lo = 0;
  std::size_t hi = v.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (has_uncovered_clique(cover, v[mid], clique_cap)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return v[hi];
}

bool lebesgue_at_least(const Cover& cover, double R, std::size_t clique_cap) {
  bool ok = true;
  enumerate_maximal_cliques(
      ThresholdGraph(cover.space(), R, Threshold::Below),
      [&](const VertexSet& clique) {
        if (!cover.find_superset(clique)) {
          ok = false;
          return false;
        }
        return true;
      },
      clique_cap);
  return ok;
}

std::size_t max_multiplicity(const Cover& cover) {
  std::size_t best = 0;
  for (PointIndex x = 0; x < cover.space().size(); ++x) {
    best = std::max(best, cover.members_containing(x).size());
  }
  return best;
}

CoverMetrics cover_metrics(const Cover& cover, std::size_t clique_cap) {
  return {cover_diameter(cover), lebesgue_number(cover, clique_cap), max_multiplicity(cover)};
}

Cover pullback_cover(std::span<const PointIndex> f, const FiniteMetricSpace& source,
                     const Cover& target_cover) {
  if (f.size() != source.size()) {
    throw Error(ErrorKind::NotACover, "map is not total on the source space");
  }
  const std::size_t m = target_cover.space().size();
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f[x] >= m) {
      throw Error(ErrorKind::NotACover, "map sends a point outside the target space",
                  {static_cast<long long>(x)});
    }
  }
  std::vector<PointSet> members;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < target_cover.size(); ++k) {
    PointSet pre;
    for (PointIndex x = 0; x < f.size(); ++x) {
      if (target_cover.member_bits(k).test(f[x])) pre.push_back(x);
    }
    if (pre.empty()) continue;
    members.push_back(std::move(pre));
    labels.push_back(target_cover.labels().empty() ? std::to_string(k) : target_cover.labels()[k]);
  }
  return Cover(source, std::move(members), std::move(labels));
}

PullbackBounds pullback_bounds(std::span<const PointIndex> f, const FiniteMetricSpace& source,
                               const Cover& target_cover, std::size_t clique_cap) {
  const MapModuli moduli(source, target_cover.space(), f);
  return {moduli.sup_omega_below(lebesgue_number(target_cover, clique_cap)),
          moduli.sup_rho_at_most(cover_diameter(target_cover))};
}

Cover prune_cover(const Cover& cover, std::span<const PointIndex> dense_subset) {
  if (dense_subset.empty()) throw Error(ErrorKind::BadParams, "dense subset is empty");
  VertexSet dense(cover.space().size());
  for (PointIndex x : dense_subset) {
    if (x >= cover.space().size()) throw Error(ErrorKind::BadParams, "dense point out of range");
    dense.set(x);
  }
  std::vector<PointSet> kept;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < cover.size(); ++k) {
    if (!cover.member_bits(k).intersects(dense)) continue;
    kept.push_back(cover.member(k));
    if (!cover.labels().empty()) labels.push_back(cover.labels()[k]);
  }
  return Cover(cover.space(), std::move(kept), std::move(labels));
}

double density_radius(const FiniteMetricSpace& space, std::span<const PointIndex> dense_subset) {
  double b = 0.0;
  for (PointIndex x = 0; x < space.size(); ++x) {
    b = std::max(b, space.distance_to(x, dense_subset).value());
  }
  return b;
}

Cover scale_cover(const Cover& cover, double factor) {
  const auto& source = cover.space();
  if (!source.vector_points()) {
    throw Error(ErrorKind::NotVectorSpace, "cover is not over a point cloud");
  }
  if (!(factor > 0.0)) throw Error(ErrorKind::BadParams, "scale factor must be positive");
  VectorPoints scaled = *source.vector_points();
  for (auto& pt : scaled.coords) {
    for (auto& c : pt) c *= factor;
  }
  auto matrix = source.matrix();
  for (auto& row : matrix) {
    for (auto& d : row) d *= factor;
  }
  auto space = validate_space(matrix, source.labels(), kDefaultTriangleTolerance, std::move(scaled));
  return Cover(std::move(space), cover.members(), cover.labels());
}

}  // namespace stone
