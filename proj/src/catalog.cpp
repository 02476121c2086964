#include "stone/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stone/error.hpp"

namespace stone {

Cover clique_cover(const FiniteMetricSpace& space, double R, std::size_t clique_cap) {
  if (!(R > 0.0)) throw Error(ErrorKind::BadParams, "clique cover needs R > 0");
  return Cover(space, maximal_cliques(ThresholdGraph(space, R, Threshold::Below), clique_cap));
}

std::vector<PointIndex> natural_order(const FiniteMetricSpace& space) {
  std::vector<PointIndex> order(space.size());
  for (PointIndex i = 0; i < order.size(); ++i) order[i] = i;
  return order;
}

SeparableCover greedy_separable_cover(const FiniteMetricSpace& space, double r, double eps,
                                      std::span<const PointIndex> enumeration) {
  if (!(eps > 0.0) || !(eps < r / 2.0)) {
    throw Error(ErrorKind::BadParams, "greedy cover needs 0 < eps < r/2");
  }
  const std::size_t n = space.size();
  if (enumeration.size() != n) {
    throw Error(ErrorKind::BadParams, "enumeration must list every point once");
  }
  std::vector<bool> seen(n, false);
  for (PointIndex x : enumeration) {
    if (x >= n || seen[x]) throw Error(ErrorKind::BadParams, "enumeration is not a permutation");
    seen[x] = true;
  }
  // claimed[y]: y lies in the eps-ball of an earlier centre.
  std::vector<bool> claimed(n, false);
  std::vector<PointSet> members;
  std::vector<std::string> labels;
  std::vector<std::size_t> positions;
  for (std::size_t j = 0; j < n; ++j) {
    const PointIndex centre = enumeration[j];
    PointSet member;
    for (PointIndex y = 0; y < n; ++y) {
      if (!claimed[y] && space.distance(centre, y) < r / 2.0) member.push_back(y);
    }
    for (PointIndex y = 0; y < n; ++y) {
      if (space.distance(centre, y) < eps) claimed[y] = true;
    }
    if (member.empty()) continue;
    members.push_back(std::move(member));
    labels.push_back(std::to_string(j));
    positions.push_back(j);
  }
  Cover cover(space, members, labels);
  // Collapsing duplicates keeps first occurrences, so positions follow labels.
  std::vector<std::size_t> kept;
  kept.reserve(cover.size());
  for (const auto& label : cover.labels()) kept.push_back(std::stoul(label));
  return {std::move(cover), std::move(kept)};
}

// ---------------------------------------------------------------------------

LinfGridCover::LinfGridCover(std::size_t dimension, std::int64_t n) : dimension_(dimension), n_(n) {
  if (dimension == 0 || n < 1) throw Error(ErrorKind::BadParams, "grid cover needs N >= 1, n >= 1");
}

bool LinfGridCover::contains(std::span<const double> f, std::span<const std::int64_t> x) const {
  if (f.size() != dimension_ || x.size() != dimension_) {
    throw Error(ErrorKind::BadParams, "dimension mismatch");
  }
  const double n = static_cast<double>(n_);
  for (std::size_t j = 0; j < dimension_; ++j) {
    // f(j) - x_j/n in (-1, 1 + 1/n), scaled by n.
    const double s = n * f[j] - static_cast<double>(x[j]);
    if (!(s > -n && s < n + 1.0)) return false;
  }
  return true;
}

std::vector<std::int64_t> LinfGridCover::locate(std::span<const double> f) const {
  if (f.size() != dimension_) throw Error(ErrorKind::BadParams, "dimension mismatch");
  std::vector<std::int64_t> x(dimension_);
  for (std::size_t j = 0; j < dimension_; ++j) {
    x[j] = static_cast<std::int64_t>(std::floor(static_cast<double>(n_) * f[j]));
  }
  return x;
}

std::vector<std::int64_t> LinfGridCover::locate_set(
    const std::vector<std::vector<double>>& points) const {
  if (points.empty()) throw Error(ErrorKind::BadParams, "empty point set");
  std::vector<double> centre(dimension_);
  for (std::size_t j = 0; j < dimension_; ++j) {
    double lo = points.front().at(j);
    double hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p.at(j));
      hi = std::max(hi, p.at(j));
    }
    centre[j] = (hi + lo) / 2.0;
  }
  return locate(centre);
}

std::vector<std::int64_t> LinfGridCover::axis_candidates(double coordinate) const {
  const double n = static_cast<double>(n_);
  const auto lo = static_cast<std::int64_t>(std::floor(n * coordinate - n - 1.0)) - 1;
  const auto hi = static_cast<std::int64_t>(std::ceil(n * coordinate + n)) + 1;
  std::vector<std::int64_t> out;
  for (std::int64_t x = lo; x <= hi; ++x) {
    const double s = n * coordinate - static_cast<double>(x);
    if (s > -n && s < n + 1.0) out.push_back(x);
  }
  return out;
}

std::vector<std::vector<std::int64_t>> LinfGridCover::containing(std::span<const double> f) const {
  if (f.size() != dimension_) throw Error(ErrorKind::BadParams, "dimension mismatch");
  std::vector<std::vector<std::int64_t>> result{{}};
  for (std::size_t j = 0; j < dimension_; ++j) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& prefix : result) {
      for (std::int64_t c : axis_candidates(f[j])) {
        next.push_back(prefix);
        next.back().push_back(c);
      }
    }
    result = std::move(next);
  }
  return result;
}

std::uint64_t LinfGridCover::multiplicity_bound() const {
  std::uint64_t bound = 1;
  for (std::size_t j = 0; j < dimension_; ++j) bound *= static_cast<std::uint64_t>(2 * n_ + 1);
  return bound;
}

double LinfGridCover::member_diameter() const { return 2.0 + 1.0 / static_cast<double>(n_); }

// ---------------------------------------------------------------------------

std::int64_t GridCellIndex::offset(CoordinateId id) const {
  const auto it = offsets.find(id);
  return it == offsets.end() ? 0 : it->second;
}

GridCellIndex GridCellIndex::canonical() const {
  GridCellIndex out;
  for (const auto& [id, x] : offsets) {
    if (x != 0) out.offsets.emplace(id, x);
  }
  return out;
}

C0PlusGridCover::C0PlusGridCover(double R, std::int64_t n) : R_(R), n_(n) {
  if (!(R >= 0.0) || n < 1) throw Error(ErrorKind::BadParams, "c0+ grid needs R >= 0, n >= 1");
}

bool C0PlusGridCover::contains(const SparseNonnegativeSequence& f, const GridCellIndex& cell) const {
  const double n = static_cast<double>(n_);
  const double width = 2.0 * R_ * n + 1.0;
  // f(xi) - x_xi/n in [0, 2R + 1/n), scaled by n.
  auto ok = [&](double value, std::int64_t x) {
    const double s = n * value - static_cast<double>(x);
    return s >= 0.0 && s < width;
  };
  for (const auto& [id, x] : cell.offsets) {
    if (x < 0 || !ok(f.get(id), x)) return false;
  }
  for (const auto& [id, v] : f.entries()) {
    if (!cell.offsets.contains(id) && !ok(v, 0)) return false;
  }
  return true;
}

std::vector<CoordinateId> C0PlusGridCover::essential_support(const SparseNonnegativeSequence& f) const {
  std::vector<CoordinateId> out;
  for (const auto& [id, v] : f.entries()) {
    if (static_cast<double>(n_) * v >= 1.0) out.push_back(id);
  }
  return out;
}

GridCellIndex C0PlusGridCover::locate(const SparseNonnegativeSequence& f) const {
  GridCellIndex cell;
  const double n = static_cast<double>(n_);
  for (CoordinateId id : essential_support(f)) {
    const double raw = std::floor(n * (f.get(id) - R_));
    cell.offsets.emplace(id, raw > 0.0 ? static_cast<std::int64_t>(raw) : 0);
  }
  return cell;
}

GridCellIndex C0PlusGridCover::locate_set(const std::vector<SparseNonnegativeSequence>& points) const {
  if (points.empty()) throw Error(ErrorKind::BadParams, "empty point set");
  std::set<CoordinateId> ids;
  for (const auto& p : points) {
    for (const auto& [id, v] : p.entries()) ids.insert(id);
  }
  SparseNonnegativeSequence centre;
  for (CoordinateId id : ids) {
    double lo = points.front().get(id);
    double hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p.get(id));
      hi = std::max(hi, p.get(id));
    }
    centre.set(id, (hi + lo) / 2.0);
  }
  return locate(centre);
}

std::vector<GridCellIndex> C0PlusGridCover::containing(const SparseNonnegativeSequence& f) const {
  const double n = static_cast<double>(n_);
  const double width = 2.0 * R_ * n + 1.0;
  // Coordinates outside the essential support only admit offset 0, which
  // needs f(xi) < 2R + 1/n; that always holds there since f(xi) < 1/n.
  std::vector<GridCellIndex> result{GridCellIndex{}};
  for (CoordinateId id : essential_support(f)) {
    const double s = n * f.get(id);
    std::vector<std::int64_t> choices;
    const auto lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(s - width)) - 1);
    const auto hi = static_cast<std::int64_t>(std::floor(s)) + 1;
    for (std::int64_t x = lo; x <= hi; ++x) {
      const double rest = s - static_cast<double>(x);
      if (rest >= 0.0 && rest < width) choices.push_back(x);
    }
    std::vector<GridCellIndex> next;
    for (const auto& cell : result) {
      for (std::int64_t x : choices) {
        GridCellIndex c = cell;
        if (x != 0) c.offsets.emplace(id, x);
        next.push_back(std::move(c));
      }
    }
    result = std::move(next);
  }
  return result;
}

double C0PlusGridCover::multiplicity_bound(std::size_t support_size) const {
  const double per_axis = 2.0 * static_cast<double>(n_) * std::ceil(R_) + 1.0;
  return std::pow(per_axis, static_cast<double>(support_size));
}

double C0PlusGridCover::member_diameter_bound() const {
  return 2.0 * R_ + 1.0 / static_cast<double>(n_);
}

// ---------------------------------------------------------------------------

WitnessReport c0_lower_bound_witness(std::size_t support_size, double R, double D0, double eta) {
  WitnessReport rep;
  rep.support_size = support_size;
  rep.R = R;
  rep.D0 = D0;
  rep.eta = eta;
  rep.lower = D0 / 8.0 - R / 4.0;
  rep.upper = D0 / 4.0 + R / 2.0;
  if (!(D0 > 0.0) || !(D0 < 2.0 * R)) throw Error(ErrorKind::BadParams, "need 0 < D0 < 2R");
  if (!(eta > 0.0) || !(eta < rep.upper)) throw Error(ErrorKind::BadParams, "need 0 < eta < D0/4 + R/2");
  if (support_size == 0 || support_size > 20) {
    throw Error(ErrorKind::BadParams, "support size must lie in [1, 20]");
  }
  rep.eta_threshold = R / 2.0 - D0 / 4.0;

  const std::size_t count = std::size_t{1} << support_size;
  for (std::size_t pattern = 0; pattern < count; ++pattern) {
    WitnessFamily fam;
    SignedSparseSequence low;
    SignedSparseSequence high;
    for (std::size_t t = 0; t < support_size; ++t) {
      const int sign = (pattern >> t & 1U) ? -1 : 1;
      fam.signs.push_back(sign);
      const CoordinateId id{0, static_cast<std::int64_t>(t)};
      low.set(id, sign * (rep.lower + eta));
      high.set(id, sign * (rep.upper - eta));
    }
    fam.elements = {SignedSparseSequence{}, low, high};
    fam.contains_zero = rep.lower < 0.0 && 0.0 < rep.upper;
    fam.interval_diameter = rep.upper - rep.lower;
    for (const auto& a : fam.elements) {
      for (const auto& b : fam.elements) {
        fam.element_diameter = std::max(fam.element_diameter, sup_distance(a, b));
      }
    }
    rep.max_family_diameter = std::max(rep.max_family_diameter, fam.interval_diameter);
    rep.families.push_back(std::move(fam));
  }
  rep.min_cross_union_diameter = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < rep.families.size(); ++a) {
    for (std::size_t b = a + 1; b < rep.families.size(); ++b) {
      double diam = 0.0;
      for (const auto& u : rep.families[a].elements) {
        for (const auto& v : rep.families[b].elements) diam = std::max(diam, sup_distance(u, v));
      }
      rep.min_cross_union_diameter = std::min(rep.min_cross_union_diameter, diam);
    }
  }
  if (rep.families.size() < 2) rep.min_cross_union_diameter = 0.0;
  rep.families_below_R = rep.max_family_diameter < R;
  rep.unions_above_D0 = rep.families.size() < 2 || rep.min_cross_union_diameter > D0;
  return rep;
}

}  // namespace stone
