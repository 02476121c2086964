#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stone/extended.hpp"

namespace stone {

using PointIndex = std::size_t;
using PointSet = std::vector<PointIndex>;  // sorted, duplicate free

inline constexpr double kDefaultTriangleTolerance = 1e-9;

/// Norm exponent for point-cloud spaces; `infinite` selects the sup norm.
struct LpExponent {
  double p = 2.0;
  bool infinite = false;

  static LpExponent inf() { return {1.0, true}; }
  friend bool operator==(const LpExponent&, const LpExponent&) = default;
};

double lp_distance(std::span<const double> a, std::span<const double> b,
                   LpExponent p);

/// Coordinates a space was generated from, kept so that vector-space
/// operations (scaling) can be applied to it.
struct VectorPoints {
  std::vector<std::vector<double>> coords;
  LpExponent p;
};

/// A validated finite metric space. Immutable; copies share storage.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  std::size_t size() const { return data_ ? data_->labels.size() : 0; }
  double distance(PointIndex i, PointIndex j) const {
    return data_->dist[i * data_->labels.size() + j];
  }
  const std::string& label(PointIndex i) const { return data_->labels[i]; }
  const std::vector<std::string>& labels() const { return data_->labels; }
  const std::optional<VectorPoints>& vector_points() const {
    return data_->points;
  }

  double diameter() const { return data_->diameter; }
  /// Smallest distance between distinct points; +inf for fewer than 2 points.
  ExtReal min_positive_distance() const;
  /// Distinct positive distances in increasing order.
  const std::vector<double>& distinct_distances() const {
    return data_->distinct;
  }
  /// Distance from `x` to the nearest point of `subset` (+inf if empty).
  ExtReal distance_to(PointIndex x, std::span<const PointIndex> subset) const;
  /// Max pairwise distance inside `subset`; 0 for fewer than 2 points.
  double set_diameter(std::span<const PointIndex> subset) const;

  std::vector<std::vector<double>> matrix() const;

 private:
  struct Data {
    std::vector<std::string> labels;
    std::vector<double> dist;
    std::vector<double> distinct;
    double diameter = 0.0;
    std::optional<VectorPoints> points;
  };
  std::shared_ptr<const Data> data_;

  friend FiniteMetricSpace validate_space(
      const std::vector<std::vector<double>>&, std::vector<std::string>,
      double, std::optional<VectorPoints>);
};

/// Validates a distance matrix. Throws stone::Error with kind
/// MalformedMatrix, AsymmetricMatrix, NegativeDistance, CoincidentPoints or
/// TriangleViolation; a triangle failure reports (i, j, k) with
/// d(i,k) > d(i,j) + d(j,k). Labels default to "0", "1", ...
FiniteMetricSpace validate_space(
    const std::vector<std::vector<double>>& matrix,
    std::vector<std::string> labels = {},
    double triangle_tolerance = kDefaultTriangleTolerance,
    std::optional<VectorPoints> points = std::nullopt);

// ---------------------------------------------------------------------------
// Generators

struct TreeEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double length = 0.0;
};

FiniteMetricSpace space_from_points(std::vector<std::vector<double>> points,
                                    LpExponent p);
/// Shortest-path metric of a weighted tree on vertices 0..vertex_count-1.
FiniteMetricSpace space_from_tree(std::size_t vertex_count,
                                  const std::vector<TreeEdge>& edges);

enum class GeneratorKind { RandomInteger, LpPointCloud, WeightedTree, LpBallGrid };

struct GeneratorParams {
  std::size_t n = 8;          // points (vertices for trees)
  std::size_t dim = 2;        // point clouds and grids
  LpExponent p;               // point clouds and grids
  int max_weight = 10;        // random-integer: edge weights in [1, max_weight]
  double extent = 10.0;       // point clouds: coordinates in [0, extent)
  double min_length = 0.5;    // trees: edge lengths in [min_length, max_length)
  double max_length = 2.0;
  double radius = 2.0;        // grids: ball radius
  double step = 1.0;          // grids: lattice spacing
};

/// Deterministic random spaces: the same kind, params and seed always yield
/// the same space. Random-integer spaces are the shortest-path closure of a
/// complete graph with integer weights, so every distance is an integer.
FiniteMetricSpace generate_space(GeneratorKind kind, const GeneratorParams& params,
                                 std::uint64_t seed);

/// Edges of the random tree behind GeneratorKind::WeightedTree: vertex v > 0
/// hangs off a uniformly chosen earlier vertex.
std::vector<TreeEdge> random_tree_edges(const GeneratorParams& params, std::uint64_t seed);

std::optional<GeneratorKind> parse_generator_kind(const std::string& name);

// ---------------------------------------------------------------------------
// Balls, skeletons, moduli of maps

/// Open ball {y : d(center, y) < r}.
PointSet ball(const FiniteMetricSpace& space, PointIndex center, double r);

/// Greedy maximal a-separated set in index order; it is also a-dense.
PointSet greedy_skeleton(const FiniteMetricSpace& space, double a);

/// Maps each point to a nearest skeleton point, lowest index on ties.
std::vector<PointIndex> nearest_point_reduction(const FiniteMetricSpace& space,
                                                std::span<const PointIndex> skeleton);

/// Modulus of continuity and of compression of a map between finite spaces,
/// stored as step functions over the distinct source distances.
class MapModuli {
 public:
  MapModuli(const FiniteMetricSpace& source, const FiniteMetricSpace& target,
            std::span<const PointIndex> f);

  /// sup { d_Y(f x, f y) : d_X(x, y) <= t }
  double omega(double t) const;
  /// inf { d_Y(f x, f y) : d_X(x, y) >= t }, +inf past the diameter.
  ExtReal rho(double t) const;

  /// sup { t : omega(t) < level }
  ExtReal sup_omega_below(ExtReal level) const;
  /// sup { t : rho(t) <= level }
  double sup_rho_at_most(double level) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  std::vector<double> breakpoints_;     // distinct positive source distances
  std::vector<double> omega_at_;        // omega at each breakpoint
  std::vector<double> rho_at_;          // rho at each breakpoint
};

}  // namespace stone
