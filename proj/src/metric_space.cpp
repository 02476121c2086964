#include "stone/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stone/error.hpp"

namespace stone {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedMatrix: return "MalformedMatrix";
    case ErrorKind::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorKind::NegativeDistance: return "NegativeDistance";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::NotACover: return "NotACover";
    case ErrorKind::NotVectorSpace: return "NotVectorSpace";
    case ErrorKind::CliqueCapExceeded: return "CliqueCapExceeded";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadTree: return "BadTree";
    case ErrorKind::UncertifiableScale: return "UncertifiableScale";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IO: return "IO";
  }
  return "Unknown";
}

double lp_distance(std::span<const double> a, std::span<const double> b,
                   LpExponent p) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::BadParams, "points of different dimension");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = std::abs(a[k] - b[k]);
    if (p.infinite) {
      acc = std::max(acc, diff);
    } else if (p.p == 1.0) {
      acc += diff;
    } else {
      acc += std::pow(diff, p.p);
    }
  }
  if (p.infinite || p.p == 1.0) return acc;
  return std::pow(acc, 1.0 / p.p);
}

ExtReal FiniteMetricSpace::min_positive_distance() const {
  if (size() < 2) return ExtReal::infinity();
  return data_->distinct.front();
}

ExtReal FiniteMetricSpace::distance_to(PointIndex x,
                                       std::span<const PointIndex> subset) const {
  if (subset.empty()) return ExtReal::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (PointIndex s : subset) best = std::min(best, distance(x, s));
  return best;
}

double FiniteMetricSpace::set_diameter(std::span<const PointIndex> subset) const {
  double diam = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      diam = std::max(diam, distance(subset[a], subset[b]));
    }
  }
  return diam;
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  const std::size_t n = size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = distance(i, j);
  }
  return m;
}

FiniteMetricSpace validate_space(const std::vector<std::vector<double>>& matrix,
                                 std::vector<std::string> labels,
                                 double triangle_tolerance,
                                 std::optional<VectorPoints> points) {
  const std::size_t n = matrix.size();
  if (n == 0) throw Error(ErrorKind::MalformedMatrix, "empty distance matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw Error(ErrorKind::MalformedMatrix, "distance matrix is not square",
                  {static_cast<long long>(i)});
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(matrix[i][j])) {
        throw Error(ErrorKind::MalformedMatrix, "non-finite distance",
                    {static_cast<long long>(i), static_cast<long long>(j)});
      }
    }
  }
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  } else if (labels.size() != n) {
    throw Error(ErrorKind::MalformedMatrix, "label count does not match matrix size");
  }

  auto wit = [](std::size_t a, std::size_t b) {
    return std::vector<long long>{static_cast<long long>(a), static_cast<long long>(b)};
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i][i] != 0.0) {
      throw Error(ErrorKind::MalformedMatrix, "nonzero diagonal entry", wit(i, i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j] < 0.0) {
        throw Error(ErrorKind::NegativeDistance, "negative distance", wit(i, j));
      }
      if (matrix[i][j] != matrix[j][i]) {
        throw Error(ErrorKind::AsymmetricMatrix, "matrix is not symmetric", wit(i, j));
      }
      if (i != j && matrix[i][j] == 0.0) {
        throw Error(ErrorKind::CoincidentPoints, "distinct points at distance 0",
                    wit(i, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double via = matrix[i][j] + matrix[j][k];
        const double scale = std::max(matrix[i][k], via);
        if (matrix[i][k] > via + triangle_tolerance * scale) {
          std::ostringstream msg;
          msg << "triangle inequality fails: d(" << i << "," << k << ")="
              << matrix[i][k] << " > d(" << i << "," << j << ")+d(" << j << ","
              << k << ")=" << via;
          throw Error(ErrorKind::TriangleViolation, msg.str(),
                      {static_cast<long long>(i), static_cast<long long>(j),
                       static_cast<long long>(k)});
        }
      }
    }
  }

  auto data = std::make_shared<FiniteMetricSpace::Data>();
  data->labels = std::move(labels);
  data->dist.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      data->dist[i * n + j] = matrix[i][j];
      if (i < j) data->distinct.push_back(matrix[i][j]);
    }
  }
  std::sort(data->distinct.begin(), data->distinct.end());
  data->distinct.erase(std::unique(data->distinct.begin(), data->distinct.end()),
                       data->distinct.end());
  data->diameter = data->distinct.empty() ? 0.0 : data->distinct.back();
  data->points = std::move(points);

  FiniteMetricSpace space;
  space.data_ = std::move(data);
  return space;
}

PointSet ball(const FiniteMetricSpace& space, PointIndex center, double r) {
  PointSet out;
  for (PointIndex y = 0; y < space.size(); ++y) {
    if (space.distance(center, y) < r) out.push_back(y);
  }
  return out;
}

PointSet greedy_skeleton(const FiniteMetricSpace& space, double a) {
  if (!(a > 0.0)) throw Error(ErrorKind::BadParams, "skeleton radius must be positive");
  PointSet skeleton;
  for (PointIndex x = 0; x < space.size(); ++x) {
    const bool separated = std::all_of(skeleton.begin(), skeleton.end(),
                                       [&](PointIndex s) { return space.distance(x, s) >= a; });
    if (separated) skeleton.push_back(x);
  }
  return skeleton;
}

std::vector<PointIndex> nearest_point_reduction(const FiniteMetricSpace& space,
                                                std::span<const PointIndex> skeleton) {
  if (skeleton.empty()) throw Error(ErrorKind::BadParams, "empty skeleton");
  PointSet sorted(skeleton.begin(), skeleton.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<PointIndex> image(space.size());
  for (PointIndex x = 0; x < space.size(); ++x) {
    PointIndex best = sorted.front();
    for (PointIndex s : sorted) {
      if (space.distance(x, s) < space.distance(x, best)) best = s;
    }
    image[x] = best;
  }
  return image;
}

MapModuli::MapModuli(const FiniteMetricSpace& source, const FiniteMetricSpace& target,
                     std::span<const PointIndex> f) {
  if (f.size() != source.size()) {
    throw Error(ErrorKind::BadParams, "map is not total on the source space");
  }
  for (PointIndex y : f) {
    if (y >= target.size()) throw Error(ErrorKind::BadParams, "map leaves the target space");
  }
  breakpoints_ = source.distinct_distances();
  const std::size_t m = breakpoints_.size();
  // Per breakpoint: max and min image distance over pairs at exactly that
  // source distance; cumulative max/min then give omega and rho.
  std::vector<double> max_at(m, 0.0);
  std::vector<double> min_at(m, std::numeric_limits<double>::infinity());
  for (PointIndex x = 0; x < source.size(); ++x) {
    for (PointIndex y = x + 1; y < source.size(); ++y) {
      const double d = source.distance(x, y);
      const auto k = static_cast<std::size_t>(
          std::lower_bound(breakpoints_.begin(), breakpoints_.end(), d) - breakpoints_.begin());
      const double image = target.distance(f[x], f[y]);
      max_at[k] = std::max(max_at[k], image);
      min_at[k] = std::min(min_at[k], image);
    }
  }
  omega_at_.resize(m);
  rho_at_.resize(m);
  double running = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    running = std::max(running, max_at[k]);
    omega_at_[k] = running;
  }
  double tail = std::numeric_limits<double>::infinity();
  for (std::size_t k = m; k-- > 0;) {
    tail = std::min(tail, min_at[k]);
    rho_at_[k] = tail;
  }
}

double MapModuli::omega(double t) const {
  // Largest breakpoint <= t.
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) return 0.0;
  return omega_at_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

ExtReal MapModuli::rho(double t) const {
  if (t <= 0.0) return 0.0;
  // Smallest breakpoint >= t.
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.end()) return ExtReal::infinity();
  return rho_at_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

ExtReal MapModuli::sup_omega_below(ExtReal level) const {
  // omega is 0 below the first breakpoint and constant on [v_k, v_{k+1}).
  if (!(ExtReal(0.0) < level)) return 0.0;
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (!(ExtReal(omega_at_[k]) < level)) return breakpoints_[k];
  }
  return ExtReal::infinity();
}

double MapModuli::sup_rho_at_most(double level) const {
  // rho equals rho_at_[k] on (v_{k-1}, v_k] and is +inf past the last one.
  double best = 0.0;
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (rho_at_[k] <= level) best = breakpoints_[k];
  }
  return best;
}

}  // namespace stone
