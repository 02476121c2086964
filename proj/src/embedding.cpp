#include "stone/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stone/catalog.hpp"
#include "stone/error.hpp"

namespace stone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxCRounds = 64;

double power(double t, std::int64_t n) { return std::pow(t, static_cast<double>(n)); }

Cover build_cover(const FiniteMetricSpace& space, ScaleCoverKind kind, double radius,
                  std::size_t cap) {
  if (kind == ScaleCoverKind::Clique) return clique_cover(space, radius, cap);
  const auto order = natural_order(space);
  return greedy_separable_cover(space, 2.5 * radius, radius / 4.0, order).cover;
}

}  // namespace

std::string to_string(ScaleCoverKind kind) {
  return kind == ScaleCoverKind::Clique ? "clique" : "greedy";
}

ScaleCoverKind parse_scale_cover_kind(const std::string& name) {
  if (name == "clique") return ScaleCoverKind::Clique;
  if (name == "greedy") return ScaleCoverKind::Greedy;
  throw Error(ErrorKind::BadParams, "unknown cover kind '" + name + "' (clique, greedy)");
}

void validate_config(const EmbeddingConfig& config, const FiniteMetricSpace& space) {
  if (!(config.t > 1.0) || !std::isfinite(config.t)) throw Error(ErrorKind::BadParams, "t must be > 1");
  if (!(config.eps > 0.0 && config.eps < 1.0)) throw Error(ErrorKind::BadParams, "eps must lie in (0, 1)");
  if (!(config.lambda > 0.0) || !std::isfinite(config.lambda)) {
    throw Error(ErrorKind::BadParams, "lambda must be > 0");
  }
  if (config.C && (!(*config.C >= 1.0) || !std::isfinite(*config.C))) {
    throw Error(ErrorKind::BadParams, "C must be >= 1");
  }
  if (!(config.D >= 0.0) || !std::isfinite(config.D)) throw Error(ErrorKind::BadParams, "D must be >= 0");
  if (config.base_point >= space.size()) throw Error(ErrorKind::BadParams, "base point out of range");
  if (config.scales) {
    if (config.scales->min > config.scales->max) throw Error(ErrorKind::BadParams, "empty scale range");
    const double floor = config.D / config.lambda;
    if (!(power(config.t, config.scales->min) > floor)) {
      throw Error(ErrorKind::BadParams, "every scale needs t^n > D/lambda",
                  {static_cast<long long>(config.scales->min)});
    }
  }
}

ScaleRange default_scale_range(const FiniteMetricSpace& space, double t, double C, double lambda,
                               double D) {
  const double c = C + lambda;
  const ExtReal dmin = space.min_positive_distance();
  ScaleRange r{0, 0};
  if (!dmin.is_infinite()) {
    const double logt = std::log(t);
    r.min = static_cast<std::int64_t>(std::floor(std::log(dmin.value() / c) / logt)) - 1;
    r.max = static_cast<std::int64_t>(std::ceil(std::log(space.diameter() / c) / logt));
    while (!(c * power(t, r.min) < dmin.value())) --r.min;
    while (c * power(t, r.max) < space.diameter()) ++r.max;
  }
  if (D > 0.0) {
    while (!(power(t, r.min) > D / lambda)) ++r.min;
  }
  r.max = std::max(r.max, r.min);
  return r;
}

double truncated_L(const FiniteMetricSpace& space, double t, double C, double lambda, double D,
                   ScaleRange scales) {
  const double c = C + lambda;
  const double floor = c * power(t, scales.min);
  const ExtReal dmin = space.min_positive_distance();
  double L = 0.0;
  // Pairs at or below the floor have no witnessing scale.
  if (D > 0.0 || (!dmin.is_infinite() && dmin.value() <= floor)) L = floor;
  // Pairs beyond the top scale are only separated by K(1-eps)t^{n_max}/2.
  L = std::max(L, space.diameter() - c * power(t, scales.max + 1));
  return std::max(L, 0.0);
}

ScaleFamily build_scale_family(const FiniteMetricSpace& space, const EmbeddingConfig& config) {
  validate_config(config, space);
  std::map<std::int64_t, Cover> built;
  auto cover_at = [&](std::int64_t n) -> const Cover& {
    auto it = built.find(n);
    if (it == built.end()) {
      it = built.emplace(n, build_cover(space, config.cover_kind, power(config.t, n),
                                        config.clique_cap)).first;
    }
    return it->second;
  };

  double C = config.C.value_or(1.0);
  ScaleRange range{};
  for (int round = 0;; ++round) {
    if (round == kMaxCRounds) {
      throw Error(ErrorKind::UncertifiableScale, "growth constant C did not stabilise");
    }
    range = config.scales.value_or(default_scale_range(space, config.t, C, config.lambda, config.D));
    double measured = 0.0;
    for (std::int64_t n = range.min; n <= range.max; ++n) {
      measured = std::max(measured, cover_diameter(cover_at(n)) / power(config.t, n));
    }
    double next = C;
    if (config.C) {
      if (measured > C + config.lambda) next = measured;
    } else {
      next = std::max(C, measured);
    }
    if (next == C) break;
    C = next;
  }

  ScaleFamily family;
  family.t = config.t;
  family.lambda = config.lambda;
  family.C = C;
  family.scales = range;
  for (std::int64_t n = range.min; n <= range.max; ++n) {
    const Cover& cover = cover_at(n);
    ScaleCertificate cert;
    cert.n = n;
    cert.radius = power(config.t, n);
    cert.diameter = cover_diameter(cover);
    cert.lebesgue_ok = lebesgue_at_least(cover, cert.radius, config.clique_cap);
    cert.diameter_ok = cert.diameter <= (C + config.lambda) * cert.radius;
    if (!cert.lebesgue_ok || !cert.diameter_ok) {
      throw Error(ErrorKind::UncertifiableScale,
                  "cover at scale " + std::to_string(n) + " fails its certificate",
                  {static_cast<long long>(n)});
    }
    family.certificates.push_back(cert);
    family.covers.emplace(n, cover);
  }
  return family;
}

DistortionReport certify_distortion(const FiniteMetricSpace& space,
                                    const std::function<double(PointIndex, PointIndex)>& image_distance,
                                    double K, double L, double tolerance) {
  DistortionReport rep;
  rep.K = K;
  rep.L = L;
  rep.tolerance = tolerance;
  rep.upper_slack = kInf;
  rep.lower_slack = kInf;
  const std::size_t n = space.size();
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = i + 1; j < n; ++j) {
      const double d = space.distance(i, j);
      const double e = image_distance(i, j);
      ++rep.pairs;
      const double up = K * d - e;
      const double low = e - (d - L);
      if (up < rep.upper_slack) rep.upper_slack = up;
      if (low < rep.lower_slack) rep.lower_slack = low;
      if (up < -tolerance && !rep.upper_violation) rep.upper_violation = std::make_pair(i, j);
      if (low < -tolerance && !rep.lower_violation) rep.lower_violation = std::make_pair(i, j);
      rep.lipschitz = std::max(rep.lipschitz, e / d);
      if (e > 0.0) {
        rep.inverse_lipschitz = std::max(rep.inverse_lipschitz, d / e);
      } else {
        rep.non_injective = true;
      }
    }
  }
  if (rep.pairs == 0) {
    rep.upper_slack = 0.0;
    rep.lower_slack = 0.0;
  }
  if (!rep.non_injective && rep.pairs > 0) rep.distortion = rep.lipschitz * rep.inverse_lipschitz;
  rep.pass = !rep.upper_violation && !rep.lower_violation;
  return rep;
}

DistortionReport certify_distortion(const FiniteMetricSpace& space,
                                    const std::vector<SparseNonnegativeSequence>& images, double K,
                                    double L, double tolerance) {
  if (images.size() != space.size()) throw Error(ErrorKind::BadParams, "map is not total");
  DistortionReport rep = certify_distortion(
      space, [&](PointIndex i, PointIndex j) { return sup_distance(images[i], images[j]); }, K, L,
      tolerance);
  if (!images.empty()) {
    rep.support.min = images.front().support_size();
    double total = 0.0;
    for (const auto& f : images) {
      rep.support.min = std::min(rep.support.min, f.support_size());
      rep.support.max = std::max(rep.support.max, f.support_size());
      total += static_cast<double>(f.support_size());
    }
    rep.support.mean = total / static_cast<double>(images.size());
  }
  return rep;
}

Embedding embed(const FiniteMetricSpace& space, const ScaleFamily& family,
                const EmbeddingConfig& config) {
  validate_config(config, space);
  const std::size_t size = space.size();
  const double t = family.t;
  const double C = family.C;
  const double lambda = family.lambda;
  const double eps = config.eps;
  const PointIndex O = config.base_point;

  Embedding out;
  out.config = config;
  out.config.C = C;
  out.config.scales = family.scales;
  out.K = 2.0 * t * (C + lambda) / (1.0 - eps);
  out.L = truncated_L(space, t, C, lambda, config.D, family.scales);
  out.points.assign(size, {});

  for (const auto& [n, cover] : family.covers) {
    const double tn = power(t, n);
    const double excluded = (C - 1.0 + lambda) * tn / 2.0;
    for (std::size_t tau = 0; tau < cover.size(); ++tau) {
      const VertexSet& U = cover.member_bits(tau);
      std::vector<bool> in_V(size, false);
      bool any = false;
      for (PointIndex x = 0; x < size; ++x) {
        in_V[x] = U.test(x) && !(space.distance(x, O) < excluded);
        any = any || in_V[x];
      }
      if (!any) continue;
      std::vector<double> value(size, 0.0);
      for (PointIndex x = 0; x < size; ++x) {
        if (!in_V[x]) continue;
        double gap = kInf;  // d(x, X \ V); +inf when V is everything
        for (PointIndex z = 0; z < size; ++z) {
          if (!in_V[z]) gap = std::min(gap, space.distance(x, z));
        }
        value[x] = out.K * std::min(gap, tn / 2.0);
      }
      const CoordinateId id{n, static_cast<std::int64_t>(tau)};
      for (PointIndex x = 0; x < size; ++x) {
        if (value[x] > 0.0) out.points[x].set(id, value[x]);
        if (value[x] > out.K * tn / 2.0) out.coordinates_bounded = false;
        for (PointIndex y = x + 1; y < size; ++y) {
          if (std::abs(value[x] - value[y]) > out.K * space.distance(x, y) + kEmbeddingTolerance) {
            out.coordinates_lipschitz = false;
          }
        }
      }
    }
  }

  const double c = C + lambda;
  const double floor = c * power(t, family.scales.min);
  for (PointIndex i = 0; i < size; ++i) {
    for (PointIndex j = i + 1; j < size; ++j) {
      const double d = space.distance(i, j);
      if (!(d > floor)) continue;
      PairWitness w;
      w.x = space.distance(i, O) >= space.distance(j, O) ? i : j;
      w.y = w.x == i ? j : i;
      w.n = family.scales.min;
      while (w.n < family.scales.max && c * power(t, w.n + 1) < d) ++w.n;
      const double tn = power(t, w.n);
      const double radius = (1.0 - eps) * tn / 2.0;
      w.required = out.K * radius;
      VertexSet ball(size);
      for (PointIndex z = 0; z < size; ++z) {
        if (space.distance(w.x, z) < radius) ball.set(z);
      }
      const Cover& cover = family.covers.at(w.n);
      if (const auto tau = cover.find_superset(ball)) {
        w.member = *tau;
        const CoordinateId id{w.n, static_cast<std::int64_t>(*tau)};
        w.fx = out.points[w.x].get(id);
        w.fy = out.points[w.y].get(id);
        w.holds = w.fx >= w.required && w.fy == 0.0;
      } else {
        w.member = cover.size();
      }
      out.witnesses.push_back(w);
    }
  }

  out.report = certify_distortion(space, out.points, out.K, out.L);
  return out;
}

Embedding embed(const FiniteMetricSpace& space, const EmbeddingConfig& config) {
  return embed(space, build_scale_family(space, config), config);
}

}  // namespace stone
