#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stone/cliques.hpp"
#include "stone/cover.hpp"
#include "stone/metric_space.hpp"
#include "stone/sparse.hpp"

namespace stone {

enum class ScaleCoverKind { Clique, Greedy };

std::string to_string(ScaleCoverKind kind);
ScaleCoverKind parse_scale_cover_kind(const std::string& name);

struct ScaleRange {
  std::int64_t min = 0;
  std::int64_t max = 0;
  friend bool operator==(const ScaleRange&, const ScaleRange&) = default;
};

struct EmbeddingConfig {
  double t = 1.5;
  double eps = 0.25;
  double lambda = 0.25;
  PointIndex base_point = 0;
  /// Growth constant of the cover family. Unset: derived from the covers as
  /// max(1, sup_n diam(U_n)/t^n).
  std::optional<double> C;
  double D = 0.0;
  /// Unset: derived from the distance range so that every pair is witnessed.
  std::optional<ScaleRange> scales;
  ScaleCoverKind cover_kind = ScaleCoverKind::Clique;
  std::size_t clique_cap = kDefaultCliqueCap;
};

/// Throws BadParams unless t > 1, 0 < eps < 1, lambda > 0, C >= 1 (when
/// set), D >= 0, the base point exists and the scale range is nonempty.
void validate_config(const EmbeddingConfig& config, const FiniteMetricSpace& space);

struct ScaleCertificate {
  std::int64_t n = 0;
  double radius = 0.0;       // t^n
  double diameter = 0.0;     // diam(U_n)
  bool lebesgue_ok = false;  // L(U_n) >= t^n
  bool diameter_ok = false;  // diam(U_n) <= (C + lambda) t^n
};

/// Covers U_n for n in [scales.min, scales.max] with L(U_n) >= t^n and
/// diam(U_n) <= (C + lambda) t^n, each checked when built.
struct ScaleFamily {
  double t = 0.0;
  double lambda = 0.0;
  double C = 1.0;
  ScaleRange scales;
  std::map<std::int64_t, Cover> covers;
  std::vector<ScaleCertificate> certificates;
};

/// Clique builder: U_n = clique_cover(space, t^n). Greedy builder: the
/// separable cover with r = 2.5 t^n and eps = t^n / 4. Throws
/// UncertifiableScale (witness {n}) when a certificate fails and
/// CliqueCapExceeded from the enumeration.
ScaleFamily build_scale_family(const FiniteMetricSpace& space, const EmbeddingConfig& config);

/// Default scale range for a given C:
/// [floor(log_t(d_min/(C+lambda))) - 1, ceil(log_t(diam/(C+lambda)))], with
/// the lower end raised until t^n > D/lambda.
ScaleRange default_scale_range(const FiniteMetricSpace& space, double t, double C, double lambda,
                               double D);

/// Additive constant of the lower bound for a truncated scale range.
double truncated_L(const FiniteMetricSpace& space, double t, double C, double lambda, double D,
                   ScaleRange scales);

/// The coordinate exhibited for a pair by the lower-bound argument.
struct PairWitness {
  PointIndex x = 0;  // the point farther from the base point
  PointIndex y = 0;
  std::int64_t n = 0;
  std::size_t member = 0;
  double fx = 0.0;
  double fy = 0.0;
  double required = 0.0;  // K (1 - eps) t^n / 2
  bool holds = false;     // fx >= required and fy == 0
};

struct SupportStats {
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
};

struct DistortionReport {
  double K = 0.0;
  double L = 0.0;
  double tolerance = 1e-9;
  std::size_t pairs = 0;
  double upper_slack = 0.0;  // min over pairs of K d - |f(x) - f(y)|
  double lower_slack = 0.0;  // min over pairs of |f(x) - f(y)| - (d - L)
  std::optional<std::pair<PointIndex, PointIndex>> upper_violation;
  std::optional<std::pair<PointIndex, PointIndex>> lower_violation;
  double lipschitz = 0.0;
  /// max d/|f(x) - f(y)| over pairs with distinct images.
  double inverse_lipschitz = 0.0;
  /// Lip(f) Lip(f^-1); unset when the map is not injective.
  std::optional<double> distortion;
  bool non_injective = false;
  SupportStats support;
  bool pass = true;
};

inline constexpr double kEmbeddingTolerance = 1e-9;

/// Exhaustive pairwise check of d - L <= |f(x) - f(y)| <= K d, given the
/// image distance of every pair.
DistortionReport certify_distortion(const FiniteMetricSpace& space,
                                    const std::function<double(PointIndex, PointIndex)>& image_distance,
                                    double K, double L, double tolerance = kEmbeddingTolerance);

DistortionReport certify_distortion(const FiniteMetricSpace& space,
                                    const std::vector<SparseNonnegativeSequence>& images, double K,
                                    double L, double tolerance = kEmbeddingTolerance);

struct Embedding {
  EmbeddingConfig config;  // with C and scales resolved
  double K = 0.0;
  double L = 0.0;
  std::vector<SparseNonnegativeSequence> points;
  DistortionReport report;
  std::vector<PairWitness> witnesses;  // pairs with d > (C + lambda) t^{n_min}
  /// Every coordinate function is K-Lipschitz, checked pair by pair.
  bool coordinates_lipschitz = true;
  /// Every coordinate value is at most K t^n / 2.
  bool coordinates_bounded = true;
};

/// f_{n,tau}(x) = K min{d(x, X \ V_{n,tau}), t^n/2} with
/// V_{n,tau} = U_{n,tau} minus the open ball of radius (C - 1 + lambda) t^n / 2
/// about the base point, and K = 2t(C + lambda)/(1 - eps).
Embedding embed(const FiniteMetricSpace& space, const ScaleFamily& family,
                const EmbeddingConfig& config);

/// build_scale_family followed by embed.
Embedding embed(const FiniteMetricSpace& space, const EmbeddingConfig& config);

}  // namespace stone
