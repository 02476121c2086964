#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stone/cliques.hpp"
#include "stone/cover.hpp"
#include "stone/extended.hpp"
#include "stone/metric_space.hpp"

namespace stone {

enum class ModulusKind { Coarse, Uniform };

std::string to_string(ModulusKind kind);

/// Coarse modulus: least diameter of a cover with Lebesgue number >= R.
/// Finite covers are point-finite, and any cover with Lebesgue number >= R
/// contains a superset of each maximal clique of the d < R graph, so the
/// cover by those cliques is optimal.
double delta_coarse(const FiniteMetricSpace& space, double R,
                    std::size_t clique_cap = kDefaultCliqueCap);
/// R = +inf admits only covers containing the whole space.
double delta_coarse(const FiniteMetricSpace& space, ExtReal R,
                    std::size_t clique_cap = kDefaultCliqueCap);

/// Uniform modulus: greatest Lebesgue number of a cover with diameter <= r.
/// Equals the least distance exceeding r, or +inf once r >= diam(X).
ExtReal delta_uniform(const FiniteMetricSpace& space, double r);

/// delta_uniform computed the long way: the Lebesgue number of the cover by
/// all maximal cliques of the d <= r graph.
ExtReal delta_uniform_via_cover(const FiniteMetricSpace& space, double r,
                                std::size_t clique_cap = kDefaultCliqueCap);

inline constexpr std::size_t kOracleMaxPoints = 4;

/// Reference value straight from the definitions: searches every family of
/// nonempty subsets that covers the space. Throws TooLarge above
/// kOracleMaxPoints points.
ExtReal delta_oracle(const FiniteMetricSpace& space, ModulusKind kind, double argument);

/// The oracle's search done once per space: (diameter, Lebesgue number) of
/// every covering family, queried for any number of arguments.
class ModulusOracle {
 public:
  explicit ModulusOracle(const FiniteMetricSpace& space);

  ExtReal coarse(double R) const;
  ExtReal uniform(double r) const;
  std::size_t family_count() const { return families_.size(); }

 private:
  struct Family {
    double diameter;
    ExtReal lebesgue;
  };
  std::vector<Family> families_;
};

struct CurveSample {
  double argument = 0.0;
  ExtReal value;
};

struct ModulusCurve {
  ModulusKind kind = ModulusKind::Coarse;
  std::vector<CurveSample> samples;  // increasing arguments
};

/// Arguments probing every step of the moduli: half the least distance,
/// each distinct distance together with its two floating-point neighbours,
/// midpoints of consecutive distances, and twice the diameter.
std::vector<double> default_grid(const FiniteMetricSpace& space);

/// Samples the modulus on default_grid(space) merged with `grid`
/// (nonpositive arguments are dropped for the uniform kind). Throws
/// std::logic_error if the samples are not nondecreasing.
ModulusCurve modulus_curve(const FiniteMetricSpace& space, ModulusKind kind,
                           const std::vector<double>& grid = {},
                           std::size_t clique_cap = kDefaultCliqueCap);

struct CheckViolation {
  std::string rule;
  double argument = 0.0;
  double epsilon = 0.0;
  ExtReal lhs;
  ExtReal rhs;
};

struct DualityReport {
  bool pass = true;
  std::size_t checks = 0;
  std::vector<CheckViolation> violations;
};

/// Monotonicity of both moduli and the two duality inequalities
///   Du(Dc(R) + eps) >= R   and   Dc(Du(r) - eps) <= r  (0 < eps < Du(r))
/// at every positive grid argument and every eps.
DualityReport check_duality(const FiniteMetricSpace& space, const std::vector<double>& grid,
                            const std::vector<double>& epsilons,
                            std::size_t clique_cap = kDefaultCliqueCap);

struct SmallConstantReport {
  double C = 0.0;
  double D = 0.0;
  double bound = 0.0;  // D / (1 - C)
  bool hypothesis_holds = true;
  bool conclusion_holds = true;
  bool pass = true;    // not (hypothesis and not conclusion)
  std::vector<double> failing_arguments;  // where Dc(R) > C R + D
  std::vector<double> arguments;          // grid actually evaluated
};

inline constexpr double kSmallConstantTolerance = 1e-9;

/// If Dc(R) <= C R + D at every grid point, then diam(X) <= D / (1 - C).
/// The grid is extended past D/(1-C) and past the diameter so that a large
/// diameter always shows up as a failed hypothesis.
SmallConstantReport check_small_c(const FiniteMetricSpace& space, double C, double D,
                                  const std::vector<double>& grid,
                                  std::size_t clique_cap = kDefaultCliqueCap);

struct LinearTypeReport {
  double C = 0.0;
  bool coarse_side = true;    // Dc(R) <= C R on the grid
  bool uniform_side = true;   // Du(r) >= r / C on the grid
  bool pass = true;           // both sides agree
  std::vector<CheckViolation> violations;
  std::string caveat;
};

/// Evaluates both sides of the linear-type equivalence on the grid (merged
/// with default_grid). Agreement on a grid is necessary, not sufficient.
LinearTypeReport check_linear_type(const FiniteMetricSpace& space, double C,
                                   const std::vector<double>& grid,
                                   std::size_t clique_cap = kDefaultCliqueCap);

/// max Dc(R)/R over the default grid; exploratory only.
double coarse_ratio_sup(const FiniteMetricSpace& space, std::size_t clique_cap = kDefaultCliqueCap);

}  // namespace stone
