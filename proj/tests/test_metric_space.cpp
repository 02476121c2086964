#include <doctest.h>

#include <cmath>

#include "stone/error.hpp"
#include "stone/metric_space.hpp"
#include "support.hpp"

using namespace stone;
using stone::testing::equilateral;
using stone::testing::line_space;

namespace {

ErrorKind kind_of(const std::vector<std::vector<double>>& m) {
  try {
    validate_space(m);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("matrix was accepted");
  return ErrorKind::IO;
}

}  // namespace

TEST_CASE("validate_space accepts the two-point space") {
  const auto s = validate_space({{0, 1}, {1, 0}});
  CHECK(s.size() == 2);
  CHECK(s.distance(0, 1) == 1.0);
  CHECK(s.label(1) == "1");
  CHECK(s.diameter() == 1.0);
}

TEST_CASE("validate_space rejects malformed matrices") {
  CHECK(kind_of({{0, 1}, {2, 0}}) == ErrorKind::AsymmetricMatrix);
  CHECK(kind_of({{0, -1}, {-1, 0}}) == ErrorKind::NegativeDistance);
  CHECK(kind_of({{0, 0}, {0, 0}}) == ErrorKind::CoincidentPoints);
  CHECK(kind_of({{0, 1}, {1}}) == ErrorKind::MalformedMatrix);
  CHECK(kind_of({{1, 1}, {1, 0}}) == ErrorKind::MalformedMatrix);
  CHECK(kind_of({{0, NAN}, {NAN, 0}}) == ErrorKind::MalformedMatrix);
}

TEST_CASE("triangle violation reports the witness triple") {
  try {
    validate_space({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TriangleViolation);
    CHECK(e.witness() == std::vector<long long>{0, 1, 2});
  }
}

TEST_CASE("triangle tolerance is relative to the larger side") {
  const double big = 1e6;
  CHECK_NOTHROW(validate_space({{0, big, 2 * big + 1e-4}, {big, 0, big}, {2 * big + 1e-4, big, 0}}));
  CHECK_THROWS_AS(validate_space({{0, big, 2 * big + 1.0}, {big, 0, big}, {2 * big + 1.0, big, 0}}),
                  Error);
  CHECK_NOTHROW(validate_space({{0, 1, 2.5}, {1, 0, 1}, {2.5, 1, 0}}, {}, 0.5));
}

TEST_CASE("point clouds under the sup norm") {
  const auto s = space_from_points({{0, 0}, {1, 0}}, LpExponent::inf());
  CHECK(s.distance(0, 1) == 1.0);
  const auto l1 = space_from_points({{0, 0}, {1, 1}}, {1.0, false});
  CHECK(l1.distance(0, 1) == 2.0);
  const auto l2 = space_from_points({{0, 0}, {3, 4}}, {2.0, false});
  CHECK(l2.distance(0, 1) == doctest::Approx(5.0));
}

TEST_CASE("weighted tree path sums edge lengths") {
  const auto s = space_from_tree(3, {{0, 1, 2.0}, {1, 2, 3.0}});
  CHECK(s.distance(0, 2) == 5.0);
  CHECK(s.distance(2, 1) == 3.0);
}

TEST_CASE("generators are deterministic and produce valid spaces") {
  for (const auto kind : {GeneratorKind::RandomInteger, GeneratorKind::LpPointCloud,
                          GeneratorKind::WeightedTree, GeneratorKind::LpBallGrid}) {
    GeneratorParams params;
    params.n = 4;
    const auto a = generate_space(kind, params, 42);
    const auto b = generate_space(kind, params, 42);
    CHECK(a.matrix() == b.matrix());
    CHECK_NOTHROW(validate_space(a.matrix()));
  }
  GeneratorParams params;
  params.n = 6;
  const auto a = generate_space(GeneratorKind::RandomInteger, params, 1);
  const auto b = generate_space(GeneratorKind::RandomInteger, params, 2);
  CHECK(a.matrix() != b.matrix());
  for (const auto& row : a.matrix()) {
    for (double d : row) CHECK(d == std::floor(d));
  }
  CHECK(parse_generator_kind("lp-ball-grid") == GeneratorKind::LpBallGrid);
  CHECK_FALSE(parse_generator_kind("nope").has_value());
}

TEST_CASE("generated ball grid holds the lattice points of the ball") {
  GeneratorParams params;
  params.dim = 2;
  params.radius = 1.0;
  params.p = {1.0, false};
  CHECK(generate_space(GeneratorKind::LpBallGrid, params, 0).size() == 5);
  params.p = LpExponent::inf();
  CHECK(generate_space(GeneratorKind::LpBallGrid, params, 0).size() == 9);
}

TEST_CASE("generated spaces satisfy the metric axioms") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = stone::testing::random_space(seed, 9);
    for (PointIndex i = 0; i < s.size(); ++i) {
      CHECK(s.distance(i, i) == 0.0);
      for (PointIndex j = 0; j < s.size(); ++j) {
        CHECK(s.distance(i, j) == s.distance(j, i));
        if (i != j) CHECK(s.distance(i, j) > 0.0);
        for (PointIndex k = 0; k < s.size(); ++k) {
          const double via = s.distance(i, j) + s.distance(j, k);
          CHECK(s.distance(i, k) <= via + 1e-9 * std::max(via, s.distance(i, k)));
        }
      }
    }
  }
}

TEST_CASE("open balls use strict inequality") {
  CHECK(ball(equilateral(3), 0, 1.0) == PointSet{0});
  CHECK(ball(line_space(4), 1, 0.0).empty());
  CHECK(ball(line_space(4), 1, 1.5) == PointSet{0, 1, 2});
}

TEST_CASE("greedy skeleton examples") {
  CHECK(greedy_skeleton(line_space(4), 2.0) == PointSet{0, 2});
  CHECK(greedy_skeleton(line_space(4), 0.5) == PointSet{0, 1, 2, 3});
  CHECK(greedy_skeleton(equilateral(3), 1.0) == PointSet{0, 1, 2});
  CHECK_THROWS_AS(greedy_skeleton(line_space(3), 0.0), Error);
}

TEST_CASE("greedy skeleton is separated and dense") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = stone::testing::random_space(seed, 12);
    const double a = s.diameter() * (0.05 + 0.1 * static_cast<double>(seed % 7));
    const auto skel = greedy_skeleton(s, a);
    REQUIRE_FALSE(skel.empty());
    CHECK(skel.front() == 0);
    for (PointIndex u : skel) {
      for (PointIndex v : skel) {
        if (u != v) CHECK(s.distance(u, v) >= a);
      }
    }
    for (PointIndex x = 0; x < s.size(); ++x) CHECK(s.distance_to(x, skel) <= ExtReal(a));
  }
}

TEST_CASE("nearest point reduction") {
  const auto line = line_space(4);
  const PointSet all{0, 1, 2, 3};
  CHECK(nearest_point_reduction(line, all) == std::vector<PointIndex>{0, 1, 2, 3});
  const PointSet skel{0, 2};
  CHECK(nearest_point_reduction(line, skel) == std::vector<PointIndex>{0, 0, 2, 2});
}

TEST_CASE("map moduli of identity, constant and doubling maps") {
  const auto line = line_space(4);
  const std::vector<PointIndex> id{0, 1, 2, 3};
  const MapModuli m(line, line, id);
  for (double t : line.distinct_distances()) {
    CHECK(m.omega(t) == t);
    CHECK(m.rho(t) == ExtReal(t));
  }
  const std::vector<PointIndex> constant{2, 2, 2, 2};
  const MapModuli c(line, line, constant);
  for (double t : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(c.omega(t) == 0.0);
    CHECK(c.rho(t) == ExtReal(0.0));
  }
  const auto doubled = line_space({0, 2, 4, 6});
  const MapModuli d(line, doubled, id);
  for (double t : line.distinct_distances()) CHECK(d.omega(t) == 2 * t);
}

TEST_CASE("map moduli sandwich every pair and are nondecreasing") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto src = stone::testing::random_space(seed, 7);
    const auto dst = stone::testing::random_space(seed + 1000, 5);
    std::uniform_int_distribution<PointIndex> pick(0, dst.size() - 1);
    std::vector<PointIndex> f(src.size());
    for (auto& y : f) y = pick(rng);
    const MapModuli m(src, dst, f);
    for (PointIndex i = 0; i < src.size(); ++i) {
      for (PointIndex j = 0; j < src.size(); ++j) {
        const double d = src.distance(i, j);
        const double e = dst.distance(f[i], f[j]);
        CHECK(e <= m.omega(d));
        CHECK(m.rho(d) <= ExtReal(e));
      }
    }
    double prev_omega = 0.0;
    ExtReal prev_rho = 0.0;
    for (double t : src.distinct_distances()) {
      CHECK(m.omega(t) >= prev_omega);
      CHECK(m.rho(t) >= prev_rho);
      prev_omega = m.omega(t);
      prev_rho = m.rho(t);
    }
  }
}
