#include <doctest.h>

#include <cmath>
#include <random>

#include "stone/embedding.hpp"
#include "stone/error.hpp"
#include "stone/sparse.hpp"
#include "support.hpp"

using namespace stone;
using stone::testing::line_space;

namespace {

SignedSparseSequence random_signed(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<std::int64_t> id(0, 9);
  std::uniform_real_distribution<double> value(-5.0, 5.0);
  SignedSparseSequence f;
  for (int k = count(rng); k > 0; --k) f.set({id(rng) % 3, id(rng)}, value(rng));
  return f;
}

}  // namespace

TEST_CASE("coordinate ids print and parse") {
  const CoordinateId id{-3, 12};
  CHECK(id.to_string() == "-3:12");
  CHECK(CoordinateId::parse("-3:12") == id);
  CHECK_FALSE(CoordinateId::parse("3-12").has_value());
  CHECK_FALSE(CoordinateId::parse("3:x").has_value());
}

TEST_CASE("sparse sequences drop zeros and reject negatives in the cone") {
  SparseNonnegativeSequence f;
  f.set({0, 1}, 2.0);
  f.set({0, 2}, 0.0);
  CHECK(f.support_size() == 1);
  CHECK(f.sup_norm() == 2.0);
  f.set({0, 1}, 0.0);
  CHECK(f.support_size() == 0);
  CHECK(f.sup_norm() == 0.0);
  CHECK_THROWS_AS(f.set({0, 1}, -1.0), Error);
}

TEST_CASE("folding examples") {
  CHECK(fold_to_positive(SignedSparseSequence{}).support_size() == 0);
  SignedSparseSequence f;
  f.set({0, 3}, -2.0);
  const auto g = fold_to_positive(f);
  CHECK(g.get({0, 7}) == 2.0);
  CHECK(g.get({0, 6}) == 0.0);

  SignedSparseSequence plus;
  SignedSparseSequence minus;
  plus.set({0, 0}, 1.0);
  minus.set({0, 0}, -1.0);
  CHECK(sup_distance(plus, minus) == 2.0);
  CHECK(sup_distance(fold_to_positive(plus), fold_to_positive(minus)) == 1.0);
}

TEST_CASE("folding is 2-Lipschitz in both directions") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 10000; ++k) {
    const auto f = random_signed(rng);
    const auto h = random_signed(rng);
    const double d = sup_distance(f, h);
    const double e = sup_distance(fold_to_positive(f), fold_to_positive(h));
    CHECK(d / 2 <= e);
    CHECK(e <= d);
  }
}

TEST_CASE("config validation") {
  const auto s = line_space(4);
  EmbeddingConfig c;
  CHECK_NOTHROW(validate_config(c, s));
  auto bad = c;
  bad.lambda = 0.0;
  CHECK_THROWS_AS(validate_config(bad, s), Error);
  bad = c;
  bad.t = 1.0;
  CHECK_THROWS_AS(validate_config(bad, s), Error);
  bad = c;
  bad.eps = 1.0;
  CHECK_THROWS_AS(validate_config(bad, s), Error);
  bad = c;
  bad.C = 0.5;
  CHECK_THROWS_AS(validate_config(bad, s), Error);
  bad = c;
  bad.base_point = 4;
  CHECK_THROWS_AS(validate_config(bad, s), Error);
  bad = c;
  bad.scales = ScaleRange{2, 1};
  CHECK_THROWS_AS(validate_config(bad, s), Error);
  bad = c;
  bad.D = 1.0;
  bad.scales = ScaleRange{0, 3};  // t^0 = 1 is not above D/lambda = 4
  CHECK_THROWS_AS(validate_config(bad, s), Error);
}

TEST_CASE("default scale range reaches every distance") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = stone::testing::random_space(seed, 12);
    const double t = 1.2 + 0.1 * static_cast<double>(seed % 8);
    const double c = 1.25;
    const auto r = default_scale_range(s, t, 1.0, 0.25, 0.0);
    CHECK(c * std::pow(t, static_cast<double>(r.min)) < s.min_positive_distance().value());
    CHECK(c * std::pow(t, static_cast<double>(r.max)) >= s.diameter());
    CHECK(truncated_L(s, t, 1.0, 0.25, 0.0, r) == 0.0);
  }
  const auto r = default_scale_range(line_space(4), 2.0, 1.0, 0.25, 3.0);
  CHECK(std::pow(2.0, static_cast<double>(r.min)) > 12.0);
}

TEST_CASE("single point embeds as the zero map") {
  const auto s = line_space(1);
  const auto family = build_scale_family(s, {});
  for (const auto& [n, cover] : family.covers) {
    CHECK(cover.size() == 1);
    CHECK(cover.member(0) == PointSet{0});
  }
  const auto e = embed(s, family, {});
  CHECK(e.points.front().support_size() == 0);
  CHECK(e.report.pass);
}

TEST_CASE("line embedding certifies its scale family") {
  const auto s = line_space(4);
  EmbeddingConfig c;
  c.t = 2.0;
  c.lambda = 0.1;
  const auto family = build_scale_family(s, c);
  CHECK(family.covers.size() >= 3);
  for (const auto& cert : family.certificates) {
    const auto& cover = family.covers.at(cert.n);
    CHECK(lebesgue_number(cover) >= ExtReal(cert.radius));
    CHECK(cover_diameter(cover) <= (family.C + c.lambda) * cert.radius);
  }
  CHECK(family.C == 1.0);
}

TEST_CASE("embedding properties on random spaces") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = stone::testing::random_space(seed, 20);
    EmbeddingConfig c;
    c.base_point = seed % 20;
    const auto e = embed(s, c);
    CHECK(e.K == doctest::Approx(2 * 1.5 * (1.0 + 0.25) / 0.75));
    CHECK(e.L == 0.0);
    CHECK(e.report.pass);
    CHECK(e.coordinates_lipschitz);
    CHECK(e.coordinates_bounded);
    CHECK(e.points[c.base_point].support_size() == 0);
    CHECK(e.witnesses.size() == 190);
    for (const auto& w : e.witnesses) CHECK(w.holds);
    for (const auto& f : e.points) {
      for (const auto& [id, v] : f.entries()) {
        CHECK(v <= e.K * std::pow(1.5, static_cast<double>(id.scale)) / 2);
      }
    }
  }
}

TEST_CASE("greedy scale covers raise C") {
  const auto s = stone::testing::random_space(2, 15);
  EmbeddingConfig c;
  c.cover_kind = ScaleCoverKind::Greedy;
  const auto family = build_scale_family(s, c);
  CHECK(family.C >= 1.0);
  for (const auto& cert : family.certificates) CHECK(cert.diameter <= (family.C + c.lambda) * cert.radius);
  const auto e = embed(s, family, c);
  CHECK(e.report.pass);
  for (const auto& w : e.witnesses) CHECK(w.holds);

  c.C = 1.0;
  const auto fixed = build_scale_family(s, c);
  CHECK(fixed.C >= 1.0);
}

TEST_CASE("truncated scale ranges report their additive constant") {
  const auto s = stone::testing::random_space(4, 15);
  EmbeddingConfig c;
  const auto full = default_scale_range(s, c.t, 1.0, c.lambda, 0.0);
  c.scales = ScaleRange{full.min + 3, full.max - 2};
  const auto e = embed(s, c);
  CHECK(e.L > 0.0);
  CHECK(e.report.pass);
  for (const auto& w : e.witnesses) CHECK(w.holds);

  EmbeddingConfig d;
  d.D = 0.5;
  const auto with_d = embed(s, d);
  CHECK(with_d.L > 0.0);
  CHECK(std::pow(d.t, static_cast<double>(with_d.config.scales->min)) > d.D / d.lambda);
  CHECK(with_d.report.pass);
}

TEST_CASE("distortion certificate examples") {
  const auto s = line_space(4);
  const auto id = certify_distortion(s, [&](PointIndex i, PointIndex j) { return s.distance(i, j); }, 1.0, 0.0);
  CHECK(id.pass);
  REQUIRE(id.distortion.has_value());
  CHECK(*id.distortion == 1.0);

  const auto two = line_space(2);
  const auto constant = certify_distortion(two, [](PointIndex, PointIndex) { return 0.0; }, 1.0, 0.0);
  CHECK_FALSE(constant.pass);
  CHECK(constant.non_injective);
  CHECK_FALSE(constant.distortion.has_value());
  REQUIRE(constant.lower_violation.has_value());
  CHECK(*constant.lower_violation == std::make_pair(PointIndex{0}, PointIndex{1}));
  CHECK_FALSE(constant.upper_violation.has_value());
}
