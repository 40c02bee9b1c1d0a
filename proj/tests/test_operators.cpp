#include <doctest.h>

#include <cmath>
#include <vector>

#include "cro/operators.hpp"
#include "support.hpp"

using namespace cro;
using testing_support::random_point;
using testing_support::sample_mean;
using testing_support::sample_sd;

TEST_CASE("boundary rules") {
  Rng rng(1);
  CHECK(apply_boundary(50.0, -100.0, 100.0, BoundaryRule::BP, rng) == 50.0);
  CHECK(apply_boundary(50.0, -100.0, 100.0, BoundaryRule::HP, rng) == 50.0);
  CHECK(apply_boundary(100.0, -100.0, 100.0, BoundaryRule::HP, rng) == 100.0);

  std::vector<double> bp;
  for (int k = 0; k < 10000; ++k) {
    const double v = apply_boundary(150.0, -100.0, 100.0, BoundaryRule::BP, rng);
    REQUIRE(v >= -100.0);
    REQUIRE(v <= 100.0);
    bp.push_back(v);
  }
  CHECK(sample_mean(bp) >= -2.0);
  CHECK(sample_mean(bp) <= 2.0);

  int clamped = 0;
  for (int k = 0; k < 10000; ++k) {
    const double v = apply_boundary(150.0, -100.0, 100.0, BoundaryRule::HP, rng);
    REQUIRE(v >= -100.0);
    REQUIRE(v <= 100.0);
    clamped += v == 100.0 ? 1 : 0;
  }
  CHECK(clamped >= 4700);
  CHECK(clamped <= 5300);

  int low_clamped = 0;
  for (int k = 0; k < 1000; ++k)
    low_clamped += apply_boundary(-150.0, -100.0, 100.0, BoundaryRule::HP, rng) == -100.0 ? 1 : 0;
  CHECK(low_clamped > 400);
}

TEST_CASE("neighborhood search changes exactly one coordinate") {
  Rng rng(2);
  const std::size_t dim = 30;
  const Bounds bounds = Bounds::uniform(dim, -100.0, 100.0);
  const std::vector<double> step(dim, 100.0);
  const Solution s(dim, 0.0);
  for (int k = 0; k < 10000; ++k) {
    const Solution out = neighborhood_search(s, step, bounds, BoundaryRule::BP, rng);
    int changed = 0;
    for (std::size_t i = 0; i < dim; ++i) changed += out[i] != s[i] ? 1 : 0;
    REQUIRE(changed == 1);
    REQUIRE(bounds.contains(out));
  }
}

TEST_CASE("neighborhood search perturbation width") {
  // box wide enough that repair never kicks in
  Rng rng(12);
  const std::size_t dim = 30;
  const Bounds bounds = Bounds::uniform(dim, -1e6, 1e6);
  const std::vector<double> step(dim, 100.0);
  const Solution s(dim, 0.0);
  std::vector<double> moved;
  for (int k = 0; k < 10000; ++k) {
    const Solution out = neighborhood_search(s, step, bounds, BoundaryRule::BP, rng);
    for (std::size_t i = 0; i < dim; ++i)
      if (out[i] != s[i]) moved.push_back(out[i]);
  }
  REQUIRE(moved.size() == 10000);
  const double sd = sample_sd(moved);
  CHECK(sd >= 97.0);
  CHECK(sd <= 103.0);
}

TEST_CASE("zero step leaves the structure unchanged") {
  Rng rng(3);
  const Bounds bounds = Bounds::uniform(5, -1.0, 1.0);
  const std::vector<double> step(5, 0.0);
  const Solution s{0.1, -0.2, 0.3, 0.4, -0.5};
  CHECK(neighborhood_search(s, step, bounds, BoundaryRule::HP, rng) == s);
  const auto [a, b] = decompose_structure(s, step, bounds, BoundaryRule::BP, rng);
  CHECK(a == s);
  CHECK(b == s);
}

TEST_CASE("decomposition perturbs about half the coordinates") {
  Rng rng(4);
  const std::size_t dim = 30;
  const Bounds bounds = Bounds::uniform(dim, -100.0, 100.0);
  const std::vector<double> step(dim, 1.0);
  const Solution s(dim, 0.0);
  std::vector<double> counts;
  for (int k = 0; k < 1000; ++k) {
    const auto [a, b] = decompose_structure(s, step, bounds, BoundaryRule::BP, rng);
    double changed = 0;
    for (std::size_t i = 0; i < dim; ++i) changed += a[i] != s[i] ? 1 : 0;
    counts.push_back(changed);
  }
  CHECK(sample_mean(counts) >= 14.4);
  CHECK(sample_mean(counts) <= 15.6);
}

TEST_CASE("operators keep random structures in bounds") {
  Rng rng(5);
  for (int k = 0; k < 10000; ++k) {
    const std::size_t dim = 1 + rng.index(12);
    const double lo = rng.uniform(-50.0, 0.0);
    const double hi = lo + rng.uniform(0.1, 20.0);
    const Bounds bounds = Bounds::uniform(dim, lo, hi);
    const std::vector<double> step(dim, rng.uniform(0.01, 50.0));
    const auto rule = rng.coin(0.5) ? BoundaryRule::BP : BoundaryRule::HP;
    const Solution s = random_point(rng, dim, lo, hi);
    const Solution t = random_point(rng, dim, lo, hi);

    const auto [a, b] = decompose_structure(s, step, bounds, rule, rng);
    REQUIRE(bounds.contains(a));
    REQUIRE(bounds.contains(b));
    REQUIRE(bounds.contains(neighborhood_search(s, step, bounds, rule, rng)));
    REQUIRE(bounds.contains(synthesize_structure(s, t, SynthesisRule::BLX05, bounds, rule, rng)));
    REQUIRE(bounds.contains(
        synthesize_structure(s, t, SynthesisRule::ProbabilisticSelect, bounds, rule, rng)));
  }
}

TEST_CASE("synthesis of identical parents") {
  Rng rng(6);
  const Bounds bounds = Bounds::uniform(4, -10.0, 10.0);
  const Solution a{1.0, -2.0, 3.5, 0.0};
  CHECK(synthesize_structure(a, a, SynthesisRule::ProbabilisticSelect, bounds, BoundaryRule::BP, rng) == a);
  CHECK(synthesize_structure(a, a, SynthesisRule::BLX05, bounds, BoundaryRule::BP, rng) == a);
}

TEST_CASE("probabilistic select copies each coordinate from a parent") {
  Rng rng(7);
  const std::size_t dim = 10;
  const Bounds bounds = Bounds::uniform(dim, -10.0, 10.0);
  const Solution a(dim, 0.0), b(dim, 1.0);
  std::vector<double> ones(dim, 0.0);
  for (int k = 0; k < 10000; ++k) {
    const Solution c =
        synthesize_structure(a, b, SynthesisRule::ProbabilisticSelect, bounds, BoundaryRule::BP, rng);
    for (std::size_t i = 0; i < dim; ++i) {
      REQUIRE((c[i] == 0.0 || c[i] == 1.0));
      ones[i] += c[i];
    }
  }
  for (double count : ones) {
    CHECK(count / 10000.0 >= 0.47);
    CHECK(count / 10000.0 <= 0.53);
  }
}

TEST_CASE("BLX-0.5 samples the widened interval") {
  Rng rng(8);
  const Bounds bounds = Bounds::uniform(1, -100.0, 100.0);
  std::vector<double> draws;
  for (int k = 0; k < 10000; ++k) {
    const Solution c = synthesize_structure(Solution{0.0}, Solution{2.0}, SynthesisRule::BLX05,
                                            bounds, BoundaryRule::BP, rng);
    REQUIRE(c[0] >= -1.0);
    REQUIRE(c[0] <= 3.0);
    draws.push_back(c[0]);
  }
  CHECK(sample_mean(draws) >= 0.9);
  CHECK(sample_mean(draws) <= 1.1);
}

TEST_CASE("synthesis rejects mismatched parents") {
  Rng rng(9);
  const Bounds bounds = Bounds::uniform(2, -1.0, 1.0);
  CHECK_THROWS_AS(synthesize_structure(Solution{0.0, 0.0}, Solution{0.0}, SynthesisRule::BLX05,
                                       bounds, BoundaryRule::BP, rng),
                  DimensionMismatch);
}
