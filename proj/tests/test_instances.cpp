#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <variant>

#include "recmech/instances.hpp"

using namespace recmech;
namespace inst = recmech::instances;

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

TEST_CASE("fl-worst-max: unit circle points and diagonal advice") {
  const auto fa = inst::fl_worst_max(1.5);
  REQUIRE(fa.points.size() == 3);
  for (const Point2& p : fa.points.points) {
    CHECK(std::hypot(p.x, p.y) == doctest::Approx(1.0));
  }
  CHECK(fa.advice.x == doctest::Approx(0.5 / kSqrt2));
  CHECK(fa.advice.y == doctest::Approx(fa.advice.x));
  CHECK(std::hypot(fa.advice.x, fa.advice.y) == doctest::Approx(0.5));
  CHECK_THROWS(inst::fl_worst_max(0.9));
  CHECK_THROWS(inst::fl_worst_max(2.5));
}

TEST_CASE("fl-worst-sum: 1 + m + (m-1) points, advice on the right cluster") {
  const auto fa = inst::fl_worst_sum(3);
  CHECK(fa.points.size() == 6);
  CHECK(fa.advice.x == 1.0);
  CHECK(fa.advice.y == 0.0);
  CHECK_THROWS(inst::fl_worst_sum(1));
}

TEST_CASE("build dispatches every named key") {
  for (const std::string& name : inst::named_keys()) {
    inst::NamedKey key;
    key.name = name;
    key.n = 4;
    key.m = 3;
    key.rho_hat = name == "sched-lb2" ? 6.0 : 1.5;
    CHECK_NOTHROW(inst::build(key));
  }
  inst::NamedKey bogus;
  bogus.name = "no-such-family";
  CHECK_THROWS(inst::build(bogus));
}

TEST_CASE("named scheduling keys delegate to the generators") {
  inst::NamedKey key;
  key.name = "sched-lb1";
  key.n = 3;
  key.rho_hat = 2.0;
  key.beta = 1.0;
  key.eps = 0.01;
  const auto payload = inst::build(key);
  const auto& sa = std::get<inst::SchedulingWithAdvice>(payload);
  CHECK(sa.costs.machines == 3);
  CHECK(sa.costs.jobs == 2);
  CHECK(sa.costs.at(0, 0) == 2.0);
}

TEST_CASE("facility sampler: deterministic, in range, both advice branches") {
  Rng a{Seed{101}};
  Rng b{Seed{101}};
  const auto fa = inst::sample_facility(a, FacilityObjective::Egalitarian);
  const auto fb = inst::sample_facility(b, FacilityObjective::Egalitarian);
  REQUIRE(fa.points.size() == fb.points.size());
  CHECK(fa.advice.x == fb.advice.x);

  Rng rng{Seed{102}};
  int perturbed = 0;
  for (int t = 0; t < 100; ++t) {
    const auto f = inst::sample_facility(rng, FacilityObjective::Egalitarian, 2, 10);
    CHECK(f.points.size() >= 2);
    CHECK(f.points.size() <= 10);
    for (const Point2& p : f.points.points) {
      CHECK(p.x >= 0.0);
      CHECK(p.x < 1.0);
    }
    const double rho = egalitarian_cost(f.points, f.advice) /
                       std::max(opt_egalitarian(f.points).second, 1e-30);
    if (rho < 1.05) ++perturbed;  // near-optimal advice branch
  }
  CHECK(perturbed > 20);  // the 50/50 split actually exercises consistency
}

TEST_CASE("scheduling sampler produces feasible advice") {
  Rng rng{Seed{103}};
  for (int t = 0; t < 50; ++t) {
    const auto s = inst::sample_scheduling(rng, 4, 5, 2);
    CHECK(s.costs.machines >= 2);
    CHECK(s.costs.machines <= 4);
    REQUIRE(s.advice.machine_of.size() == s.costs.jobs);
    for (std::size_t m : s.advice.machine_of) CHECK(m < s.costs.machines);
  }
}

TEST_CASE("house sampler respects the requested normalization") {
  Rng rng{Seed{104}};
  for (int t = 0; t < 30; ++t) {
    const auto h = inst::sample_house(rng, Normalization::UnitSum, 6);
    for (std::size_t i = 0; i < h.values.n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < h.values.n; ++j) sum += h.values.at(i, j);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    h.endowment.validate(h.values.n);
  }
  for (int t = 0; t < 30; ++t) {
    const auto h = inst::sample_house(rng, Normalization::UnitRange, 6);
    CHECK_NOTHROW(h.values.validate());
  }
}

TEST_CASE("multi-unit sampler: monotone normalized curves, feasible advice") {
  Rng rng{Seed{105}};
  for (int t = 0; t < 50; ++t) {
    const auto mu = inst::sample_multiunit(rng, 4, 8);
    CHECK_NOTHROW(mu.curves.validate());
    const std::size_t total = std::accumulate(mu.advice.count_of.begin(),
                                              mu.advice.count_of.end(),
                                              static_cast<std::size_t>(0));
    CHECK(total <= mu.curves.items);
  }
}
