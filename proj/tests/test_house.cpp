#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "recmech/core.hpp"
#include "recmech/house.hpp"

using namespace recmech;

namespace {

// Independent maximum-weight matching oracle: try all n! permutations.
double opt_matching_brute(const ValuationMatrix& v) {
  std::vector<std::size_t> perm(v.n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = -1.0;
  do {
    double w = 0.0;
    for (std::size_t i = 0; i < v.n; ++i) w += v.at(i, perm[i]);
    best = std::max(best, w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

ValuationMatrix random_unit_range(Rng& rng, std::size_t n) {
  ValuationMatrix v(n, Normalization::UnitRange);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n);
    for (double& x : row) x = rng.uniform();
    const double lo = *std::min_element(row.begin(), row.end());
    const double hi = *std::max_element(row.begin(), row.end());
    for (std::size_t j = 0; j < n; ++j) v.at(i, j) = (row[j] - lo) / (hi - lo);
  }
  return v;
}

}  // namespace

TEST_CASE("valuation normalization is validated, never repaired") {
  ValuationMatrix ok(2, Normalization::UnitRange);
  ok.at(0, 0) = 1.0;
  ok.at(0, 1) = 0.0;
  ok.at(1, 0) = 0.0;
  ok.at(1, 1) = 1.0;
  CHECK_NOTHROW(ok.validate());

  ValuationMatrix bad_range(2, Normalization::UnitRange, 0.5);
  CHECK_THROWS(bad_range.validate());

  ValuationMatrix bad_sum(2, Normalization::UnitSum, 0.4);
  CHECK_THROWS(bad_sum.validate());

  ValuationMatrix sum(2, Normalization::UnitSum, 0.5);
  CHECK_NOTHROW(sum.validate());
}

TEST_CASE("matching validation catches non-bijections") {
  Matching ok{{1, 0, 2}};
  CHECK_NOTHROW(ok.validate(3));
  Matching dup{{1, 1, 2}};
  CHECK_THROWS(dup.validate(3));
  Matching short_one{{0, 1}};
  CHECK_THROWS(short_one.validate(3));
}

TEST_CASE("ttc keeps an individually rational outcome") {
  Rng rng{Seed{31}};
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.index(5);
    const ValuationMatrix v = random_unit_range(rng, n);
    Matching endow;
    endow.house_of.resize(n);
    std::iota(endow.house_of.begin(), endow.house_of.end(), 0);
    for (std::size_t i = n; i > 1; --i)
      std::swap(endow.house_of[i - 1], endow.house_of[rng.index(i)]);

    const auto res = ttc(v, endow);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(v.at(i, res.alternative.house_of[i]) >=
            v.at(i, endow.house_of[i]) - 1e-12);
    }
    CHECK(res.report.ratio <= res.report.rho_hat + 1e-9);
    CHECK(res.report.ratio <= static_cast<double>(n) + 1e-9);
  }
}

TEST_CASE("ttc from the optimum endowment stays at the optimum") {
  Rng rng{Seed{32}};
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.index(4);
    const ValuationMatrix v = random_unit_range(rng, n);
    const auto [opt, value] = opt_matching(v);
    const auto res = ttc(v, opt);
    CHECK(welfare(v, res.alternative) == doctest::Approx(value).epsilon(1e-12));
    CHECK(res.report.ratio == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("the frozen-trade family realizes ratio (n-eps)/(1+(n-1)eps)") {
  for (std::size_t n : {4u, 8u}) {
    const double eps = 0.1;
    const ValuationMatrix v =
        make_ttc_lb_matrix(n, eps, /*next_value=*/eps, Normalization::UnitRange);
    const auto res = ttc(v, cyclic_endowment(n));
    const double expected =
        (static_cast<double>(n) - eps) / (1.0 + (static_cast<double>(n) - 1.0) * eps);
    CHECK(std::abs(res.report.ratio - expected) <= 1e-12);
    // nobody trades: the cyclic endowment is a fixed point here
    for (std::size_t i = 0; i < n; ++i)
      CHECK(res.alternative.house_of[i] == cyclic_endowment(n).house_of[i]);
  }
}

TEST_CASE("gen_ttc_lb hits a target quality of recommendation") {
  SUBCASE("unit-range") {
    const auto [v, endow] = gen_ttc_lb(5, 3.0, Normalization::UnitRange, 1e-6);
    const auto res = ttc(v, endow);
    CHECK(res.report.rho_hat == doctest::Approx(3.0).epsilon(1e-4));
    CHECK_THROWS(gen_ttc_lb(5, 6.0, Normalization::UnitRange, 1e-6));  // rho > n
  }
  SUBCASE("unit-sum") {
    const auto [v, endow] = gen_ttc_lb(4, 3.0, Normalization::UnitSum, 1e-6);
    for (std::size_t i = 0; i < 4; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < 4; ++j) sum += v.at(i, j);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto res = ttc(v, endow);
    CHECK(res.report.rho_hat == doctest::Approx(3.0).epsilon(1e-4));
  }
}

TEST_CASE("opt_matching equals the factorial brute force") {
  Rng rng{Seed{33}};
  for (int t = 0; t < 60; ++t) {
    ValuationMatrix v(5, Normalization::None);
    for (double& x : v.values) x = rng.uniform();
    const auto [m, value] = opt_matching(v);
    CHECK(welfare(v, m) == doctest::Approx(value).epsilon(1e-12));
    CHECK(value == doctest::Approx(opt_matching_brute(v)).epsilon(1e-12));
  }
}

TEST_CASE("matching serialization is 1-indexed") {
  Matching m{{1, 2, 3, 0}};
  CHECK(matching_to_string(m) == "2,3,4,1");
  const Matching back = matching_from_string("2,3,4,1");
  CHECK(back.house_of == m.house_of);
}
