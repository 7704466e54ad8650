#include "recmech/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace recmech::instances {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;

std::size_t size_between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.index(hi - lo + 1));
}

}  // namespace

FacilityWithAdvice fl_worst_max(double rho_hat) {
  if (rho_hat < 1.0 || rho_hat > 1.0 + kSqrt2) {
    throw std::invalid_argument("fl-worst-max needs 1 <= rho_hat <= 1+sqrt(2)");
  }
  const double r = 1.0 / kSqrt2;
  FacilityInstance pts({{0.0, 1.0}, {1.0, 0.0}, {-r, -r}});
  const double c = (rho_hat - 1.0) / kSqrt2;
  return {std::move(pts), Point2{c, c}};
}

FacilityWithAdvice fl_worst_sum(std::size_t m) {
  if (m < 2) throw std::invalid_argument("fl-worst-sum needs m >= 2");
  std::vector<Point2> pts;
  pts.reserve(2 * m);
  pts.push_back({-1.0, 0.0});
  for (std::size_t i = 0; i < m; ++i) pts.push_back({0.0, 1.0});
  for (std::size_t i = 0; i + 1 < m; ++i) pts.push_back({1.0, 0.0});
  return {FacilityInstance(std::move(pts)), Point2{1.0, 0.0}};
}

FacilityWithAdvice fl_sum1() {
  FacilityInstance pts({{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}});
  return {std::move(pts), Point2{0.0, 1.0}};
}

SchedulingWithAdvice sched_lb1(std::size_t n, double rho_hat, double beta, double eps) {
  auto [inst, advice] = gen_lb_case1(n, rho_hat, beta, eps);
  return {std::move(inst), std::move(advice)};
}

SchedulingWithAdvice sched_lb2(std::size_t n, double rho_hat, double beta, double eps) {
  auto [inst, advice] = gen_lb_case2(n, rho_hat, beta, eps);
  return {std::move(inst), std::move(advice)};
}

SchedulingPair sched_jump(std::size_t n, double eps) {
  auto [predicted, actual] = gen_jump_example(n, eps);
  Assignment advice;
  advice.machine_of.resize(predicted.jobs);
  for (std::size_t j = 0; j < predicted.jobs; ++j) advice.machine_of[j] = j;
  return {std::move(predicted), std::move(actual), std::move(advice)};
}

HouseWithAdvice house_lb(std::size_t n, double rho_hat, Normalization norm,
                         double eps) {
  auto [values, endowment] = gen_ttc_lb(n, rho_hat, norm, eps);
  return {std::move(values), std::move(endowment)};
}

NamedPayload build(const NamedKey& key) {
  if (key.name == "fl-worst-max") return fl_worst_max(key.rho_hat);
  if (key.name == "fl-worst-sum") return fl_worst_sum(key.m);
  if (key.name == "fl-sum-1") return fl_sum1();
  if (key.name == "sched-lb1") return sched_lb1(key.n, key.rho_hat, key.beta, key.eps);
  if (key.name == "sched-lb2") return sched_lb2(key.n, key.rho_hat, key.beta, key.eps);
  if (key.name == "sched-jump") return sched_jump(key.n, key.eps);
  if (key.name == "house-lb-unit-range") {
    return house_lb(key.n, key.rho_hat, Normalization::UnitRange, key.eps);
  }
  if (key.name == "house-lb-unit-sum") {
    return house_lb(key.n, key.rho_hat, Normalization::UnitSum, key.eps);
  }
  throw std::invalid_argument("unknown named instance: " + key.name);
}

std::vector<std::string> named_keys() {
  return {"fl-worst-max", "fl-worst-sum",        "fl-sum-1",
          "sched-lb1",    "sched-lb2",           "sched-jump",
          "house-lb-unit-range", "house-lb-unit-sum"};
}

FacilityWithAdvice sample_facility(Rng& rng, FacilityObjective objective,
                                   std::size_t min_n, std::size_t max_n) {
  if (min_n < 1 || min_n > max_n) throw std::invalid_argument("bad facility size range");
  const std::size_t n = size_between(rng, min_n, max_n);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
  FacilityInstance inst(std::move(pts));

  Point2 advice;
  if (rng.uniform() < 0.5) {
    advice = {rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5)};
  } else {
    const Point2 star = objective == FacilityObjective::Egalitarian
                            ? opt_egalitarian(inst).first
                            : opt_utilitarian(inst).first;
    advice = {star.x + 0.01 * rng.gauss(), star.y + 0.01 * rng.gauss()};
  }
  return {std::move(inst), advice};
}

SchedulingWithAdvice sample_scheduling(Rng& rng, std::size_t max_n, std::size_t max_m,
                                       std::size_t min_n) {
  const std::size_t n = size_between(rng, min_n, max_n);
  const std::size_t m = size_between(rng, 1, max_m);
  SchedulingInstance inst(n, m);
  for (double& c : inst.costs) c = rng.uniform(0.05, 1.0);

  Assignment advice;
  if (rng.uniform() < 0.5) {
    advice = opt_makespan(inst).first;
  } else {
    advice.machine_of.resize(m);
    for (auto& mach : advice.machine_of) mach = static_cast<std::size_t>(rng.index(n));
  }
  return {std::move(inst), std::move(advice)};
}

HouseWithAdvice sample_house(Rng& rng, Normalization norm, std::size_t max_n) {
  if (max_n < 2) throw std::invalid_argument("house sampler needs max_n >= 2");
  const std::size_t n = size_between(rng, 2, max_n);
  ValuationMatrix v(n, norm);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n);
    double lo = 0.0;
    double hi = 0.0;
    do {
      for (double& x : row) x = rng.uniform();
      lo = *std::min_element(row.begin(), row.end());
      hi = *std::max_element(row.begin(), row.end());
    } while (norm == Normalization::UnitRange && hi - lo < 1e-6);
    if (norm == Normalization::UnitRange) {
      for (double& x : row) x = (x - lo) / (hi - lo);
    } else if (norm == Normalization::UnitSum) {
      const double sum = std::accumulate(row.begin(), row.end(), 0.0);
      for (double& x : row) x /= sum;
    }
    for (std::size_t j = 0; j < n; ++j) v.at(i, j) = row[j];
  }
  v.validate();

  Matching endowment;
  if (rng.uniform() < 0.5) {
    endowment = opt_matching(v).first;
  } else {
    endowment.house_of.resize(n);
    std::iota(endowment.house_of.begin(), endowment.house_of.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
      std::swap(endowment.house_of[i - 1],
                endowment.house_of[static_cast<std::size_t>(rng.index(i))]);
    }
  }
  return {std::move(v), std::move(endowment)};
}

MultiUnitWithAdvice sample_multiunit(Rng& rng, std::size_t max_n, std::size_t max_m) {
  const std::size_t n = size_between(rng, 1, max_n);
  const std::size_t m = size_between(rng, 1, max_m);
  MultiUnitInstance inst(n, m);
  for (auto& curve : inst.curves) {
    for (std::size_t q = 1; q <= m; ++q) curve[q] = curve[q - 1] + rng.uniform();
  }
  inst.validate();

  BundleAllocation advice;
  if (rng.uniform() < 0.5) {
    advice = mu_opt(inst).first;
  } else {
    advice.count_of.assign(n, 0);
    std::size_t remaining = m;
    for (std::size_t i = 0; i < n; ++i) {
      advice.count_of[i] = static_cast<std::size_t>(rng.index(remaining + 1));
      remaining -= advice.count_of[i];
    }
  }
  return {std::move(inst), std::move(advice)};
}

}  // namespace recmech::instances
