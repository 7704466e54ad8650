// End-to-end acceptance gate: every release-blocking property in one binary.
// Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "recmech/auctions.hpp"
#include "recmech/core.hpp"
#include "recmech/facility.hpp"
#include "recmech/harness.hpp"
#include "recmech/house.hpp"
#include "recmech/instances.hpp"
#include "recmech/scheduling.hpp"

using namespace recmech;
namespace fam = recmech::instances;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  if (ok) {
    std::printf("PASS: %s\n", name.c_str());
  } else {
    ++failures;
    std::printf("FAIL: %s%s%s\n", name.c_str(), detail.empty() ? "" : " — ",
                detail.c_str());
  }
  std::fflush(stdout);
}

// --- independent oracles (reimplemented here, not shared with the library) ---

double mec_radius_brute(const std::vector<Point2>& pts) {
  const auto covers = [&](Point2 c, double r) {
    for (const Point2& p : pts)
      if (dist(c, p) > r + 1e-9) return false;
    return true;
  };
  if (pts.size() == 1) return 0.0;
  double best = kInf;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Point2 c{0.5 * (pts[i].x + pts[j].x), 0.5 * (pts[i].y + pts[j].y)};
      const double r = 0.5 * dist(pts[i], pts[j]);
      if (r < best && covers(c, r)) best = r;
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const Point2 a = pts[i], b = pts[j], q = pts[k];
        const double d =
            2.0 * (a.x * (b.y - q.y) + b.x * (q.y - a.y) + q.x * (a.y - b.y));
        if (std::abs(d) < 1e-12) continue;
        const double a2 = a.x * a.x + a.y * a.y;
        const double b2 = b.x * b.x + b.y * b.y;
        const double q2 = q.x * q.x + q.y * q.y;
        const Point2 c3{(a2 * (b.y - q.y) + b2 * (q.y - a.y) + q2 * (a.y - b.y)) / d,
                        (a2 * (q.x - b.x) + b2 * (a.x - q.x) + q2 * (b.x - a.x)) / d};
        const double r3 = dist(c3, a);
        if (r3 < best && covers(c3, r3)) best = r3;
      }
    }
  }
  return best;
}

double makespan_recursive(const SchedulingInstance& inst, std::size_t job,
                          std::vector<double>& load) {
  if (job == inst.jobs) {
    double worst = 0.0;
    for (double l : load) worst = std::max(worst, l);
    return worst;
  }
  double best = kInf;
  for (std::size_t i = 0; i < inst.machines; ++i) {
    load[i] += inst.at(i, job);
    best = std::min(best, makespan_recursive(inst, job + 1, load));
    load[i] -= inst.at(i, job);
  }
  return best;
}

double matching_brute(const ValuationMatrix& v) {
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

// --- criteria ----------------------------------------------------------------

void criterion_1_mbb_tightness() {
  bool ok = true;
  std::string detail;
  for (double rho : {1.1, 1.5, 2.0, 1.0 + kSqrt2}) {
    const auto fa = fam::fl_worst_max(rho);
    const auto res = mbb(fa.points, fa.advice);
    if (std::abs(res.report.ratio - rho) > 1e-9) {
      ok = false;
      detail = "rho=" + std::to_string(rho) +
               " ratio=" + std::to_string(res.report.ratio);
    }
  }
  report("1 MBB tight on the diagonal-advice family", ok, detail);
}

void criterion_2_mbb_bound() {
  Rng rng{Seed{20240801}};
  std::size_t bad = 0;
  for (int t = 0; t < 10000; ++t) {
    Rng sub = rng.split(static_cast<std::uint64_t>(t));
    const auto fa = fam::sample_facility(sub, FacilityObjective::Egalitarian);
    const auto res = mbb(fa.points, fa.advice);
    const double bound = std::min(res.report.rho_hat, 1.0 + kSqrt2);
    if (res.report.ratio > bound + 1e-9) ++bad;
  }
  report("2 MBB ratio <= min(rho, 1+sqrt2) on 10^4 random instances", bad == 0,
         std::to_string(bad) + " violations");
}

void criterion_3_cmp_four_corners() {
  const auto fa = fam::fl_sum1();
  const auto res = cmp(fa.points, fa.advice, CmpConfig{0.75, TieBreak::High});
  const double rho = (std::sqrt(5.0) + 1.0) / (2.0 * kSqrt2);
  const double e = eta(fa.points, fa.advice, FacilityObjective::Utilitarian);
  const bool ok = std::abs(res.report.ratio - rho) <= 1e-6 &&
                  std::abs(res.report.rho_hat - rho) <= 1e-6 &&
                  std::abs(e - 1.0 / kSqrt2) <= 1e-6 &&
                  kSqrt2 * res.report.rho_hat < 1.0 + e;
  report("3 CMP four-corner arithmetic and the error-function comparison", ok);
}

void criterion_4_cmp_asymptotic() {
  bool ok = true;
  std::string detail;
  for (std::size_t m : {3, 10, 100}) {
    const auto fa = fam::fl_worst_sum(m);
    const auto res = cmp(fa.points, fa.advice, CmpConfig{0.0, TieBreak::Low});
    const double gap = kSqrt2 * res.report.rho_hat - res.report.ratio;
    if (std::abs(res.report.ratio - kSqrt2) > 1e-9 ||
        std::abs(gap - 2.0 / static_cast<double>(m)) > 1e-9) {
      ok = false;
      detail = "m=" + std::to_string(m);
    }
  }
  report("4 plain median ratio sqrt2 with gap 2/m on the cluster family", ok, detail);
}

void criterion_5_eta_bound() {
  Rng rng{Seed{20240802}};
  std::size_t bad = 0;
  for (int t = 0; t < 10000; ++t) {
    Rng sub = rng.split(static_cast<std::uint64_t>(t));
    const auto fa = fam::sample_facility(sub, FacilityObjective::Utilitarian,
                                         /*min_n=*/2, /*max_n=*/30);
    const auto [c, opt_eg] = opt_egalitarian(fa.points);
    (void)c;
    if (opt_eg > 0) {
      const double rho = egalitarian_cost(fa.points, fa.advice) / opt_eg;
      if (rho > eta(fa.points, fa.advice, FacilityObjective::Egalitarian) + 1.0 + 1e-9)
        ++bad;
    }
    const auto [g, opt_ut] = opt_utilitarian(fa.points);
    (void)g;
    if (opt_ut > 0) {
      const double rho = utilitarian_cost(fa.points, fa.advice) / opt_ut;
      if (rho > eta(fa.points, fa.advice, FacilityObjective::Utilitarian) + 1.0 + 1e-9)
        ++bad;
    }
  }
  report("5 rho <= eta + 1 on 10^4 random instances, both objectives", bad == 0,
         std::to_string(bad) + " violations");
}

void criterion_6_asg_consistency() {
  Rng rng{Seed{20240803}};
  std::size_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    Rng sub = rng.split(static_cast<std::uint64_t>(t));
    const std::size_t n = 2 + sub.index(3);  // 2..4
    const std::size_t m = 1 + sub.index(5);
    SchedulingInstance inst(n, m);
    for (double& c : inst.costs) c = sub.uniform(0.05, 1.0);
    const Assignment opt = opt_makespan(inst).first;
    for (double beta : {1.0, 2.0, static_cast<double>(n)}) {
      if (beta > static_cast<double>(n)) continue;
      const auto res = asg(inst, opt, AsgConfig{beta});
      const double nn = static_cast<double>(n);
      if (res.report.ratio > (nn - 1.0) / nn * beta + 1.0 + 1e-9) ++bad;
    }
  }
  report("6 scaled greedy consistency bound with perfect advice", bad == 0,
         std::to_string(bad) + " violations");
}

void criterion_7_asg_smoothness() {
  Rng rng{Seed{20240804}};
  std::size_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    Rng sub = rng.split(static_cast<std::uint64_t>(t));
    const std::size_t n = 2 + sub.index(3);
    const std::size_t m = 1 + sub.index(5);
    SchedulingInstance inst(n, m);
    for (double& c : inst.costs) c = sub.uniform(0.05, 1.0);
    Assignment a_hat;
    a_hat.machine_of.resize(m);
    for (auto& mach : a_hat.machine_of) mach = sub.index(n);
    for (double beta : {1.0, 2.0, static_cast<double>(n)}) {
      if (beta > static_cast<double>(n)) continue;
      const auto res = asg(inst, a_hat, AsgConfig{beta});
      const double nn = static_cast<double>(n);
      const double bound = std::min({(beta + 1.0) * res.report.rho_hat,
                                     nn + res.report.rho_hat, nn * nn / beta});
      if (res.report.ratio > bound + 1e-9) ++bad;
    }
  }
  report("7 scaled greedy smoothness bound with random advice", bad == 0,
         std::to_string(bad) + " violations");
}

void criterion_8_asg_tightness() {
  const auto lb1 = fam::sched_lb1(3, 2.0, 1.0, 1e-6);
  const auto r1 = asg(lb1.costs, lb1.advice, AsgConfig{1.0});
  const bool ok1 = r1.report.ratio >= 4.0 / 3.0 - 1e-5;

  const auto lb2 = fam::sched_lb2(4, 6.0, 1.0, 1e-6);
  const auto r2 = asg(lb2.costs, lb2.advice, AsgConfig{1.0});
  const bool ok2 = r2.report.ratio >= (4.0 + 6.0 - 1.0) / 2.0 - 1e-4;

  report("8 scaled greedy lower-bound families realize their ratios", ok1 && ok2,
         "ratios " + std::to_string(r1.report.ratio) + ", " +
             std::to_string(r2.report.ratio));
}

void criterion_9_ttc_tightness() {
  bool ok = true;
  std::string detail;
  {
    const ValuationMatrix v = make_ttc_lb_matrix(4, 0.1, 0.1, Normalization::UnitRange);
    const auto res = ttc(v, cyclic_endowment(4));
    if (std::abs(res.report.ratio - 3.0) > 1e-12) {
      ok = false;
      detail = "n=4 ratio=" + std::to_string(res.report.ratio);
    }
  }
  for (std::size_t n : {4, 8}) {
    const double eps = 0.1;
    const ValuationMatrix v = make_ttc_lb_matrix(n, eps, eps, Normalization::UnitRange);
    const auto res = ttc(v, cyclic_endowment(n));
    const double expected =
        (static_cast<double>(n) - eps) / (1.0 + (static_cast<double>(n) - 1.0) * eps);
    if (std::abs(res.report.ratio - expected) > 1e-12) {
      ok = false;
      detail = "n=" + std::to_string(n);
    }
  }
  report("9 frozen-trade family: ratio (n-eps)/(1+(n-1)eps), exactly 3 at n=4", ok,
         detail);
}

void criterion_10_ttc_bounds() {
  Rng rng{Seed{20240805}};
  std::size_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    Rng sub = rng.split(static_cast<std::uint64_t>(t));
    const auto h = fam::sample_house(sub, Normalization::UnitRange, 6);
    const auto res = ttc(h.values, h.endowment);
    const double n = static_cast<double>(h.values.n);
    if (res.report.ratio > std::min(res.report.rho_hat, n) + 1e-9) ++bad;
  }
  for (int t = 0; t < 1000; ++t) {
    Rng sub = rng.split(100000 + static_cast<std::uint64_t>(t));
    const auto h = fam::sample_house(sub, Normalization::UnitSum, 6);
    const auto res = ttc(h.values, h.endowment);
    const double n = static_cast<double>(h.values.n);
    if (res.report.ratio > std::min(res.report.rho_hat, n * n) + 1e-9) ++bad;
    // perfect endowment keeps the optimum
    const auto opt = opt_matching(h.values).first;
    const auto perfect = ttc(h.values, opt);
    if (std::abs(perfect.report.ratio - 1.0) > 1e-9) ++bad;
  }
  report("10 TTC ratio within min(rho, n) / min(rho, n^2); 1 at perfect advice",
         bad == 0, std::to_string(bad) + " violations");
}

void criterion_11_multiunit_bound() {
  Rng rng{Seed{20240806}};
  std::size_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    Rng sub = rng.split(static_cast<std::uint64_t>(t));
    const auto mu = fam::sample_multiunit(sub, 4, 32);
    const double base = mu_welfare(mu.curves, mu_mir_base(mu.curves));
    const double opt = mu_opt(mu.curves).second;
    const double base_ratio = base > 0 ? opt / base : (opt > 0 ? kInf : 1.0);
    if (base_ratio > 2.0 + 1e-9) ++bad;
    const auto res = mir_with_advice(mu.curves, mu.advice);
    if (res.report.ratio > std::min(res.report.rho_hat, base_ratio) + 1e-9) ++bad;
  }
  report("11 multi-unit base within 2; advice wrapper within min(rho, base)",
         bad == 0, std::to_string(bad) + " violations");
}

void criterion_12_audits() {
  using harness::Setting;
  bool ok = true;
  std::string detail;
  for (Setting s : {Setting::FacilityMbb, Setting::FacilityCmp, Setting::Scheduling,
                    Setting::House, Setting::MultiUnit}) {
    const auto rep = harness::audit_sp(s, Seed{20240807}, 10000);
    if (!rep.violations.empty()) {
      ok = false;
      detail += harness::setting_to_string(s) + ":" +
                std::to_string(rep.violations.size()) + " ";
    }
  }
  harness::AuditOptions fault;
  fault.fault_inject_payments = true;
  const auto injected =
      harness::audit_sp(Setting::Scheduling, Seed{20240807}, 10000, fault);
  if (injected.violations.empty()) {
    ok = false;
    detail += "fault-injection undetected";
  }
  report("12 strategyproofness audits clean; injected fault detected", ok, detail);
}

void criterion_13_oracles() {
  Rng rng{Seed{20240808}};
  std::size_t bad = 0;
  for (int t = 0; t < 200; ++t) {
    Rng sub = rng.split(static_cast<std::uint64_t>(t));
    SchedulingInstance inst(3, 3);
    for (double& c : inst.costs) c = sub.uniform(0.0, 1.0);
    std::vector<double> load(3, 0.0);
    // tolerance absorbs summation-order rounding between the two evaluators
    if (std::abs(opt_makespan(inst).second -
                 makespan_recursive(inst, 0, load)) > 1e-12)
      ++bad;
  }
  for (int t = 0; t < 200; ++t) {
    Rng sub = rng.split(1000 + static_cast<std::uint64_t>(t));
    ValuationMatrix v(5, Normalization::None);
    for (double& x : v.values) x = sub.uniform();
    if (std::abs(opt_matching(v).second - matching_brute(v)) > 1e-12) ++bad;
  }
  for (int t = 0; t < 200; ++t) {
    Rng sub = rng.split(2000 + static_cast<std::uint64_t>(t));
    std::vector<Point2> pts(20);
    for (auto& p : pts) p = {sub.uniform(), sub.uniform()};
    if (std::abs(opt_egalitarian(FacilityInstance(pts)).second -
                 mec_radius_brute(pts)) > 1e-9)
      ++bad;
  }
  report("13 exact oracles match independent brute forces", bad == 0,
         std::to_string(bad) + " mismatches");
}

void criterion_14_sweep_pipeline() {
  // seeded two-cluster synthetic set standing in for the location datasets
  Rng rng{Seed{20240809}};
  std::vector<Point2> pts;
  pts.reserve(500);
  for (int i = 0; i < 250; ++i)
    pts.push_back({0.25 + 0.05 * rng.gauss(), 0.25 + 0.05 * rng.gauss()});
  for (int i = 0; i < 250; ++i)
    pts.push_back({0.75 + 0.05 * rng.gauss(), 0.75 + 0.05 * rng.gauss()});
  FacilityInstance inst(std::move(pts));

  bool ok = true;
  std::string detail;
  for (double lambda : {0.75, 0.99}) {
    const auto rows = harness::run_cmp_sweep(inst, 20, lambda, TieBreak::Low);
    if (rows.size() != 400) {
      ok = false;
      detail += "rows=" + std::to_string(rows.size()) + " ";
      continue;
    }
    double max_rho = 0.0, max_eta = 0.0;
    for (const auto& r : rows) {
      if (!r.eta || r.rho_hat > *r.eta + 1.0 + 1e-9) {
        ok = false;
        detail += "eta bound broken ";
        break;
      }
      max_rho = std::max(max_rho, r.rho_hat);
      max_eta = std::max(max_eta, *r.eta);
    }
    if (max_eta < max_rho - 1.0) {
      ok = false;
      detail += "eta does not dominate rho-1 ";
    }
  }
  report("14 two-cluster sweep: schema, row-wise eta bound, eta dominance", ok,
         detail);
}

}  // namespace

int main() {
  criterion_1_mbb_tightness();
  criterion_2_mbb_bound();
  criterion_3_cmp_four_corners();
  criterion_4_cmp_asymptotic();
  criterion_5_eta_bound();
  criterion_6_asg_consistency();
  criterion_7_asg_smoothness();
  criterion_8_asg_tightness();
  criterion_9_ttc_tightness();
  criterion_10_ttc_bounds();
  criterion_11_multiunit_bound();
  criterion_12_audits();
  criterion_13_oracles();
  criterion_14_sweep_pipeline();

  if (failures == 0) {
    std::printf("ALL 14 CRITERIA PASSED\n");
    return 0;
  }
  std::printf("%d CRITERIA FAILED\n", failures);
  return 1;
}
