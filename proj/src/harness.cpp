#include "recmech/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "recmech/auctions.hpp"
#include "recmech/csv.hpp"
#include "recmech/house.hpp"
#include "recmech/instances.hpp"
#include "recmech/scheduling.hpp"

namespace recmech::harness {
namespace {

constexpr double kGainTol = 1e-9;

struct TrialResult {
  std::vector<Violation> violations;
  double max_gain = -std::numeric_limits<double>::infinity();
};

void record(TrialResult& out, std::uint64_t trial, std::size_t agent,
            std::string what, double gain) {
  out.max_gain = std::max(out.max_gain, gain);
  if (gain > kGainTol) {
    out.violations.push_back({trial, agent, std::move(what), gain});
  }
}

double signed_payment(double p, const AuditOptions& opts) {
  return opts.fault_inject_payments ? -p : p;
}

// --- per-setting trials -----------------------------------------------------

TrialResult facility_trial(std::uint64_t trial, Rng rng, const AuditOptions& opts,
                           bool with_median_copies) {
  TrialResult out;
  auto [inst, advice] = instances::sample_facility(
      rng, with_median_copies ? FacilityObjective::Utilitarian
                              : FacilityObjective::Egalitarian,
      1, 20);
  CmpConfig cfg{rng.uniform(0.0, 1.0 - 1e-12), TieBreak::Low};
  const auto facility_at = [&](const FacilityInstance& reported) {
    return with_median_copies ? cmp_point(reported, advice, cfg)
                              : mbb_point(reported, advice);
  };

  const std::size_t agent = static_cast<std::size_t>(rng.index(inst.size()));
  const Point2 truth = inst.points[agent];
  const double u_true = -dist(truth, facility_at(inst));

  const double sigmas[] = {0.01, 0.1, 1.0};
  for (std::size_t k = 0; k < opts.misreports_per_trial; ++k) {
    std::vector<Point2> pts = inst.points;
    std::string what;
    if (k % 2 == 0) {
      const double sigma = sigmas[(k / 2) % 3];
      pts[agent] = {truth.x + sigma * rng.gauss(), truth.y + sigma * rng.gauss()};
      what = "gauss-shift sigma=" + csv::format_real(sigma);
    } else {
      pts[agent] = {rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
      what = "large-jump";
    }
    FacilityInstance reported(std::move(pts));
    const double u = -dist(truth, facility_at(reported));
    record(out, trial, agent, what, u - u_true);
  }
  return out;
}

double machine_utility(const SchedulingInstance& truth,
                       const SchedulingInstance& reported,
                       const std::vector<double>& weights, std::size_t machine,
                       const AuditOptions& opts) {
  double u = 0.0;
  for (std::size_t j = 0; j < truth.jobs; ++j) {
    const auto [winner, payment] = pay_per_job(reported, weights, j);
    if (winner == machine) u += signed_payment(payment, opts) - truth.at(machine, j);
  }
  return u;
}

TrialResult scheduling_trial(std::uint64_t trial, Rng rng, const AuditOptions& opts) {
  TrialResult out;
  auto [inst, advice] = instances::sample_scheduling(rng, 3, 3, /*min_n=*/2);
  const std::size_t n = inst.machines;
  const std::size_t m = inst.jobs;
  const double beta = rng.uniform(1.0, static_cast<double>(n));
  std::vector<double> weights(n * m, static_cast<double>(n) / beta);
  for (std::size_t j = 0; j < m; ++j) weights[advice.machine_of[j] * m + j] = 1.0;

  const std::size_t agent = static_cast<std::size_t>(rng.index(n));
  const double u_true = machine_utility(inst, inst, weights, agent, opts);

  for (std::size_t k = 0; k < opts.misreports_per_trial; ++k) {
    SchedulingInstance reported = inst;
    std::string what;
    switch (k % 4) {
      case 0: {
        const double f = rng.uniform(0.125, 8.0);
        for (std::size_t j = 0; j < m; ++j) reported.at(agent, j) *= f;
        what = "scale-row";
        break;
      }
      case 1:
        for (std::size_t j = 0; j < m; ++j) {
          reported.at(agent, j) *= rng.uniform(0.125, 8.0);
        }
        what = "scale-entries";
        break;
      case 2:
        reported.at(agent, static_cast<std::size_t>(rng.index(m))) = kInf;
        what = "inf-entry";
        break;
      default:
        for (std::size_t j = 0; j < m; ++j) reported.at(agent, j) = kInf;
        what = "inf-row";
        break;
    }
    const double u = machine_utility(inst, reported, weights, agent, opts);
    record(out, trial, agent, what, u - u_true);
  }
  return out;
}

TrialResult house_trial(std::uint64_t trial, Rng rng, const AuditOptions& opts) {
  TrialResult out;
  const Normalization norm =
      rng.uniform() < 0.5 ? Normalization::UnitRange : Normalization::UnitSum;
  auto [values, endowment] = instances::sample_house(rng, norm, 6);
  const std::size_t n = values.n;
  const std::size_t agent = static_cast<std::size_t>(rng.index(n));

  const auto utility = [&](const ValuationMatrix& reported) {
    const Matching assigned = ttc(reported, endowment).alternative;
    return values.at(agent, assigned.house_of[agent]);
  };
  const double u_true = utility(values);

  for (std::size_t k = 0; k < opts.misreports_per_trial; ++k) {
    ValuationMatrix reported = values;
    std::string what;
    if (k % 2 == 0) {
      // uniform random permutation of the deviator's row
      for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.index(i));
        std::swap(reported.at(agent, i - 1), reported.at(agent, j));
      }
      what = "permute-row";
    } else {
      const std::size_t a = static_cast<std::size_t>(rng.index(n));
      const std::size_t b = static_cast<std::size_t>(rng.index(n));
      std::swap(reported.at(agent, a), reported.at(agent, b));
      what = "swap-values";
    }
    record(out, trial, agent, what, utility(reported) - u_true);
  }
  return out;
}

TrialResult multiunit_trial(std::uint64_t trial, Rng rng, const AuditOptions& opts) {
  TrialResult out;
  auto [inst, advice] = instances::sample_multiunit(rng, 3, 6);
  const std::size_t agent = static_cast<std::size_t>(rng.index(inst.bidders));

  const auto utility = [&](const MultiUnitInstance& reported) {
    const auto res = mir_with_advice(reported, advice);
    return inst.curves[agent][res.alternative.count_of[agent]] -
           signed_payment(res.payments[agent], opts);
  };
  const double u_true = utility(inst);

  for (std::size_t k = 0; k < opts.misreports_per_trial; ++k) {
    MultiUnitInstance reported = inst;
    std::string what;
    if (k % 4 == 3) {
      std::fill(reported.curves[agent].begin(), reported.curves[agent].end(), 0.0);
      what = "zero-curve";
    } else {
      // rescale the curve's increments; stays monotone and normalized
      auto& curve = reported.curves[agent];
      double acc = 0.0;
      for (std::size_t q = 1; q <= inst.items; ++q) {
        const double inc = inst.curves[agent][q] - inst.curves[agent][q - 1];
        acc += inc * rng.uniform(0.125, 8.0);
        curve[q] = acc;
      }
      what = "rescale-curve";
    }
    record(out, trial, agent, what, utility(reported) - u_true);
  }
  return out;
}

TrialResult run_trial(Setting setting, std::uint64_t trial, Rng rng,
                      const AuditOptions& opts) {
  switch (setting) {
    case Setting::FacilityMbb:
      return facility_trial(trial, rng, opts, false);
    case Setting::FacilityCmp:
      return facility_trial(trial, rng, opts, true);
    case Setting::Scheduling:
      return scheduling_trial(trial, rng, opts);
    case Setting::House:
      return house_trial(trial, rng, opts);
    case Setting::MultiUnit:
      return multiunit_trial(trial, rng, opts);
  }
  throw std::invalid_argument("unknown audit setting");
}

nlohmann::json real_json(double v) {
  if (std::isfinite(v)) return v;
  return csv::format_real(v);
}

}  // namespace

Setting setting_from_string(const std::string& name) {
  if (name == "facility-mbb") return Setting::FacilityMbb;
  if (name == "facility-cmp") return Setting::FacilityCmp;
  if (name == "scheduling") return Setting::Scheduling;
  if (name == "house") return Setting::House;
  if (name == "multi-unit") return Setting::MultiUnit;
  throw std::invalid_argument("unknown setting: " + name);
}

std::string setting_to_string(Setting s) {
  switch (s) {
    case Setting::FacilityMbb: return "facility-mbb";
    case Setting::FacilityCmp: return "facility-cmp";
    case Setting::Scheduling: return "scheduling";
    case Setting::House: return "house";
    case Setting::MultiUnit: return "multi-unit";
  }
  return "?";
}

std::string AuditReport::to_json() const {
  nlohmann::json j;
  j["trials"] = trials;
  j["violations"] = nlohmann::json::array();
  for (const Violation& v : violations) {
    j["violations"].push_back({{"trial", v.trial},
                               {"agent", v.agent},
                               {"misreport", v.misreport},
                               {"gain", real_json(v.gain)}});
  }
  j["max_gain"] = real_json(max_gain);
  return j.dump();
}

AuditReport audit_sp(Setting setting, Seed seed, std::size_t trials,
                     const AuditOptions& opts) {
  if (trials < 1) throw std::invalid_argument("audit_sp: trials must be >= 1");
  if (opts.misreports_per_trial < 1) {
    throw std::invalid_argument("audit_sp: need at least one misreport per trial");
  }
  const Rng base{seed};
  std::vector<TrialResult> results(trials);

  std::size_t workers = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, trials);
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) {
      results[t] = run_trial(setting, t, base.split(t), opts);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < trials; t += workers) {
          results[t] = run_trial(setting, t, base.split(t), opts);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  AuditReport report;
  report.trials = trials;
  report.max_gain = -std::numeric_limits<double>::infinity();
  for (const TrialResult& r : results) {
    report.max_gain = std::max(report.max_gain, r.max_gain);
    report.violations.insert(report.violations.end(), r.violations.begin(),
                             r.violations.end());
  }
  return report;
}

std::vector<Point2> grid_predictions(const FacilityInstance& points, std::size_t k) {
  if (k < 1) throw std::invalid_argument("grid_predictions: k must be >= 1");
  double xmin = points.points[0].x, xmax = xmin;
  double ymin = points.points[0].y, ymax = ymin;
  for (const Point2& p : points.points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  std::vector<Point2> grid;
  std::set<std::pair<double, double>> seen;
  for (std::size_t ix = 0; ix < k; ++ix) {
    const double x =
        k == 1 ? xmin : xmin + static_cast<double>(ix) * (xmax - xmin) /
                                   static_cast<double>(k - 1);
    for (std::size_t iy = 0; iy < k; ++iy) {
      const double y =
          k == 1 ? ymin : ymin + static_cast<double>(iy) * (ymax - ymin) /
                                     static_cast<double>(k - 1);
      if (seen.insert({x, y}).second) grid.push_back({x, y});
    }
  }
  return grid;
}

std::vector<SweepRow> run_cmp_sweep(const FacilityInstance& points, std::size_t k,
                                    double lambda, TieBreak tie_break) {
  const auto [star, opt] = opt_utilitarian(points);
  if (opt <= 0.0) throw std::domain_error("run_cmp_sweep: optimum must be positive");
  const CmpConfig cfg{lambda, tie_break};
  const double n = static_cast<double>(points.size());

  std::vector<SweepRow> rows;
  const auto grid = grid_predictions(points, k);
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point2 a_hat = grid[i];
    SweepRow row;
    row.idx = i;
    row.param = lambda;
    row.rho_hat = utilitarian_cost(points, a_hat) / opt;
    row.eta = n * dist(star, a_hat) / opt;
    row.ratio = utilitarian_cost(points, cmp_point(points, a_hat, cfg)) / opt;
    rows.push_back(row);
  }
  return rows;
}

FacilityInstance ingest_points_csv(const std::string& path) {
  const auto lines = csv::read_lines(path);
  const auto header = csv::split_line(lines.front());
  const bool xy = header.size() == 2 && header[0] == "x" && header[1] == "y";
  const bool lonlat = header.size() == 2 && header[0] == "lon" && header[1] == "lat";
  if (!xy && !lonlat) {
    throw csv::ParseError(path, 1, "expected header x,y or lon,lat");
  }
  std::vector<Point2> pts;
  pts.reserve(lines.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = csv::split_line(lines[r]);
    if (fields.size() != 2) throw csv::ParseError(path, r + 1, "expected two fields");
    const double x = csv::parse_real(fields[0], path, r + 1);
    const double y = csv::parse_real(fields[1], path, r + 1);
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw csv::ParseError(path, r + 1, "non-finite coordinate");
    }
    pts.push_back({x, y});
  }
  if (pts.empty()) throw csv::ParseError(path, 1, "no data rows");
  return FacilityInstance(std::move(pts));
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "idx,param,rho_hat,eta,ratio\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.idx);
    out += ',';
    out += csv::format_real(r.param);
    out += ',';
    out += csv::format_real(r.rho_hat);
    out += ',';
    if (r.eta) out += csv::format_real(*r.eta);
    out += ',';
    out += csv::format_real(r.ratio);
    out += '\n';
  }
  return out;
}

std::string sweep_to_jsonl(const std::vector<SweepRow>& rows) {
  std::string out;
  for (const SweepRow& r : rows) {
    nlohmann::json j;
    j["idx"] = r.idx;
    j["param"] = real_json(r.param);
    j["rho_hat"] = real_json(r.rho_hat);
    j["eta"] = r.eta ? real_json(*r.eta) : nlohmann::json(nullptr);
    j["ratio"] = real_json(r.ratio);
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace recmech::harness
