#include "recmech/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "recmech/auctions.hpp"
#include "recmech/core.hpp"
#include "recmech/csv.hpp"
#include "recmech/facility.hpp"
#include "recmech/harness.hpp"
#include "recmech/house.hpp"
#include "recmech/instances.hpp"
#include "recmech/scheduling.hpp"

namespace recmech {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << payload;
}

std::string dump(const json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

json report_json(const QualityReport& r) { return json::parse(r.to_json()); }

Point2 parse_point(const std::string& text) {
  const auto fields = csv::split_line(text);
  if (fields.size() != 2) throw std::runtime_error("advice point needs two coordinates");
  return {csv::parse_real(fields[0], "<advice>", 1),
          csv::parse_real(fields[1], "<advice>", 1)};
}

TieBreak parse_tie(const std::string& text) {
  if (text == "low") return TieBreak::Low;
  if (text == "high") return TieBreak::High;
  throw UsageError("--tie must be low or high");
}

Normalization parse_norm(const std::string& text) {
  if (text == "unit-range") return Normalization::UnitRange;
  if (text == "unit-sum") return Normalization::UnitSum;
  if (text == "none") return Normalization::None;
  throw UsageError("--normalization must be unit-range, unit-sum or none");
}

std::string advice_text(const std::string& advice, const std::string& advice_file) {
  if (!advice.empty() && !advice_file.empty()) {
    throw UsageError("--advice and --advice-file are mutually exclusive");
  }
  if (!advice_file.empty()) return csv::read_lines(advice_file).front();
  if (advice.empty()) throw UsageError("missing --advice (or --advice-file)");
  return advice;
}

json payments_json(const std::vector<double>& p) {
  json arr = json::array();
  for (double v : p) arr.push_back(std::isfinite(v) ? json(v) : json(csv::format_real(v)));
  return arr;
}

// --- subcommand state -------------------------------------------------------

struct Flags {
  std::string mechanism;  // run/sweep positional
  std::string input;
  std::string advice;
  std::string advice_file;
  std::string advice_counts;
  std::string out;
  std::string format = "json";
  std::string tie = "low";
  std::string normalization = "unit-range";
  std::string setting;
  std::string named;
  double lambda = 0.0;
  double beta = 1.0;
  double rho = 1.5;
  double eps = 1e-6;
  std::size_t grid = 10;
  std::size_t trials = 1000;
  std::size_t n = 3;
  std::size_t m = 3;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  bool fault_inject = false;
  bool pretty = false;
};

int do_run(const Flags& f) {
  json out;
  if (f.mechanism == "facility-mbb" || f.mechanism == "facility-cmp") {
    const FacilityInstance pts = harness::ingest_points_csv(f.input);
    const Point2 a_hat = parse_point(advice_text(f.advice, f.advice_file));
    MechanismOutcome<Point2> res =
        f.mechanism == "facility-mbb"
            ? mbb(pts, a_hat)
            : cmp(pts, a_hat, CmpConfig{f.lambda, parse_tie(f.tie)});
    out["facility"] = {res.alternative.x, res.alternative.y};
    out["payments"] = payments_json(res.payments);
    out["report"] = report_json(res.report);
  } else if (f.mechanism == "scheduling-asg") {
    const SchedulingInstance inst = read_scheduling_csv(f.input);
    const Assignment a_hat =
        assignment_from_string(advice_text(f.advice, f.advice_file));
    const auto res = asg(inst, a_hat, AsgConfig{f.beta});
    out["assignment"] = assignment_to_string(res.alternative);
    out["payments"] = payments_json(res.payments);
    out["report"] = report_json(res.report);
  } else if (f.mechanism == "house-ttc") {
    const ValuationMatrix v =
        read_valuations_csv(f.input, parse_norm(f.normalization));
    const Matching endowment =
        matching_from_string(advice_text(f.advice, f.advice_file));
    const auto res = ttc(v, endowment);
    out["matching"] = matching_to_string(res.alternative);
    out["payments"] = payments_json(res.payments);
    out["report"] = report_json(res.report);
  } else if (f.mechanism == "multi-unit-mir") {
    const MultiUnitInstance inst = read_multiunit_csv(f.input);
    if (f.advice_counts.empty()) throw UsageError("missing --advice-counts");
    const BundleAllocation a_hat = bundle_from_string(f.advice_counts);
    const auto res = mir_with_advice(inst, a_hat);
    out["allocation"] = bundle_to_string(res.alternative);
    out["payments"] = payments_json(res.payments);
    out["report"] = report_json(res.report);
  } else {
    throw UsageError("unknown mechanism: " + f.mechanism);
  }
  emit(dump(out, f.pretty), f.out);
  return 0;
}

int do_sweep(const Flags& f) {
  if (f.mechanism != "facility-cmp") {
    throw UsageError("sweep supports only facility-cmp");
  }
  const FacilityInstance pts = harness::ingest_points_csv(f.input);
  const auto rows =
      harness::run_cmp_sweep(pts, f.grid, f.lambda, parse_tie(f.tie));
  if (f.format == "csv") {
    emit(harness::sweep_to_csv(rows), f.out);
  } else if (f.format == "json") {
    emit(harness::sweep_to_jsonl(rows), f.out);
  } else {
    throw UsageError("--format must be csv or json");
  }
  return 0;
}

int do_audit(const Flags& f) {
  harness::AuditOptions opts;
  opts.fault_inject_payments = f.fault_inject;
  opts.threads = f.threads;
  const harness::AuditReport report = harness::audit_sp(
      harness::setting_from_string(f.setting), Seed{f.seed}, f.trials, opts);
  emit(dump(json::parse(report.to_json()), f.pretty), f.out);
  return 0;
}

int do_gen(const Flags& f) {
  instances::NamedKey key;
  key.name = f.named;
  key.rho_hat = f.rho;
  key.n = f.n;
  key.m = f.m;
  key.beta = f.beta;
  key.eps = f.eps;
  key.norm = parse_norm(f.normalization);
  const instances::NamedPayload payload = instances::build(key);

  json meta;
  meta["named"] = f.named;
  if (const auto* fa = std::get_if<instances::FacilityWithAdvice>(&payload)) {
    std::string body = "x,y\n";
    for (const Point2& p : fa->points.points) {
      body += csv::format_real(p.x) + "," + csv::format_real(p.y) + "\n";
    }
    emit(body, f.out);
    meta["advice"] =
        csv::format_real(fa->advice.x) + "," + csv::format_real(fa->advice.y);
  } else if (const auto* sa = std::get_if<instances::SchedulingWithAdvice>(&payload)) {
    emit(scheduling_to_csv(sa->costs), f.out);
    meta["advice"] = assignment_to_string(sa->advice);
  } else if (const auto* sp = std::get_if<instances::SchedulingPair>(&payload)) {
    emit(scheduling_to_csv(sp->predicted), f.out);
    if (!f.out.empty()) {
      emit(scheduling_to_csv(sp->actual), f.out + ".actual");
      meta["actual"] = f.out + ".actual";
    }
    meta["advice"] = assignment_to_string(sp->advice);
  } else if (const auto* ha = std::get_if<instances::HouseWithAdvice>(&payload)) {
    std::string body;
    for (std::size_t i = 0; i < ha->values.n; ++i) {
      for (std::size_t j = 0; j < ha->values.n; ++j) {
        if (j > 0) body += ',';
        body += csv::format_real(ha->values.at(i, j));
      }
      body += '\n';
    }
    emit(body, f.out);
    meta["advice"] = matching_to_string(ha->endowment);
  }
  // diagnostics (advice, companion paths) go to stderr so --out stays pure data
  std::cerr << meta.dump() << '\n';
  return 0;
}

int do_oracle(const Flags& f) {
  json out;
  if (f.setting == "facility-egalitarian") {
    const auto [center, radius] = opt_egalitarian(harness::ingest_points_csv(f.input));
    out["solution"] = {center.x, center.y};
    out["value"] = radius;
  } else if (f.setting == "facility-utilitarian") {
    const auto [median, cost] = opt_utilitarian(harness::ingest_points_csv(f.input));
    out["solution"] = {median.x, median.y};
    out["value"] = cost;
  } else if (f.setting == "scheduling") {
    const auto [assignment, value] = opt_makespan(read_scheduling_csv(f.input));
    out["solution"] = assignment_to_string(assignment);
    out["value"] = value;
  } else if (f.setting == "house") {
    const auto [matching, value] =
        opt_matching(read_valuations_csv(f.input, parse_norm(f.normalization)));
    out["solution"] = matching_to_string(matching);
    out["value"] = value;
  } else if (f.setting == "multi-unit") {
    const auto [alloc, value] = mu_opt(read_multiunit_csv(f.input));
    out["solution"] = bundle_to_string(alloc);
    out["value"] = value;
  } else {
    throw UsageError("unknown oracle setting: " + f.setting);
  }
  emit(dump(out, f.pretty), f.out);
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  Flags f;
  CLI::App app{"Strategyproof mechanisms with an output recommendation"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", f.out, "Write output to this path instead of stdout");
    sub->add_flag("--pretty", f.pretty, "Indent JSON output");
  };

  CLI::App* run = app.add_subcommand(
      "run", "Run one mechanism (facility-mbb, facility-cmp, scheduling-asg, "
             "house-ttc, multi-unit-mir) and print its outcome and report");
  run->add_option("mechanism", f.mechanism, "Mechanism name")->required();
  run->add_option("--input", f.input, "Instance CSV")->required();
  run->add_option("--advice", f.advice, "Inline recommendation");
  run->add_option("--advice-file", f.advice_file, "Recommendation from file (first line)");
  run->add_option("--advice-counts", f.advice_counts, "Recommended item counts (multi-unit)");
  run->add_option("--lambda", f.lambda, "Confidence in the recommendation [0,1)");
  run->add_option("--beta", f.beta, "Scheduling confidence in [1, n]");
  run->add_option("--tie", f.tie, "Median tie-break: low|high");
  run->add_option("--normalization", f.normalization, "unit-range|unit-sum|none");
  add_common(run);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Grid of recommendations over the input's bounding box");
  sweep->add_option("mechanism", f.mechanism, "Mechanism name (facility-cmp)")->required();
  sweep->add_option("--input", f.input, "Points CSV")->required();
  sweep->add_option("--grid", f.grid, "Grid resolution k (k*k predictions)");
  sweep->add_option("--lambda", f.lambda, "Confidence in the recommendation [0,1)");
  sweep->add_option("--tie", f.tie, "Median tie-break: low|high");
  sweep->add_option("--format", f.format, "csv|json");
  add_common(sweep);

  CLI::App* audit = app.add_subcommand("audit", "Randomized property audits");
  CLI::App* audit_sp_cmd = audit->add_subcommand(
      "sp", "Search for profitable unilateral misreports");
  audit_sp_cmd->add_option("--setting", f.setting,
                           "facility-mbb|facility-cmp|scheduling|house|multi-unit")
      ->required();
  audit_sp_cmd->add_option("--trials", f.trials, "Number of sampled instances");
  audit_sp_cmd->add_option("--seed", f.seed, "RNG seed");
  audit_sp_cmd->add_option("--threads", f.threads, "Worker cap (0 = all cores)");
  audit_sp_cmd->add_flag("--fault-inject", f.fault_inject,
                         "Flip payment signs (auditor self-test)");
  add_common(audit_sp_cmd);
  audit->require_subcommand(1);

  CLI::App* gen = app.add_subcommand("gen", "Emit a named adversarial instance");
  gen->add_option("--named", f.named, "Instance family key")->required();
  gen->add_option("--rho", f.rho, "Target quality of recommendation");
  gen->add_option("--n", f.n, "Agents / machines");
  gen->add_option("--m", f.m, "Jobs / cluster size");
  gen->add_option("--beta", f.beta, "Scheduling confidence");
  gen->add_option("--eps", f.eps, "Construction epsilon");
  gen->add_option("--normalization", f.normalization, "unit-range|unit-sum|none");
  add_common(gen);

  CLI::App* oracle = app.add_subcommand("oracle", "Exact optimum for an instance");
  oracle->add_option("setting", f.setting,
                     "facility-egalitarian|facility-utilitarian|scheduling|house|multi-unit")
      ->required();
  oracle->add_option("--input", f.input, "Instance CSV")->required();
  oracle->add_option("--normalization", f.normalization, "unit-range|unit-sum|none");
  add_common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return do_run(f);
    if (sweep->parsed()) return do_sweep(f);
    if (audit->parsed()) return do_audit(f);
    if (gen->parsed()) return do_gen(f);
    if (oracle->parsed()) return do_oracle(f);
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace recmech
