#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recmech/core.hpp"
#include "recmech/facility.hpp"

namespace recmech::harness {

enum class Setting { FacilityMbb, FacilityCmp, Scheduling, House, MultiUnit };

Setting setting_from_string(const std::string& name);
std::string setting_to_string(Setting s);

struct Violation {
  std::uint64_t trial = 0;
  std::size_t agent = 0;
  std::string misreport;  // deterministic description of the deviation
  double gain = 0.0;      // utility gain over truthful reporting
};

struct AuditReport {
  std::size_t trials = 0;
  std::vector<Violation> violations;
  double max_gain = 0.0;  // largest gain seen across all misreports

  std::string to_json() const;
};

struct AuditOptions {
  // Flips the sign of every payment before computing utilities: a deliberate
  // fault that a sound auditor must flag (self-test of the audit itself).
  bool fault_inject_payments = false;
  std::size_t threads = 0;  // 0 = hardware concurrency
  std::size_t misreports_per_trial = 16;
};

/// Samples `trials` random instances; in each, one agent tries a batch of
/// setting-specific misreports and any strict utility gain > 1e-9 is recorded.
/// Identical seeds give identical reports regardless of thread count.
AuditReport audit_sp(Setting setting, Seed seed, std::size_t trials,
                     const AuditOptions& opts = {});

/// k x k axis-aligned grid over the bounding box of the points, inclusive of
/// corners (k=1: the minimum corner); exact duplicates from a degenerate box
/// are removed.
std::vector<Point2> grid_predictions(const FacilityInstance& points, std::size_t k);

struct SweepRow {
  std::size_t idx = 0;
  double param = 0.0;  // lambda (facility) or beta (scheduling)
  double rho_hat = 1.0;
  std::optional<double> eta;
  double ratio = 1.0;
};

/// One row per grid prediction: quality of recommendation, utilitarian
/// prediction error, and the CMP ratio. Requires a positive optimum.
std::vector<SweepRow> run_cmp_sweep(const FacilityInstance& points, std::size_t k,
                                    double lambda, TieBreak tie_break);

/// Reads a point set with header `x,y` or `lon,lat` (lon->x, lat->y); rows
/// with non-finite values are rejected with their row number.
FacilityInstance ingest_points_csv(const std::string& path);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_jsonl(const std::vector<SweepRow>& rows);

}  // namespace recmech::harness
