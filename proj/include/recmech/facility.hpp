#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "recmech/core.hpp"

namespace recmech {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double dist(Point2 a, Point2 b);

// Agent locations; the facility location types.
struct FacilityInstance {
  std::vector<Point2> points;

  explicit FacilityInstance(std::vector<Point2> pts);
  std::size_t size() const { return points.size(); }
};

enum class TieBreak { Low, High };

struct CmpConfig {
  double lambda = 0.0;  // confidence in the recommendation, in [0,1)
  TieBreak tie_break = TieBreak::Low;
};

enum class FacilityObjective { Egalitarian, Utilitarian };

double egalitarian_cost(const FacilityInstance& inst, Point2 a);
double utilitarian_cost(const FacilityInstance& inst, Point2 a);

/// Clamps the recommendation into [min xs, max xs].
double minmax_p(std::span<const double> xs, double a_hat);

/// Median that always returns an element of the multiset; even lengths pick
/// the lower or upper middle element per `tb`.
double median_of(std::vector<double> values, TieBreak tb);

/// Minimum-bounding-box mechanism: per-coordinate clamp of the recommendation.
/// The report is built against the egalitarian optimum.
MechanismOutcome<Point2> mbb(const FacilityInstance& inst, Point2 a_hat);

/// The MBB facility alone, without the optimum-backed report (for audits and
/// sweeps that score many runs).
Point2 mbb_point(const FacilityInstance& inst, Point2 a_hat);

/// Coordinatewise median over the n reports plus floor(lambda*n) copies of
/// the recommendation. The report is built against the utilitarian optimum.
MechanismOutcome<Point2> cmp(const FacilityInstance& inst, Point2 a_hat,
                             const CmpConfig& cfg);

/// The CMP facility alone, without the optimum-backed report.
Point2 cmp_point(const FacilityInstance& inst, Point2 a_hat, const CmpConfig& cfg);

/// Coordinatewise median of the reports alone (no recommendation copies).
Point2 coordinatewise_median(const FacilityInstance& inst, TieBreak tb);

/// Center and radius of the minimum enclosing circle (exact, incremental
/// construction with explicit 1-, 2- and 3-point support sets).
std::pair<Point2, double> opt_egalitarian(const FacilityInstance& inst);

struct WeiszfeldError : std::runtime_error {
  Point2 last_iterate;
  explicit WeiszfeldError(Point2 last);
};

/// Geometric median via Weiszfeld iteration to tolerance 1e-9. Throws
/// WeiszfeldError carrying the last iterate if the iteration cap is hit.
std::pair<Point2, double> opt_utilitarian(const FacilityInstance& inst);

/// Prediction error: d(a*, a_hat)/Opt (egalitarian) or n*d(a*, a_hat)/Opt
/// (utilitarian). Requires Opt > 0.
double eta(const FacilityInstance& inst, Point2 a_hat, FacilityObjective objective);

}  // namespace recmech
