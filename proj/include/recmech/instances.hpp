#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "recmech/auctions.hpp"
#include "recmech/core.hpp"
#include "recmech/facility.hpp"
#include "recmech/house.hpp"
#include "recmech/scheduling.hpp"

namespace recmech::instances {

struct FacilityWithAdvice {
  FacilityInstance points;
  Point2 advice;
};

struct SchedulingWithAdvice {
  SchedulingInstance costs;
  Assignment advice;
};

// Predicted/actual instance pair sharing one recommendation.
struct SchedulingPair {
  SchedulingInstance predicted;
  SchedulingInstance actual;
  Assignment advice;
};

struct HouseWithAdvice {
  ValuationMatrix values;
  Matching endowment;
};

struct MultiUnitWithAdvice {
  MultiUnitInstance curves;
  BundleAllocation advice;
};

// --- Named adversarial instances -------------------------------------------

/// Three points on the unit circle with the recommendation on the main
/// diagonal at distance rho_hat - 1 from the center; the clamp keeps the
/// recommendation, so the egalitarian ratio is exactly rho_hat.
/// Requires 1 <= rho_hat <= 1 + sqrt(2).
FacilityWithAdvice fl_worst_max(double rho_hat);

/// 2m collinear-cluster points (1 left, m top, m-1 right) with advice (1,0);
/// the padded median drifts to the center and the utilitarian ratio
/// approaches sqrt(2) from below as m grows. Requires m >= 2.
FacilityWithAdvice fl_worst_sum(std::size_t m);

/// The four corners (+-1,+-1) with advice (0,1).
FacilityWithAdvice fl_sum1();

SchedulingWithAdvice sched_lb1(std::size_t n, double rho_hat, double beta, double eps);
SchedulingWithAdvice sched_lb2(std::size_t n, double rho_hat, double beta, double eps);
SchedulingPair sched_jump(std::size_t n, double eps);

HouseWithAdvice house_lb(std::size_t n, double rho_hat, Normalization norm, double eps);

using NamedPayload = std::variant<FacilityWithAdvice, SchedulingWithAdvice,
                                  SchedulingPair, HouseWithAdvice>;

// Kebab-case key plus the union of parameters the named families accept;
// unused fields are ignored by each family.
struct NamedKey {
  std::string name;  // e.g. "fl-worst-max"
  double rho_hat = 1.5;
  std::size_t n = 3;
  std::size_t m = 3;
  double beta = 1.0;
  double eps = 1e-6;
  Normalization norm = Normalization::UnitRange;
};

/// Builds the named instance, or throws std::invalid_argument for unknown
/// keys / out-of-range parameters (naming the violated condition).
NamedPayload build(const NamedKey& key);

std::vector<std::string> named_keys();

// --- Random samplers --------------------------------------------------------

/// Points i.i.d. uniform on [0,1]^2, n uniform in [min_n, max_n]. Advice is
/// 50/50 uniform on [-0.5,1.5]^2 or the optimum for `objective` plus small
/// Gaussian noise.
FacilityWithAdvice sample_facility(Rng& rng, FacilityObjective objective,
                                   std::size_t min_n = 1, std::size_t max_n = 50);

/// Costs i.i.d. uniform on (0.05, 1); advice 50/50 brute-force optimum or
/// uniform random assignment. Requires max_n^max_m within the oracle cap.
SchedulingWithAdvice sample_scheduling(Rng& rng, std::size_t max_n, std::size_t max_m,
                                       std::size_t min_n = 1);

/// Valuations normalized per `norm`; endowment 50/50 optimum matching or a
/// uniform random permutation.
HouseWithAdvice sample_house(Rng& rng, Normalization norm, std::size_t max_n);

/// Monotone normalized curves from uniform increments; advice 50/50 the exact
/// optimum or a uniform random feasible allocation.
MultiUnitWithAdvice sample_multiunit(Rng& rng, std::size_t max_n, std::size_t max_m);

}  // namespace recmech::instances
