#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace recmech {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;

enum class Objective { Minimize, Maximize };

// Value of the recommended outcome and of the mechanism's outcome, both
// measured against the optimum on the true input.
struct QualityReport {
  double mech_value = 0.0;
  double opt_value = 0.0;
  double advice_value = 0.0;
  double rho_hat = 1.0;  // quality of recommendation, >= 1 or +inf
  double ratio = 1.0;    // realized approximation ratio, >= 1 or +inf
  std::optional<double> eta;

  std::string to_json() const;
};

/// Builds a QualityReport from raw objective values. A zero optimum maps the
/// ratios to +inf when the numerator is positive and to 1 when both are zero.
QualityReport make_report(Objective objective, double mech_value, double opt_value,
                          double advice_value,
                          std::optional<double> eta = std::nullopt);

template <typename A>
struct MechanismOutcome {
  A alternative{};
  std::vector<double> payments;  // all-zero in money-free settings
  QualityReport report;
};

struct Seed {
  std::uint64_t value = 0;
};

// Deterministic pseudorandom stream. All draws are implemented on top of the
// raw 64-bit output so that identical seeds reproduce identical values on
// every platform (the standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(Seed seed) : state_(seed.value) {}

  std::uint64_t next_u64();

  // uniform in [0, 1)
  double uniform();
  // uniform in [lo, hi)
  double uniform(double lo, double hi);
  // uniform integer in [0, n)
  std::uint64_t index(std::uint64_t n);
  // standard normal via Box-Muller
  double gauss();

  // Independent substream for work unit `i`; the split is stable so trials
  // can run in any order (or in parallel) with identical results.
  Rng split(std::uint64_t i) const;

 private:
  std::uint64_t state_;
  std::optional<double> spare_gauss_;
};

}  // namespace recmech
