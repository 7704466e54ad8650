#include "recmech/core.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace recmech {

namespace {

double safe_ratio(double numerator, double denominator) {
  if (denominator > 0.0) return numerator / denominator;
  return numerator > 0.0 ? kInf : 1.0;
}

nlohmann::json json_number(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

QualityReport make_report(Objective objective, double mech_value, double opt_value,
                          double advice_value, std::optional<double> eta) {
  if (mech_value < 0.0 || opt_value < 0.0 || advice_value < 0.0)
    throw std::domain_error("make_report: negative objective value");
  if (eta && *eta < 0.0) throw std::domain_error("make_report: negative eta");

  QualityReport r;
  r.mech_value = mech_value;
  r.opt_value = opt_value;
  r.advice_value = advice_value;
  r.eta = eta;
  if (objective == Objective::Minimize) {
    r.rho_hat = safe_ratio(advice_value, opt_value);
    r.ratio = safe_ratio(mech_value, opt_value);
  } else {
    r.rho_hat = safe_ratio(opt_value, advice_value);
    r.ratio = safe_ratio(opt_value, mech_value);
  }
  return r;
}

std::string QualityReport::to_json() const {
  nlohmann::json j;
  j["mech_value"] = json_number(mech_value);
  j["opt_value"] = json_number(opt_value);
  j["advice_value"] = json_number(advice_value);
  j["rho_hat"] = json_number(rho_hat);
  j["ratio"] = json_number(ratio);
  j["eta"] = eta ? json_number(*eta) : nlohmann::json(nullptr);
  return j.dump();
}

namespace {

// splitmix64; also used to mix stream ids.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::index(std::uint64_t n) {
  if (n == 0) throw std::domain_error("Rng::index: empty range");
  // rejection sampling to avoid modulo bias
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % n;
}

double Rng::gauss() {
  if (spare_gauss_) {
    double v = *spare_gauss_;
    spare_gauss_.reset();
    return v;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_gauss_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Rng Rng::split(std::uint64_t i) const {
  return Rng(Seed{mix(state_ ^ mix(i + 0x5851f42d4c957f2dULL))});
}

}  // namespace recmech
