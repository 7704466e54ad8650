#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "recmech/core.hpp"

namespace recmech {

enum class Normalization { UnitRange, UnitSum, None };

// n x n values, t_ij = agent i's value for house j.
struct ValuationMatrix {
  std::size_t n = 0;
  std::vector<double> values;  // row-major
  Normalization normalization = Normalization::None;

  ValuationMatrix() = default;
  ValuationMatrix(std::size_t n_, Normalization norm, double fill = 0.0);

  double& at(std::size_t agent, std::size_t house) { return values[agent * n + house]; }
  double at(std::size_t agent, std::size_t house) const { return values[agent * n + house]; }

  /// Nonnegativity plus the declared normalization (tolerance 1e-9); a
  /// malformed row is an error, never silently renormalized.
  void validate() const;
};

struct Matching {
  std::vector<std::size_t> house_of;  // 0-based permutation of [0, n)

  void validate(std::size_t n) const;  // bijection check
};

double welfare(const ValuationMatrix& v, const Matching& m);

/// Top Trading Cycles seeded with the recommended matching as endowment.
/// Preference ties go to the lowest house index; all cycles present in a
/// round are cleared in that round. The report is built against opt_matching.
MechanismOutcome<Matching> ttc(const ValuationMatrix& v, const Matching& endowment);

/// Maximum-weight perfect matching (augmenting paths with potentials), n <= 1e3.
std::pair<Matching, double> opt_matching(const ValuationMatrix& v);

/// Lower-bound family: agent 1 slightly prefers house 2, everyone else values
/// their own house highest and the next house at `next_value`; the cyclic
/// endowment (2,3,...,n,1) freezes TTC. For unit-sum the diagonal carries
/// 1 - next_value instead of 1.
ValuationMatrix make_ttc_lb_matrix(std::size_t n, double eps, double next_value,
                                   Normalization norm);

/// The endowment (2,3,...,n,1), 0-based.
Matching cyclic_endowment(std::size_t n);

/// Instance on which ttc realizes quality-of-recommendation rho_hat as eps->0.
/// Unit-range requires 1 <= rho_hat <= n; unit-sum 1 <= rho_hat <= n^2-n+1.
std::pair<ValuationMatrix, Matching> gen_ttc_lb(std::size_t n, double rho_hat,
                                                Normalization norm, double eps);

ValuationMatrix read_valuations_csv(const std::string& path, Normalization norm);

/// 1-indexed comma-separated house list, matching the (2,3,...,n,1) notation.
std::string matching_to_string(const Matching& m);
Matching matching_from_string(const std::string& text);

}  // namespace recmech
