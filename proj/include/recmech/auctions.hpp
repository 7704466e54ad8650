#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "recmech/core.hpp"

namespace recmech {

// n bidders, m identical items; curves[i][q] = bidder i's value for q items,
// normalized (v(0)=0) and weakly nondecreasing.
struct MultiUnitInstance {
  std::size_t bidders = 0;
  std::size_t items = 0;
  std::vector<std::vector<double>> curves;  // each of length items+1

  MultiUnitInstance() = default;
  MultiUnitInstance(std::size_t n, std::size_t m);

  void validate() const;
};

struct BundleAllocation {
  std::vector<std::size_t> count_of;  // items per bidder, sum <= m
};

double mu_welfare(const MultiUnitInstance& inst, const BundleAllocation& a);

/// Base maximal-in-range mechanism: the items are split into n^2 bundles
/// (sizes floor(m/n^2), the first m mod n^2 bundles one item larger) and the
/// whole bundles are allocated optimally. Ties go to the lexicographically
/// smallest count vector.
BundleAllocation mu_mir_base(const MultiUnitInstance& inst);

/// Welfare-maximum of the base output and the recommendation, with VCG
/// payments over the extended range (whole-bundle allocations plus a_hat).
MechanismOutcome<BundleAllocation> mir_with_advice(const MultiUnitInstance& inst,
                                                   const BundleAllocation& a_hat);

/// Exact optimum over all item splits (DP over bidders x items, n*m^2 <= 1e8).
std::pair<BundleAllocation, double> mu_opt(const MultiUnitInstance& inst);

/// Clarke pivot over an explicit finite range: the chosen allocation is the
/// welfare maximizer (lexicographic tie-break) and each bidder pays the
/// externality it imposes on the others within the range.
std::vector<double> vcg_payments_over_range(const MultiUnitInstance& inst,
                                            std::span<const BundleAllocation> range);

/// Generic advice wrapper over an injected base mechanism: keeps whichever of
/// the base outcome and the recommendation the welfare callback scores higher
/// (the base outcome on ties), so the ratio is min{rho_hat, base ratio}.
template <typename A, typename WelfareFn>
A with_advice(const WelfareFn& welfare_of, A base, A a_hat) {
  return welfare_of(a_hat) > welfare_of(base) ? std::move(a_hat) : std::move(base);
}

MultiUnitInstance read_multiunit_csv(const std::string& path);

std::string bundle_to_string(const BundleAllocation& a);
BundleAllocation bundle_from_string(const std::string& text);

}  // namespace recmech
