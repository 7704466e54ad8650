#include "recmech/auctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "recmech/csv.hpp"

namespace recmech {
namespace {

void check_feasible(const MultiUnitInstance& inst, const BundleAllocation& a) {
  if (a.count_of.size() != inst.bidders) {
    throw std::invalid_argument("allocation has wrong number of bidders");
  }
  std::size_t total = 0;
  for (std::size_t c : a.count_of) {
    if (c > inst.items || inst.items - c < total) {
      throw std::invalid_argument("allocation exceeds the item supply");
    }
    total += c;
  }
}

// Bundle structure of the base range: n^2 bundles, the first (m mod n^2) one
// item larger than the rest.
struct BundleRange {
  std::size_t hi_size = 0;  // floor(m/n^2) + 1
  std::size_t hi_count = 0;
  std::size_t lo_size = 0;  // floor(m/n^2)
  std::size_t lo_count = 0;
};

BundleRange make_range(std::size_t n, std::size_t m) {
  BundleRange r;
  const std::size_t bundles = n * n;
  r.lo_size = m / bundles;
  r.hi_size = r.lo_size + 1;
  r.hi_count = m % bundles;
  r.lo_count = bundles - r.hi_count;
  if (r.lo_size == 0) r.lo_count = 0;  // empty bundles carry nothing
  return r;
}

// Optimal whole-bundle allocation for the given curves (suffix DP over
// bidders x remaining bundles of each size; lexicographically smallest item
// counts on ties).
std::pair<BundleAllocation, double> bundle_opt(
    const std::vector<std::vector<double>>& curves, const BundleRange& r) {
  const std::size_t n = curves.size();
  const std::size_t ha = r.hi_count + 1;
  const std::size_t lb = r.lo_count + 1;
  // best[i*ha*lb + a*lb + b]: max welfare for bidders i.. with a hi, b lo left.
  std::vector<double> best((n + 1) * ha * lb, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t a = 0; a < ha; ++a) {
      for (std::size_t b = 0; b < lb; ++b) {
        double w = -std::numeric_limits<double>::infinity();
        for (std::size_t da = 0; da <= a; ++da) {
          for (std::size_t db = 0; db <= b; ++db) {
            const std::size_t q = da * r.hi_size + db * r.lo_size;
            const double cand =
                curves[i][q] + best[(i + 1) * ha * lb + (a - da) * lb + (b - db)];
            if (cand > w) w = cand;
          }
        }
        best[i * ha * lb + a * lb + b] = w;
      }
    }
  }

  BundleAllocation out;
  out.count_of.assign(n, 0);
  std::size_t a = r.hi_count;
  std::size_t b = r.lo_count;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = best[i * ha * lb + a * lb + b];
    std::size_t pick_da = 0;
    std::size_t pick_db = 0;
    std::size_t pick_q = std::numeric_limits<std::size_t>::max();
    for (std::size_t da = 0; da <= a; ++da) {
      for (std::size_t db = 0; db <= b; ++db) {
        const std::size_t q = da * r.hi_size + db * r.lo_size;
        const double cand =
            curves[i][q] + best[(i + 1) * ha * lb + (a - da) * lb + (b - db)];
        if (cand == target && q < pick_q) {
          pick_q = q;
          pick_da = da;
          pick_db = db;
        }
      }
    }
    out.count_of[i] = pick_q;
    a -= pick_da;
    b -= pick_db;
  }
  return {out, best[0 * ha * lb + r.hi_count * lb + r.lo_count]};
}

std::vector<std::vector<double>> zeroed(std::vector<std::vector<double>> curves,
                                        std::size_t i) {
  std::fill(curves[i].begin(), curves[i].end(), 0.0);
  return curves;
}

double welfare_excluding(const MultiUnitInstance& inst, const BundleAllocation& a,
                         std::size_t excluded) {
  double w = 0.0;
  for (std::size_t i = 0; i < inst.bidders; ++i) {
    if (i != excluded) w += inst.curves[i][a.count_of[i]];
  }
  return w;
}

bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

MultiUnitInstance::MultiUnitInstance(std::size_t n, std::size_t m)
    : bidders(n), items(m), curves(n, std::vector<double>(m + 1, 0.0)) {}

void MultiUnitInstance::validate() const {
  if (bidders == 0) throw std::invalid_argument("instance needs at least one bidder");
  if (curves.size() != bidders) {
    throw std::invalid_argument("curve count does not match bidder count");
  }
  for (std::size_t i = 0; i < bidders; ++i) {
    const auto& v = curves[i];
    if (v.size() != items + 1) {
      throw std::invalid_argument("curve " + std::to_string(i) +
                                  " must have items+1 entries");
    }
    if (v[0] != 0.0) {
      throw std::invalid_argument("curve " + std::to_string(i) +
                                  " is not normalized (v(0) != 0)");
    }
    for (std::size_t q = 0; q + 1 < v.size(); ++q) {
      if (!std::isfinite(v[q + 1]) || v[q + 1] < v[q]) {
        throw std::invalid_argument("curve " + std::to_string(i) +
                                    " is not finite and weakly nondecreasing");
      }
    }
  }
}

double mu_welfare(const MultiUnitInstance& inst, const BundleAllocation& a) {
  inst.validate();
  check_feasible(inst, a);
  double w = 0.0;
  for (std::size_t i = 0; i < inst.bidders; ++i) w += inst.curves[i][a.count_of[i]];
  return w;
}

BundleAllocation mu_mir_base(const MultiUnitInstance& inst) {
  inst.validate();
  return bundle_opt(inst.curves, make_range(inst.bidders, inst.items)).first;
}

std::pair<BundleAllocation, double> mu_opt(const MultiUnitInstance& inst) {
  inst.validate();
  const std::size_t n = inst.bidders;
  const std::size_t m = inst.items;
  if (static_cast<double>(n) * static_cast<double>(m) * static_cast<double>(m) >
      1e8) {
    throw std::invalid_argument("instance too large for the exact optimum");
  }
  // best[i][q]: max welfare bidders i.. can extract from q items.
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t q = 0; q <= m; ++q) {
      double w = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k <= q; ++k) {
        const double cand = inst.curves[i][k] + best[i + 1][q - k];
        if (cand > w) w = cand;
      }
      best[i][q] = w;
    }
  }
  BundleAllocation out;
  out.count_of.assign(n, 0);
  std::size_t q = m;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k <= q; ++k) {
      if (inst.curves[i][k] + best[i + 1][q - k] == best[i][q]) {
        out.count_of[i] = k;
        q -= k;
        break;
      }
    }
  }
  return {out, best[0][m]};
}

MechanismOutcome<BundleAllocation> mir_with_advice(const MultiUnitInstance& inst,
                                                   const BundleAllocation& a_hat) {
  inst.validate();
  check_feasible(inst, a_hat);
  const BundleRange range = make_range(inst.bidders, inst.items);
  const auto [base, base_welfare] = bundle_opt(inst.curves, range);
  const double advice_welfare = welfare_excluding(inst, a_hat, inst.bidders);

  BundleAllocation chosen = base;
  double chosen_welfare = base_welfare;
  if (advice_welfare > base_welfare ||
      (advice_welfare == base_welfare && lex_less(a_hat.count_of, base.count_of))) {
    chosen = a_hat;
    chosen_welfare = advice_welfare;
  }

  // Clarke pivot over the extended range: recompute the constrained optimum
  // with each bidder's curve zeroed out.
  std::vector<double> payments(inst.bidders, 0.0);
  for (std::size_t i = 0; i < inst.bidders; ++i) {
    const double best_without_i =
        std::max(bundle_opt(zeroed(inst.curves, i), range).second,
                 welfare_excluding(inst, a_hat, i));
    payments[i] = best_without_i - welfare_excluding(inst, chosen, i);
  }

  const double opt = mu_opt(inst).second;
  MechanismOutcome<BundleAllocation> out;
  out.alternative = chosen;
  out.payments = std::move(payments);
  out.report = make_report(Objective::Maximize, chosen_welfare, opt, advice_welfare);
  return out;
}

std::vector<double> vcg_payments_over_range(const MultiUnitInstance& inst,
                                            std::span<const BundleAllocation> range) {
  inst.validate();
  if (range.empty()) throw std::invalid_argument("range must be nonempty");
  std::size_t chosen = 0;
  double chosen_welfare = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < range.size(); ++r) {
    check_feasible(inst, range[r]);
    const double w = welfare_excluding(inst, range[r], inst.bidders);
    if (w > chosen_welfare ||
        (w == chosen_welfare &&
         lex_less(range[r].count_of, range[chosen].count_of))) {
      chosen = r;
      chosen_welfare = w;
    }
  }
  std::vector<double> payments(inst.bidders, 0.0);
  for (std::size_t i = 0; i < inst.bidders; ++i) {
    double best_without_i = -std::numeric_limits<double>::infinity();
    for (const auto& a : range) {
      best_without_i = std::max(best_without_i, welfare_excluding(inst, a, i));
    }
    payments[i] = best_without_i - welfare_excluding(inst, range[chosen], i);
  }
  return payments;
}

MultiUnitInstance read_multiunit_csv(const std::string& path) {
  const auto lines = csv::read_lines(path);
  const auto header = csv::split_line(lines.front());
  if (header.size() != 2) throw csv::ParseError(path, 1, "expected header n,m");
  const std::size_t n = csv::parse_size(header[0], path, 1);
  const std::size_t m = csv::parse_size(header[1], path, 1);
  if (lines.size() != n + 1) {
    throw csv::ParseError(path, lines.size(), "expected " + std::to_string(n) +
                                                  " curve rows");
  }
  MultiUnitInstance inst(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto fields = csv::split_line(lines[i + 1]);
    if (fields.size() != m + 1) {
      throw csv::ParseError(path, i + 2, "expected m+1 curve values");
    }
    for (std::size_t q = 0; q <= m; ++q) {
      inst.curves[i][q] = csv::parse_real(fields[q], path, i + 2);
    }
  }
  inst.validate();
  return inst;
}

std::string bundle_to_string(const BundleAllocation& a) {
  std::string out;
  for (std::size_t i = 0; i < a.count_of.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(a.count_of[i]);
  }
  return out;
}

BundleAllocation bundle_from_string(const std::string& text) {
  BundleAllocation a;
  for (const auto& field : csv::split_line(text)) {
    a.count_of.push_back(csv::parse_size(field, "<allocation>", 1));
  }
  return a;
}

}  // namespace recmech
