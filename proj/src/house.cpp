#include "recmech/house.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "recmech/csv.hpp"

namespace recmech {

ValuationMatrix::ValuationMatrix(std::size_t n_, Normalization norm, double fill)
    : n(n_), values(n_ * n_, fill), normalization(norm) {
  if (n < 1) throw std::invalid_argument("ValuationMatrix: need at least one agent");
}

void ValuationMatrix::validate() const {
  if (values.size() != n * n)
    throw std::invalid_argument("ValuationMatrix: size mismatch");
  for (double v : values)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("ValuationMatrix: values must be finite and >= 0");
  for (std::size_t i = 0; i < n; ++i) {
    if (normalization == Normalization::UnitRange) {
      double lo = kInf, hi = -kInf;
      for (std::size_t j = 0; j < n; ++j) {
        lo = std::min(lo, at(i, j));
        hi = std::max(hi, at(i, j));
      }
      if (std::abs(hi - 1.0) > kTol || std::abs(lo) > kTol)
        throw std::invalid_argument("ValuationMatrix: row " + std::to_string(i + 1) +
                                    " violates unit-range normalization");
    } else if (normalization == Normalization::UnitSum) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += at(i, j);
      if (std::abs(sum - 1.0) > kTol)
        throw std::invalid_argument("ValuationMatrix: row " + std::to_string(i + 1) +
                                    " violates unit-sum normalization");
    }
  }
}

void Matching::validate(std::size_t n) const {
  if (house_of.size() != n)
    throw std::invalid_argument("Matching: length != number of agents");
  std::vector<bool> seen(n, false);
  for (std::size_t h : house_of) {
    if (h >= n || seen[h]) throw std::invalid_argument("Matching: not a permutation");
    seen[h] = true;
  }
}

double welfare(const ValuationMatrix& v, const Matching& m) {
  m.validate(v.n);
  double total = 0.0;
  for (std::size_t i = 0; i < v.n; ++i) total += v.at(i, m.house_of[i]);
  return total;
}

MechanismOutcome<Matching> ttc(const ValuationMatrix& v, const Matching& endowment) {
  endowment.validate(v.n);
  const std::size_t n = v.n;

  Matching result = endowment;
  std::vector<bool> agent_done(n, false);
  std::vector<bool> house_gone(n, false);
  std::vector<std::size_t> owner(n);  // owner of each still-available house
  for (std::size_t i = 0; i < n; ++i) owner[endowment.house_of[i]] = i;

  std::size_t remaining = n;
  while (remaining > 0) {
    // each remaining agent points to the owner of their best available house
    std::vector<std::size_t> pref(n), target(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (agent_done[i]) continue;
      std::size_t best_house = n;
      for (std::size_t h = 0; h < n; ++h) {
        if (house_gone[h]) continue;
        if (best_house == n || v.at(i, h) > v.at(i, best_house)) best_house = h;
      }
      pref[i] = best_house;
      target[i] = owner[best_house];
    }

    // clear every cycle present in this round; mark = walk origin
    std::vector<std::size_t> mark(n, n);
    bool cleared_any = false;
    for (std::size_t start = 0; start < n; ++start) {
      if (agent_done[start] || mark[start] != n) continue;
      std::size_t cur = start;
      while (!agent_done[cur] && mark[cur] == n) {
        mark[cur] = start;
        cur = target[cur];
      }
      if (agent_done[cur] || mark[cur] != start) continue;  // walk hit an older path
      // cur lies on a fresh cycle: trade along it
      std::size_t node = cur;
      do {
        result.house_of[node] = pref[node];
        node = target[node];
      } while (node != cur);
      node = cur;
      do {
        const std::size_t next = target[node];
        agent_done[node] = true;
        house_gone[pref[node]] = true;
        --remaining;
        cleared_any = true;
        node = next;
      } while (node != cur);
    }
    if (!cleared_any)
      throw std::logic_error("ttc: no cycle found in a round");  // unreachable
  }

  MechanismOutcome<Matching> res;
  res.alternative = result;
  res.payments.assign(n, 0.0);
  const auto [opt_match, opt] = opt_matching(v);
  (void)opt_match;
  res.report = make_report(Objective::Maximize, welfare(v, result), opt,
                           welfare(v, endowment));
  return res;
}

std::pair<Matching, double> opt_matching(const ValuationMatrix& v) {
  const std::size_t n = v.n;
  if (n > 1000) throw std::domain_error("opt_matching: n exceeds the size cap");

  // potentials-based assignment on the negated values (1-indexed internals)
  const std::size_t width = n + 1;
  std::vector<double> u(width, 0.0), pot(width, 0.0), minv(width);
  std::vector<std::size_t> p(width, 0), way(width, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::vector<bool> used(width, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -v.at(i0 - 1, j - 1) - u[i0] - pot[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          pot[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Matching best;
  best.house_of.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) best.house_of[p[j] - 1] = j - 1;
  return {best, welfare(v, best)};
}

ValuationMatrix make_ttc_lb_matrix(std::size_t n, double eps, double next_value,
                                   Normalization norm) {
  if (n < 3) throw std::invalid_argument("make_ttc_lb_matrix: need n >= 3");
  if (norm == Normalization::None)
    throw std::invalid_argument("make_ttc_lb_matrix: pick unit-range or unit-sum");

  ValuationMatrix v(n, norm, 0.0);
  const double nn = static_cast<double>(n);
  if (norm == Normalization::UnitRange) {
    v.at(0, 0) = 1.0 - eps;
    v.at(0, 1) = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
      v.at(i, i) = 1.0;
      v.at(i, (i + 1) % n) = next_value;
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) v.at(0, j) = 1.0 / nn;
    v.at(0, 0) -= eps;
    v.at(0, 1) += eps;
    for (std::size_t i = 1; i < n; ++i) {
      v.at(i, i) = 1.0 - next_value;
      v.at(i, (i + 1) % n) = next_value;
    }
  }
  v.validate();
  return v;
}

Matching cyclic_endowment(std::size_t n) {
  Matching m;
  m.house_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) m.house_of[i] = (i + 1) % n;
  return m;
}

std::pair<ValuationMatrix, Matching> gen_ttc_lb(std::size_t n, double rho_hat,
                                                Normalization norm, double eps) {
  const double nn = static_cast<double>(n);
  double next_value = 0.0;
  if (norm == Normalization::UnitRange) {
    if (rho_hat < 1.0 || rho_hat > nn)
      throw std::invalid_argument("gen_ttc_lb: unit-range requires 1 <= rho_hat <= n");
    next_value = (nn - rho_hat) / (rho_hat * (nn - 1.0));
  } else if (norm == Normalization::UnitSum) {
    if (rho_hat < 1.0 || rho_hat > nn * nn - nn + 1.0)
      throw std::invalid_argument(
          "gen_ttc_lb: unit-sum requires 1 <= rho_hat <= n^2-n+1");
    next_value = (nn * (nn - 1.0) - rho_hat + 1.0) / (nn * (nn - 1.0) * (rho_hat + 1.0));
  } else {
    throw std::invalid_argument("gen_ttc_lb: pick unit-range or unit-sum");
  }
  return {make_ttc_lb_matrix(n, eps, next_value, norm), cyclic_endowment(n)};
}

ValuationMatrix read_valuations_csv(const std::string& path, Normalization norm) {
  const auto lines = csv::read_lines(path);
  const std::size_t n = lines.size();
  ValuationMatrix v(n, norm);
  for (std::size_t i = 0; i < n; ++i) {
    const auto fields = csv::split_line(lines[i]);
    if (fields.size() != n)
      throw csv::ParseError(path, i + 1,
                            "expected " + std::to_string(n) + " values (square matrix)");
    for (std::size_t j = 0; j < n; ++j)
      v.at(i, j) = csv::parse_real(fields[j], path, i + 1);
  }
  v.validate();
  return v;
}

std::string matching_to_string(const Matching& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.house_of.size(); ++i) {
    if (i) out << ',';
    out << m.house_of[i] + 1;
  }
  return out.str();
}

Matching matching_from_string(const std::string& text) {
  Matching m;
  for (const std::string& field : csv::split_line(text)) {
    const std::size_t h = csv::parse_size(field, "<matching>", 1);
    if (h == 0) throw std::invalid_argument("matching is 1-indexed");
    m.house_of.push_back(h - 1);
  }
  return m;
}

}  // namespace recmech
