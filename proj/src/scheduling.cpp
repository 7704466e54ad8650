#include "recmech/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "recmech/csv.hpp"

namespace recmech {

SchedulingInstance::SchedulingInstance(std::size_t n, std::size_t m, double fill)
    : machines(n), jobs(m), costs(n * m, fill) {
  if (n < 1) throw std::invalid_argument("SchedulingInstance: need at least one machine");
}

void SchedulingInstance::validate() const {
  if (machines < 1) throw std::invalid_argument("SchedulingInstance: no machines");
  if (costs.size() != machines * jobs)
    throw std::invalid_argument("SchedulingInstance: cost matrix size mismatch");
  for (double c : costs) {
    if (std::isnan(c) || c < 0.0)
      throw std::invalid_argument("SchedulingInstance: costs must be >= 0 (or +inf)");
  }
}

namespace {

void check_feasible(const SchedulingInstance& inst, const Assignment& a,
                    const char* what) {
  if (a.machine_of.size() != inst.jobs)
    throw std::invalid_argument(std::string(what) + ": assignment length != job count");
  for (std::size_t machine : a.machine_of)
    if (machine >= inst.machines)
      throw std::invalid_argument(std::string(what) + ": machine index out of range");
}

// n^m, saturating above the brute-force cap
double assignment_count(std::size_t n, std::size_t m) {
  double count = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    count *= static_cast<double>(n);
    if (count > 2e6) return count;
  }
  return count;
}

constexpr double kBruteForceCap = 1e6;

}  // namespace

double makespan(const SchedulingInstance& inst, const Assignment& a) {
  check_feasible(inst, a, "makespan");
  std::vector<double> load(inst.machines, 0.0);
  for (std::size_t j = 0; j < inst.jobs; ++j) load[a.machine_of[j]] += inst.at(a.machine_of[j], j);
  return inst.jobs == 0 ? 0.0 : *std::max_element(load.begin(), load.end());
}

std::pair<std::size_t, double> pay_per_job(const SchedulingInstance& inst,
                                           const std::vector<double>& weights,
                                           std::size_t job) {
  if (weights.size() != inst.machines * inst.jobs)
    throw std::invalid_argument("pay_per_job: weight matrix size mismatch");
  const std::size_t n = inst.machines;
  std::size_t winner = n;
  double best = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    const double weighted = weights[i * inst.jobs + job] * inst.at(i, job);
    if (weighted < best) {
      best = weighted;
      winner = i;
    }
  }
  if (winner == n)
    throw std::domain_error("pay_per_job: no machine can take this job");
  double runner_up = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == winner) continue;
    runner_up = std::min(runner_up, weights[i * inst.jobs + job] * inst.at(i, job));
  }
  // Without a finite competitor the winner is paid its declared cost, the same
  // rule as the single-machine case.
  const double payment = std::isinf(runner_up)
                             ? inst.at(winner, job)
                             : runner_up / weights[winner * inst.jobs + job];
  return {winner, payment};
}

MechanismOutcome<Assignment> asg(const SchedulingInstance& inst, const Assignment& a_hat,
                                 const AsgConfig& cfg) {
  inst.validate();
  check_feasible(inst, a_hat, "asg");
  const std::size_t n = inst.machines;
  const std::size_t m = inst.jobs;
  if (cfg.beta < 1.0 || cfg.beta > static_cast<double>(n))
    throw std::invalid_argument("asg: beta must lie in [1, n]");

  std::vector<double> weights(n * m, static_cast<double>(n) / cfg.beta);
  for (std::size_t j = 0; j < m; ++j) weights[a_hat.machine_of[j] * m + j] = 1.0;

  Assignment out;
  out.machine_of.resize(m);
  std::vector<double> payments(n, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const auto [winner, payment] = pay_per_job(inst, weights, j);
    out.machine_of[j] = winner;
    payments[winner] += payment;
  }

  MechanismOutcome<Assignment> res;
  res.alternative = out;
  res.payments = std::move(payments);
  double opt = 0.0;
  if (assignment_count(n, m) <= kBruteForceCap) {
    opt = opt_makespan(inst).second;
  } else {
    opt = makespan_lower_bound(inst);
  }
  res.report = make_report(Objective::Minimize, makespan(inst, out), opt,
                           makespan(inst, a_hat));
  return res;
}

std::pair<Assignment, double> opt_makespan(const SchedulingInstance& inst) {
  inst.validate();
  const std::size_t n = inst.machines;
  const std::size_t m = inst.jobs;
  if (assignment_count(n, m) > kBruteForceCap)
    throw std::domain_error("opt_makespan: n^m exceeds the brute-force cap");

  Assignment current;
  current.machine_of.assign(m, 0);
  Assignment best = current;
  double best_value = kInf;
  std::vector<double> load(n, 0.0);
  while (true) {
    std::fill(load.begin(), load.end(), 0.0);
    for (std::size_t j = 0; j < m; ++j)
      load[current.machine_of[j]] += inst.at(current.machine_of[j], j);
    const double value = m == 0 ? 0.0 : *std::max_element(load.begin(), load.end());
    // strict < keeps the lexicographically smallest optimal assignment
    if (value < best_value) {
      best_value = value;
      best = current;
    }
    // next assignment in lexicographic order
    bool wrapped = true;
    for (std::size_t j = m; j-- > 0;) {
      if (++current.machine_of[j] < n) {
        wrapped = false;
        break;
      }
      current.machine_of[j] = 0;
    }
    if (wrapped) break;
  }
  if (std::isinf(best_value))
    throw std::domain_error("opt_makespan: some job has no finite machine");
  return {best, best_value};
}

double makespan_lower_bound(const SchedulingInstance& inst) {
  double worst_job = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < inst.jobs; ++j) {
    double cheapest = kInf;
    for (std::size_t i = 0; i < inst.machines; ++i)
      cheapest = std::min(cheapest, inst.at(i, j));
    worst_job = std::max(worst_job, cheapest);
    total += cheapest;
  }
  return std::max(worst_job, total / static_cast<double>(inst.machines));
}

std::pair<SchedulingInstance, Assignment> gen_lb_case1(std::size_t n, double rho_hat,
                                                       double beta, double eps) {
  if (n < 2) throw std::invalid_argument("gen_lb_case1: need n >= 2");
  if (rho_hat < 1.0 || rho_hat > static_cast<double>(n) / beta)
    throw std::invalid_argument("gen_lb_case1: need 1 <= rho_hat <= n/beta");
  if (beta * rho_hat * static_cast<double>(n - 1) / static_cast<double>(n) < 1.0)
    throw std::invalid_argument("gen_lb_case1: need beta*rho_hat*(n-1)/n >= 1");
  if (eps <= 0.0 || eps >= beta * rho_hat / static_cast<double>(n))
    throw std::invalid_argument("gen_lb_case1: eps out of range");

  SchedulingInstance inst(n, n - 1, 1.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    inst.at(j, j) = rho_hat;
    inst.at(n - 1, j) = beta * rho_hat / static_cast<double>(n) - eps;
  }
  Assignment a_hat;
  a_hat.machine_of.resize(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) a_hat.machine_of[j] = j;
  return {inst, a_hat};
}

std::pair<SchedulingInstance, Assignment> gen_lb_case2(std::size_t n, double rho_hat,
                                                       double beta, double eps) {
  if (n < 2) throw std::invalid_argument("gen_lb_case2: need n >= 2");
  if (rho_hat <= static_cast<double>(n) / beta)
    throw std::invalid_argument("gen_lb_case2: need rho_hat > n/beta");
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("gen_lb_case2: need eps in (0,1)");

  const std::size_t k = std::min<std::size_t>(
      n - 1, static_cast<std::size_t>(
                 std::ceil(beta * rho_hat / static_cast<double>(n))));
  const std::size_t m = k + n - 1;
  SchedulingInstance inst(n, m, 1.0);
  for (std::size_t j = 0; j + 1 < n; ++j) inst.at(j, j) = 2.0 * rho_hat;
  for (std::size_t j = 0; j < m; ++j)
    inst.at(n - 1, j) = (j + 1 < n) ? 1.0 - eps : static_cast<double>(n) / beta - eps;

  Assignment a_hat;
  a_hat.machine_of.resize(m);
  for (std::size_t j = 0; j < m; ++j) a_hat.machine_of[j] = std::min(j, n - 1);
  return {inst, a_hat};
}

std::pair<SchedulingInstance, SchedulingInstance> gen_jump_example(std::size_t n,
                                                                   double eps) {
  if (n < 2) throw std::invalid_argument("gen_jump_example: need n >= 2");
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("gen_jump_example: need eps in (0,1)");
  SchedulingInstance predicted(n, n - 1, 1.0);
  SchedulingInstance actual(n, n - 1, 1.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    predicted.at(n - 1, j) = 1.0 + eps;
    actual.at(n - 1, j) = 1.0 - eps;
  }
  return {predicted, actual};
}

SchedulingInstance read_scheduling_csv(const std::string& path) {
  const auto lines = csv::read_lines(path);
  const auto header = csv::split_line(lines[0]);
  if (header.size() != 2)
    throw csv::ParseError(path, 1, "expected header 'n,m'");
  const std::size_t n = csv::parse_size(header[0], path, 1);
  const std::size_t m = csv::parse_size(header[1], path, 1);
  if (lines.size() != n + 1)
    throw csv::ParseError(path, lines.size(), "expected " + std::to_string(n) + " cost rows");
  SchedulingInstance inst(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto fields = csv::split_line(lines[i + 1]);
    if (fields.size() != m)
      throw csv::ParseError(path, i + 2, "expected " + std::to_string(m) + " costs");
    for (std::size_t j = 0; j < m; ++j)
      inst.at(i, j) = csv::parse_real(fields[j], path, i + 2);
  }
  inst.validate();
  return inst;
}

std::string scheduling_to_csv(const SchedulingInstance& inst) {
  std::ostringstream out;
  out << inst.machines << ',' << inst.jobs << '\n';
  for (std::size_t i = 0; i < inst.machines; ++i) {
    for (std::size_t j = 0; j < inst.jobs; ++j) {
      if (j) out << ',';
      out << csv::format_real(inst.at(i, j));
    }
    out << '\n';
  }
  return out.str();
}

std::string assignment_to_string(const Assignment& a) {
  std::ostringstream out;
  for (std::size_t j = 0; j < a.machine_of.size(); ++j) {
    if (j) out << ',';
    out << a.machine_of[j];
  }
  return out.str();
}

Assignment assignment_from_string(const std::string& text) {
  Assignment a;
  for (const std::string& field : csv::split_line(text))
    a.machine_of.push_back(csv::parse_size(field, "<assignment>", 1));
  return a;
}

}  // namespace recmech
