#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "recmech/core.hpp"

namespace recmech {

// n machines x m jobs cost matrix; +inf marks "never assign".
struct SchedulingInstance {
  std::size_t machines = 0;  // n
  std::size_t jobs = 0;      // m
  std::vector<double> costs; // row-major, machines x jobs

  SchedulingInstance() = default;
  SchedulingInstance(std::size_t n, std::size_t m, double fill = 0.0);

  double& at(std::size_t machine, std::size_t job) { return costs[machine * jobs + job]; }
  double at(std::size_t machine, std::size_t job) const { return costs[machine * jobs + job]; }

  void validate() const;  // nonnegative, finite or +inf
};

struct Assignment {
  std::vector<std::size_t> machine_of;  // length m, values in [0, n)
};

struct AsgConfig {
  double beta = 1.0;  // confidence, in [1, n]; ties go to the lowest machine index
};

double makespan(const SchedulingInstance& inst, const Assignment& a);

/// Per-job scaled greedy with weights 1 (recommended machine) or n/beta
/// (everyone else), plus per-job weighted-VCG payments. The report compares
/// against the brute-force optimum when n^m <= 1e6 and against the makespan
/// lower bound max{max_j min_i t_ij, (1/n) sum_j min_i t_ij} otherwise.
MechanismOutcome<Assignment> asg(const SchedulingInstance& inst, const Assignment& a_hat,
                                 const AsgConfig& cfg);

/// Weighted second-price reverse auction for one job: the winner minimizes
/// r_ij * t_ij and is paid (min over losers of r_ij * t_ij) / r_winner.
std::pair<std::size_t, double> pay_per_job(const SchedulingInstance& inst,
                                           const std::vector<double>& weights,
                                           std::size_t job);

/// Exhaustive minimum over all n^m assignments; requires n^m <= 1e6.
std::pair<Assignment, double> opt_makespan(const SchedulingInstance& inst);

/// Valid lower bound on the optimal makespan (per-job minimum and average load).
double makespan_lower_bound(const SchedulingInstance& inst);

/// n x (n-1) instance where the mechanism abandons the recommended diagonal
/// for the uniformly-cheap last machine. Requires 1 <= rho_hat <= n/beta and
/// beta*rho_hat*(n-1)/n >= 1.
std::pair<SchedulingInstance, Assignment> gen_lb_case1(std::size_t n, double rho_hat,
                                                       double beta, double eps);

/// n x (k+n-1) instance, k = min{n-1, ceil(beta*rho_hat/n)}, where the last
/// machine absorbs every job. Requires rho_hat > n/beta.
std::pair<SchedulingInstance, Assignment> gen_lb_case2(std::size_t n, double rho_hat,
                                                       double beta, double eps);

/// Predicted/actual instance pair that differs only in the last machine's row
/// (1+eps vs 1-eps) while the recommended outcome stays optimal.
std::pair<SchedulingInstance, SchedulingInstance> gen_jump_example(std::size_t n,
                                                                   double eps);

SchedulingInstance read_scheduling_csv(const std::string& path);
std::string scheduling_to_csv(const SchedulingInstance& inst);

/// Comma-separated machine indices (0-based).
std::string assignment_to_string(const Assignment& a);
Assignment assignment_from_string(const std::string& text);

}  // namespace recmech
