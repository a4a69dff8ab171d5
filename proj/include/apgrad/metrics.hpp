#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "apgrad/core.hpp"

namespace apgrad {

// Strided trajectory sample after n completed steps. avg_gap is the
// running mean of the per-step gap over steps 1..n; xtilde is the running
// iterate average over the same range. cum_loss and regret are only
// meaningful for online problems.
struct RecordSample {
  std::int64_t n = 0;
  Vec x;
  double f_x = 0;
  double gap = 0;
  double avg_gap = 0;
  Vec eff_rates;  // per-coordinate rate applied by the most recent step
  Vec xtilde;
  double f_xtilde = 0;
  double cum_loss = 0;
  double regret = 0;
};

struct RunRecord {
  std::string problem_id;
  std::string schedule;
  std::string estimator;
  std::uint64_t seed = 0;
  std::int64_t n_steps = 0;
  std::int64_t record_every = 1;
  bool online = false;
  Vec x0;
  Vec h_first;  // preconditioner diagonal after the first step
  Vec h_last;   // preconditioner diagonal after the last step
  std::vector<RecordSample> samples;
  double wall_ms = 0;

  const RecordSample& final_sample() const;
};

// min over y in X of <y - x, grad>; <= 0 whenever x is feasible. Closed
// form: boxes pick the far bound coordinatewise, balls give
// <c - x, g> - r ||g||.
double stationarity_gap(const Vec& x, const Vec& grad, const FeasibleSet& set);

// sum of incurred losses minus T times the per-round optimal share.
double regret(const std::vector<double>& losses, double optimal_share);

// Constant-rate floor: -(Btilde^2 Mtilde^2 / (2 btilde gammatilde^2)) alpha
// - (Mtilde sqrt(D d) / (btilde gammatilde)) beta.
double theorem1_bound(const TheoryConstants& k, double alpha, double beta);

// Three-term average bound at step n:
//   D sum_i B_i / (2 btilde n alpha_n)
// + (Btilde^2 Mtilde^2 / (2 btilde gammatilde^2)) avg_k alpha_k
// + (Mtilde sqrt(D d) / btilde) avg_k beta_k,
// averages over k = 1..n. Explicit-sum form for callers that precompute.
double theorem3_bound_terms(const TheoryConstants& k, double sum_Bi, double alpha_n,
                            double sum_alpha, double sum_beta, std::int64_t n);

// Schedule form; checks the hypotheses (beta_n bounded away from 1 and
// alpha_n (1-beta_n) / (1-gamma^(n+1)) non-increasing over 0..n) and
// throws naming the violated one.
double theorem3_bound(const TheoryConstants& k, const ScheduleConfig& schedule,
                      const Vec& B_i_estimates, std::int64_t n);

// Least-squares slope of log|q| versus log n over the final two decades of
// recorded n, sign-flipped so a decaying quantity fits a positive rate.
// Requires at least 20 usable samples spanning two decades.
double fit_rate_exponent(const std::vector<std::int64_t>& ns, const std::vector<double>& qs);

// (n, f(xtilde_n) - f_star) per sample.
std::vector<std::pair<std::int64_t, double>> suboptimality(const RunRecord& record, double f_star);

// Bound constants assembled from a problem, a schedule, and observed runs:
// M analytic, Btilde from the first-step preconditioners, btilde and
// gammatilde from the schedule.
struct BoundReport {
  TheoryConstants constants;
  Vec B_i;  // cross-seed mean of the final preconditioner diagonal
  double theorem1_rhs = 0;
};

BoundReport bound_report(double gradient_bound, const FeasibleSet& set,
                         const ScheduleConfig& schedule, const std::vector<RunRecord>& runs);

}  // namespace apgrad
