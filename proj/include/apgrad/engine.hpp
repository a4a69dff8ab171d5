#pragma once

#include <cstdint>
#include <optional>

#include "apgrad/core.hpp"
#include "apgrad/metrics.hpp"
#include "apgrad/moment.hpp"
#include "apgrad/oracle.hpp"

namespace apgrad {

// Full optimizer state after n completed steps. grad_stream feeds the
// stochastic oracle; one draw sequence per step keeps online rounds
// aligned with the step index.
struct OptimizerState {
  Vec x;
  FirstMomentState first;
  SecondMomentState second;
  std::int64_t n = 0;
  SeedState grad_stream;
};

struct StepOutput {
  Vec x_next;
  Vec direction;       // solves H d = -corrected m, componentwise
  Vec effective_rates; // alpha_n / ((1 - gamma^(n+1)) h_{n,i})
  Vec gradient_used;
};

// x0 is projected onto the set; absent x0 is drawn uniformly from the set
// using a stream derived from `seed` that is disjoint from the gradient
// stream.
OptimizerState init(const ProblemSpec& problem, const ScheduleConfig& schedule,
                    EstimatorKind estimator, std::uint64_t seed,
                    const std::optional<Vec>& x0 = std::nullopt);

StepOutput step(OptimizerState& state, const ProblemSpec& problem,
                const ScheduleConfig& schedule);

// Runs n_steps steps and records every record_every-th iterate (plus the
// final one). Identical inputs produce an identical record.
RunRecord run(const ProblemSpec& problem, const ScheduleConfig& schedule,
              EstimatorKind estimator, std::int64_t n_steps, std::uint64_t seed,
              std::int64_t record_every, const std::optional<Vec>& x0 = std::nullopt);

const char* estimator_name(EstimatorKind kind);
EstimatorKind estimator_from_name(const std::string& name);

}  // namespace apgrad
