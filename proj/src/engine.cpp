#include "apgrad/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "apgrad/projection.hpp"

namespace apgrad {

namespace {

struct StepBuffers {
  Vec g, h, rates, dir;
};

// One iteration: average the gradient, correct its bias, refresh the
// preconditioner, move along d = -corrected m / h, project.
void step_core(OptimizerState& state, const ProblemSpec& problem, const ScheduleConfig& schedule,
               StepBuffers& b) {
  const std::int64_t n = state.n;
  const double alpha_n = eval_alpha(schedule, n);
  const double beta_n = eval_beta(schedule, n);
  const double gamma_div =
      schedule.gamma == 0
          ? 1.0
          : 1.0 - std::pow(schedule.gamma, static_cast<double>(n + 1));

  b.g = problem.stochastic_gradient(state.x, state.grad_stream);
  update_first_moment(state.first, b.g, beta_n);
  update_second_moment(state.second, b.g);

  const std::size_t d = state.x.size();
  b.h.resize(d);
  b.rates.resize(d);
  b.dir.resize(d);
  const double eps = state.second.epsilon;
  for (std::size_t i = 0; i < d; ++i) {
    b.h[i] = std::sqrt(state.second.v_hat[i]) + eps;
    const double m_hat = state.first.m[i] / gamma_div;
    b.dir[i] = -m_hat / b.h[i];
    b.rates[i] = alpha_n / (gamma_div * b.h[i]);
    state.x[i] += alpha_n * b.dir[i];
  }

  if (problem.set.kind == FeasibleSet::Kind::Box) {
    for (std::size_t i = 0; i < d; ++i) {
      state.x[i] = std::clamp(state.x[i], problem.set.lower[i], problem.set.upper[i]);
    }
  } else {
    state.x = project_ball_weighted(problem.set, DiagonalMatrix(b.h), state.x, 1e-12);
  }
  state.n = n + 1;
}

}  // namespace

OptimizerState init(const ProblemSpec& problem, const ScheduleConfig& schedule,
                    EstimatorKind estimator, std::uint64_t seed, const std::optional<Vec>& x0) {
  problem.validate();
  schedule.validate();

  OptimizerState state;
  state.grad_stream = SeedState{seed, 0};
  if (x0.has_value()) {
    if (x0->size() != problem.dim || !all_finite(*x0)) {
      throw std::invalid_argument("init: bad explicit x0");
    }
    state.x = project(problem.set, DiagonalMatrix::identity(problem.dim, schedule.epsilon), *x0);
  } else {
    SeedState init_stream = SeedState{seed, 0}.substream(0x1417);
    state.x = draw_uniform(problem.set, init_stream);
  }
  state.first = FirstMomentState::zeros(problem.dim);
  state.second = SecondMomentState::make(estimator, problem.dim, schedule.delta, schedule.epsilon);
  state.n = 0;
  return state;
}

StepOutput step(OptimizerState& state, const ProblemSpec& problem,
                const ScheduleConfig& schedule) {
  if (state.x.size() != problem.dim) throw std::invalid_argument("step: dimension mismatch");
  StepBuffers b;
  step_core(state, problem, schedule, b);
  StepOutput out;
  out.x_next = state.x;
  out.direction = std::move(b.dir);
  out.effective_rates = std::move(b.rates);
  out.gradient_used = std::move(b.g);
  return out;
}

RunRecord run(const ProblemSpec& problem, const ScheduleConfig& schedule, EstimatorKind estimator,
              std::int64_t n_steps, std::uint64_t seed, std::int64_t record_every,
              const std::optional<Vec>& x0) {
  if (n_steps < 1) throw std::invalid_argument("run: need n_steps >= 1");
  if (record_every < 1) throw std::invalid_argument("run: need record_every >= 1");

  OptimizerState state = init(problem, schedule, estimator, seed, x0);
  const bool online = problem.online.has_value();

  RunRecord rec;
  rec.problem_id = problem.id;
  rec.schedule = schedule.describe();
  rec.estimator = estimator_name(estimator);
  rec.seed = seed;
  rec.n_steps = n_steps;
  rec.record_every = record_every;
  rec.online = online;
  rec.x0 = state.x;
  rec.samples.reserve(static_cast<std::size_t>(n_steps / record_every + 2));

  StepBuffers b;
  Vec xtilde(problem.dim, 0.0);
  double gap_sum = 0;
  double cum_loss = 0;

  const auto t0 = std::chrono::steady_clock::now();
  for (std::int64_t k = 0; k < n_steps; ++k) {
    if (online) cum_loss += problem.online->loss(k, state.x);
    step_core(state, problem, schedule, b);

    const auto count = static_cast<double>(state.n);
    for (std::size_t i = 0; i < xtilde.size(); ++i) {
      xtilde[i] += (state.x[i] - xtilde[i]) / count;
    }
    const double gap = stationarity_gap(state.x, problem.gradient(state.x), problem.set);
    gap_sum += gap;

    if (state.n == 1) rec.h_first = b.h;

    if (state.n % record_every == 0 || state.n == n_steps) {
      RecordSample s;
      s.n = state.n;
      s.x = state.x;
      s.f_x = problem.objective(state.x);
      s.gap = gap;
      s.avg_gap = gap_sum / count;
      s.eff_rates = b.rates;
      s.xtilde = xtilde;
      s.f_xtilde = problem.objective(xtilde);
      if (online) {
        s.cum_loss = cum_loss;
        s.regret = cum_loss - count * problem.online->optimal_share;
      }
      rec.samples.push_back(std::move(s));
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  rec.h_last = b.h;
  return rec;
}

const char* estimator_name(EstimatorKind kind) {
  return kind == EstimatorKind::AdamMax ? "adam-max" : "amsgrad";
}

EstimatorKind estimator_from_name(const std::string& name) {
  if (name == "adam-max") return EstimatorKind::AdamMax;
  if (name == "amsgrad") return EstimatorKind::AmsGrad;
  throw std::invalid_argument("unknown estimator '" + name + "' (use adam-max or amsgrad)");
}

}  // namespace apgrad
