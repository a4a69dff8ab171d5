#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "apgrad/core.hpp"

namespace apgrad {

// Counter-based random stream: every draw is a pure function of
// (seed, counter), so replaying from an equal state reproduces the
// sequence exactly on any platform.
struct SeedState {
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;

  std::uint64_t next_u64();
  double next_unit();      // uniform in [0,1)
  double next_gaussian();  // standard normal, consumes two counter slots

  // Independent stream derived from this seed; `salt` selects the stream.
  SeedState substream(std::uint64_t salt) const;
};

struct KnownOptimum {
  Vec x_star;
  double f_star = 0;
};

// Per-round loss structure for online (adversarial) problems. `loss`
// evaluates the round-t loss at x; `optimal_share` is the per-round share
// of the comparator optimum, so regret(T) = sum_t loss(t, x_t)
// - T * optimal_share.
struct OnlineLosses {
  std::function<double(std::int64_t, const Vec&)> loss;
  double optimal_share = 0;
  std::int64_t period = 1;
};

// A problem instance: objective, gradients, feasible set, and the
// analytic bound M with E||G||^2 <= M^2 over the feasible set.
struct ProblemSpec {
  std::string id;
  std::size_t dim = 0;
  FeasibleSet set;
  std::function<double(const Vec&)> objective;
  std::function<Vec(const Vec&)> gradient;
  std::function<Vec(const Vec&, SeedState&)> stochastic_gradient;
  double gradient_bound = 0;  // M
  bool convex = false;
  std::optional<KnownOptimum> optimum;
  std::optional<OnlineLosses> online;

  void validate() const;
};

// f(x) = 1/2 sum_i c_i (x_i - t_i)^2 with c_i log-spaced in
// [1, condition_span]; stochastic gradients add N(0, sigma^2) noise per
// coordinate. The target is drawn uniformly inside the set unless given.
// ball_geometry swaps the default box [-w,w]^d for a ball of radius w.
ProblemSpec make_stochastic_quadratic(std::size_t d, double condition_span, double noise_sigma,
                                      double box_halfwidth, std::uint64_t seed,
                                      std::optional<Vec> target = std::nullopt,
                                      bool ball_geometry = false);

// Mean logistic loss over a synthetic dataset; the stochastic gradient is
// the gradient on one uniformly drawn sample.
ProblemSpec make_noisy_logistic(std::size_t d, std::size_t n_samples, double label_noise,
                                double box_halfwidth, std::uint64_t seed,
                                bool ball_geometry = false);

// Logistic problem over an explicit dataset (labels in {0,1}).
ProblemSpec make_logistic_from_data(std::vector<Vec> features, std::vector<int> labels,
                                    double box_halfwidth, bool ball_geometry = false);

// Separable double well f(x) = sum_i (x_i^4/4 - x_i^2/2); gradients with
// N(0, sigma^2) noise. Stationary points per coordinate: -1, 0, +1.
ProblemSpec make_nonconvex_wells(std::size_t d, double noise_sigma, double box_halfwidth,
                                 bool ball_geometry = false);

// One-dimensional adversarial sequence on [-1,1]: round loss
// magnitude * x when t % period == 0, else -x. The stationary objective
// is the period average.
ProblemSpec make_adversarial_online(std::int64_t period, double magnitude);

// Projected gradient descent with true gradients; returns the best value
// seen. Used to estimate f* when no closed form is available.
double estimate_fstar(const ProblemSpec& problem, std::int64_t steps, double step_size,
                      std::uint64_t seed);

// Uniform draw from the feasible set.
Vec draw_uniform(const FeasibleSet& set, SeedState& s);

}  // namespace apgrad
