#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "apgrad/core.hpp"
#include "apgrad/oracle.hpp"

using namespace apgrad;

namespace {

Vec mean_stochastic_gradient(const ProblemSpec& p, const Vec& x, SeedState& s, int draws) {
  Vec acc(p.dim, 0.0);
  for (int k = 0; k < draws; ++k) {
    Vec g = p.stochastic_gradient(x, s);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g[i];
  }
  for (double& a : acc) a /= draws;
  return acc;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("seed streams replay exactly and differ across seeds") {
  SeedState a{42, 0};
  SeedState b{42, 0};
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  for (int i = 0; i < 100; ++i) CHECK(a.next_unit() == b.next_unit());
  for (int i = 0; i < 100; ++i) CHECK(a.next_gaussian() == b.next_gaussian());

  // Cloning mid-sequence continues identically.
  SeedState c = a;
  for (int i = 0; i < 50; ++i) CHECK(a.next_gaussian() == c.next_gaussian());

  SeedState d{43, 0};
  SeedState e{42, 0};
  int same = 0;
  for (int i = 0; i < 64; ++i) same += (d.next_u64() == e.next_u64());
  CHECK(same == 0);
}

TEST_CASE("unit draws live in [0,1) and gaussians use two counter slots") {
  SeedState s{7, 0};
  for (int i = 0; i < 1000; ++i) {
    double u = s.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  std::uint64_t before = s.counter;
  (void)s.next_gaussian();
  CHECK(s.counter == before + 2);

  // Rough sanity on the gaussian moments.
  SeedState g{11, 0};
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double z = g.next_gaussian();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("substreams are decoupled from the parent and from each other") {
  SeedState root{99, 0};
  SeedState s1 = root.substream(1);
  SeedState s2 = root.substream(2);
  CHECK(s1.counter == 0);
  CHECK(s1.seed != s2.seed);
  CHECK(s1.seed != root.seed);
  // Same salt twice gives the same stream.
  SeedState s1b = root.substream(1);
  CHECK(s1.seed == s1b.seed);
}

TEST_CASE("uniform draws stay inside the set") {
  FeasibleSet box = FeasibleSet::box(Vec{-1.0, 0.0}, Vec{1.0, 4.0});
  SeedState s{5, 0};
  for (int i = 0; i < 1000; ++i) CHECK(box.contains(draw_uniform(box, s)));

  FeasibleSet ball = FeasibleSet::ball(Vec{1.0, -2.0, 0.5}, 2.5);
  for (int i = 0; i < 1000; ++i) CHECK(ball.contains(draw_uniform(ball, s)));
}

TEST_CASE("pinned quadratic: values, gradients, optimum, bound") {
  // d=1, curvature 1, target 0 on [-1,1]: f(x) = x^2/2.
  ProblemSpec p = make_stochastic_quadratic(1, 1.0, 0.0, 1.0, 1, Vec{0.0});
  CHECK(p.dim == 1);
  CHECK(p.convex);
  CHECK(p.objective(Vec{0.5}) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(p.gradient(Vec{0.5})[0] == doctest::Approx(0.5).epsilon(1e-15));
  REQUIRE(p.optimum.has_value());
  CHECK(p.optimum->x_star[0] == 0.0);
  CHECK(p.optimum->f_star == 0.0);
  // max |grad| on [-1,1] is c*|x-t| <= 1*2*1... half-width 1, so 2w*c = 2.
  CHECK(p.gradient_bound == doctest::Approx(2.0).epsilon(1e-12));
  // Noise-free stochastic gradient equals the true gradient.
  SeedState s{3, 0};
  CHECK(p.stochastic_gradient(Vec{0.5}, s)[0] ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("quadratic curvatures are log-spaced across the span") {
  ProblemSpec p = make_stochastic_quadratic(3, 100.0, 0.0, 2.0, 1, Vec{0.0, 0.0, 0.0});
  Vec g = p.gradient(Vec{1.0, 1.0, 1.0});
  CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(g[2] == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(p.objective(Vec{1.0, 1.0, 1.0}) ==
        doctest::Approx(0.5 * 111.0).epsilon(1e-12));
}

TEST_CASE("quadratic with target outside the box projects the optimum") {
  ProblemSpec p = make_stochastic_quadratic(1, 1.0, 0.0, 1.0, 1, Vec{2.0});
  REQUIRE(p.optimum.has_value());
  CHECK(p.optimum->x_star[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.optimum->f_star == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("quadratic noise is unbiased and reproducible per seed") {
  ProblemSpec p = make_stochastic_quadratic(2, 10.0, 0.3, 1.0, 77, Vec{0.1, -0.2});
  Vec x{0.4, 0.6};
  Vec truth = p.gradient(x);
  SeedState s{123, 0};
  const int draws = 20000;
  Vec avg = mean_stochastic_gradient(p, x, s, draws);
  double se = 0.3 / std::sqrt(static_cast<double>(draws));
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(avg[i] - truth[i]) < 5 * se + 1e-12);
  }
  // Same stream state => same draw sequence.
  SeedState s1{9, 4}, s2{9, 4};
  CHECK(p.stochastic_gradient(x, s1) == p.stochastic_gradient(x, s2));
}

TEST_CASE("quadratic target defaults deterministically from the seed") {
  ProblemSpec a = make_stochastic_quadratic(4, 10.0, 0.1, 1.0, 5);
  ProblemSpec b = make_stochastic_quadratic(4, 10.0, 0.1, 1.0, 5);
  ProblemSpec c = make_stochastic_quadratic(4, 10.0, 0.1, 1.0, 6);
  REQUIRE(a.optimum.has_value());
  CHECK(a.optimum->x_star == b.optimum->x_star);
  CHECK(a.optimum->x_star != c.optimum->x_star);
  CHECK(a.set.contains(a.optimum->x_star));
}

TEST_CASE("logistic on a single pinned sample: frozen values") {
  // One sample a=(1), y=1: f(x) = log(1+e^x) - x, f'(x) = sigmoid(x) - 1.
  ProblemSpec p = make_logistic_from_data({Vec{1.0}}, {1}, 2.0);
  CHECK(p.convex);
  CHECK(p.gradient(Vec{0.0})[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(p.objective(Vec{0.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(p.gradient_bound == doctest::Approx(1.0).epsilon(1e-15));
  // Large |z| stays finite (stable softplus).
  CHECK(std::isfinite(p.objective(Vec{2.0})));
  Vec g = p.gradient(Vec{-2.0});
  CHECK(std::isfinite(g[0]));
}

TEST_CASE("logistic full gradient equals the sample mean") {
  std::vector<Vec> feats = {{0.5, -1.0}, {1.5, 0.25}, {-0.75, 2.0}};
  std::vector<int> labels = {1, 0, 1};
  ProblemSpec p = make_logistic_from_data(feats, labels, 3.0);
  Vec x{0.3, -0.4};
  Vec expect(2, 0.0);
  for (std::size_t j = 0; j < feats.size(); ++j) {
    double z = feats[j][0] * x[0] + feats[j][1] * x[1];
    double sig = 1.0 / (1.0 + std::exp(-z));
    for (int i = 0; i < 2; ++i) expect[i] += (sig - labels[j]) * feats[j][i];
  }
  for (double& v : expect) v /= 3.0;
  Vec got = p.gradient(x);
  CHECK(got[0] == doctest::Approx(expect[0]).epsilon(1e-14));
  CHECK(got[1] == doctest::Approx(expect[1]).epsilon(1e-14));

  // Sampled gradient is unbiased over the dataset.
  SeedState s{21, 0};
  const int draws = 30000;
  Vec avg = mean_stochastic_gradient(p, x, s, draws);
  CHECK(std::abs(avg[0] - expect[0]) < 0.05);
  CHECK(std::abs(avg[1] - expect[1]) < 0.05);
}

TEST_CASE("synthetic logistic dataset is seed-deterministic") {
  ProblemSpec a = make_noisy_logistic(3, 50, 0.1, 2.0, 11);
  ProblemSpec b = make_noisy_logistic(3, 50, 0.1, 2.0, 11);
  ProblemSpec c = make_noisy_logistic(3, 50, 0.1, 2.0, 12);
  Vec x{0.2, -0.1, 0.05};
  CHECK(a.gradient(x) == b.gradient(x));
  CHECK(a.gradient(x) != c.gradient(x));
  CHECK(a.gradient_bound == b.gradient_bound);
  CHECK(a.convex);
  CHECK_THROWS_AS(make_noisy_logistic(3, 50, 0.6, 2.0, 11), std::invalid_argument);
}

TEST_CASE("double wells: pinned values, stationary points, optimum") {
  ProblemSpec p = make_nonconvex_wells(3, 0.0, 2.0);
  CHECK_FALSE(p.convex);
  CHECK(p.objective(Vec{1.0, 1.0, 1.0}) == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(p.objective(Vec{0.0, 0.0, 0.0}) == 0.0);
  for (double r : {-1.0, 0.0, 1.0}) {
    Vec g = p.gradient(Vec{r, r, r});
    for (double gi : g) CHECK(gi == 0.0);
  }
  REQUIRE(p.optimum.has_value());
  CHECK(p.optimum->f_star == doctest::Approx(-0.75).epsilon(1e-15));

  // Half-width below 1 moves the constrained optimum to the wall.
  ProblemSpec q = make_nonconvex_wells(2, 0.0, 0.5);
  REQUIRE(q.optimum.has_value());
  double u = 0.5;
  CHECK(q.optimum->f_star ==
        doctest::Approx(2.0 * (u * u * u * u / 4 - u * u / 2)).epsilon(1e-15));
}

TEST_CASE("wells noise is unbiased") {
  ProblemSpec p = make_nonconvex_wells(2, 0.5, 2.0);
  Vec x{0.7, -1.3};
  Vec truth = p.gradient(x);
  SeedState s{31, 0};
  const int draws = 20000;
  Vec avg = mean_stochastic_gradient(p, x, s, draws);
  double se = 0.5 / std::sqrt(static_cast<double>(draws));
  CHECK(std::abs(avg[0] - truth[0]) < 5 * se + 1e-12);
  CHECK(std::abs(avg[1] - truth[1]) < 5 * se + 1e-12);
}

TEST_CASE("adversarial rounds follow the periodic slope pattern") {
  ProblemSpec p = make_adversarial_online(3, 3.0);
  REQUIRE(p.online.has_value());
  CHECK(p.online->period == 3);
  // Slopes cycle {3,-1,-1}; rounds are indexed by the stream counter.
  SeedState s{0, 0};
  Vec x{1.0};
  CHECK(p.stochastic_gradient(x, s)[0] == 3.0);
  CHECK(p.stochastic_gradient(x, s)[0] == -1.0);
  CHECK(p.stochastic_gradient(x, s)[0] == -1.0);
  CHECK(p.stochastic_gradient(x, s)[0] == 3.0);

  // Stationary objective is the round average sbar * x with sbar = 1/3.
  CHECK(p.objective(Vec{1.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.gradient(Vec{0.2})[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  REQUIRE(p.optimum.has_value());
  CHECK(p.optimum->x_star[0] == -1.0);
  CHECK(p.optimum->f_star == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(p.online->optimal_share == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));

  // Round losses at x=1: {3,-1,-1}.
  CHECK(p.online->loss(0, Vec{1.0}) == 3.0);
  CHECK(p.online->loss(1, Vec{1.0}) == -1.0);
  CHECK(p.online->loss(5, Vec{1.0}) == -1.0);
  CHECK(p.gradient_bound == 3.0);

  CHECK_THROWS_AS(make_adversarial_online(1, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(make_adversarial_online(3, 0.0), std::invalid_argument);
}

TEST_CASE("every factory satisfies its own second-moment bound (spot check)") {
  std::vector<ProblemSpec> problems;
  problems.push_back(make_stochastic_quadratic(4, 10.0, 0.5, 1.5, 3));
  problems.push_back(make_noisy_logistic(3, 40, 0.1, 2.0, 3));
  problems.push_back(make_nonconvex_wells(3, 0.5, 2.0));
  problems.push_back(make_adversarial_online(3, 3.0));
  for (const auto& p : problems) {
    CHECK_NOTHROW(p.validate());
    SeedState points{17, 0};
    SeedState noise{18, 0};
    double m2 = p.gradient_bound * p.gradient_bound;
    for (int i = 0; i < 100; ++i) {
      Vec x = draw_uniform(p.set, points);
      double acc = 0;
      const int draws = 100;
      for (int k = 0; k < draws; ++k) acc += norm2_sq(p.stochastic_gradient(x, noise));
      // Generous slack: this is a smoke check, the acceptance suite
      // runs the statistically sharp version.
      CHECK(acc / draws <= m2 * 1.05 + 1e-9);
    }
  }
}

TEST_CASE("projected descent recovers a known optimum") {
  ProblemSpec p = make_stochastic_quadratic(3, 10.0, 0.0, 1.0, 4, Vec{0.3, -0.2, 0.5});
  double est = estimate_fstar(p, 2000, 0.05, 1);
  REQUIRE(p.optimum.has_value());
  CHECK(est == doctest::Approx(p.optimum->f_star).epsilon(1e-6));
}

TEST_CASE("factory argument validation") {
  CHECK_THROWS_AS(make_stochastic_quadratic(0, 10.0, 0.1, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_stochastic_quadratic(2, 0.5, 0.1, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_stochastic_quadratic(2, 10.0, -0.1, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_stochastic_quadratic(2, 10.0, 0.1, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_logistic_from_data({}, {}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_logistic_from_data({Vec{1.0}}, {1, 0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_logistic_from_data({Vec{1.0}}, {2}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_nonconvex_wells(0, 0.1, 1.0), std::invalid_argument);
}

}  // TEST_SUITE("oracle")
