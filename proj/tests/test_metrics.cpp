#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "apgrad/core.hpp"
#include "apgrad/metrics.hpp"
#include "apgrad/oracle.hpp"

using namespace apgrad;

namespace {

// Exact oracle for boxes: the linear program min <y-x, g> over a box is
// attained at a corner, so enumerate all of them.
double corner_oracle_gap(const Vec& x, const Vec& g, const FeasibleSet& box) {
  std::size_t d = box.dim();
  double best = 0.0;  // y = x is feasible once x is
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    double v = 0;
    for (std::size_t i = 0; i < d; ++i) {
      double yi = (mask >> i) & 1 ? box.upper[i] : box.lower[i];
      v += (yi - x[i]) * g[i];
    }
    best = std::min(best, v);
  }
  return best;
}

TheoryConstants worked_constants() {
  TheoryConstants k;
  k.Btilde = 1.0;
  k.Mtilde = 2.0;
  k.M = 2.0;
  k.btilde = 0.999;
  k.gammatilde = 1.0;
  k.D = 4.0;
  k.d = 1;
  return k;
}

TheoryConstants unit_constants() {
  TheoryConstants k;
  k.Btilde = 1.0;
  k.Mtilde = 1.0;
  k.M = 1.0;
  k.btilde = 1.0;
  k.gammatilde = 1.0;
  k.D = 1.0;
  k.d = 1;
  return k;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("box gap on pinned points") {
  FeasibleSet box = FeasibleSet::box(Vec{-1.0}, Vec{1.0});
  CHECK(stationarity_gap(Vec{0.5}, Vec{1.0}, box) == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(stationarity_gap(Vec{0.5}, Vec{-2.0}, box) == doctest::Approx(-1.0).epsilon(1e-15));
  // At the wall pushing outward there is nowhere better to go.
  CHECK(stationarity_gap(Vec{-1.0}, Vec{1.0}, box) == 0.0);
  CHECK(stationarity_gap(Vec{0.3}, Vec{0.0}, box) == 0.0);
}

TEST_CASE("ball gap on pinned points") {
  FeasibleSet ball = FeasibleSet::ball(Vec{0.0, 0.0}, 1.0);
  CHECK(stationarity_gap(Vec{0.0, 0.0}, Vec{3.0, 4.0}, ball) ==
        doctest::Approx(-5.0).epsilon(1e-15));
  // Boundary point whose negative gradient points outward: stationary.
  CHECK(stationarity_gap(Vec{-0.6, -0.8}, Vec{3.0, 4.0}, ball) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("box gap equals the corner-enumeration oracle") {
  SeedState s{808, 0};
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t d = 1 + (s.next_u64() % 6);
    Vec lo(d), hi(d), x(d), g(d);
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = -1.0 - s.next_unit();
      hi[i] = 1.0 + s.next_unit();
      x[i] = lo[i] + (hi[i] - lo[i]) * s.next_unit();
      g[i] = 6.0 * s.next_unit() - 3.0;
    }
    FeasibleSet box = FeasibleSet::box(lo, hi);
    double ours = stationarity_gap(x, g, box);
    double oracle = corner_oracle_gap(x, g, box);
    CHECK(ours == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(ours <= 0.0);
  }
}

TEST_CASE("ball gap matches a boundary angle scan") {
  SeedState s{909, 0};
  for (int trial = 0; trial < 100; ++trial) {
    FeasibleSet ball = FeasibleSet::ball(Vec{s.next_unit(), -s.next_unit()}, 0.5 + s.next_unit());
    Vec x{ball.center[0] + 0.3 * ball.radius * (2 * s.next_unit() - 1),
          ball.center[1] + 0.3 * ball.radius * (2 * s.next_unit() - 1)};
    Vec g{4.0 * s.next_unit() - 2.0, 4.0 * s.next_unit() - 2.0};
    double best = 0.0;
    for (int k = 0; k < 20000; ++k) {
      double th = 2.0 * 3.14159265358979323846 * k / 20000;
      Vec y{ball.center[0] + ball.radius * std::cos(th),
            ball.center[1] + ball.radius * std::sin(th)};
      best = std::min(best, (y[0] - x[0]) * g[0] + (y[1] - x[1]) * g[1]);
    }
    double ours = stationarity_gap(x, g, ball);
    CHECK(ours <= best + 1e-12);
    CHECK(ours >= best - 1e-3 * (1.0 + std::abs(best)));
  }
}

TEST_CASE("regret of pinned loss sequences") {
  // Rounds {3,-1,-1} against a per-round optimum of -1/3.
  CHECK(regret({3.0, -1.0, -1.0}, -1.0 / 3.0) == doctest::Approx(2.0).epsilon(1e-14));
  // Playing the comparator itself has zero regret.
  CHECK(regret({-3.0, 1.0, 1.0}, -1.0 / 3.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(regret({1.0, 2.0}, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(regret({}, 0.0), std::invalid_argument);
}

TEST_CASE("constant-rate floor on the worked instance") {
  TheoryConstants k = worked_constants();
  CHECK(theorem1_bound(k, 1e-3, 1e-3) ==
        doctest::Approx(-0.006006006006006006).epsilon(1e-12));
  CHECK(theorem1_bound(k, 1e-3, 0.0) ==
        doctest::Approx(-0.002002002002002002).epsilon(1e-12));
  CHECK_THROWS_AS(theorem1_bound(k, 0.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(theorem1_bound(k, 1e-3, -1.0), std::invalid_argument);
  TheoryConstants bad = k;
  bad.btilde = 0.0;
  CHECK_THROWS_AS(theorem1_bound(bad, 1e-3, 1e-3), std::invalid_argument);
}

TEST_CASE("average bound: unit instance equals 2") {
  // All constants 1, n=1, alpha_1=1, sums 1: terms are 1/2 + 1/2 + 1.
  CHECK(theorem3_bound_terms(unit_constants(), 1.0, 1.0, 1.0, 1.0, 1) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(theorem3_bound_terms(unit_constants(), 1.0, 1.0, 1.0, 1.0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(theorem3_bound_terms(unit_constants(), 0.0, 1.0, 1.0, 1.0, 1),
                  std::invalid_argument);
}

TEST_CASE("average bound approaches the constant-schedule floor terms") {
  TheoryConstants k = worked_constants();
  ScheduleConfig s;
  s.alpha = AlphaRule::constant(1e-3);
  s.beta = BetaRule::constant(1e-3);
  const double limit = 4.0 / (2 * 0.999) * 1e-3 + 2.0 * 2.0 / 0.999 * 1e-3;
  double b = theorem3_bound(k, s, Vec{0.01}, 1000000);
  CHECK(b > limit);  // the 1/(n alpha_n) term is still positive
  CHECK(b == doctest::Approx(limit).epsilon(0.01));
}

TEST_CASE("average bound scaled by sqrt(n) stays bounded for alpha = 1/sqrt(n)") {
  TheoryConstants k = worked_constants();
  k.btilde = 0.9;  // matches sup beta = 0.1 below
  ScheduleConfig s;
  s.alpha = AlphaRule::inverse_power(0.5);
  s.beta = BetaRule::geometric(0.1);
  const double c2 = k.Btilde * k.Btilde * k.Mtilde * k.Mtilde / (2 * k.btilde);
  const double limit = k.D * 0.01 / (2 * k.btilde) + 2.0 * c2;
  for (std::int64_t n : {100LL, 10000LL, 1000000LL}) {
    double scaled = theorem3_bound(k, s, Vec{0.01}, n) * std::sqrt(static_cast<double>(n));
    CHECK(scaled > 0.0);
    CHECK(scaled <= limit + 0.1);
  }
}

TEST_CASE("average bound rejects a growing per-step rate") {
  // alpha = 1/sqrt(n) with beta = (1/2)^n grows between n=1 and n=2:
  // 0.71 * 0.75 > 1 * 0.5.
  ScheduleConfig s;
  s.alpha = AlphaRule::inverse_power(0.5);
  s.beta = BetaRule::geometric(0.5);
  bool threw = false;
  try {
    (void)theorem3_bound(worked_constants(), s, Vec{0.01}, 100);
  } catch (const std::invalid_argument& e) {
    threw = true;
    CHECK(std::string(e.what()).find("non-increasing") != std::string::npos);
  }
  CHECK(threw);

  CHECK_THROWS_AS(theorem3_bound(worked_constants(), s, Vec{}, 100), std::invalid_argument);
  CHECK_THROWS_AS(theorem3_bound(worked_constants(), s, Vec{0.01}, 0), std::invalid_argument);
}

TEST_CASE("rate fit recovers an exact power law to 1e-6") {
  std::vector<std::int64_t> ns;
  std::vector<double> qs, neg;
  // The fit only uses the final two decades, so lay the grid exactly there.
  for (int i = 0; i < 60; ++i) {
    double e = 4.0 + 2.0 * i / 59.0;
    auto n = static_cast<std::int64_t>(std::llround(std::pow(10.0, e)));
    ns.push_back(n);
    qs.push_back(3.0 * std::pow(static_cast<double>(n), -0.25));
    neg.push_back(-qs.back());
  }
  CHECK(fit_rate_exponent(ns, qs) == doctest::Approx(0.25).epsilon(1e-6));
  // Sign does not matter: the fit uses |q|.
  CHECK(fit_rate_exponent(ns, neg) == doctest::Approx(0.25).epsilon(1e-6));

  std::vector<double> flat(ns.size(), 5.0);
  CHECK(std::abs(fit_rate_exponent(ns, flat)) < 1e-9);
}

TEST_CASE("rate fit rejects unusable inputs") {
  std::vector<std::int64_t> few = {100, 1000, 10000};
  std::vector<double> fewq = {1.0, 0.5, 0.25};
  CHECK_THROWS_AS(fit_rate_exponent(few, fewq), std::invalid_argument);

  std::vector<std::int64_t> narrow;
  std::vector<double> narrowq;
  for (int i = 0; i < 30; ++i) {
    narrow.push_back(10000 + i * 1000);
    narrowq.push_back(1.0 / (i + 1));
  }
  CHECK_THROWS_AS(fit_rate_exponent(narrow, narrowq), std::invalid_argument);

  std::vector<std::int64_t> ns;
  std::vector<double> zeros;
  for (int i = 0; i < 40; ++i) {
    ns.push_back(static_cast<std::int64_t>(std::pow(10.0, 2 + i * 0.1)));
    zeros.push_back(0.0);
  }
  CHECK_THROWS_AS(fit_rate_exponent(ns, zeros), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate_exponent(ns, {1.0}), std::invalid_argument);
}

TEST_CASE("suboptimality pairs subtract f_star per sample") {
  RunRecord rec;
  RecordSample a, b;
  a.n = 10;
  a.f_xtilde = 1.5;
  b.n = 20;
  b.f_xtilde = 1.25;
  rec.samples = {a, b};
  auto out = suboptimality(rec, 1.0);
  REQUIRE(out.size() == 2);
  CHECK(out[0].first == 10);
  CHECK(out[0].second == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(out[1].second == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(suboptimality(rec, std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
  RunRecord empty;
  CHECK_THROWS_AS(empty.final_sample(), std::runtime_error);
}

TEST_CASE("bound report assembles constants from runs and schedule") {
  FeasibleSet box = FeasibleSet::box(Vec{-1.0, -1.0}, Vec{1.0, 1.0});
  ScheduleConfig s;
  s.alpha = AlphaRule::constant(1e-3);
  s.beta = BetaRule::constant(0.9);
  s.gamma = 0.9;

  RunRecord r1, r2;
  r1.h_first = Vec{1.0, 4.0};
  r1.h_last = Vec{2.0, 4.0};
  r2.h_first = Vec{0.25, 1.0};
  r2.h_last = Vec{4.0, 6.0};

  BoundReport rep = bound_report(2.0, box, s, {r1, r2});
  CHECK(rep.constants.M == 2.0);
  CHECK(rep.constants.Mtilde == 2.0);
  CHECK(rep.constants.D == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(rep.constants.Btilde == doctest::Approx(2.0).epsilon(1e-12));  // 1/sqrt(0.25)
  CHECK(rep.constants.btilde == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(rep.constants.gammatilde == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(rep.constants.d == 2);
  CHECK(rep.B_i[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(rep.B_i[1] == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(rep.theorem1_rhs ==
        doctest::Approx(theorem1_bound(rep.constants, 1e-3, 0.9)).epsilon(1e-12));

  // Diminishing schedules have no constant-rate floor.
  ScheduleConfig dim = s;
  dim.alpha = AlphaRule::inverse_power(0.75);
  BoundReport rep2 = bound_report(2.0, box, dim, {r1, r2});
  CHECK(std::isnan(rep2.theorem1_rhs));

  CHECK_THROWS_AS(bound_report(2.0, box, s, {}), std::invalid_argument);
  RunRecord badrec;
  badrec.h_first = Vec{1.0};
  badrec.h_last = Vec{1.0};
  CHECK_THROWS_AS(bound_report(2.0, box, s, {badrec}), std::invalid_argument);
}

TEST_CASE("gap input validation") {
  FeasibleSet box = FeasibleSet::box(Vec{-1.0}, Vec{1.0});
  CHECK_THROWS_AS(stationarity_gap(Vec{0.0, 0.0}, Vec{1.0}, box), std::invalid_argument);
  CHECK_THROWS_AS(stationarity_gap(Vec{0.0}, Vec{1.0, 1.0}, box), std::invalid_argument);
}

}  // TEST_SUITE("metrics")
