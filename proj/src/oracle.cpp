#include "apgrad/oracle.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "apgrad/projection.hpp"

namespace apgrad {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::uint64_t SeedState::next_u64() {
  ++counter;
  return mix64(seed + kGolden * counter);
}

double SeedState::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double SeedState::next_gaussian() {
  // Box-Muller on (0,1] x [0,1); exactly two counter slots per draw.
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SeedState SeedState::substream(std::uint64_t salt) const {
  return SeedState{mix64(seed ^ mix64(salt + kGolden)), 0};
}

void ProblemSpec::validate() const {
  if (id.empty()) throw std::invalid_argument("problem: empty id");
  if (dim == 0 || set.dim() != dim) throw std::invalid_argument("problem: dimension mismatch");
  if (!objective || !gradient || !stochastic_gradient) {
    throw std::invalid_argument("problem: missing callbacks");
  }
  if (!(gradient_bound > 0)) throw std::invalid_argument("problem: need gradient bound > 0");
}

ProblemSpec make_stochastic_quadratic(std::size_t d, double condition_span, double noise_sigma,
                                      double box_halfwidth, std::uint64_t seed,
                                      std::optional<Vec> target, bool ball_geometry) {
  if (d == 0) throw std::invalid_argument("quadratic: d must be >= 1");
  if (!(condition_span >= 1)) throw std::invalid_argument("quadratic: condition span must be >= 1");
  if (!(noise_sigma >= 0)) throw std::invalid_argument("quadratic: sigma must be >= 0");
  if (!(box_halfwidth > 0)) throw std::invalid_argument("quadratic: halfwidth must be > 0");

  Vec c(d);
  for (std::size_t i = 0; i < d; ++i) {
    c[i] = d == 1 ? condition_span
                  : std::pow(condition_span, static_cast<double>(i) / static_cast<double>(d - 1));
  }

  auto set = ball_geometry
                 ? FeasibleSet::ball(Vec(d, 0.0), box_halfwidth)
                 : FeasibleSet::box(Vec(d, -box_halfwidth), Vec(d, box_halfwidth));

  bool pinned = target.has_value();
  Vec t;
  if (pinned) {
    t = std::move(*target);
    if (t.size() != d || !all_finite(t)) throw std::invalid_argument("quadratic: bad target");
  } else {
    SeedState s = SeedState{seed, 0}.substream(0x71ad);
    t = draw_uniform(set, s);
  }

  ProblemSpec p;
  std::ostringstream id;
  id << "quadratic:d=" << d << ",span=" << fmt(condition_span) << ",sigma=" << fmt(noise_sigma)
     << ",w=" << fmt(box_halfwidth);
  if (pinned) {
    id << ",t=" << fmt(t[0]);
  } else {
    id << ",seed=" << seed;
  }
  if (ball_geometry) id << ",geom=ball";
  p.id = id.str();
  p.dim = d;
  p.set = set;
  p.objective = [c, t](const Vec& x) {
    double f = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = x[i] - t[i];
      f += 0.5 * c[i] * r * r;
    }
    return f;
  };
  p.gradient = [c, t](const Vec& x) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = c[i] * (x[i] - t[i]);
    return g;
  };
  p.stochastic_gradient = [c, t, noise_sigma](const Vec& x, SeedState& s) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      g[i] = c[i] * (x[i] - t[i]);
      if (noise_sigma > 0) g[i] += noise_sigma * s.next_gaussian();
    }
    return g;
  };
  const double cmax = c.back() > c.front() ? c.back() : c.front();
  const double diam = 2.0 * box_halfwidth;
  p.gradient_bound =
      std::sqrt(static_cast<double>(d) * (cmax * diam) * (cmax * diam) +
                static_cast<double>(d) * noise_sigma * noise_sigma);
  p.convex = true;
  // The c-weighted projection of the target is the constrained minimizer.
  Vec x_star = project(set, DiagonalMatrix(c), t);
  p.optimum = KnownOptimum{x_star, p.objective(x_star)};
  return p;
}

ProblemSpec make_logistic_from_data(std::vector<Vec> features, std::vector<int> labels,
                                    double box_halfwidth, bool ball_geometry) {
  if (features.empty() || features.size() != labels.size()) {
    throw std::invalid_argument("logistic: need one label per feature row");
  }
  const std::size_t d = features[0].size();
  if (d == 0) throw std::invalid_argument("logistic: d must be >= 1");
  for (const auto& a : features) {
    if (a.size() != d || !all_finite(a)) throw std::invalid_argument("logistic: bad feature row");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) throw std::invalid_argument("logistic: labels must be 0 or 1");
  }
  if (!(box_halfwidth > 0)) throw std::invalid_argument("logistic: halfwidth must be > 0");

  const std::size_t n = features.size();
  auto feats = std::make_shared<std::vector<Vec>>(std::move(features));
  auto labs = std::make_shared<std::vector<int>>(std::move(labels));

  ProblemSpec p;
  std::ostringstream id;
  id << "logistic:d=" << d << ",n=" << n << ",data=explicit";
  if (ball_geometry) id << ",geom=ball";
  p.id = id.str();
  p.dim = d;
  p.set = ball_geometry ? FeasibleSet::ball(Vec(d, 0.0), box_halfwidth)
                        : FeasibleSet::box(Vec(d, -box_halfwidth), Vec(d, box_halfwidth));
  // loss_j(x) = log(1 + exp(z_j)) - y_j z_j with z_j = <a_j, x>.
  p.objective = [feats, labs](const Vec& x) {
    double f = 0;
    for (std::size_t j = 0; j < feats->size(); ++j) {
      const double z = dot((*feats)[j], x);
      const double soft = std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
      f += soft - static_cast<double>((*labs)[j]) * z;
    }
    return f / static_cast<double>(feats->size());
  };
  p.gradient = [feats, labs, d](const Vec& x) {
    Vec g(d, 0.0);
    for (std::size_t j = 0; j < feats->size(); ++j) {
      const double z = dot((*feats)[j], x);
      const double r = 1.0 / (1.0 + std::exp(-z)) - static_cast<double>((*labs)[j]);
      for (std::size_t i = 0; i < d; ++i) g[i] += r * (*feats)[j][i];
    }
    for (double& gi : g) gi /= static_cast<double>(feats->size());
    return g;
  };
  p.stochastic_gradient = [feats, labs, n, d](const Vec& x, SeedState& s) {
    const auto j = static_cast<std::size_t>(s.next_u64() % n);
    const double z = dot((*feats)[j], x);
    const double r = 1.0 / (1.0 + std::exp(-z)) - static_cast<double>((*labs)[j]);
    Vec g(d);
    for (std::size_t i = 0; i < d; ++i) g[i] = r * (*feats)[j][i];
    return g;
  };
  double m = 0;
  for (const auto& a : *feats) m = std::max(m, norm2(a));
  p.gradient_bound = std::max(m, 1e-12);
  p.convex = true;
  return p;
}

ProblemSpec make_noisy_logistic(std::size_t d, std::size_t n_samples, double label_noise,
                                double box_halfwidth, std::uint64_t seed, bool ball_geometry) {
  if (d == 0 || n_samples == 0) throw std::invalid_argument("logistic: need d >= 1, n >= 1");
  if (!(label_noise >= 0 && label_noise <= 0.5)) {
    throw std::invalid_argument("logistic: label noise must lie in [0, 1/2]");
  }
  SeedState s = SeedState{seed, 0}.substream(0x106);

  Vec w_true(d);
  for (std::size_t i = 0; i < d; ++i) {
    w_true[i] = -box_halfwidth + 2.0 * box_halfwidth * s.next_unit();
  }
  std::vector<Vec> features(n_samples, Vec(d));
  std::vector<int> labels(n_samples);
  for (std::size_t j = 0; j < n_samples; ++j) {
    for (std::size_t i = 0; i < d; ++i) features[j][i] = s.next_gaussian();
    const double z = dot(features[j], w_true);
    int y = s.next_unit() < 1.0 / (1.0 + std::exp(-z)) ? 1 : 0;
    if (s.next_unit() < label_noise) y = 1 - y;
    labels[j] = y;
  }

  ProblemSpec p =
      make_logistic_from_data(std::move(features), std::move(labels), box_halfwidth, ball_geometry);
  std::ostringstream id;
  id << "logistic:d=" << d << ",n=" << n_samples << ",noise=" << fmt(label_noise)
     << ",w=" << fmt(box_halfwidth) << ",seed=" << seed;
  if (ball_geometry) id << ",geom=ball";
  p.id = id.str();
  return p;
}

ProblemSpec make_nonconvex_wells(std::size_t d, double noise_sigma, double box_halfwidth,
                                 bool ball_geometry) {
  if (d == 0) throw std::invalid_argument("wells: d must be >= 1");
  if (!(noise_sigma >= 0)) throw std::invalid_argument("wells: sigma must be >= 0");
  if (!(box_halfwidth > 0)) throw std::invalid_argument("wells: halfwidth must be > 0");

  ProblemSpec p;
  std::ostringstream id;
  id << "wells:d=" << d << ",sigma=" << fmt(noise_sigma) << ",w=" << fmt(box_halfwidth);
  if (ball_geometry) id << ",geom=ball";
  p.id = id.str();
  p.dim = d;
  p.set = ball_geometry ? FeasibleSet::ball(Vec(d, 0.0), box_halfwidth)
                        : FeasibleSet::box(Vec(d, -box_halfwidth), Vec(d, box_halfwidth));
  p.objective = [](const Vec& x) {
    double f = 0;
    for (double xi : x) f += 0.25 * xi * xi * xi * xi - 0.5 * xi * xi;
    return f;
  };
  p.gradient = [](const Vec& x) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] * x[i] * x[i] - x[i];
    return g;
  };
  p.stochastic_gradient = [noise_sigma](const Vec& x, SeedState& s) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      g[i] = x[i] * x[i] * x[i] - x[i];
      if (noise_sigma > 0) g[i] += noise_sigma * s.next_gaussian();
    }
    return g;
  };
  const double w = box_halfwidth;
  double gmax = std::abs(w * w * w - w);
  if (w >= 1.0 / std::sqrt(3.0)) gmax = std::max(gmax, 2.0 / (3.0 * std::sqrt(3.0)));
  p.gradient_bound = std::sqrt(static_cast<double>(d) * gmax * gmax +
                               static_cast<double>(d) * noise_sigma * noise_sigma);
  p.convex = false;
  // Per coordinate x^4/4 - x^2/2 decreases on [0, 1]; on a sphere the
  // quartic sum is minimized by spreading mass equally, so the minimizer
  // is symmetric with magnitude u capped at 1 in both geometries.
  const double u = ball_geometry ? std::min(1.0, w / std::sqrt(static_cast<double>(d)))
                                 : std::min(1.0, w);
  p.optimum = KnownOptimum{Vec(d, u),
                           static_cast<double>(d) * (0.25 * u * u * u * u - 0.5 * u * u)};
  return p;
}

ProblemSpec make_adversarial_online(std::int64_t period, double magnitude) {
  if (period < 2) throw std::invalid_argument("adversarial: period must be >= 2");
  if (!(magnitude > 0)) throw std::invalid_argument("adversarial: magnitude must be > 0");

  const auto pd = static_cast<double>(period);
  const double sbar = (magnitude - (pd - 1.0)) / pd;  // period-average slope

  ProblemSpec p;
  std::ostringstream id;
  id << "adversarial:period=" << period << ",mag=" << fmt(magnitude);
  p.id = id.str();
  p.dim = 1;
  p.set = FeasibleSet::box(Vec{-1.0}, Vec{1.0});
  p.objective = [sbar](const Vec& x) { return sbar * x[0]; };
  p.gradient = [sbar](const Vec&) { return Vec{sbar}; };
  p.stochastic_gradient = [period, magnitude](const Vec&, SeedState& s) {
    const auto t = static_cast<std::int64_t>(s.counter % static_cast<std::uint64_t>(period));
    ++s.counter;
    return Vec{t == 0 ? magnitude : -1.0};
  };
  p.gradient_bound = std::max(magnitude, 1.0);
  p.convex = true;
  const double x_star = sbar == 0 ? 0.0 : (sbar > 0 ? -1.0 : 1.0);
  p.optimum = KnownOptimum{Vec{x_star}, -std::abs(sbar)};
  OnlineLosses online;
  online.loss = [period, magnitude](std::int64_t t, const Vec& x) {
    return (t % period == 0 ? magnitude : -1.0) * x[0];
  };
  online.optimal_share = -std::abs(sbar);
  online.period = period;
  p.online = online;
  return p;
}

double estimate_fstar(const ProblemSpec& problem, std::int64_t steps, double step_size,
                      std::uint64_t seed) {
  if (steps < 1 || !(step_size > 0)) {
    throw std::invalid_argument("estimate_fstar: need steps >= 1 and step size > 0");
  }
  SeedState s = SeedState{seed, 0}.substream(0xF57A);
  Vec x = draw_uniform(problem.set, s);
  auto h = DiagonalMatrix::identity(problem.dim);
  double best = problem.objective(x);
  for (std::int64_t k = 0; k < steps; ++k) {
    Vec g = problem.gradient(x);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= step_size * g[i];
    x = project(problem.set, h, x);
    best = std::min(best, problem.objective(x));
  }
  return best;
}

Vec draw_uniform(const FeasibleSet& set, SeedState& s) {
  const std::size_t d = set.dim();
  Vec x(d);
  if (set.kind == FeasibleSet::Kind::Box) {
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = set.lower[i] + (set.upper[i] - set.lower[i]) * s.next_unit();
    }
    return x;
  }
  // Gaussian direction scaled by r * U^(1/d) is uniform in the ball.
  double n2 = 0;
  do {
    for (std::size_t i = 0; i < d; ++i) x[i] = s.next_gaussian();
    n2 = norm2_sq(x);
  } while (n2 == 0);
  const double scale =
      set.radius * std::pow(s.next_unit(), 1.0 / static_cast<double>(d)) / std::sqrt(n2);
  for (std::size_t i = 0; i < d; ++i) x[i] = set.center[i] + scale * x[i];
  return x;
}

}  // namespace apgrad
