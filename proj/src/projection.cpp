#include "apgrad/projection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace apgrad {

Vec project_box(const FeasibleSet& set, const Vec& y) {
  if (set.kind != FeasibleSet::Kind::Box) {
    throw std::invalid_argument("project_box: set is not a box");
  }
  if (y.size() != set.dim()) throw std::invalid_argument("project_box: dimension mismatch");
  Vec x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    x[i] = std::clamp(y[i], set.lower[i], set.upper[i]);
  }
  return x;
}

namespace {

// Radius of the stationarity-form candidate x(mu) measured from the center.
double candidate_radius(const DiagonalMatrix& h, const Vec& offset, double mu) {
  double r2 = 0;
  for (std::size_t i = 0; i < offset.size(); ++i) {
    const double t = h.diag[i] * offset[i] / (h.diag[i] + mu);
    r2 += t * t;
  }
  return std::sqrt(r2);
}

}  // namespace

Vec project_ball_weighted(const FeasibleSet& set, const DiagonalMatrix& h, const Vec& y,
                          double tol) {
  if (set.kind != FeasibleSet::Kind::Ball) {
    throw std::invalid_argument("project_ball_weighted: set is not a ball");
  }
  const std::size_t d = set.dim();
  if (y.size() != d || h.dim() != d) {
    throw std::invalid_argument("project_ball_weighted: dimension mismatch");
  }
  if (!(tol > 0)) throw std::invalid_argument("project_ball_weighted: tol must be positive");

  Vec offset(d);
  double r2 = 0;
  for (std::size_t i = 0; i < d; ++i) {
    offset[i] = y[i] - set.center[i];
    r2 += offset[i] * offset[i];
  }
  if (std::sqrt(r2) <= set.radius) return y;

  // candidate_radius is continuous and strictly decreasing in mu, so a
  // bracket [0, hi] with radius(hi) <= r pins the unique root.
  double lo = 0;
  double hi = 1;
  while (candidate_radius(h, offset, hi) > set.radius) hi *= 2;

  double mu = hi;
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    mu = 0.5 * (lo + hi);
    const double r = candidate_radius(h, offset, mu);
    if (std::abs(r - set.radius) <= tol * set.radius) {
      converged = true;
      break;
    }
    if (r > set.radius) {
      lo = mu;
    } else {
      hi = mu;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "project_ball_weighted: no convergence after 200 bisection iterations"
       << " (tol too tight; best mu = " << mu << ")";
    throw std::runtime_error(os.str());
  }

  Vec x(d);
  for (std::size_t i = 0; i < d; ++i) {
    x[i] = set.center[i] + h.diag[i] * offset[i] / (h.diag[i] + mu);
  }
  return x;
}

Vec project(const FeasibleSet& set, const DiagonalMatrix& h, const Vec& y) {
  if (set.kind == FeasibleSet::Kind::Box) return project_box(set, y);
  return project_ball_weighted(set, h, y, 1e-12);
}

}  // namespace apgrad
