#include "apgrad/core.hpp"

#include <cmath>
#include <sstream>

namespace apgrad {

bool all_finite(const Vec& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2_sq(const Vec& v) { return dot(v, v); }

double norm2(const Vec& v) { return std::sqrt(norm2_sq(v)); }

DiagonalMatrix::DiagonalMatrix(Vec d) : diag(std::move(d)) {
  if (diag.empty()) throw std::invalid_argument("DiagonalMatrix: empty diagonal");
  for (double h : diag) {
    if (!std::isfinite(h) || h <= 0) {
      throw std::invalid_argument("DiagonalMatrix: entries must be finite and positive");
    }
  }
}

DiagonalMatrix DiagonalMatrix::identity(std::size_t d, double value) {
  return DiagonalMatrix(Vec(d, value));
}

double weighted_norm(const DiagonalMatrix& h, const Vec& v) {
  if (h.dim() != v.size()) throw std::invalid_argument("weighted_norm: length mismatch");
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += h.diag[i] * v[i] * v[i];
  return std::sqrt(s);
}

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw std::invalid_argument("FeasibleSet::box: bad bounds");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] >= upper[i]) {
      throw std::invalid_argument("FeasibleSet::box: need lower[i] < upper[i]");
    }
  }
  FeasibleSet s;
  s.kind = Kind::Box;
  s.lower = std::move(lower);
  s.upper = std::move(upper);
  return s;
}

FeasibleSet FeasibleSet::ball(Vec center, double radius) {
  if (center.empty()) throw std::invalid_argument("FeasibleSet::ball: empty center");
  if (!all_finite(center) || !std::isfinite(radius) || radius <= 0) {
    throw std::invalid_argument("FeasibleSet::ball: need finite center and radius > 0");
  }
  FeasibleSet s;
  s.kind = Kind::Ball;
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

std::size_t FeasibleSet::dim() const {
  return kind == Kind::Box ? lower.size() : center.size();
}

bool FeasibleSet::contains(const Vec& x, double slack) const {
  if (x.size() != dim()) return false;
  if (kind == Kind::Box) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lower[i] - slack || x[i] > upper[i] + slack) return false;
    }
    return true;
  }
  double r2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = x[i] - center[i];
    r2 += t * t;
  }
  return std::sqrt(r2) <= radius + slack;
}

AlphaRule AlphaRule::constant(double alpha) {
  AlphaRule r;
  r.kind = Kind::Constant;
  r.value = alpha;
  return r;
}

AlphaRule AlphaRule::inverse_power(double eta, double scale) {
  AlphaRule r;
  r.kind = Kind::InversePower;
  r.eta = eta;
  r.scale = scale;
  return r;
}

BetaRule BetaRule::constant(double beta) {
  BetaRule r;
  r.kind = Kind::Constant;
  r.value = beta;
  return r;
}

BetaRule BetaRule::geometric(double lambda) {
  BetaRule r;
  r.kind = Kind::Geometric;
  r.lambda = lambda;
  return r;
}

void ScheduleConfig::validate() const {
  if (alpha.kind == AlphaRule::Kind::Constant) {
    if (!(alpha.value > 0 && alpha.value < 1)) {
      throw std::invalid_argument("schedule: constant alpha must lie in (0,1)");
    }
  } else {
    if (!(alpha.eta >= 0.5 && alpha.eta <= 1.0)) {
      throw std::invalid_argument("schedule: alpha decay exponent must lie in [1/2,1]");
    }
    if (!(alpha.scale > 0 && alpha.scale <= 1.0)) {
      throw std::invalid_argument("schedule: alpha scale must lie in (0,1]");
    }
  }
  if (beta.kind == BetaRule::Kind::Constant) {
    if (!(beta.value >= 0 && beta.value < 1)) {
      throw std::invalid_argument("schedule: constant beta must lie in [0,1)");
    }
  } else {
    if (!(beta.lambda > 0 && beta.lambda < 1)) {
      throw std::invalid_argument("schedule: beta base must lie in (0,1)");
    }
  }
  if (!(gamma >= 0 && gamma < 1)) throw std::invalid_argument("schedule: gamma must lie in [0,1)");
  if (!(delta >= 0 && delta < 1)) throw std::invalid_argument("schedule: delta must lie in [0,1)");
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("schedule: epsilon must be positive");
  }
}

std::string ScheduleConfig::describe() const {
  std::ostringstream os;
  if (alpha.kind == AlphaRule::Kind::Constant) {
    os << "alpha=const:" << alpha.value;
  } else {
    os << "alpha=invpow:eta=" << alpha.eta << ",scale=" << alpha.scale;
  }
  if (beta.kind == BetaRule::Kind::Constant) {
    os << ";beta=const:" << beta.value;
  } else {
    os << ";beta=geom:" << beta.lambda;
  }
  os << ";gamma=" << gamma << ";delta=" << delta << ";epsilon=" << epsilon;
  return os.str();
}

double ScheduleConfig::sup_beta() const {
  return beta.kind == BetaRule::Kind::Constant ? beta.value : beta.lambda;
}

double eval_alpha(const ScheduleConfig& s, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("eval_alpha: negative index");
  if (s.alpha.kind == AlphaRule::Kind::Constant) return s.alpha.value;
  if (n <= 1) return s.alpha.scale;
  return s.alpha.scale * std::pow(static_cast<double>(n), -s.alpha.eta);
}

double eval_beta(const ScheduleConfig& s, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("eval_beta: negative index");
  if (s.beta.kind == BetaRule::Kind::Constant) return s.beta.value;
  const auto e = static_cast<double>(n < 1 ? 1 : n);
  return std::pow(s.beta.lambda, e);
}

double diameter_constant(const FeasibleSet& set) {
  if (set.kind == FeasibleSet::Kind::Box) {
    double w = 0;
    for (std::size_t i = 0; i < set.lower.size(); ++i) {
      w = std::max(w, set.upper[i] - set.lower[i]);
    }
    return w * w;
  }
  return 4.0 * set.radius * set.radius;
}

void TheoryConstants::validate() const {
  if (!(M >= 0) || !(Mtilde >= M)) throw std::invalid_argument("constants: need Mtilde >= M >= 0");
  if (!(D > 0)) throw std::invalid_argument("constants: need D > 0");
  if (!(Btilde > 0)) throw std::invalid_argument("constants: need Btilde > 0");
  if (!(btilde > 0 && btilde <= 1)) throw std::invalid_argument("constants: need btilde in (0,1]");
  if (!(gammatilde > 0 && gammatilde <= 1)) {
    throw std::invalid_argument("constants: need gammatilde in (0,1]");
  }
  if (d == 0) throw std::invalid_argument("constants: need d >= 1");
}

}  // namespace apgrad
