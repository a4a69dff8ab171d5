#include "apgrad/moment.hpp"

#include <cmath>

namespace apgrad {

FirstMomentState FirstMomentState::zeros(std::size_t d) {
  if (d == 0) throw std::invalid_argument("first moment: d must be >= 1");
  FirstMomentState s;
  s.m.assign(d, 0.0);
  s.m_init = s.m;
  return s;
}

FirstMomentState FirstMomentState::from_initial(Vec m0) {
  if (m0.empty() || !all_finite(m0)) throw std::invalid_argument("first moment: bad initial value");
  FirstMomentState s;
  s.m = m0;
  s.m_init = std::move(m0);
  return s;
}

void update_first_moment(FirstMomentState& state, const Vec& g, double beta_n) {
  if (g.size() != state.m.size()) throw std::invalid_argument("first moment: length mismatch");
  if (!(beta_n >= 0 && beta_n < 1)) {
    throw std::invalid_argument("first moment: beta_n must lie in [0,1)");
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    state.m[i] = beta_n * state.m[i] + (1.0 - beta_n) * g[i];
  }
}

Vec bias_correct(const Vec& m, double gamma, std::int64_t n) {
  if (!(gamma >= 0 && gamma < 1)) throw std::invalid_argument("bias_correct: gamma must lie in [0,1)");
  if (n < 0) throw std::invalid_argument("bias_correct: negative index");
  if (gamma == 0) return m;
  const double divisor = 1.0 - std::pow(gamma, static_cast<double>(n + 1));
  Vec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i] / divisor;
  return out;
}

SecondMomentState SecondMomentState::make(EstimatorKind kind, std::size_t d, double delta,
                                          double epsilon) {
  if (d == 0) throw std::invalid_argument("second moment: d must be >= 1");
  if (!(delta >= 0 && delta < 1)) throw std::invalid_argument("second moment: delta must lie in [0,1)");
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("second moment: epsilon must be positive");
  }
  SecondMomentState s;
  s.kind = kind;
  s.v.assign(d, 0.0);
  s.v_hat.assign(d, 0.0);
  s.delta = delta;
  s.epsilon = epsilon;
  return s;
}

void update_second_moment(SecondMomentState& state, const Vec& g) {
  if (g.size() != state.v.size()) throw std::invalid_argument("second moment: length mismatch");
  const double delta = state.delta;
  const double divisor =
      1.0 - std::pow(delta, static_cast<double>(state.step_index + 1));
  for (std::size_t i = 0; i < g.size(); ++i) {
    state.v[i] = delta * state.v[i] + (1.0 - delta) * g[i] * g[i];
    const double candidate =
        state.kind == EstimatorKind::AdamMax ? state.v[i] / divisor : state.v[i];
    if (candidate > state.v_hat[i]) state.v_hat[i] = candidate;
  }
  ++state.step_index;
}

DiagonalMatrix preconditioner(const SecondMomentState& state) {
  Vec h(state.v_hat.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = std::sqrt(state.v_hat[i]) + state.epsilon;
  return DiagonalMatrix(std::move(h));
}

}  // namespace apgrad
