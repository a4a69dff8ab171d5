#pragma once

#include <cstdint>

#include "apgrad/core.hpp"

namespace apgrad {

enum class EstimatorKind { AdamMax, AmsGrad };

// Exponentially averaged gradient m_n = beta_n m_{n-1} + (1-beta_n) g_n.
// The initial value is retained so bound constants can use ||m_init||.
struct FirstMomentState {
  Vec m;
  Vec m_init;

  static FirstMomentState zeros(std::size_t d);
  static FirstMomentState from_initial(Vec m0);
};

void update_first_moment(FirstMomentState& state, const Vec& g, double beta_n);

// Bias-corrected estimate m / (1 - gamma^(n+1)); gamma = 0 is the identity.
Vec bias_correct(const Vec& m, double gamma, std::int64_t n);

// Squared-gradient average v with a running maximum v_hat. AdamMax applies
// the delta bias correction before the max; AmsGrad clamps the raw v.
// step_index counts completed updates, so the first correction divides by
// 1 - delta^1.
struct SecondMomentState {
  EstimatorKind kind = EstimatorKind::AmsGrad;
  Vec v;
  Vec v_hat;
  double delta = 0.999;
  std::int64_t step_index = 0;
  double epsilon = 1e-8;

  static SecondMomentState make(EstimatorKind kind, std::size_t d, double delta, double epsilon);
};

void update_second_moment(SecondMomentState& state, const Vec& g);

// H = diag(sqrt(v_hat_i) + epsilon); positive for any epsilon > 0.
DiagonalMatrix preconditioner(const SecondMomentState& state);

}  // namespace apgrad
