#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace apgrad {

using Vec = std::vector<double>;

bool all_finite(const Vec& v);
double dot(const Vec& a, const Vec& b);
double norm2(const Vec& v);   // Euclidean norm
double norm2_sq(const Vec& v);

// Positive diagonal preconditioner; diag entries must be finite and > 0.
struct DiagonalMatrix {
  Vec diag;

  DiagonalMatrix() = default;
  explicit DiagonalMatrix(Vec d);
  static DiagonalMatrix identity(std::size_t d, double value = 1.0);
  std::size_t dim() const { return diag.size(); }
};

// Weighted norm ||v||_H = sqrt(sum_i h_i v_i^2).
double weighted_norm(const DiagonalMatrix& h, const Vec& v);

// Axis-aligned box or Euclidean ball; both closed, bounded, nonempty.
struct FeasibleSet {
  enum class Kind { Box, Ball };

  Kind kind = Kind::Box;
  Vec lower, upper;   // box bounds, lower[i] < upper[i]
  Vec center;         // ball center
  double radius = 0;  // ball radius, > 0

  static FeasibleSet box(Vec lower, Vec upper);
  static FeasibleSet ball(Vec center, double radius);

  std::size_t dim() const;
  bool contains(const Vec& x, double slack = 1e-10) const;
};

// Step-size rule for the outer rate alpha_n. Constant keeps the value in
// (0,1); InversePower yields scale/n^eta with the n=0 term clamped to the
// n=1 value so the sequence starts finite.
struct AlphaRule {
  enum class Kind { Constant, InversePower };

  Kind kind = Kind::Constant;
  double value = 1e-3;  // constant alpha, in (0,1)
  double eta = 0.5;     // decay exponent, in [1/2, 1]
  double scale = 1.0;   // prefactor for InversePower, in (0,1]

  static AlphaRule constant(double alpha);
  static AlphaRule inverse_power(double eta, double scale = 1.0);
};

// Momentum rule beta_n: constant in [0,1) or geometric lambda^n with the
// n=0 term clamped to lambda so every beta_n < 1.
struct BetaRule {
  enum class Kind { Constant, Geometric };

  Kind kind = Kind::Constant;
  double value = 0.9;    // constant beta, in [0,1)
  double lambda = 0.5;   // geometric base, in (0,1)

  static BetaRule constant(double beta);
  static BetaRule geometric(double lambda);
};

struct ScheduleConfig {
  AlphaRule alpha;
  BetaRule beta;
  double gamma = 0.0;     // first-moment bias-correction base, in [0,1)
  double delta = 0.999;   // second-moment averaging factor, in [0,1)
  double epsilon = 1e-8;  // preconditioner floor, > 0

  void validate() const;  // throws std::invalid_argument on bad ranges
  std::string describe() const;
  double sup_beta() const;  // sup_n beta_n, < 1
};

double eval_alpha(const ScheduleConfig& s, std::int64_t n);
double eval_beta(const ScheduleConfig& s, std::int64_t n);

// Upper bound D on max_n ||x_n - x||^2 used by the convergence bounds:
// squared per-coordinate diameter for a box, squared diameter for a ball.
double diameter_constant(const FeasibleSet& set);

// Constants entering the bound formulas. Btilde is the observed
// sup_n max_i h_{n,i}^{-1/2}; with monotone preconditioners this is
// attained at the first step.
struct TheoryConstants {
  double M = 0;       // gradient second-moment bound, E||G||^2 <= M^2
  double Mtilde = 0;  // max(||m_init||, M)
  double D = 0;       // squared diameter bound of the feasible set
  double Btilde = 0;  // sup_n max_i h_{n,i}^{-1/2}
  double btilde = 0;  // 1 - sup_n beta_n
  double gammatilde = 0;  // 1 - gamma
  std::size_t d = 0;

  void validate() const;
};

}  // namespace apgrad
