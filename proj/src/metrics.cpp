#include "apgrad/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace apgrad {

const RecordSample& RunRecord::final_sample() const {
  if (samples.empty()) throw std::runtime_error("run record holds no samples");
  return samples.back();
}

double stationarity_gap(const Vec& x, const Vec& grad, const FeasibleSet& set) {
  if (x.size() != set.dim() || grad.size() != set.dim()) {
    throw std::invalid_argument("stationarity_gap: dimension mismatch");
  }
  double s = 0;
  if (set.kind == FeasibleSet::Kind::Box) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      s += grad[i] > 0 ? (set.lower[i] - x[i]) * grad[i] : (set.upper[i] - x[i]) * grad[i];
    }
  } else {
    double inner = 0;
    for (std::size_t i = 0; i < x.size(); ++i) inner += (set.center[i] - x[i]) * grad[i];
    s = inner - set.radius * norm2(grad);
  }
  // Nonpositive for feasible x; trim the rounding residue from projections
  // that land within tolerance of the boundary.
  return std::min(s, 0.0);
}

double regret(const std::vector<double>& losses, double optimal_share) {
  if (losses.empty()) throw std::invalid_argument("regret: empty loss sequence");
  double total = 0;
  for (double v : losses) total += v;
  return total - static_cast<double>(losses.size()) * optimal_share;
}

double theorem1_bound(const TheoryConstants& k, double alpha, double beta) {
  k.validate();
  if (!(alpha > 0) || !(beta >= 0)) {
    throw std::invalid_argument("theorem1_bound: need alpha > 0, beta >= 0");
  }
  const double t1 = k.Btilde * k.Btilde * k.Mtilde * k.Mtilde /
                    (2.0 * k.btilde * k.gammatilde * k.gammatilde) * alpha;
  const double t2 = k.Mtilde * std::sqrt(k.D * static_cast<double>(k.d)) /
                    (k.btilde * k.gammatilde) * beta;
  return -t1 - t2;
}

double theorem3_bound_terms(const TheoryConstants& k, double sum_Bi, double alpha_n,
                            double sum_alpha, double sum_beta, std::int64_t n) {
  k.validate();
  if (n < 1) throw std::invalid_argument("theorem3_bound: need n >= 1");
  if (!(alpha_n > 0) || !(sum_alpha > 0) || !(sum_beta >= 0) || !(sum_Bi > 0)) {
    throw std::invalid_argument("theorem3_bound: bad partial sums");
  }
  const auto nd = static_cast<double>(n);
  const double t1 = k.D * sum_Bi / (2.0 * k.btilde * nd * alpha_n);
  const double t2 = k.Btilde * k.Btilde * k.Mtilde * k.Mtilde /
                    (2.0 * k.btilde * k.gammatilde * k.gammatilde) * (sum_alpha / nd);
  const double t3 =
      k.Mtilde * std::sqrt(k.D * static_cast<double>(k.d)) / k.btilde * (sum_beta / nd);
  return t1 + t2 + t3;
}

double theorem3_bound(const TheoryConstants& k, const ScheduleConfig& schedule,
                      const Vec& B_i_estimates, std::int64_t n) {
  schedule.validate();
  if (n < 1) throw std::invalid_argument("theorem3_bound: need n >= 1");
  if (B_i_estimates.empty()) throw std::invalid_argument("theorem3_bound: empty B_i estimates");

  // Hypotheses: sup_n beta_n < 1 holds for both rules by construction;
  // the combined rate alpha_n (1-beta_n) / (1-gamma^(n+1)) must not grow.
  double sum_alpha = 0;
  double sum_beta = 0;
  double prev_rate = 0;
  double gpow = 1.0;  // gamma^(j+1), kept incrementally
  for (std::int64_t j = 0; j <= n; ++j) {
    const double a = eval_alpha(schedule, j);
    const double b = eval_beta(schedule, j);
    gpow *= schedule.gamma;
    const double rate = a * (1.0 - b) / (1.0 - gpow);
    if (j > 0 && rate > prev_rate * (1.0 + 1e-12)) {
      throw std::invalid_argument(
          "theorem3_bound: hypothesis violated: alpha_n (1-beta_n)/(1-gamma^(n+1)) "
          "is not non-increasing at n=" +
          std::to_string(j));
    }
    prev_rate = rate;
    if (j >= 1) {
      sum_alpha += a;
      sum_beta += b;
    }
  }

  double sum_Bi = 0;
  for (double b : B_i_estimates) {
    if (!(b > 0)) throw std::invalid_argument("theorem3_bound: B_i estimates must be positive");
    sum_Bi += b;
  }
  return theorem3_bound_terms(k, sum_Bi, eval_alpha(schedule, n), sum_alpha, sum_beta, n);
}

double fit_rate_exponent(const std::vector<std::int64_t>& ns, const std::vector<double>& qs) {
  if (ns.size() != qs.size()) throw std::invalid_argument("fit_rate_exponent: length mismatch");
  std::int64_t n_max = 0;
  for (std::int64_t n : ns) n_max = std::max(n_max, n);
  if (n_max < 1) throw std::invalid_argument("fit_rate_exponent: no positive indices");

  const double cutoff = static_cast<double>(n_max) / 100.0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (static_cast<double>(ns[i]) < cutoff) continue;
    const double q = std::abs(qs[i]);
    if (!(q > 0) || !std::isfinite(q)) continue;
    lx.push_back(std::log(static_cast<double>(ns[i])));
    ly.push_back(std::log(q));
  }
  if (lx.size() < 20) {
    throw std::invalid_argument("fit_rate_exponent: need at least 20 usable samples");
  }
  const auto [mn, mx] = std::minmax_element(lx.begin(), lx.end());
  if (*mx - *mn < std::log(100.0) * (1.0 - 1e-9)) {
    throw std::invalid_argument("fit_rate_exponent: samples must span two decades");
  }

  double mean_x = 0, mean_y = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mean_x += lx[i];
    mean_y += ly[i];
  }
  mean_x /= static_cast<double>(lx.size());
  mean_y /= static_cast<double>(lx.size());
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mean_x) * (lx[i] - mean_x);
    sxy += (lx[i] - mean_x) * (ly[i] - mean_y);
  }
  return -sxy / sxx;
}

std::vector<std::pair<std::int64_t, double>> suboptimality(const RunRecord& record,
                                                           double f_star) {
  if (!std::isfinite(f_star)) throw std::invalid_argument("suboptimality: f_star is not finite");
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(record.samples.size());
  for (const auto& s : record.samples) out.emplace_back(s.n, s.f_xtilde - f_star);
  return out;
}

BoundReport bound_report(double gradient_bound, const FeasibleSet& set,
                         const ScheduleConfig& schedule, const std::vector<RunRecord>& runs) {
  if (runs.empty()) throw std::invalid_argument("bound_report: no runs");
  schedule.validate();
  const std::size_t d = set.dim();

  double h_min = std::numeric_limits<double>::infinity();
  Vec b_i(d, 0.0);
  for (const auto& r : runs) {
    if (r.h_first.size() != d || r.h_last.size() != d) {
      throw std::invalid_argument("bound_report: record dimension mismatch");
    }
    for (std::size_t i = 0; i < d; ++i) {
      h_min = std::min(h_min, r.h_first[i]);
      b_i[i] += r.h_last[i];
    }
  }
  for (double& b : b_i) b /= static_cast<double>(runs.size());

  BoundReport rep;
  rep.constants.M = gradient_bound;
  rep.constants.Mtilde = gradient_bound;  // runs start from m_init = 0
  rep.constants.D = diameter_constant(set);
  rep.constants.Btilde = 1.0 / std::sqrt(h_min);
  rep.constants.btilde = 1.0 - schedule.sup_beta();
  rep.constants.gammatilde = 1.0 - schedule.gamma;
  rep.constants.d = d;
  rep.constants.validate();
  rep.B_i = std::move(b_i);
  if (schedule.alpha.kind == AlphaRule::Kind::Constant &&
      schedule.beta.kind == BetaRule::Kind::Constant) {
    rep.theorem1_rhs = theorem1_bound(rep.constants, schedule.alpha.value, schedule.beta.value);
  } else {
    rep.theorem1_rhs = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

}  // namespace apgrad
