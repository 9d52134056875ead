#include "tpc/analysis.hpp"

#include <cfenv>
#include <cmath>

#include "tpc/errors.hpp"

namespace tpc {

double achievable_rate(unsigned m, double alpha) {
  if (m < 2) throw ParamInvalid("achievable_rate: m must be >= 2");
  if (alpha < 0) throw ParamInvalid("achievable_rate: alpha must be >= 0");
  const double ma = m * alpha;
  return (1.0 - 1.0 / m) * (ma + 1) * std::exp(-ma);
}

double baseline_rate(unsigned m, double alpha) {
  if (m < 2) throw ParamInvalid("baseline_rate: m must be >= 2");
  const double ma = 2.0 * m * alpha;
  return (1.0 - 1.0 / m) * (ma + 1) * std::exp(-ma);
}

double capacity(double alpha) {
  if (alpha < 0) throw ParamInvalid("capacity: alpha must be >= 0");
  return std::exp(-alpha);
}

RateReport optimize_m(double alpha, unsigned m_max) {
  if (m_max < 2) throw ParamInvalid("optimize_m: m_max must be >= 2");
  if (alpha <= 0) throw ParamInvalid("optimize_m: alpha must be > 0");
  RateReport rep;
  rep.alpha = alpha;
  rep.capacity = capacity(alpha);
  rep.m_opt = rep.m_opt_baseline = 2;
  rep.achievable = achievable_rate(2, alpha);
  rep.baseline = baseline_rate(2, alpha);
  for (unsigned m = 3; m <= m_max; ++m) {
    double a = achievable_rate(m, alpha);
    if (a > rep.achievable) {
      rep.achievable = a;
      rep.m_opt = m;
    }
    double b = baseline_rate(m, alpha);
    if (b > rep.baseline) {
      rep.baseline = b;
      rep.m_opt_baseline = m;
    }
  }
  return rep;
}

namespace {

// tails of the two polynomial-times-exponential integrals
// T1(x) = int_x^inf (k-1) e^{-a k} dk,  T2(x) = int_x^inf k e^{-a k} dk
double tail_km1(double x, double a) { return std::exp(-a * x) * ((x - 1) / a + 1 / (a * a)); }
double tail_k(double x, double a) { return std::exp(-a * x) * (x / a + 1 / (a * a)); }

}  // namespace

double tpclp_capacity(double alpha, const DeletionProfile& d) {
  if (alpha <= 0) throw ParamInvalid("tpclp_capacity: alpha must be > 0");
  double sum = 0;
  for (const auto& piece : d.pieces) {
    if (piece.d >= 1.0) continue;
    const double lo = std::max(piece.lo, 1.0);
    if (!(piece.hi > lo)) continue;
    const double upper = std::isinf(piece.hi) ? 0.0 : tail_km1(piece.hi, alpha);
    sum += (1.0 - piece.d) * (tail_km1(lo, alpha) - upper);
  }
  return alpha * alpha * sum;
}

double tpclp_F_d(double alpha, const DeletionProfile& d) {
  if (alpha <= 0) throw ParamInvalid("tpclp_F_d: alpha must be > 0");
  double sum = 0;
  for (const auto& piece : d.pieces) {
    if (piece.d >= 1.0) continue;
    const double lo = std::max(piece.lo, (double)d.m_threshold);
    if (!(piece.hi > lo)) continue;
    const double upper = std::isinf(piece.hi) ? 0.0 : tail_k(piece.hi, alpha);
    sum += (1.0 - piece.d) * (tail_k(lo, alpha) - upper);
  }
  return alpha * alpha * sum;
}

TpclpReport tpclp_report(double alpha, const DeletionProfile& d) {
  if (d.m_threshold < 2) throw ParamInvalid("tpclp_report: threshold m must be >= 2");
  TpclpReport rep;
  rep.capacity = tpclp_capacity(alpha, d);
  rep.F_d = tpclp_F_d(alpha, d);
  rep.R_ach = (1.0 - 1.0 / d.m_threshold) * rep.F_d;
  rep.gap = rep.capacity - rep.R_ach;
  rep.gap_bound = std::exp(-alpha * d.m_threshold) / d.m_threshold;
  return rep;
}

std::vector<RateReport> rate_table(const std::vector<double>& alphas, unsigned m_max) {
  if (alphas.empty()) throw ParamInvalid("rate_table: alpha grid is empty");
  std::vector<RateReport> out;
  out.reserve(alphas.size());
  for (double a : alphas) out.push_back(optimize_m(a, m_max));
  return out;
}

double round_half_even(double x, int decimals) {
  double scale = std::pow(10.0, decimals);
  return std::nearbyint(x * scale) / scale;  // default FP mode rounds ties to even
}

}  // namespace tpc
