#pragma once

#include <vector>

#include "tpc/channel.hpp"

namespace tpc {

struct RateReport {
  double alpha = 0;
  unsigned m_opt = 0;           // argmax of achievable_rate
  double achievable = 0;
  unsigned m_opt_baseline = 0;  // argmax of baseline_rate
  double baseline = 0;
  double capacity = 0;
};

struct TpclpReport {
  double capacity = 0;
  double F_d = 0;
  double R_ach = 0;   // (1 - 1/m) * F_d
  double gap = 0;     // capacity - R_ach
  double gap_bound = 0;  // e^{-alpha m} / m
};

/// (1 - 1/m)(m*alpha + 1) e^{-m*alpha}
double achievable_rate(unsigned m, double alpha);

/// (1 - 1/m)(2m*alpha + 1) e^{-2m*alpha} — the interleaved-pilot scheme's
/// rate, i.e. the achievable rate at a doubled fragment-length threshold.
double baseline_rate(unsigned m, double alpha);

/// Torn-paper channel capacity e^{-alpha}.
double capacity(double alpha);

/// Best integer m in [2, m_max] for both rate formulas; ties to smaller m.
RateReport optimize_m(double alpha, unsigned m_max = 10000);

/// TPC-LP capacity: alpha^2 * sum over pieces of (1-d) int (k-1) e^{-a k} dk,
/// integrated from max(lo, 1); closed form, no quadrature.
double tpclp_capacity(double alpha, const DeletionProfile& d);

/// Surviving-coverage fraction F_d: alpha^2 * sum (1-d) int k e^{-a k} dk.
double tpclp_F_d(double alpha, const DeletionProfile& d);

/// Capacity, F_d, achievable rate and gap for a threshold profile (m >= 2).
TpclpReport tpclp_report(double alpha, const DeletionProfile& d);

/// One report per alpha; throws ParamInvalid on an empty grid or alpha <= 0.
std::vector<RateReport> rate_table(const std::vector<double>& alphas, unsigned m_max = 10000);

/// Banker's rounding at `decimals` places (presentation only).
double round_half_even(double x, int decimals);

}  // namespace tpc
