#include <cmath>
#include <limits>

#include "doctest.h"
#include "tpc/analysis.hpp"
#include "tpc/errors.hpp"

using namespace tpc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// independent oracle: adaptive Simpson quadrature
double simpson(double (*f)(double, double), double a, double b, double alpha) {
  auto s = [&](double lo, double hi) {
    return (hi - lo) / 6 * (f(lo, alpha) + 4 * f((lo + hi) / 2, alpha) + f(hi, alpha));
  };
  struct Rec {
    double lo, hi, whole;
  };
  double total = 0;
  std::vector<Rec> stack{{a, b, s(a, b)}};
  while (!stack.empty()) {
    Rec r = stack.back();
    stack.pop_back();
    double mid = (r.lo + r.hi) / 2;
    double left = s(r.lo, mid), right = s(mid, r.hi);
    if (std::abs(left + right - r.whole) < 1e-12)
      total += left + right;
    else {
      stack.push_back({r.lo, mid, left});
      stack.push_back({mid, r.hi, right});
    }
  }
  return total;
}

double integrand_cap(double k, double a) { return (k - 1) * std::exp(-a * k); }
double integrand_fd(double k, double a) { return k * std::exp(-a * k); }

DeletionProfile worked_profile() {
  return DeletionProfile::threshold(10, {{10, 20, 0.2}, {20, kInf, 0.0}});
}

}  // namespace

TEST_CASE("point rates match the published table values") {
  CHECK(round_half_even(achievable_rate(3, 0.5), 3) == doctest::Approx(0.372));
  CHECK(round_half_even(achievable_rate(2, 1.0), 3) == doctest::Approx(0.203));
  CHECK(round_half_even(baseline_rate(2, 0.5), 3) == doctest::Approx(0.203));
  CHECK(round_half_even(baseline_rate(4, 0.1), 3) == doctest::Approx(0.607));
  CHECK(round_half_even(baseline_rate(2, 1.5), 3) == doctest::Approx(0.009));
  CHECK(round_half_even(capacity(0.3), 3) == doctest::Approx(0.741));
  CHECK(round_half_even(capacity(1.0), 3) == doctest::Approx(0.368));
  CHECK(capacity(0) == doctest::Approx(1.0));
}

TEST_CASE("formula limits") {
  // large m*alpha decays to zero; small alpha approaches 1 - 1/m
  CHECK(achievable_rate(1000, 1.0) < 1e-300);
  CHECK(achievable_rate(4, 1e-9) == doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("optimal m selection") {
  CHECK(optimize_m(0.1).m_opt == 6);
  CHECK(round_half_even(optimize_m(0.1).achievable, 3) == doctest::Approx(0.732));
  CHECK(optimize_m(0.4).m_opt == 3);
  CHECK(round_half_even(optimize_m(0.4).achievable, 3) == doctest::Approx(0.442));
  CHECK(optimize_m(0.6).m_opt == 2);
  CHECK(round_half_even(optimize_m(0.6).achievable, 3) == doctest::Approx(0.331));
  CHECK(optimize_m(0.1).m_opt_baseline == 4);
  CHECK(optimize_m(0.3).m_opt_baseline == 2);
}

TEST_CASE("full table reproduction") {
  // alpha, m_base, base, m_opt, ach, cap
  const double table[15][6] = {
      {0.1, 4, 0.607, 6, 0.732, 0.905}, {0.2, 3, 0.442, 4, 0.607, 0.819},
      {0.3, 2, 0.331, 3, 0.515, 0.741}, {0.4, 2, 0.262, 3, 0.442, 0.670},
      {0.5, 2, 0.203, 3, 0.372, 0.607}, {0.6, 2, 0.154, 2, 0.331, 0.549},
      {0.7, 2, 0.116, 2, 0.296, 0.497}, {0.8, 2, 0.086, 2, 0.262, 0.449},
      {0.9, 2, 0.063, 2, 0.231, 0.407}, {1.0, 2, 0.046, 2, 0.203, 0.368},
      {1.1, 2, 0.033, 2, 0.177, 0.333}, {1.2, 2, 0.024, 2, 0.154, 0.301},
      {1.3, 2, 0.017, 2, 0.134, 0.273}, {1.4, 2, 0.012, 2, 0.116, 0.247},
      {1.5, 2, 0.009, 2, 0.100, 0.223}};
  std::vector<double> grid;
  for (auto& row : table) grid.push_back(row[0]);
  auto reports = rate_table(grid);
  REQUIRE(reports.size() == 15);
  for (int i = 0; i < 15; ++i) {
    CHECK(reports[i].m_opt_baseline == (unsigned)table[i][1]);
    CHECK(std::abs(reports[i].baseline - table[i][2]) <= 0.0005);
    CHECK(reports[i].m_opt == (unsigned)table[i][3]);
    CHECK(std::abs(reports[i].achievable - table[i][4]) <= 0.0005);
    CHECK(std::abs(reports[i].capacity - table[i][5]) <= 0.0005);
  }
}

TEST_CASE("rate_table rejects bad grids") {
  CHECK_THROWS_AS(rate_table({}), ParamInvalid);
  CHECK_THROWS_AS(rate_table({0.0}), ParamInvalid);
}

TEST_CASE("achievable below capacity; monotone decay on a grid") {
  double prev_a = 2, prev_c = 2;
  for (double a = 0.01; a < 2.0; a += 0.01) {
    RateReport rep = optimize_m(a, 2000);
    CHECK(rep.achievable < rep.capacity);
    CHECK(rep.achievable < prev_a);
    CHECK(rep.capacity < prev_c);
    CHECK(rep.baseline <= rep.achievable);
    prev_a = rep.achievable;
    prev_c = rep.capacity;
  }
}

TEST_CASE("worked TPC-LP example") {
  auto prof = worked_profile();
  TpclpReport rep = tpclp_report(0.1, prof);
  CHECK(std::abs(rep.capacity - 0.6377) <= 0.0005);
  CHECK(std::abs(rep.F_d - 0.6698) <= 0.0005);
  CHECK(std::abs(rep.R_ach - 0.6028) <= 0.0005);
  CHECK(std::abs(rep.gap - 0.0348) <= 0.0005);
  CHECK(rep.gap_bound == doctest::Approx(std::exp(-1.0) / 10));
  CHECK(rep.gap >= 0);
  CHECK(rep.gap <= rep.gap_bound);
}

TEST_CASE("tpclp degenerate profiles") {
  // deletion of everything: all zeros
  auto all_gone = DeletionProfile::threshold(10000, {{10000, kInf, 0.0}});
  CHECK(tpclp_capacity(0.1, all_gone) < 1e-6);

  // keep everything (threshold at the integral's own lower limit): e^{-alpha}
  DeletionProfile keep_all;
  keep_all.m_threshold = 0;
  keep_all.pieces = {{0, kInf, 0.0}};
  CHECK(tpclp_capacity(0.1, keep_all) == doctest::Approx(std::exp(-0.1)).epsilon(1e-9));

  // with no deletion above m, F_d reduces to the coverage formula at gamma=m
  auto none_above = DeletionProfile::threshold(10, {{10, kInf, 0.0}});
  CHECK(tpclp_F_d(0.1, none_above) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("closed forms agree with adaptive quadrature") {
  auto prof = worked_profile();
  const double a = 0.1;
  double cap_quad = a * a * (0.8 * simpson(integrand_cap, 10, 20, a) +
                             simpson(integrand_cap, 20, 400, a));  // tail < 1e-14 beyond 400
  double fd_quad = a * a * (0.8 * simpson(integrand_fd, 10, 20, a) +
                            simpson(integrand_fd, 20, 400, a));
  CHECK(std::abs(tpclp_capacity(a, prof) - cap_quad) < 1e-9);
  CHECK(std::abs(tpclp_F_d(a, prof) - fd_quad) < 1e-9);
}

TEST_CASE("theorem-2 gap bound across profiles") {
  for (double a : {0.05, 0.1, 0.3, 0.7}) {
    for (unsigned m : {2u, 5u, 10u, 20u}) {
      for (double d1 : {0.0, 0.3, 0.9}) {
        auto prof = DeletionProfile::threshold(
            m, {{(double)m, (double)m + 7, d1}, {(double)m + 7, kInf, 0.1}});
        TpclpReport rep = tpclp_report(a, prof);
        CHECK(rep.gap >= -1e-12);
        CHECK(rep.gap <= rep.gap_bound + 1e-12);
        CHECK(rep.R_ach <= rep.capacity + 1e-12);
      }
    }
  }
}

TEST_CASE("round_half_even") {
  CHECK(round_half_even(2.5, 0) == doctest::Approx(2.0));  // ties to even
  CHECK(round_half_even(3.5, 0) == doctest::Approx(4.0));
  CHECK(round_half_even(0.125, 2) == doctest::Approx(0.12));
  CHECK(round_half_even(0.1234, 3) == doctest::Approx(0.123));
  CHECK(round_half_even(0.9999, 3) == doctest::Approx(1.0));
}
