#include <cmath>

#include "doctest.h"
#include "tpc/errors.hpp"
#include "tpc/params.hpp"

using namespace tpc;

TEST_CASE("derive_params reference case") {
  CodeParams p = derive_params(std::size_t(1) << 20, 3, 0.3, 8, 0.5, 0.01);
  CHECK(p.L % p.beta == 0);
  CHECK(p.n == std::size_t(3) * p.B * p.L);
  CHECK(p.n_er == p.pilot_len() * 7 / 8);
  // R_er ~ (0.3*4.5 + 1) e^{-1.35} - 0.03
  double expect = (0.3 * 4.5 + 1) * std::exp(-1.35) - 0.03;
  CHECK(std::abs(p.R_er - expect) < 1e-4);
  CHECK(p.gamma == doctest::Approx(4.5));
}

TEST_CASE("derive_params rejects the delta boundary") {
  CHECK_THROWS_AS(derive_params(1 << 16, 3, 0.3, 8, 2.0 / 6, 0.01), ParamInvalid);
  CHECK_NOTHROW(derive_params(1 << 16, 3, 0.3, 8, 2.0 / 6 + 0.01, 0.01));
}

TEST_CASE("derive_params named violations") {
  CHECK_THROWS_AS(derive_params(1 << 16, 1, 0.3, 8, 0.5, 0.01), ParamInvalid);   // m
  CHECK_THROWS_AS(derive_params(1 << 16, 3, 0.3, 3, 1.2, 0.01), ParamInvalid);   // beta
  CHECK_THROWS_AS(derive_params(1 << 16, 3, -1.0, 8, 0.5, 0.01), ParamInvalid);  // alpha
  CHECK_THROWS_AS(derive_params(1 << 16, 3, 0.3, 8, 0.5, 0.0), ParamInvalid);    // eta
  CHECK_THROWS_AS(derive_params(1 << 16, 3, 0.3, 8, 0.5, 0.9), ParamInvalid);    // rate target
  CHECK_THROWS_AS(derive_params(64, 3, 0.3, 32, 0.5, 0.01), ParamInvalid);       // block too short
}

TEST_CASE("divisibility invariants across a sweep") {
  for (unsigned m : {2u, 3u, 5u}) {
    for (unsigned beta : {4u, 6u, 8u}) {
      double delta = 2.0 / (beta - 2) + 0.2;
      CodeParams p = derive_params(1 << 16, m, 0.4, beta, delta, 0.01);
      CHECK(p.L % beta == 0);
      CHECK(p.n == (std::size_t)m * p.B * p.L);
      CHECK(p.pilot_len() % beta == 0);
      CHECK((p.pilot_len() / beta) * (beta - 1) == p.n_er);
      CHECK(p.q_len == p.B * ((p.L - beta) / beta) * (beta - 2));
      CHECK((std::size_t(1) << p.order) >= p.q_len);
      CHECK(p.r < p.n_er);
      CHECK(p.R_er > 0);
      CHECK(p.R_er < 1);
      CHECK(p.frag_threshold >= p.min_frag_len);
      // the alignment-guarantee margin from the construction
      double margin = m * ((double)p.L + (double)p.w * beta / (beta - 2) + 2.0 * beta);
      CHECK((double)p.frag_threshold >= margin - 1e-9);
    }
  }
}

TEST_CASE("message capacity") {
  CodeParams p = derive_params(1 << 16, 2, 0.3, 8, 0.5, 0.02);
  CHECK(message_capacity(p) == p.n_er - p.r);  // m=2: one data stream

  CodeParams p3 = derive_params(1 << 18, 3, 0.3, 8, 0.5, 0.02);
  // matches (1-1/m)(1-1/beta) R_er * n within rounding
  double rate = (double)message_capacity(p3) / (double)p3.n;
  double expect = (1 - 1.0 / 3) * (1 - 1.0 / 8) * p3.R_er;
  CHECK(std::abs(rate - expect) < 1e-4);
}
