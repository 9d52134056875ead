#include "tpc/params.hpp"

#include <cmath>

#include "tpc/errors.hpp"

namespace tpc {

namespace {

// Exact minimum pilot-stream window length lp such that EVERY phase of a
// window of that length contains a complete marker and at least w usable
// De Bruijn bits. Pilot layout is L-periodic: positions [0, beta) are the
// marker, the rest are RLL~ blocks whose first and last bits are framing.
std::size_t guaranteed_window_len(std::size_t L, unsigned beta, unsigned w) {
  auto is_data = [&](std::size_t pos) {
    std::size_t j = pos % L;
    if (j < beta) return false;
    std::size_t k = j % beta;
    return k != 0 && k != beta - 1;
  };
  const std::size_t cap = 200 * L + std::size_t(w) * beta;
  for (std::size_t lp = beta; lp <= cap; ++lp) {
    bool ok = true;
    for (std::size_t phi = 0; phi < L && ok; ++phi) {
      std::size_t m0 = ((phi + L - 1) / L) * L;  // first marker start >= phi
      if (m0 + beta > phi + lp) { ok = false; break; }
      std::size_t q = 0;
      for (std::size_t i = phi; i < phi + lp; ++i)
        if (is_data(i)) ++q;
      if (q < w) ok = false;
    }
    if (ok) return lp;
  }
  throw ParamInvalid("derive_params: no finite window guarantees alignment (beta too large for n)");
}

}  // namespace

CodeParams derive_params(std::size_t n_target, unsigned m, double alpha, unsigned beta,
                         double delta, double eta) {
  if (m < 2) throw ParamInvalid("derive_params: m must be >= 2");
  if (beta < 4) throw ParamInvalid("derive_params: beta must be >= 4");
  if (alpha <= 0) throw ParamInvalid("derive_params: alpha must be > 0");
  if (!(delta > 2.0 / (beta - 2)))
    throw ParamInvalid("derive_params: delta must exceed 2/(beta-2)");
  if (eta <= 0) throw ParamInvalid("derive_params: eta must be > 0");
  if (n_target < 2) throw ParamInvalid("derive_params: n_target must be >= 2");

  CodeParams p;
  p.n_target = n_target;
  p.m = m;
  p.beta = beta;
  p.delta = delta;
  p.eta = eta;
  p.alpha = alpha;

  const double log2_nt = std::log2((double)n_target);
  p.L = beta * (std::size_t)std::ceil((1 + delta / 2) * log2_nt / beta);
  if (p.L < 2 * beta)
    throw ParamInvalid("derive_params: pilot block too short to carry data (increase n or delta)");
  p.B = n_target / (m * p.L);
  if (p.B < 1) throw ParamInvalid("derive_params: n_target below one pilot block");
  p.n = (std::size_t)m * p.B * p.L;
  p.n_er = (p.B * p.L / beta) * (beta - 1);

  p.gamma = (1 + delta) * m;
  const double ag = alpha * p.gamma;
  const double rate_target = (ag + 1) * std::exp(-ag) - 3 * eta;
  if (rate_target <= 0)
    throw ParamInvalid("derive_params: erasure-code rate target is not positive (eta or alpha*gamma too large)");
  p.r = (std::size_t)std::ceil((1 - rate_target) * (double)p.n_er);
  if (p.r >= p.n_er) throw ParamInvalid("derive_params: parity rows must be fewer than n_er");
  if (p.r < 1) p.r = 1;
  p.R_er = 1.0 - (double)p.r / (double)p.n_er;

  p.q_len = p.B * ((p.L - beta) / beta) * (beta - 2);
  if (p.q_len < 2) throw ParamInvalid("derive_params: De Bruijn sequence would be empty");
  p.order = 1;
  while ((std::size_t(1) << p.order) < p.q_len) ++p.order;
  if (p.order > 31) throw ParamInvalid("derive_params: De Bruijn order above 31 unsupported");
  p.w = p.order;

  const double log2_n = std::log2((double)p.n);
  p.lemma8_margin_ok =
      (double)(beta - 2) / beta * ((1 + delta) * log2_n - 2.0 * beta) > (double)p.w;

  p.min_frag_len = (std::size_t)std::ceil((1 + delta) * m * log2_n);
  const std::size_t lp_guar = guaranteed_window_len(p.L, beta, p.w);
  const std::size_t spec_margin =
      (std::size_t)std::ceil(m * ((double)p.L + (double)p.w * beta / (beta - 2) + 2.0 * beta));
  p.frag_threshold = std::max({p.min_frag_len, m * lp_guar, spec_margin});

  p.p_n = alpha / log2_n;
  if (p.p_n >= 1) throw ParamInvalid("derive_params: alpha too large, break probability reaches 1");
  return p;
}

std::size_t message_capacity(const CodeParams& p) { return (std::size_t)(p.m - 1) * (p.n_er - p.r); }

}  // namespace tpc
