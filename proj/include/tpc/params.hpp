#pragma once

#include <cstddef>

namespace tpc {

/// All scheme parameters, fully derived. Divisibility guarantees hold by
/// construction: beta | L, n = m*B*L, n_er = (n/m)(beta-1)/beta integral.
struct CodeParams {
  std::size_t n_target = 0;  // requested codeword length
  std::size_t n = 0;         // actual codeword length, m*B*L
  unsigned m = 0;            // interleaving factor
  unsigned beta = 0;         // marker length / RLL parameter
  double delta = 0, eta = 0, alpha = 0;

  std::size_t L = 0;     // pilot block length (marker + data), multiple of beta
  std::size_t B = 0;     // pilot blocks per codeword
  std::size_t n_er = 0;  // erasure-code length
  std::size_t r = 0;     // parity-check rows
  double R_er = 0;       // 1 - r/n_er
  double gamma = 0;      // (1+delta)*m

  std::size_t q_len = 0;  // De Bruijn sequence length
  unsigned order = 0;     // De Bruijn order
  unsigned w = 0;         // window-index width (= order)

  // Fragments shorter than min_frag_len are discarded outright (the decoder's
  // length floor). Fragments of at least frag_threshold are guaranteed to
  // carry a full marker and w usable De Bruijn bits at every phase, so their
  // global alignment always succeeds; lengths in between are aligned
  // best-effort.
  std::size_t min_frag_len = 0;
  std::size_t frag_threshold = 0;

  // Whether the asymptotic alignment margin held at this n (diagnostic; at
  // desk-scale n it usually does not, which is why frag_threshold above is
  // computed from the exact grid instead).
  bool lemma8_margin_ok = false;

  double p_n = 0;  // alpha / log2(n)

  std::size_t pilot_len() const { return n / m; }
  std::size_t rll_blocks_per_pilot_block() const { return (L - beta) / beta; }
};

/// Validates constraints and derives every dependent quantity.
/// Throws ParamInvalid naming the violated constraint.
CodeParams derive_params(std::size_t n_target, unsigned m, double alpha, unsigned beta,
                         double delta, double eta);

/// Message payload in bits: (m-1)*(n_er - r).
std::size_t message_capacity(const CodeParams& p);

}  // namespace tpc
