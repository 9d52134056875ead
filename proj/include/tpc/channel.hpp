#pragma once

#include <cstddef>
#include <vector>

#include "tpc/bits.hpp"
#include "tpc/params.hpp"
#include "tpc/rng.hpp"

namespace tpc {

struct ChannelParams {
  std::size_t n = 0;
  double alpha = 0;
  double p_n = 0;  // alpha / log2(n)

  static ChannelParams from_alpha(std::size_t n, double alpha);
  /// Direct break probability, for degenerate cases (p = 0, p = 1).
  static ChannelParams from_p(std::size_t n, double p);
};

struct Fragment {
  std::size_t offset = 0;  // true position, hidden from the decoder
  BitString bits;
};

/// Output of the torn-paper channel. `fragments` keeps the ground truth in
/// original order (for oracle tests); `shuffled_view` is what a decoder sees.
/// For a fresh tear the offsets tile [0, n) exactly; a TPC-LP filtered
/// outcome covers only a subset.
struct TearOutcome {
  std::size_t n = 0;
  std::vector<Fragment> fragments;
  std::vector<BitString> shuffled_view;

  std::size_t K() const { return fragments.size(); }
};

/// Breaks x at each of the n-1 gaps independently with probability p_n and
/// shuffles the pieces. Deterministic given (x, ch, rng state).
TearOutcome tear(const BitString& x, const ChannelParams& ch, Rng& rng);

/// One span of a piecewise-constant deletion probability on the normalized
/// length axis kappa = len / log2(n). hi may be infinity.
struct DeletionPiece {
  double lo = 0, hi = 0, d = 0;
};

/// (m log n)-threshold deletion function: d = 1 below kappa = m, arbitrary
/// piecewise-constant d in [0,1) above. Pieces must tile [m, inf).
struct DeletionProfile {
  unsigned m_threshold = 0;
  std::vector<DeletionPiece> pieces;  // covering [0, inf), d = 1 on [0, m)

  static DeletionProfile threshold(unsigned m, std::vector<DeletionPiece> above);
  double d_at(double kappa) const;
};

/// Drops every fragment shorter than ceil(m*log2 n) and longer fragments
/// independently with probability d(len). Survivor offsets are unchanged.
TearOutcome tpclp_filter(const TearOutcome& out, const DeletionProfile& d, Rng& rng);

/// Fraction of bits lying in fragments of length >= ceil(gamma * log2 n).
double coverage(const TearOutcome& out, double gamma);

struct CoverageStats {
  double V_gamma = 0;
  std::size_t K = 0;
  std::vector<std::size_t> erasures_per_stream;  // filled when supplied by the codec
  std::vector<bool> good_set_member;             // |E_i| <= (1 - R_er - eta) n_er
};

/// K and V_gamma from the outcome; when per-stream erasure counts are
/// supplied (by the decoder), also flags good-set membership per stream.
CoverageStats fragment_stats(const TearOutcome& out, double gamma,
                             const std::vector<std::size_t>* stream_erasures = nullptr,
                             const CodeParams* params = nullptr);

}  // namespace tpc
