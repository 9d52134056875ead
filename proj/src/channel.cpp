#include "tpc/channel.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "tpc/errors.hpp"

namespace tpc {

ChannelParams ChannelParams::from_alpha(std::size_t n, double alpha) {
  if (n < 2) throw ParamInvalid("ChannelParams: n must be >= 2");
  double p = alpha / std::log2((double)n);
  if (!(p > 0 && p < 1)) throw ParamInvalid("ChannelParams: p_n must lie in (0, 1)");
  return {n, alpha, p};
}

ChannelParams ChannelParams::from_p(std::size_t n, double p) {
  if (p < 0 || p > 1) throw ParamInvalid("ChannelParams: p must lie in [0, 1]");
  return {n, p * std::log2((double)n), p};
}

TearOutcome tear(const BitString& x, const ChannelParams& ch, Rng& rng) {
  if (x.size() != ch.n) throw LengthMismatch("tear: input length differs from channel n");
  TearOutcome out;
  out.n = ch.n;
  std::size_t start = 0;
  for (std::size_t gap = 1; gap < ch.n; ++gap) {
    if (rng.bernoulli(ch.p_n)) {
      out.fragments.push_back({start, x.substr(start, gap - start)});
      start = gap;
    }
  }
  out.fragments.push_back({start, x.substr(start, ch.n - start)});

  std::vector<std::size_t> perm(out.fragments.size());
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  out.shuffled_view.reserve(perm.size());
  for (std::size_t i : perm) out.shuffled_view.push_back(out.fragments[i].bits);
  return out;
}

DeletionProfile DeletionProfile::threshold(unsigned m, std::vector<DeletionPiece> above) {
  if (m < 1) throw ParamInvalid("DeletionProfile: threshold must be >= 1");
  DeletionProfile p;
  p.m_threshold = m;
  p.pieces.push_back({0.0, (double)m, 1.0});
  double at = m;
  for (const auto& piece : above) {
    if (piece.lo != at) throw ParamInvalid("DeletionProfile: pieces must tile [m, inf) without gaps");
    if (!(piece.hi > piece.lo)) throw ParamInvalid("DeletionProfile: piece must have hi > lo");
    if (piece.d < 0 || piece.d >= 1)
      throw ParamInvalid("DeletionProfile: d above the threshold must lie in [0, 1)");
    p.pieces.push_back(piece);
    at = piece.hi;
  }
  if (!std::isinf(at)) throw ParamInvalid("DeletionProfile: last piece must extend to infinity");
  return p;
}

double DeletionProfile::d_at(double kappa) const {
  for (const auto& piece : pieces)
    if (kappa >= piece.lo && kappa < piece.hi) return piece.d;
  return pieces.back().d;
}

TearOutcome tpclp_filter(const TearOutcome& out, const DeletionProfile& d, Rng& rng) {
  const double log2n = std::log2((double)out.n);
  const std::size_t min_len = (std::size_t)std::ceil(d.m_threshold * log2n);
  TearOutcome kept;
  kept.n = out.n;
  for (const auto& f : out.fragments) {
    if (f.bits.size() < min_len) continue;
    // survivors sit above the threshold; clamp kappa against edge rounding
    double kappa = std::max((double)f.bits.size() / log2n, (double)d.m_threshold);
    if (rng.bernoulli(d.d_at(kappa))) continue;
    kept.fragments.push_back(f);
  }
  std::vector<std::size_t> perm(kept.fragments.size());
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  kept.shuffled_view.reserve(perm.size());
  for (std::size_t i : perm) kept.shuffled_view.push_back(kept.fragments[i].bits);
  return kept;
}

double coverage(const TearOutcome& out, double gamma) {
  if (out.n == 0) return 0;
  const std::size_t thr = (std::size_t)std::ceil(gamma * std::log2((double)out.n));
  std::size_t covered = 0;
  for (const auto& f : out.fragments)
    if (f.bits.size() >= thr) covered += f.bits.size();
  return (double)covered / (double)out.n;
}

CoverageStats fragment_stats(const TearOutcome& out, double gamma,
                             const std::vector<std::size_t>* stream_erasures,
                             const CodeParams* params) {
  CoverageStats s;
  s.V_gamma = coverage(out, gamma);
  s.K = out.K();
  if (stream_erasures) {
    s.erasures_per_stream = *stream_erasures;
    if (params) {
      const double cap = (1.0 - params->R_er - params->eta) * (double)params->n_er;
      for (std::size_t e : s.erasures_per_stream) s.good_set_member.push_back((double)e <= cap);
    }
  }
  return s;
}

}  // namespace tpc
