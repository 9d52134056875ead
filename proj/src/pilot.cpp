#include "tpc/pilot.hpp"

#include "tpc/debruijn.hpp"
#include "tpc/errors.hpp"
#include "tpc/rll.hpp"

namespace tpc {

PilotSequence build_pilot(const CodeParams& params) {
  PilotSequence ps;
  ps.L = params.L;
  ps.beta = params.beta;
  ps.q = de_bruijn(params.order, params.q_len);
  ps.q_bar = rll_tilde_encode(ps.q, params.beta);
  if (ps.q_bar.size() != params.B * (params.L - params.beta))
    throw ParamInvalid("build_pilot: q_bar length mismatch");

  const std::size_t data_per_block = params.L - params.beta;
  BitString p(params.B * params.L);
  for (std::size_t t = 0; t < params.B; ++t) {
    // beta zeros are already there; copy the block's q_bar slice
    for (std::size_t j = 0; j < data_per_block; ++j)
      p.set(t * params.L + params.beta + j, ps.q_bar.get(t * data_per_block + j));
  }
  ps.p = std::move(p);
  return ps;
}

std::vector<u32> find_zero_runs(const BitString& s, unsigned beta) {
  if (beta < 1) throw ParamInvalid("find_zero_runs: beta must be >= 1");
  std::vector<u32> starts;
  std::size_t run = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    run = s.get(i) ? 0 : run + 1;
    if (run >= beta) starts.push_back((u32)(i + 1 - beta));
  }
  return starts;
}

WindowIndex::WindowIndex(const BitString& q, unsigned w) : w_(w) {
  if (w < 1 || w > 26) throw ParamInvalid("WindowIndex: width must be in [1, 26]");
  if (q.size() < w) throw ParamInvalid("WindowIndex: sequence shorter than window");
  table_.assign(std::size_t(1) << w, kAbsent);
  entries_ = q.size() - w + 1;
  for (std::size_t i = 0; i < entries_; ++i) {
    u64 key = q.window(i, w);
    if (table_[key] != kAbsent)
      throw DuplicateWindow("WindowIndex: window occurs twice (parameter bug)");
    table_[key] = (u32)i;
  }
}

WindowIndex build_window_index(const BitString& q, unsigned w) { return WindowIndex(q, w); }

}  // namespace tpc
