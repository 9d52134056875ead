#include "tpc/codec.hpp"

#include <algorithm>

#include "tpc/errors.hpp"
#include "tpc/pilot.hpp"
#include "tpc/rll.hpp"

namespace tpc {

BitString encode(const BitString& msg, const Codebook& cb) {
  const CodeParams& p = cb.params();
  if (msg.size() != message_capacity(p))
    throw LengthMismatch("encode: message must be exactly message_capacity bits");

  const std::size_t chunk = p.n_er - p.r;
  std::vector<BitString> streams;  // RLL-encoded C_er codewords, length n/m each
  streams.reserve(p.m - 1);
  for (unsigned j = 0; j + 1 < p.m; ++j) {
    BitString cw = cb.encode_chunk(msg.substr(j * chunk, chunk));
    streams.push_back(rll_encode(cw, p.beta));
  }

  const BitString& pilot = cb.pilot().p;
  BitString c(p.n);
  for (std::size_t t = 0; t < p.pilot_len(); ++t) {
    if (pilot.get(t)) c.set(p.m * t, true);
    for (unsigned j = 1; j < p.m; ++j)
      if (streams[j - 1].get(t)) c.set(p.m * t + j, true);
  }
  return c;
}

std::optional<LocalAlignment> local_align(const BitString& f, const CodeParams& params,
                                          FragmentDrop* why) {
  LocalAlignment la;
  la.streams.assign(params.m, BitString());
  for (std::size_t i = 0; i < f.size(); ++i) la.streams[i % params.m].push_back(f.get(i));

  int found = -1;
  for (unsigned j = 0; j < params.m; ++j) {
    if (la.streams[j].max_zero_run() >= params.beta) {
      if (found >= 0) {
        if (why) *why = FragmentDrop::ambiguous_pilot;
        return std::nullopt;
      }
      found = (int)j;
    }
  }
  if (found < 0) {
    if (why) *why = FragmentDrop::no_pilot;
    return std::nullopt;
  }
  la.phase = (unsigned)found;
  return la;
}

std::optional<DebruijnExtract> extract_debruijn(const BitString& p_f, const CodeParams& params) {
  const std::vector<u32> runs = find_zero_runs(p_f, params.beta);
  if (runs.empty()) return std::nullopt;
  const std::size_t ustar = runs[0];
  const std::size_t L = params.L;
  const unsigned beta = params.beta;
  // every full run must sit on the L-grid anchored at u*; anything else is
  // not a window of a valid pilot
  for (u32 u : runs)
    if ((u - ustar) % L != 0) return std::nullopt;

  const std::size_t dq = ((L - beta) / beta) * (beta - 2);  // q bits per L-period
  DebruijnExtract ext;
  bool first = true;
  for (std::size_t i = 0; i < p_f.size(); ++i) {
    // position within the L-period, anchored at u* (marker starts)
    const std::size_t rl = (i + L - ustar % L) % L;
    if (rl < beta) continue;  // marker zone, truncated edge markers included
    const std::size_t d = rl - beta;
    const std::size_t in_block = d % beta;
    if (in_block == 0 || in_block == beta - 1) continue;  // RLL~ framing
    if (first) {
      ext.anchor = i;
      ext.q_mod = (d / beta) * (beta - 2) + (in_block - 1);
      first = false;
    }
    ext.q_f.push_back(p_f.get(i));
  }
  if (first) return std::nullopt;
  return ext;
}

namespace {

// Absolute pilot index of De Bruijn bit i_q (inverts q -> q_bar -> p).
std::size_t q_index_to_pilot_index(std::size_t i_q, const CodeParams& p) {
  const std::size_t block = i_q / (p.beta - 2);
  const std::size_t qbar_idx = block * p.beta + 1 + i_q % (p.beta - 2);
  const std::size_t data_per_block = p.L - p.beta;
  return (qbar_idx / data_per_block) * p.L + p.beta + qbar_idx % data_per_block;
}

constexpr std::size_t kRescueMinBits = 8;

}  // namespace

std::optional<std::size_t> global_position(const DebruijnExtract& ext, unsigned phase,
                                           std::size_t frag_len, const Codebook& cb,
                                           FragmentDrop* why) {
  const CodeParams& p = cb.params();
  const BitString& q = cb.pilot().q;
  const std::size_t len = ext.q_f.size();
  const std::size_t dq = ((p.L - p.beta) / p.beta) * (p.beta - 2);
  std::size_t i_q;

  if (len >= p.w) {
    auto hit = cb.index().lookup(ext.q_f.window(0, p.w));
    if (!hit || *hit % dq != ext.q_mod) {
      if (why) *why = FragmentDrop::window_not_found;
      return std::nullopt;
    }
    i_q = *hit;
    // the rest of q_f must agree with q at that position
    for (std::size_t ofs = p.w; ofs < len; ofs += 64) {
      const std::size_t chunk = std::min<std::size_t>(64, len - ofs);
      if (i_q + ofs + chunk > q.size() || ext.q_f.window(ofs, chunk) != q.window(i_q + ofs, chunk)) {
        if (why) *why = FragmentDrop::window_not_found;
        return std::nullopt;
      }
    }
  } else {
    if (len < kRescueMinBits) {
      if (why) *why = FragmentDrop::window_not_found;
      return std::nullopt;
    }
    // short window: scan the residue class; accept only a unique match
    const u64 pattern = ext.q_f.window(0, len);
    std::size_t matches = 0, found = 0;
    for (std::size_t i = ext.q_mod; i + len <= q.size(); i += dq) {
      if (q.window(i, len) == pattern) {
        if (++matches > 1) break;
        found = i;
      }
    }
    if (matches != 1) {
      if (why) *why = FragmentDrop::window_not_found;
      return std::nullopt;
    }
    i_q = found;
  }

  const std::size_t p0 = q_index_to_pilot_index(i_q, p);
  if (p0 < ext.anchor) {
    if (why) *why = FragmentDrop::offset_out_of_range;
    return std::nullopt;
  }
  const std::size_t pilot_start = p0 - ext.anchor;  // (s + phase) / m
  const std::size_t s_plus = pilot_start * p.m;     // s + phase
  if (s_plus < phase) {
    if (why) *why = FragmentDrop::offset_out_of_range;
    return std::nullopt;
  }
  const std::size_t s = s_plus - phase;
  if (s + frag_len > p.n) {
    if (why) *why = FragmentDrop::offset_out_of_range;
    return std::nullopt;
  }
  return s;
}

AlignOutcome align_fragment(const BitString& f, const Codebook& cb) {
  const CodeParams& p = cb.params();
  AlignOutcome out;
  if (f.size() < p.min_frag_len) {
    out.drop = FragmentDrop::too_short;
    return out;
  }
  FragmentDrop why = FragmentDrop::none;
  auto la = local_align(f, p, &why);
  if (!la) {
    out.drop = why;
    return out;
  }
  auto ext = extract_debruijn(la->streams[la->phase], p);
  if (!ext) {
    out.drop = FragmentDrop::no_pilot;
    return out;
  }
  auto pos = global_position(*ext, la->phase, f.size(), cb, &why);
  if (!pos) {
    out.drop = why;
    return out;
  }
  out.offset = *pos;
  return out;
}

AlignedCodeword assemble(const std::vector<std::pair<std::size_t, const BitString*>>& placed,
                         const CodeParams& params) {
  AlignedCodeword c;
  c.values = BitString(params.n);
  c.known = BitString(params.n);
  for (const auto& [offset, frag] : placed) {
    if (offset + frag->size() > params.n)
      throw LengthMismatch("assemble: fragment exceeds codeword bounds");
    bool conflict = false;
    for (std::size_t i = 0; i < frag->size() && !conflict; ++i)
      if (c.known.get(offset + i) && c.values.get(offset + i) != frag->get(i)) conflict = true;
    if (conflict) {
      ++c.conflicts;
      continue;
    }
    for (std::size_t i = 0; i < frag->size(); ++i) {
      if (!c.known.get(offset + i)) {
        c.known.set(offset + i, true);
        if (frag->get(i)) c.values.set(offset + i, true);
        ++c.coverage_count;
      }
    }
  }
  return c;
}

std::vector<StreamEstimate> extract_erasure_estimates(const AlignedCodeword& c,
                                                      const CodeParams& params) {
  std::vector<StreamEstimate> est(params.m - 1);
  for (auto& e : est) {
    e.values = BitString(params.n_er);
    e.known = BitString(params.n_er);
  }
  const std::size_t pl = params.pilot_len();
  for (unsigned i = 1; i < params.m; ++i) {
    StreamEstimate& e = est[i - 1];
    std::size_t out = 0;
    for (std::size_t t = 0; t < pl; ++t) {
      if (t % params.beta == params.beta - 1) continue;  // RLL-added 1
      const std::size_t g = params.m * t + i;
      if (c.known.get(g)) {
        e.known.set(out, true);
        if (c.values.get(g)) e.values.set(out, true);
      }
      ++out;
    }
  }
  return est;
}

DecodeResult decode(const std::vector<BitString>& fragments, const Codebook& cb) {
  const CodeParams& p = cb.params();
  DecodeResult res;
  res.diag.fragments_total = fragments.size();

  std::vector<std::pair<std::size_t, const BitString*>> placed;
  for (const auto& f : fragments) {
    AlignOutcome a = align_fragment(f, cb);
    switch (a.drop) {
      case FragmentDrop::none:
        placed.emplace_back(a.offset, &f);
        break;
      case FragmentDrop::too_short: ++res.diag.too_short; break;
      case FragmentDrop::no_pilot: ++res.diag.no_pilot; break;
      case FragmentDrop::ambiguous_pilot: ++res.diag.ambiguous_pilot; break;
      case FragmentDrop::window_not_found: ++res.diag.window_not_found; break;
      case FragmentDrop::offset_out_of_range: ++res.diag.offset_out_of_range; break;
      case FragmentDrop::conflict: break;  // not produced here
    }
  }

  AlignedCodeword aligned = assemble(placed, p);
  res.diag.fragments_used = placed.size() - aligned.conflicts;
  res.diag.conflicts = aligned.conflicts;
  res.diag.coverage_count = aligned.coverage_count;

  std::vector<StreamEstimate> est = extract_erasure_estimates(aligned, p);
  BitString msg;
  for (std::size_t i = 0; i < est.size(); ++i) {
    Codebook::StreamSolve sol = cb.solve_stream(est[i]);
    res.diag.erasures_per_stream.push_back(sol.erasures);
    if (sol.status != gf2::SolveStatus::ok) {
      res.failed_stream = (int)i;
      res.failure = sol.status;
      return res;
    }
    msg.append(cb.chunk_message(sol.codeword));
  }
  res.success = true;
  res.message = std::move(msg);
  return res;
}

}  // namespace tpc
