#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tpc/bits.hpp"
#include "tpc/codebook.hpp"
#include "tpc/params.hpp"

namespace tpc {

/// Interleaves m-1 RLL-encoded C_er codewords with the pilot stream:
/// c[mt] = p[t], c[mt+j] = s_j[t]. msg must be message_capacity(params) bits.
BitString encode(const BitString& msg, const Codebook& cb);

/// Why a fragment was dropped during alignment.
enum class FragmentDrop {
  none,
  too_short,         // below the decoder's length floor
  no_pilot,          // no de-interleaved stream carries a full zero-run
  ambiguous_pilot,   // more than one stream carries one (cannot happen for
                     // valid codewords; kept as a diagnostic)
  window_not_found,  // De Bruijn lookup failed or was not unique
  offset_out_of_range,
  conflict           // disagreed with already-placed fragments
};

struct LocalAlignment {
  std::vector<BitString> streams;  // w_i[k] = f[i + k*m]
  unsigned phase = 0;              // index of the stream holding the pilot bits
};

/// Algorithm "local alignment": de-interleave and identify the pilot stream
/// by its embedded zero-run marker.
std::optional<LocalAlignment> local_align(const BitString& f, const CodeParams& params,
                                          FragmentDrop* why = nullptr);

struct DebruijnExtract {
  BitString q_f;        // contiguous substring of q
  std::size_t anchor = 0;  // index in p_f of the first retained bit
  std::size_t q_mod = 0;   // q-position of that bit modulo D*(beta-2)
};

/// Algorithm "De Bruijn extraction". The first full zero-run anchors the
/// whole L-periodic grid, so marker bits are excluded everywhere (including
/// markers truncated by the fragment boundary) and every interior data bit is
/// kept, partial edge blocks included.
std::optional<DebruijnExtract> extract_debruijn(const BitString& p_f, const CodeParams& params);

/// Global offset of a fragment in [0, n), from its extracted De Bruijn
/// substring. Windows of at least w bits resolve through the index; shorter
/// ones are matched exhaustively against q at the known residue and accepted
/// only if the match is unique.
std::optional<std::size_t> global_position(const DebruijnExtract& ext, unsigned phase,
                                           std::size_t frag_len, const Codebook& cb,
                                           FragmentDrop* why = nullptr);

/// Steps A+B for one fragment: offset or drop reason.
struct AlignOutcome {
  FragmentDrop drop = FragmentDrop::none;
  std::size_t offset = 0;
};
AlignOutcome align_fragment(const BitString& f, const Codebook& cb);

/// Length-n estimate over {0,1,*}: values plus known-mask.
struct AlignedCodeword {
  BitString values;
  BitString known;
  std::size_t coverage_count = 0;
  std::size_t conflicts = 0;  // fragments discarded for disagreeing
};

/// Places aligned fragments at their offsets. Conflicting fragments are
/// skipped and counted, never silently overwritten.
AlignedCodeword assemble(const std::vector<std::pair<std::size_t, const BitString*>>& placed,
                         const CodeParams& params);

/// Algorithm "extraction of C_er estimates": strips the interleaving and the
/// RLL-added positions; erasures propagate.
std::vector<StreamEstimate> extract_erasure_estimates(const AlignedCodeword& c,
                                                      const CodeParams& params);

struct DecodeDiagnostics {
  std::size_t fragments_total = 0;
  std::size_t fragments_used = 0;
  std::size_t too_short = 0;
  std::size_t no_pilot = 0;
  std::size_t ambiguous_pilot = 0;
  std::size_t window_not_found = 0;
  std::size_t offset_out_of_range = 0;
  std::size_t conflicts = 0;
  std::size_t coverage_count = 0;
  std::vector<std::size_t> erasures_per_stream;
};

struct DecodeResult {
  bool success = false;
  BitString message;
  ///< on failure: first failing stream and why
  int failed_stream = -1;
  gf2::SolveStatus failure = gf2::SolveStatus::ok;
  DecodeDiagnostics diag;
};

/// Full decoder: local alignment, global alignment, assembly, RLL stripping,
/// per-stream erasure solving, message extraction.
DecodeResult decode(const std::vector<BitString>& fragments, const Codebook& cb);

}  // namespace tpc
