#pragma once

#include <optional>
#include <vector>

#include "tpc/bits.hpp"
#include "tpc/params.hpp"

namespace tpc {

/// The pilot stream and its two precursor sequences:
///   q  (De Bruijn)  --RLL~(0,beta-2)-->  q_bar  --embed markers-->  p.
/// p consists of B blocks of length L, each `beta` zeros followed by the
/// next L-beta bits of q_bar.
struct PilotSequence {
  BitString p;
  BitString q_bar;
  BitString q;
  std::size_t L = 0;
  unsigned beta = 0;
};

PilotSequence build_pilot(const CodeParams& params);

/// Start positions of every length-beta all-zero window of s (all sliding
/// windows, not only maximal runs).
std::vector<u32> find_zero_runs(const BitString& s, unsigned beta);

/// Exact map from each length-w window of q to its unique start position.
class WindowIndex {
 public:
  WindowIndex() = default;
  WindowIndex(const BitString& q, unsigned w);

  unsigned width() const { return w_; }
  std::size_t entries() const { return entries_; }

  /// Position of the window in q, or nullopt if it never occurs.
  std::optional<u32> lookup(u64 window) const {
    u32 v = table_[window];
    if (v == kAbsent) return std::nullopt;
    return v;
  }

 private:
  static constexpr u32 kAbsent = 0xffffffffu;
  unsigned w_ = 0;
  std::size_t entries_ = 0;
  std::vector<u32> table_;
};

WindowIndex build_window_index(const BitString& q, unsigned w);

}  // namespace tpc
