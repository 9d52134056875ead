#pragma once

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tpc {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

/// Packed binary sequence, LSB-first within each 64-bit word.
/// Bit i lives in word i/64 at position i%64.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static BitString from_string(std::string_view s) {
    BitString b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        b.set(i, true);
      else if (s[i] != '0')
        throw std::invalid_argument("BitString: expected '0'/'1'");
    }
    return b;
  }

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v) {
    u64 m = u64(1) << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }

  void push_back(bool v) {
    if ((n_ & 63) == 0) w_.push_back(0);
    if (v) w_[n_ >> 6] |= u64(1) << (n_ & 63);
    ++n_;
  }

  void append(const BitString& o) {
    for (std::size_t i = 0; i < o.n_; ++i) push_back(o.get(i));
  }

  /// Copy of bits [pos, pos+len).
  BitString substr(std::size_t pos, std::size_t len) const {
    if (pos + len > n_) throw std::out_of_range("BitString::substr");
    BitString r(len);
    for (std::size_t k = 0; k < len; k += 64) {
      std::size_t chunk = std::min<std::size_t>(64, len - k);
      r.store_word(k, window(pos + k, chunk));
    }
    return r;
  }

  /// Up to 64 bits starting at pos, as an integer (bit 0 = position pos).
  u64 window(std::size_t pos, std::size_t len) const {
    u64 lo = w_[pos >> 6] >> (pos & 63);
    std::size_t got = 64 - (pos & 63);
    if (got < len && (pos >> 6) + 1 < w_.size()) lo |= w_[(pos >> 6) + 1] << got;
    return len == 64 ? lo : lo & ((u64(1) << len) - 1);
  }

  bool operator==(const BitString& o) const {
    if (n_ != o.n_) return false;
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] != o.w_[i]) return false;
    return true;
  }
  bool operator!=(const BitString& o) const { return !(*this == o); }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  /// Length of the longest run of zeros.
  std::size_t max_zero_run() const {
    std::size_t best = 0, cur = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      cur = get(i) ? 0 : cur + 1;
      if (cur > best) best = cur;
    }
    return best;
  }

  std::size_t count_ones() const {
    std::size_t c = 0;
    for (u64 w : w_) c += (std::size_t)__builtin_popcountll(w);
    return c;
  }

  const std::vector<u64>& words() const { return w_; }
  std::vector<u64>& words() { return w_; }

 private:
  void store_word(std::size_t pos, u64 v) {
    // pos must be a multiple of 64 here (only used by substr)
    w_[pos >> 6] = v;
  }

  std::size_t n_ = 0;
  std::vector<u64> w_;
};

}  // namespace tpc
