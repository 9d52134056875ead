#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tpc/bits.hpp"
#include "tpc/rng.hpp"

namespace tpc::gf2 {

/// Dense GF(2) matrix, rows packed into 64-bit words (LSB-first).
/// Dimensions are fixed at construction.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), w_((cols + 63) / 64), d_(rows * ((cols + 63) / 64), 0) {}

  static BitMatrix random(std::size_t rows, std::size_t cols, Rng& rng);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return w_; }

  u64* row(std::size_t i) { return d_.data() + i * w_; }
  const u64* row(std::size_t i) const { return d_.data() + i * w_; }

  bool get(std::size_t i, std::size_t j) const { return (row(i)[j >> 6] >> (j & 63)) & 1; }
  void set(std::size_t i, std::size_t j, bool v) {
    u64 m = u64(1) << (j & 63);
    if (v)
      row(i)[j >> 6] |= m;
    else
      row(i)[j >> 6] &= ~m;
  }

  /// Parity of AND between row i and a packed vector of cols() bits.
  bool row_and_parity(std::size_t i, const std::vector<u64>& v) const {
    u64 acc = 0;
    const u64* r = row(i);
    for (std::size_t k = 0; k < w_; ++k) acc ^= r[k] & v[k];
    return __builtin_parityll(acc);
  }

  /// Matrix-vector product H*x over GF(2); x has cols() bits.
  BitString mul(const BitString& x) const;

  bool operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, w_ = 0;
  std::vector<u64> d_;
};

/// Sorted, distinct coordinate indices into [0, n_er).
struct ErasurePattern {
  std::vector<u32> positions;

  static ErasurePattern from(std::vector<u32> pos, std::size_t n_cols);
  std::size_t size() const { return positions.size(); }
};

/// Forward elimination (upper trapezoid) or full reduction (RREF) in place,
/// using 16-column groups with 256-entry combination tables.
///
/// Pivots are searched in columns [0, stop_cols); any extra width beyond
/// stop_cols (e.g. an augmented right-hand side) is carried through the row
/// operations. Returns the pivot columns in ascending order; pivot i lives in
/// row i after the call.
std::vector<u32> eliminate(BitMatrix& m, std::size_t stop_cols, bool full_reduce);

std::size_t rank(const BitMatrix& m);

/// Solution of an upper-triangular augmented system [U | s] produced by
/// eliminate(aug, t+1, false) with full column rank t: pivot j sits in row j,
/// column j, and column t is the right-hand side.
BitString back_substitute(const BitMatrix& aug, std::size_t t);

/// Basis of {v : H v = 0}; size is cols - rank. Each vector has cols bits.
std::vector<BitString> null_space_basis(const BitMatrix& h);

BitMatrix submatrix_columns(const BitMatrix& h, const ErasurePattern& e);

enum class SolveStatus { ok, rank_deficient, inconsistent };

struct SolveResult {
  SolveStatus status;
  BitString word;  // valid only when status == ok
};

/// Fill the erased coordinates of `word` (positions listed in `e`; their
/// current values are ignored) so that H*word = 0. Unique completion exists
/// iff rank(H_E) = |E|; known coordinates that already contradict H*x = 0
/// on rows independent of E yield `inconsistent`.
SolveResult solve_erasures(const BitMatrix& h, const BitString& word, const ErasurePattern& e);

}  // namespace tpc::gf2
