#include "tpc/gf2.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace tpc::gf2 {

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix m(rows, cols);
  if (cols == 0) return m;
  const u64 tail_mask = (cols & 63) ? ((u64(1) << (cols & 63)) - 1) : ~u64(0);
  for (std::size_t i = 0; i < rows; ++i) {
    u64* r = m.row(i);
    for (std::size_t k = 0; k < m.w_; ++k) r[k] = rng.next_u64();
    r[m.w_ - 1] &= tail_mask;
  }
  return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitString BitMatrix::mul(const BitString& x) const {
  if (x.size() != cols_) throw std::invalid_argument("BitMatrix::mul: size mismatch");
  BitString y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    if (row_and_parity(i, x.words())) y.set(i, true);
  return y;
}

ErasurePattern ErasurePattern::from(std::vector<u32> pos, std::size_t n_cols) {
  std::sort(pos.begin(), pos.end());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (pos[i] >= n_cols) throw std::out_of_range("ErasurePattern: index out of range");
    if (i > 0 && pos[i] == pos[i - 1]) throw std::invalid_argument("ErasurePattern: duplicate index");
  }
  return ErasurePattern{std::move(pos)};
}

namespace {

inline u32 window16(const u64* r, std::size_t c0, int width) {
  u64 v = r[c0 >> 6] >> (c0 & 63);
  std::size_t got = 64 - (c0 & 63);
  if (got < (std::size_t)width) v |= r[(c0 >> 6) + 1] << got;
  return (u32)(v & ((u64(1) << width) - 1));
}

}  // namespace

// Elimination in 16-column groups with 256-entry combination tables.
//
// Within a group, pivot rows are kept triangular: a new pivot row is cleared
// of earlier pivot bits once, and earlier pivot rows are never modified until
// the group ends. Pivot selection runs on per-row 16-bit shadows of the group
// window, so the real rows are untouched until the table pass. The table pass
// then replays, per row, the same sequential elimination on its shadow to
// recover which pivot rows must be XORed in, and applies the whole
// combination with two table lookups.
//
// In forward mode, row updates start at the group's first word; rows below
// the current rank keep stale content only at free columns left of the group,
// which nothing reads (rank is exact, and back-substitution reads pivot rows
// right of their pivot only). In full-reduce mode all updates span the whole
// row and the pivot block is canonicalized, giving a true RREF.
std::vector<u32> eliminate(BitMatrix& m, std::size_t stop_cols, bool full_reduce) {
  const std::size_t rows = m.rows(), w = m.words_per_row();
  std::vector<u32> pivots;
  if (rows == 0 || stop_cols == 0) return pivots;
  std::vector<u64> table(std::size_t(2) * 256 * w);
  std::vector<u32> shadow(rows);
  std::size_t rank = 0;

  for (std::size_t col0 = 0; col0 < stop_cols && rank < rows;) {
    const int k = (int)std::min<std::size_t>(16, stop_cols - col0);
    const std::size_t rank0 = rank;
    u32 piv_cols[16];   // absolute column of each pivot, in discovery order
    u32 piv_bits[16];   // group window of each canonical pivot row
    int npiv = 0;

    for (std::size_t i = rank0; i < rows; ++i) shadow[i] = window16(m.row(i), col0, k);
    for (int b = 0; b < k; ++b) {
      std::size_t piv = rows;
      for (std::size_t i = rank; i < rows; ++i)
        if ((shadow[i] >> b) & 1) { piv = i; break; }
      if (piv == rows) continue;
      if (piv != rank) {
        u64 *a = m.row(piv), *c = m.row(rank);
        for (std::size_t kk = 0; kk < w; ++kk) std::swap(a[kk], c[kk]);
        std::swap(shadow[piv], shadow[rank]);
      }
      // clear earlier pivot bits from the new row (earlier rows are stable)
      u64* nr = m.row(rank);
      for (int e = 0; e < npiv; ++e) {
        if ((nr[piv_cols[e] >> 6] >> (piv_cols[e] & 63)) & 1) {
          const u64* pr = m.row(rank0 + e);
          for (std::size_t kk = 0; kk < w; ++kk) nr[kk] ^= pr[kk];
        }
      }
      const u32 pg = window16(nr, col0, k);
      for (std::size_t i = rank + 1; i < rows; ++i)
        if ((shadow[i] >> b) & 1) shadow[i] ^= pg;
      piv_cols[npiv] = (u32)(col0 + b);
      piv_bits[npiv] = pg;
      ++npiv;
      ++rank;
    }
    if (npiv == 0) {
      col0 += k;
      continue;
    }

    const std::size_t w0 = full_reduce ? 0 : (col0 >> 6);
    const std::size_t tw = w - w0;
    const int n1 = std::min(npiv, 8), n2 = npiv - n1;
    for (int half = 0; half < 2; ++half) {
      const int nb = half == 0 ? n1 : n2;
      if (nb == 0) continue;
      u64* tab = table.data() + std::size_t(half) * 256 * w;
      std::memset(tab, 0, sizeof(u64) * (std::size_t(1) << nb) * tw);
      for (int mask = 1; mask < (1 << nb); ++mask) {
        int b = __builtin_ctz(mask);
        const u64* src = tab + std::size_t(mask ^ (1 << b)) * tw;
        const u64* pr = m.row(rank0 + half * 8 + b);
        u64* dst = tab + std::size_t(mask) * tw;
        for (std::size_t kk = 0; kk < tw; ++kk) dst[kk] = src[kk] ^ pr[kk + w0];
      }
    }
    const std::size_t lo = full_reduce ? 0 : rank;
    for (std::size_t i = lo; i < rows; ++i) {
      if (i >= rank0 && i < rank) continue;
      u64* ri = m.row(i);
      u32 g = window16(ri, col0, k), mask = 0;
      for (int b = 0; b < npiv; ++b) {
        if ((g >> (piv_cols[b] - col0)) & 1) {
          mask |= u32(1) << b;
          g ^= piv_bits[b];
        }
      }
      if (!mask) continue;
      const u64* s1 = table.data() + std::size_t(mask & 255) * tw;
      if ((mask >> 8) != 0) {
        const u64* s2 = table.data() + std::size_t(256) * w + std::size_t(mask >> 8) * tw;
        for (std::size_t kk = 0; kk < tw; ++kk) ri[kk + w0] ^= s1[kk] ^ s2[kk];
      } else {
        for (std::size_t kk = 0; kk < tw; ++kk) ri[kk + w0] ^= s1[kk];
      }
    }
    if (full_reduce) {
      // canonicalize the pivot block (clear later pivot bits upward)
      for (int b = npiv - 1; b > 0; --b) {
        const u64* pb = m.row(rank0 + b);
        for (int e = 0; e < b; ++e) {
          u64* pe = m.row(rank0 + e);
          if ((pe[piv_cols[b] >> 6] >> (piv_cols[b] & 63)) & 1)
            for (std::size_t kk = 0; kk < w; ++kk) pe[kk] ^= pb[kk];
        }
      }
    }
    pivots.insert(pivots.end(), piv_cols, piv_cols + npiv);
    col0 += k;
  }
  return pivots;
}

std::size_t rank(const BitMatrix& m) {
  BitMatrix c = m;
  return eliminate(c, c.cols(), false).size();
}

std::vector<BitString> null_space_basis(const BitMatrix& h) {
  BitMatrix c = h;
  const std::vector<u32> piv = eliminate(c, c.cols(), true);
  std::vector<bool> is_pivot(h.cols(), false);
  for (u32 p : piv) is_pivot[p] = true;
  std::vector<BitString> basis;
  basis.reserve(h.cols() - piv.size());
  for (std::size_t f = 0; f < h.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitString v(h.cols());
    v.set(f, true);
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (c.get(i, f)) v.set(piv[i], true);
    basis.push_back(std::move(v));
  }
  return basis;
}

BitMatrix submatrix_columns(const BitMatrix& h, const ErasurePattern& e) {
  for (u32 p : e.positions)
    if (p >= h.cols()) throw std::out_of_range("submatrix_columns: index out of range");
  BitMatrix s(h.rows(), e.size());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j)
      if (h.get(i, e.positions[j])) s.set(i, j, true);
  return s;
}

SolveResult solve_erasures(const BitMatrix& h, const BitString& word, const ErasurePattern& e) {
  if (word.size() != h.cols()) throw std::invalid_argument("solve_erasures: word/H size mismatch");
  const std::size_t r = h.rows(), t = e.size();

  // known part of the word, erased coordinates zeroed
  std::vector<u64> known = word.words();
  known.resize(h.words_per_row(), 0);
  for (u32 p : e.positions) known[p >> 6] &= ~(u64(1) << (p & 63));

  // augmented system [H_E | s], s_i = <H_i, known>
  BitMatrix aug(r, t + 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < t; ++j)
      if (h.get(i, e.positions[j])) aug.set(i, j, true);
    if (h.row_and_parity(i, known)) aug.set(i, t, true);
  }

  // let the RHS column compete for a pivot: a pivot there means the RHS is
  // outside the column space of H_E, i.e. the known bits contradict H*x = 0
  const std::vector<u32> piv = eliminate(aug, t + 1, false);
  if (!piv.empty() && piv.back() == t) return {SolveStatus::inconsistent, {}};
  if (piv.size() < t) return {SolveStatus::rank_deficient, {}};

  BitString x = back_substitute(aug, t);
  BitString out = word;
  for (std::size_t j = 0; j < t; ++j) out.set(e.positions[j], x.get(j));
  return {SolveStatus::ok, std::move(out)};
}

BitString back_substitute(const BitMatrix& aug, std::size_t t) {
  BitString x(t);
  if (t == 0) return x;
  std::vector<u64> xw((t + 63) / 64, 0);
  for (std::size_t j = t; j-- > 0;) {
    bool v = aug.get(j, t);
    const u64* row = aug.row(j);
    u64 acc = 0;
    for (std::size_t k = j >> 6; k < xw.size(); ++k) acc ^= row[k] & xw[k];
    v ^= __builtin_parityll(acc);
    if (v) {
      xw[j >> 6] |= u64(1) << (j & 63);
      x.set(j, true);
    }
  }
  return x;
}

}  // namespace tpc::gf2
