#include "tpc/codebook.hpp"

#include <cstring>
#include <stdexcept>

#include "tpc/errors.hpp"

#ifdef __BMI2__
#include <immintrin.h>
#endif

namespace tpc {

namespace {

inline u64 extract_bits(u64 word, u64 mask) {
#ifdef __BMI2__
  return _pext_u64(word, mask);
#else
  u64 out = 0;
  int k = 0;
  while (mask) {
    u64 low = mask & -mask;
    if (word & low) out |= u64(1) << k;
    mask ^= low;
    ++k;
  }
  return out;
#endif
}

// append nbits (<= 64) of chunk to a word buffer at bit cursor
inline void append_bits(u64* dst, std::size_t& cursor, u64 chunk, int nbits) {
  if (nbits == 0) return;
  const std::size_t word = cursor >> 6;
  const int off = (int)(cursor & 63);
  dst[word] |= chunk << off;
  if (off + nbits > 64) dst[word + 1] |= chunk >> (64 - off);
  cursor += (std::size_t)nbits;
}

// 64x64 bit transpose, LSB-first rows: out[b] bit c = in[c] bit b
// (Hacker's Delight 7-3 with the shifts mirrored for this bit order)
void transpose64(u64 a[64]) {
  u64 m = 0x00000000FFFFFFFFULL;
  for (int j = 32; j != 0; j >>= 1, m ^= m << j) {
    for (int k = 0; k < 64; k = (k + j + 1) & ~j) {
      u64 t = ((a[k] >> j) ^ a[k + j]) & m;
      a[k] ^= t << j;
      a[k + j] ^= t;
    }
  }
}

}  // namespace

Codebook Codebook::build(const CodeParams& params, std::uint64_t seed, MatrixMode mode,
                         unsigned max_resample) {
  Codebook cb;
  cb.params_ = params;
  cb.seed_ = seed;
  cb.mode_ = mode;
  cb.pilot_ = build_pilot(params);
  cb.index_ = build_window_index(cb.pilot_.q, params.w);

  if (mode == MatrixMode::uniform) {
    Rng master(seed);
    unsigned attempt = 0;
    for (; attempt < max_resample; ++attempt) {
      Rng mrng = master.split(attempt);
      gf2::BitMatrix h = gf2::BitMatrix::random(params.r, params.n_er, mrng);
      std::vector<u32> piv = gf2::eliminate(h, params.n_er, true);
      if (piv.size() == params.r) {
        cb.rref_ = std::move(h);
        cb.piv_ = std::move(piv);
        break;
      }
    }
    if (cb.piv_.size() != params.r)
      throw std::runtime_error("Codebook: parity matrix rank-deficient after bounded retries");
    cb.resamples_ = attempt;
    std::vector<bool> is_piv(params.n_er, false);
    for (u32 p : cb.piv_) is_piv[p] = true;
    cb.free_.reserve(params.n_er - params.r);
    for (u32 c = 0; c < params.n_er; ++c)
      if (!is_piv[c]) cb.free_.push_back(c);
    cb.free_mask_.assign((params.n_er + 63) / 64, 0);
    for (u32 c : cb.free_) cb.free_mask_[c >> 6] |= u64(1) << (c & 63);
  } else {
    cb.col_parent_ = Rng(seed);
    // [A | I_r] has rank r by construction; nothing to sample up front
  }
  return cb;
}

BitString Codebook::info_column(std::size_t j) const {
  Rng rng = col_parent_.split(j);
  BitString col(params_.r);
  auto& w = col.words();
  for (auto& word : w) word = rng.next_u64();
  if (params_.r & 63) w.back() &= (u64(1) << (params_.r & 63)) - 1;
  return col;
}

BitString Codebook::encode_chunk(const BitString& u) const {
  if (u.size() != k()) throw LengthMismatch("encode_chunk: message chunk has wrong length");
  BitString x(params_.n_er);
  if (mode_ == MatrixMode::uniform) {
    for (std::size_t j = 0; j < k(); ++j)
      if (u.get(j)) x.set(free_[j], true);
    for (std::size_t i = 0; i < params_.r; ++i)
      if (rref_.row_and_parity(i, x.words())) x.set(piv_[i], true);
  } else {
    std::vector<u64> parity((params_.r + 63) / 64, 0);
    for (std::size_t j = 0; j < k(); ++j) {
      if (!u.get(j)) continue;
      x.set(j, true);
      BitString col = info_column(j);
      for (std::size_t w = 0; w < parity.size(); ++w) parity[w] ^= col.words()[w];
    }
    for (std::size_t i = 0; i < params_.r; ++i)
      if ((parity[i >> 6] >> (i & 63)) & 1) x.set(k() + i, true);
  }
  return x;
}

BitString Codebook::chunk_message(const BitString& codeword) const {
  if (codeword.size() != params_.n_er)
    throw LengthMismatch("chunk_message: codeword has wrong length");
  BitString u(k());
  if (mode_ == MatrixMode::uniform) {
    for (std::size_t j = 0; j < k(); ++j)
      if (codeword.get(free_[j])) u.set(j, true);
  } else {
    for (std::size_t j = 0; j < k(); ++j)
      if (codeword.get(j)) u.set(j, true);
  }
  return u;
}

Codebook::StreamSolve Codebook::solve_stream(const StreamEstimate& est) const {
  if (est.values.size() != params_.n_er || est.known.size() != params_.n_er)
    throw LengthMismatch("solve_stream: estimate has wrong length");
  const std::size_t n_er = params_.n_er, r = params_.r, kk = k();

  StreamSolve out;
  out.erasures = n_er - est.known.count_ones();

  if (mode_ == MatrixMode::uniform) {
    // unknowns: erased information columns; equations: rows whose pivot
    // coordinate is known
    std::vector<u32> en;
    for (u32 c : free_)
      if (!est.known.get(c)) en.push_back(c);
    std::vector<u32> rows_kept;
    rows_kept.reserve(r);
    for (std::size_t i = 0; i < r; ++i)
      if (est.known.get(piv_[i])) rows_kept.push_back((u32)i);

    const std::size_t t = en.size();
    // known free values: values & known & free_mask
    std::vector<u64> kfv(rref_.words_per_row(), 0);
    {
      const auto& vw = est.values.words();
      const auto& kw = est.known.words();
      for (std::size_t w = 0; w < kfv.size() && w < vw.size(); ++w)
        kfv[w] = vw[w] & kw[w] & free_mask_[w];
    }
    std::vector<u64> sel(rref_.words_per_row(), 0);
    for (u32 c : en) sel[c >> 6] |= u64(1) << (c & 63);

    gf2::BitMatrix aug(rows_kept.size(), t + 1);
    for (std::size_t a = 0; a < rows_kept.size(); ++a) {
      const u64* src = rref_.row(rows_kept[a]);
      u64* dst = aug.row(a);
      std::size_t cursor = 0;
      for (std::size_t w = 0; w < sel.size(); ++w) {
        if (!sel[w]) continue;
        append_bits(dst, cursor, extract_bits(src[w], sel[w]), __builtin_popcountll(sel[w]));
      }
      bool rhs = est.values.get(piv_[rows_kept[a]]) ^ rref_.row_and_parity(rows_kept[a], kfv);
      if (rhs) aug.set(a, t, true);
    }

    std::vector<u32> piv = gf2::eliminate(aug, t + 1, false);
    if (!piv.empty() && piv.back() == t) {
      out.status = gf2::SolveStatus::inconsistent;
      return out;
    }
    if (piv.size() < t) {
      out.status = gf2::SolveStatus::rank_deficient;
      return out;
    }

    BitString cw = est.values;
    // completing erased info bits, then recomputing every erased pivot
    if (t > 0) {
      BitString x = gf2::back_substitute(aug, t);
      for (std::size_t j = 0; j < t; ++j) cw.set(en[j], x.get(j));
    }
    std::vector<u64> fv(rref_.words_per_row(), 0);
    for (std::size_t w = 0; w < fv.size() && w < cw.words().size(); ++w)
      fv[w] = cw.words()[w] & free_mask_[w];
    for (std::size_t i = 0; i < r; ++i)
      if (!est.known.get(piv_[i])) cw.set(piv_[i], rref_.row_and_parity(i, fv));
    out.codeword = std::move(cw);
    return out;
  }

  // systematic mode: equations are the known parity rows of [A | I];
  // A's columns are regenerated from the seed in one pass and transposed
  // into the reduced matrix 64 columns at a time
  std::vector<u32> en;
  for (u32 c = 0; c < kk; ++c)
    if (!est.known.get(c)) en.push_back(c);
  std::vector<u32> row_of(r, 0xffffffffu);
  std::vector<u32> rows_kept;
  for (std::size_t i = 0; i < r; ++i)
    if (est.known.get(kk + i)) {
      row_of[i] = (u32)rows_kept.size();
      rows_kept.push_back((u32)i);
    }
  const std::size_t t = en.size();
  gf2::BitMatrix aug(rows_kept.size(), t + 1);
  std::vector<u64> rhs_acc((r + 63) / 64, 0);

  const std::size_t rw = (r + 63) / 64;
  std::vector<u64> stage(64 * rw, 0);
  u64 block[64];
  std::size_t en_pos = 0;
  while (en_pos < t || en_pos == 0) {
    // also run once for t == 0 so the known-value accumulation happens
    std::size_t take = std::min<std::size_t>(64, t - en_pos);
    for (std::size_t c = 0; c < take; ++c) {
      BitString col = info_column(en[en_pos + c]);
      std::memcpy(stage.data() + c * rw, col.words().data(), rw * sizeof(u64));
    }
    if (take > 0) {
      for (std::size_t rb = 0; rb < rw; ++rb) {
        for (std::size_t c = 0; c < 64; ++c) block[c] = c < take ? stage[c * rw + rb] : 0;
        transpose64(block);
        // block[b] now holds bits of parity rows rb*64+b over these columns
        const std::size_t word = en_pos >> 6;  // en_pos is a multiple of 64
        for (std::size_t b = 0; b < 64; ++b) {
          std::size_t i = rb * 64 + b;
          if (i >= r || row_of[i] == 0xffffffffu) continue;
          aug.row(row_of[i])[word] = block[b];
        }
      }
    }
    en_pos += take;
    if (en_pos >= t) break;
  }
  for (std::size_t j = 0; j < kk; ++j) {
    if (est.known.get(j) && est.values.get(j)) {
      BitString col = info_column(j);
      for (std::size_t w = 0; w < rhs_acc.size(); ++w) rhs_acc[w] ^= col.words()[w];
    }
  }
  for (std::size_t a = 0; a < rows_kept.size(); ++a) {
    bool rhs = est.values.get(kk + rows_kept[a]) ^ ((rhs_acc[rows_kept[a] >> 6] >> (rows_kept[a] & 63)) & 1);
    if (rhs) aug.set(a, t, true);
  }

  std::vector<u32> piv = gf2::eliminate(aug, t + 1, false);
  if (!piv.empty() && piv.back() == t) {
    out.status = gf2::SolveStatus::inconsistent;
    return out;
  }
  if (piv.size() < t) {
    out.status = gf2::SolveStatus::rank_deficient;
    return out;
  }

  BitString cw = est.values;
  BitString x = t > 0 ? gf2::back_substitute(aug, t) : BitString();
  std::vector<u64> add_acc((r + 63) / 64, 0);
  for (std::size_t j = 0; j < t; ++j) {
    cw.set(en[j], x.get(j));
    if (x.get(j)) {
      BitString col = info_column(en[j]);
      for (std::size_t w = 0; w < add_acc.size(); ++w) add_acc[w] ^= col.words()[w];
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (!est.known.get(kk + i)) {
      bool v = ((rhs_acc[i >> 6] ^ add_acc[i >> 6]) >> (i & 63)) & 1;
      cw.set(kk + i, v);
    }
  }
  out.codeword = std::move(cw);
  return out;
}

gf2::BitMatrix Codebook::parity_matrix() const {
  if (mode_ == MatrixMode::uniform) return rref_;
  gf2::BitMatrix h(params_.r, params_.n_er);
  for (std::size_t j = 0; j < k(); ++j) {
    BitString col = info_column(j);
    for (std::size_t i = 0; i < params_.r; ++i)
      if (col.get(i)) h.set(i, j, true);
  }
  for (std::size_t i = 0; i < params_.r; ++i) h.set(i, k() + i, true);
  return h;
}

std::vector<BitString> Codebook::generator_basis() const {
  std::vector<BitString> basis;
  basis.reserve(k());
  if (mode_ == MatrixMode::uniform) {
    for (std::size_t j = 0; j < k(); ++j) {
      BitString g(params_.n_er);
      g.set(free_[j], true);
      for (std::size_t i = 0; i < params_.r; ++i)
        if (rref_.get(i, free_[j])) g.set(piv_[i], true);
      basis.push_back(std::move(g));
    }
  } else {
    for (std::size_t j = 0; j < k(); ++j) {
      BitString g(params_.n_er);
      g.set(j, true);
      BitString col = info_column(j);
      for (std::size_t i = 0; i < params_.r; ++i)
        if (col.get(i)) g.set(k() + i, true);
      basis.push_back(std::move(g));
    }
  }
  return basis;
}

}  // namespace tpc
