#pragma once

#include <cstdint>
#include <vector>

#include "tpc/bits.hpp"
#include "tpc/gf2.hpp"
#include "tpc/params.hpp"
#include "tpc/pilot.hpp"

namespace tpc {

/// How the random linear code's parity-check matrix is realized.
///
/// `uniform` samples H with i.i.d. uniform entries and resamples until it has
/// full row rank, then keeps its reduced row-echelon form. `systematic`
/// directly realizes the full-rank-conditioned ensemble as H = [A | I_r] with
/// A i.i.d. uniform, generated column-wise from the seed and never stored;
/// this is the only representation that fits memory at n ~ 2^20, and the
/// per-erasure-pattern failure bound 2^{|E|-r} is the same for both.
enum class MatrixMode { uniform, systematic };

/// One de-interleaved stream estimate: n_er symbols over {0,1,*} as a value
/// bitvector plus a known-mask (0 in `known` means erased).
struct StreamEstimate {
  BitString values;
  BitString known;
};

class Codebook {
 public:
  static Codebook build(const CodeParams& params, std::uint64_t seed,
                        MatrixMode mode = MatrixMode::uniform, unsigned max_resample = 16);

  /// Mode picked by scale: uniform while the RREF is affordable, systematic
  /// above (the two realize the same conditioned ensemble).
  static MatrixMode default_mode(const CodeParams& params) {
    return params.n_er <= 150000 ? MatrixMode::uniform : MatrixMode::systematic;
  }

  const CodeParams& params() const { return params_; }
  const PilotSequence& pilot() const { return pilot_; }
  const WindowIndex& index() const { return index_; }
  MatrixMode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }
  unsigned resamples() const { return resamples_; }

  std::size_t k() const { return params_.n_er - params_.r; }

  /// Message chunk (n_er - r bits) -> C_er codeword (n_er bits).
  BitString encode_chunk(const BitString& u) const;

  /// Message bits of a C_er codeword (values at the information set).
  BitString chunk_message(const BitString& codeword) const;

  struct StreamSolve {
    gf2::SolveStatus status = gf2::SolveStatus::ok;
    BitString codeword;      // valid when status == ok
    std::size_t erasures = 0;
  };

  /// Erasure decode of one stream estimate against this code. Reduces to a
  /// dense solve over the erased information coordinates only.
  StreamSolve solve_stream(const StreamEstimate& est) const;

  /// Explicit parity-check matrix (r x n_er) with rank r. Materializes the
  /// whole matrix; meant for tests and small instances.
  gf2::BitMatrix parity_matrix() const;

  /// Null-space basis of the parity-check matrix, one generator per message
  /// bit, in information-set order. Materializes k vectors; tests/small n.
  std::vector<BitString> generator_basis() const;

 private:
  Codebook() = default;

  BitString info_column(std::size_t j) const;  // systematic: column j of A

  CodeParams params_;
  PilotSequence pilot_;
  WindowIndex index_;
  MatrixMode mode_ = MatrixMode::uniform;
  std::uint64_t seed_ = 0;
  unsigned resamples_ = 0;

  // uniform mode: RREF of the sampled H plus its pivot/free column split
  gf2::BitMatrix rref_;
  std::vector<u32> piv_;
  std::vector<u32> free_;
  std::vector<u64> free_mask_;

  // systematic mode: nothing stored; columns of A are regenerated from seed_
  Rng col_parent_{0};
};

}  // namespace tpc
