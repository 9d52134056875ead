#pragma once

#include "tpc/bits.hpp"

namespace tpc {

/// RLL(0,k-1) block code: append a 1 to every (k-1)-bit block.
/// Output has no zero-run of length k; rate (k-1)/k exactly.
/// Requires k >= 2 and (k-1) | len(v); no padding at this level.
BitString rll_encode(const BitString& v, unsigned k);

/// Inverse of rll_encode. Requires k | len(x) and every k-th bit set;
/// throws MalformedRLL otherwise.
BitString rll_decode(const BitString& x, unsigned k);

/// RLL~(0,k-2) block code: frame every (k-2)-bit block with 1s on both sides.
/// Output blocks are 1||v||1; no zero-run of length k-1; rate (k-2)/k.
/// Requires k >= 3 and (k-2) | len(v).
BitString rll_tilde_encode(const BitString& v, unsigned k);

/// Inverse of rll_tilde_encode; throws MalformedRLL if a framing 1 is absent.
BitString rll_tilde_decode(const BitString& x, unsigned k);

}  // namespace tpc
