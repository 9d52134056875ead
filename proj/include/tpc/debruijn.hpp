#pragma once

#include "tpc/bits.hpp"

namespace tpc {

/// Prefix of a linearized binary De Bruijn sequence of the given order
/// (the cycle with its first order-1 bits appended, truncated to target_len).
/// Every length-`order` window of the output is distinct.
/// Requires 1 <= order <= 31 and target_len <= 2^order.
BitString de_bruijn(unsigned order, std::size_t target_len);

}  // namespace tpc
