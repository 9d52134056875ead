#include "tpc/debruijn.hpp"

#include <vector>

#include "tpc/errors.hpp"

namespace tpc {

namespace {

// FKM necklace concatenation; emits the lexicographically least binary
// De Bruijn cycle of order n in O(2^n).
struct Fkm {
  unsigned n;
  std::vector<int> a;
  BitString out;

  explicit Fkm(unsigned order) : n(order), a(order + 1, 0) {}

  void run() {
    db(1, 1);
  }

  void db(unsigned t, unsigned p) {
    if (t > n) {
      if (n % p == 0)
        for (unsigned j = 1; j <= p; ++j) out.push_back(a[j] != 0);
    } else {
      a[t] = a[t - p];
      db(t + 1, p);
      if (a[t - p] == 0) {
        a[t] = 1;
        db(t + 1, t);
      }
    }
  }
};

}  // namespace

BitString de_bruijn(unsigned order, std::size_t target_len) {
  if (order < 1 || order > 31) throw ParamInvalid("de_bruijn: order must be in [1, 31]");
  const std::size_t cycle_len = std::size_t(1) << order;
  if (target_len > cycle_len) throw ParamInvalid("de_bruijn: target_len exceeds 2^order");
  Fkm f(order);
  f.out = BitString();
  f.run();
  BitString& cyc = f.out;
  // linearize: cycle plus its first order-1 bits, then truncate
  BitString lin;
  for (std::size_t i = 0; i < std::min(target_len, cycle_len); ++i) lin.push_back(cyc.get(i));
  for (std::size_t i = 0; lin.size() < target_len; ++i) lin.push_back(cyc.get(i % cycle_len));
  return lin;
}

}  // namespace tpc
