#include "tpc/rll.hpp"

#include "tpc/errors.hpp"

namespace tpc {

BitString rll_encode(const BitString& v, unsigned k) {
  if (k < 2) throw ParamInvalid("rll_encode: k must be >= 2");
  if (v.size() % (k - 1) != 0) throw ParamInvalid("rll_encode: (k-1) must divide input length");
  BitString x;
  for (std::size_t i = 0; i < v.size(); ++i) {
    x.push_back(v.get(i));
    if ((i + 1) % (k - 1) == 0) x.push_back(true);
  }
  return x;
}

BitString rll_decode(const BitString& x, unsigned k) {
  if (k < 2) throw ParamInvalid("rll_decode: k must be >= 2");
  if (x.size() % k != 0) throw ParamInvalid("rll_decode: k must divide input length");
  BitString v;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if ((i + 1) % k == 0) {
      if (!x.get(i)) throw MalformedRLL("rll_decode: appended bit is 0");
    } else {
      v.push_back(x.get(i));
    }
  }
  return v;
}

BitString rll_tilde_encode(const BitString& v, unsigned k) {
  if (k < 3) throw ParamInvalid("rll_tilde_encode: k must be >= 3");
  if (v.size() % (k - 2) != 0) throw ParamInvalid("rll_tilde_encode: (k-2) must divide input length");
  BitString x;
  for (std::size_t b = 0; b < v.size() / (k - 2); ++b) {
    x.push_back(true);
    for (unsigned j = 0; j < k - 2; ++j) x.push_back(v.get(b * (k - 2) + j));
    x.push_back(true);
  }
  return x;
}

BitString rll_tilde_decode(const BitString& x, unsigned k) {
  if (k < 3) throw ParamInvalid("rll_tilde_decode: k must be >= 3");
  if (x.size() % k != 0) throw ParamInvalid("rll_tilde_decode: k must divide input length");
  BitString v;
  for (std::size_t b = 0; b < x.size() / k; ++b) {
    if (!x.get(b * k) || !x.get(b * k + k - 1))
      throw MalformedRLL("rll_tilde_decode: framing bit is 0");
    for (unsigned j = 1; j + 1 < k; ++j) v.push_back(x.get(b * k + j));
  }
  return v;
}

}  // namespace tpc
