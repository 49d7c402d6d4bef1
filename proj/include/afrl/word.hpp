#ifndef AFRL_WORD_HPP
#define AFRL_WORD_HPP

#include <cstdint>
#include <vector>

#include "afrl/error.hpp"
#include "afrl/rng.hpp"

namespace afrl {

using Word = std::vector<int>;

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Finite prefix with cyclic extension, the deterministic infinite-word rule
// used for fixed-point computations.
struct CyclicWord {
  Word prefix;
  int at(size_t k) const { return prefix[k % prefix.size()]; }
  bool empty() const { return prefix.empty(); }
};

inline Word random_word(Rng& rng, const std::vector<double>& cdf, size_t len) {
  Word w(len);
  for (size_t i = 0; i < len; ++i) w[i] = rng.next_index(cdf);
  return w;
}

// Two-sided word ... i_{-2} i_{-1} ; i_0 i_1 ...
// Backed by one buffer so that the shift is O(1). Outside the stored range
// the word extends by repeating the outermost stored symbol.
struct TwoSidedWord {
  std::vector<int> buf;
  long origin = 0;  // buf[origin] == i_0

  int at(long k) const {
    long idx = origin + k;
    if (idx < 0) idx = 0;
    if (idx >= long(buf.size())) idx = long(buf.size()) - 1;
    return buf[size_t(idx)];
  }
  TwoSidedWord shifted(long s = 1) const {
    TwoSidedWord w = *this;
    w.origin += s;
    return w;
  }
  // negatives replaced by i_0
  TwoSidedWord bowen_r() const {
    TwoSidedWord w;
    w.buf.assign(buf.begin() + origin, buf.end());
    w.origin = 0;
    return w;
  }
  long pos_len() const { return long(buf.size()) - origin; }

  static TwoSidedWord random(Rng& rng, const std::vector<double>& cdf, size_t neg_len,
                             size_t pos_len) {
    TwoSidedWord w;
    w.buf.resize(neg_len + pos_len);
    for (auto& s : w.buf) s = rng.next_index(cdf);
    w.origin = long(neg_len);
    return w;
  }
};

}  // namespace afrl

#endif
