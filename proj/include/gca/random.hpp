#pragma once

// Deterministic random instances for the verification suites. Draws use
// plain modular reduction of mt19937_64 output so that a given seed yields
// the same instances with every standard library.

#include <cstdint>
#include <random>

#include "gca/seed.hpp"

namespace gca {

struct Instance {
  MutationData md;
  IntMatrix bt;
  Vec D;
};

inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + std::int64_t(rng() % std::uint64_t(hi - lo + 1));
}

// n in [1,4], m in [n,n+2], entries in [-2,2], r_i in [1,3]. The principal
// part is drawn with a skew sign pattern and rejected until it admits a
// skew-symmetrizer.
inline Instance random_instance(std::mt19937_64& rng, int max_n = 4, int max_extra = 2) {
  while (true) {
    const int n = int(draw(rng, 1, max_n));
    const int m = int(draw(rng, n, n + max_extra));
    IntMatrix bt(m, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const std::int64_t a = draw(rng, -2, 2);
        if (a == 0) continue;
        bt(i, j) = a;
        bt(j, i) = (a > 0 ? -1 : 1) * draw(rng, 1, 2);
      }
    for (int i = n; i < m; ++i)
      for (int j = 0; j < n; ++j) bt(i, j) = draw(rng, -2, 2);
    std::vector<int> r(n);
    for (auto& x : r) x = int(draw(rng, 1, 3));
    try {
      MutationData md(n, m, r);
      Vec d = validate(md, bt);
      return {md, bt, d};
    } catch (const NotSkewSymmetrizable&) {
    }
  }
}

inline Word random_word(std::mt19937_64& rng, int n, int max_len, int min_len = 0) {
  Word w;
  const int len = int(draw(rng, min_len, max_len));
  for (int i = 0; i < len; ++i) w.push_back(int(draw(rng, 0, n - 1)));
  return w;
}

// Random word with no immediate repetition, so it has exactly len edges.
inline Word random_reduced_word(std::mt19937_64& rng, int n, int len) {
  Word w;
  while (int(w.size()) < len) {
    const int k = int(draw(rng, 0, n - 1));
    if (!w.empty() && w.back() == k) {
      if (n == 1) break;
      continue;
    }
    w.push_back(k);
  }
  return w;
}

}  // namespace gca
