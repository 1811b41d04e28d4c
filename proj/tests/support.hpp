#pragma once

// Random generators shared by the unit tests.

#include <random>

#include "gca/poly.hpp"

namespace testing_support {

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + std::int64_t(rng() % std::uint64_t(hi - lo + 1));
}

inline gca::LaurentPoly random_poly(std::mt19937_64& rng, const gca::AmbientPtr& amb, int max_terms, int lo, int hi,
                                    bool nonnegative = false) {
  std::vector<gca::LaurentPoly::Term> terms;
  const int count = int(uniform(rng, 0, max_terms));
  for (int t = 0; t < count; ++t) {
    gca::Exponents e(amb->width());
    for (int i = 0; i < amb->nvars(); ++i) e[i] = std::int32_t(uniform(rng, lo, hi));
    for (int s = 0; s < amb->z().size(); ++s) e[amb->nvars() + s] = std::int32_t(uniform(rng, 0, 2));
    const std::int64_t c = nonnegative ? uniform(rng, 1, 3) : uniform(rng, -5, 5);
    terms.push_back({e, c});
  }
  return gca::LaurentPoly::from_terms(amb, std::move(terms));
}

// 1 plus a few monomials with positive coefficients and non-zero exponents.
inline gca::LaurentPoly random_positive_poly(std::mt19937_64& rng, const gca::AmbientPtr& amb, int max_terms,
                                             int max_exp) {
  gca::LaurentPoly p = gca::LaurentPoly::one(amb);
  const int count = int(uniform(rng, 0, max_terms));
  for (int t = 0; t < count; ++t) {
    gca::Exponents e(amb->width());
    bool nonzero = false;
    for (int i = 0; i < amb->nvars(); ++i) {
      e[i] = std::int32_t(uniform(rng, 0, max_exp));
      nonzero = nonzero || e[i] != 0;
    }
    if (!nonzero) e[0] = 1;
    p = p + gca::LaurentPoly::monomial(amb, e, uniform(rng, 1, 3));
  }
  return p;
}

}  // namespace testing_support
