#pragma once

// The F-invariant pairing of good elements and its consequences: vertex
// independence, f-vectors, linearity, and the cluster-monomial criteria.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gca/errors.hpp"
#include "gca/explore.hpp"
#include "gca/linalg.hpp"
#include "gca/tropical.hpp"

namespace gca {

inline void require_full_rank(const IntMatrix& bt) {
  if (rank_of(bt) < bt.cols())
    throw RankDeficient("Btilde has rank " + std::to_string(rank_of(bt)) + " < " + std::to_string(bt.cols()));
}

// Shared data for evaluating pairings on one generalized cluster pattern.
// D is the diagonal of the compatible pair when one is configured and the
// minimal skew-symmetrizer otherwise.
class InvariantContext {
 public:
  InvariantContext(MutationData md, IntMatrix bt0, std::optional<CompatiblePair> cp0 = std::nullopt)
      : md_(std::move(md)), bt0_(std::move(bt0)), cp0_(std::move(cp0)) {
    d_ = validate(md_, bt0_);
    require_full_rank(bt0_);
    if (cp0_) {
      if (!(cp0_->md() == md_) || !(cp0_->Btilde() == bt0_))
        throw StructuralError("compatible pair does not match the exchange matrix");
      cp0_->validate();
      d_ = cp0_->D();
    }
  }

  const MutationData& md() const noexcept { return md_; }
  const IntMatrix& Btilde0() const noexcept { return bt0_; }
  const Vec& D() const noexcept { return d_; }
  bool has_lambda() const noexcept { return cp0_.has_value(); }

  const PointedAt& at(const GoodElement& u, const Word& w) const {
    const Word wr = reduce_word(w);
    const auto* c = std::get_if<ClusterMonomial>(&u);
    if (!c) {
      scratch_ = materialize(md_, bt0_, u, wr);
      return *scratch_;
    }
    auto key = std::make_pair(describe(u), wr);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(std::move(key), materialize(md_, bt0_, u, wr)).first;
    return it->second;
  }

  IntMatrix Lambda_at(const Word& w) const {
    if (!cp0_) throw MissingLambda("no compatible pair is configured");
    return mutate_compatible_pair_along(*cp0_, reduce_word(w)).Lambda();
  }

  // [D | 0] g
  Vec weight(const Vec& g) const {
    Vec out(md_.n());
    for (int i = 0; i < md_.n(); ++i) out[i] = d_[i] * g[i];
    return out;
  }

 private:
  MutationData md_;
  IntMatrix bt0_;
  std::optional<CompatiblePair> cp0_;
  Vec d_;
  mutable std::map<std::pair<std::string, Word>, PointedAt> cache_;
  mutable std::optional<PointedAt> scratch_;
};

// <u || v>_w = g_u^T Lambda_w g_v + F_u[[D|0] g_v].
inline Integer pairing_at(const InvariantContext& ctx, const GoodElement& u, const GoodElement& v, const Word& w) {
  const IntMatrix lambda = ctx.Lambda_at(w);
  const PointedAt pu = ctx.at(u, w);
  const PointedAt& pv = ctx.at(v, w);
  return dot(pu.g, lambda * pv.g) + trop_eval(pu.Fpos, ctx.weight(pv.g));
}

// (u || v)_F = F_u[[D|0] g_v] + F_v[[D|0] g_u], read at the vertex w.
inline Integer f_invariant(const InvariantContext& ctx, const GoodElement& u, const GoodElement& v,
                           const Word& w = {}) {
  const PointedAt pu = ctx.at(u, w);
  const PointedAt& pv = ctx.at(v, w);
  return trop_eval(pu.Fpos, ctx.weight(pv.g)) + trop_eval(pv.Fpos, ctx.weight(pu.g));
}

// M_ij = (x_{i;t} || x_{j;t'})_F, which equals d_i f_ij of the F-matrix
// rooted at t and read at t', and d_j f_ji of the one rooted at t' read at t.
inline IntMatrix f_matrix_from_invariant(const InvariantContext& ctx, const Word& t, const Word& tp,
                                         const Word& w = {}) {
  const int n = ctx.md().n(), m = ctx.md().m();
  IntMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = f_invariant(ctx, cluster_variable(t, i, m), cluster_variable(tp, j, m), w);
  return out;
}

// ---------------------------------------------------------------------------

enum class Containment { MonomialHere, MonomialAfterMu, Inconclusive };

struct ContainmentVerdict {
  Containment kind = Containment::Inconclusive;
  int direction = -1;              // for MonomialAfterMu
  std::vector<Integer> pairings;   // (x_{k;t} || u)_F for k < n
  bool side_claims_hold = true;    // g_{k;t} >= 0 wherever the pairing vanishes
  bool confirmed = false;          // u is literally x^g with F = 1 at the predicted cluster
  std::string witness;
};

inline const char* containment_name(Containment c) {
  switch (c) {
    case Containment::MonomialHere: return "MonomialHere";
    case Containment::MonomialAfterMu: return "MonomialAfterMu";
    default: return "Inconclusive";
  }
}

inline ContainmentVerdict cluster_containment_test(const InvariantContext& ctx, const GoodElement& u, const Word& t) {
  const int n = ctx.md().n(), m = ctx.md().m();
  ContainmentVerdict out;
  const PointedAt pu = ctx.at(u, t);
  std::vector<int> nonzero;
  for (int k = 0; k < n; ++k) {
    out.pairings.push_back(f_invariant(ctx, cluster_variable(t, k, m), u, t));
    if (out.pairings.back() != 0) {
      nonzero.push_back(k);
    } else if (pu.g[k] < 0) {
      out.side_claims_hold = false;
      out.witness = "pairing with x" + std::to_string(k + 1) + " vanishes but g_" + std::to_string(k + 1) + " = " +
                    pu.g[k].str();
    }
  }
  auto monomial_at = [&](const Word& w) {
    const PointedAt& p = ctx.at(u, w);
    for (int i = 0; i < m; ++i)
      if (p.g[i] < 0) return false;
    return p.Fpos.reduces_to(LaurentPoly::one(p.Fpos.num().ambient()));
  };
  if (nonzero.empty()) {
    out.kind = Containment::MonomialHere;
    out.confirmed = monomial_at(t);
  } else if (nonzero.size() == 1) {
    out.kind = Containment::MonomialAfterMu;
    out.direction = nonzero[0];
    out.confirmed = monomial_at(concat(t, {nonzero[0]}));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct CompatibilityResult {
  bool pairings_vanish = true;
  std::optional<std::pair<int, int>> nonzero_pair;  // indices into the input
  bool cluster_found = false;
  std::optional<Word> witness;  // a vertex whose cluster contains every input
  bool compatible() const { return pairings_vanish && cluster_found; }
  bool consistent() const { return pairings_vanish == cluster_found; }
};

inline LaurentPoly expand(const MutationData& md, const IntMatrix& bt0, const ClusterMonomial& u) {
  const Seed s = mutate_seed_along(Seed::initial(md, bt0), u.t);
  LaurentPoly out = LaurentPoly::one(s.ambient());
  for (int j = 0; j < md.m(); ++j)
    if (u.h[j] != 0) out = out * pow(s.x(j), u.h[j]);
  return out;
}

// Pairwise F-invariants of unfrozen cluster variables against a search of
// the exchange graph for a cluster containing all of them.
inline CompatibilityResult mutual_compatibility(const InvariantContext& ctx, const std::vector<ClusterMonomial>& vars,
                                                const ExploreOptions& opts = {}) {
  for (const auto& v : vars) {
    int ones = 0;
    bool frozen = false;
    for (int j = 0; j < ctx.md().m(); ++j) {
      if (v.h.at(j) == 1) {
        ++ones;
        frozen = j >= ctx.md().n();
      } else if (v.h[j] != 0) {
        ones = 2;
      }
    }
    if (ones != 1 || frozen) throw StructuralError("mutual compatibility expects unfrozen cluster variables");
  }
  CompatibilityResult out;
  for (std::size_t a = 0; a < vars.size() && out.pairings_vanish; ++a)
    for (std::size_t b = a + 1; b < vars.size(); ++b)
      if (f_invariant(ctx, vars[a], vars[b]) != 0) {
        out.pairings_vanish = false;
        out.nonzero_pair = {int(a), int(b)};
        break;
      }
  const Exploration ex = explore(ctx.md(), ctx.Btilde0(), opts);
  std::vector<int> wanted;
  for (const auto& v : vars) wanted.push_back(ex.variable_index(expand(ctx.md(), ctx.Btilde0(), v)));
  for (const auto& s : ex.seeds) {
    bool all = true;
    for (int idx : wanted) all = all && idx >= 0 && std::binary_search(s.cluster.begin(), s.cluster.end(), idx);
    if (all) {
      out.cluster_found = true;
      out.witness = s.word;
      break;
    }
  }
  if (!out.cluster_found) ex.require_closed();
  return out;
}

// ---------------------------------------------------------------------------

// Every cluster monomial x_c^h of an explored exchange graph with entries of
// h at most max_exponent, indexed by its value at a fixed random point
// modulo 2^61 - 1.
class ClusterMonomialIndex {
 public:
  ClusterMonomialIndex(const Exploration& ex, int max_exponent, std::uint64_t point_seed = 0x5eed)
      : ex_(&ex), max_exp_(max_exponent) {
    ex.require_closed();
    const auto& amb = ex.seeds.at(0).seed.ambient();
    std::mt19937_64 rng(point_seed);
    for (int i = 0; i < amb->width(); ++i) point_.push_back(1 + rng() % (modp::kPrime - 1));
    const int m = ex.seeds[0].seed.md().m();
    for (std::size_t c = 0; c < ex.seeds.size(); ++c) {
      std::vector<std::uint64_t> vals;
      for (int j = 0; j < m; ++j) vals.push_back(evaluate_mod(ex.seeds[c].seed.x(j), point_));
      std::vector<int> h(m, 0);
      while (true) {
        std::uint64_t v = 1;
        for (int j = 0; j < m; ++j) v = modp::mul(v, modp::power(vals[j], std::uint64_t(h[j])));
        entries_.emplace(v, std::make_pair(int(c), h));
        int j = 0;
        while (j < m && h[j] == max_exp_) h[j++] = 0;
        if (j == m) break;
        ++h[j];
      }
    }
  }

  // A cluster (seed index) and exponent realizing p, verified exactly.
  std::optional<std::pair<int, std::vector<int>>> find(const LaurentPoly& p) const {
    const auto range = entries_.equal_range(evaluate_mod(p, point_));
    for (auto it = range.first; it != range.second; ++it) {
      const auto& [c, h] = it->second;
      const Seed& s = ex_->seeds[c].seed;
      LaurentPoly q = LaurentPoly::one(s.ambient());
      for (int j = 0; j < int(h.size()); ++j)
        if (h[j]) q = q * pow(s.x(j), std::int64_t(h[j]));
      if (q == p) return it->second;
    }
    return std::nullopt;
  }

  const Exploration& exploration() const { return *ex_; }

 private:
  const Exploration* ex_;
  int max_exp_;
  std::vector<std::uint64_t> point_;
  std::unordered_multimap<std::uint64_t, std::pair<int, std::vector<int>>> entries_;
};

// Distinct cluster monomials of a closed exploration with exponents at most
// max_exp, each named by the first seed that realizes it.
inline std::vector<ClusterMonomial> distinct_cluster_monomials(const Exploration& ex, int max_exp) {
  ex.require_closed();
  std::vector<ClusterMonomial> out;
  std::vector<LaurentPoly> seen;
  const int m = ex.seeds.at(0).seed.md().m();
  for (const auto& s : ex.seeds) {
    std::vector<int> h(m, 0);
    while (true) {
      LaurentPoly p = LaurentPoly::one(s.seed.ambient());
      for (int j = 0; j < m; ++j) p = p * pow(s.seed.x(j), std::int64_t(h[j]));
      if (std::find(seen.begin(), seen.end(), p) == seen.end()) {
        seen.push_back(p);
        out.push_back({s.word, Vec(h.begin(), h.end())});
      }
      int j = 0;
      while (j < m && h[j] == max_exp) h[j++] = 0;
      if (j == m) break;
      ++h[j];
    }
  }
  return out;
}

struct ProductCriterion {
  Integer invariant;
  bool pairing_side = false;      // (u || v)_F == 0
  bool enumeration_side = false;  // u v is among the enumerated cluster monomials
  std::optional<Word> witness;
  bool agree() const { return pairing_side == enumeration_side; }
};

inline ProductCriterion product_monomial_criterion(const InvariantContext& ctx, const ClusterMonomial& u,
                                                   const ClusterMonomial& v, const ClusterMonomialIndex& index) {
  ProductCriterion out;
  out.invariant = f_invariant(ctx, u, v);
  out.pairing_side = out.invariant == 0;
  const LaurentPoly prod = expand(ctx.md(), ctx.Btilde0(), u) * expand(ctx.md(), ctx.Btilde0(), v);
  if (const auto hit = index.find(prod)) {
    out.enumeration_side = true;
    out.witness = index.exploration().seeds[hit->first].word;
  }
  return out;
}

}  // namespace gca
