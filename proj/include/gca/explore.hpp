#pragma once

// Breadth-first exploration of the exchange graph, labeled or up to
// permutations of the unfrozen directions that preserve r.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gca/errors.hpp"
#include "gca/seed.hpp"

namespace gca {

struct ExploreOptions {
  std::size_t max_seeds = 5000;
  int max_depth = 64;
  bool unlabeled = false;
};

struct ExploredSeed {
  Word word;
  int depth = 0;
  Seed seed;
  std::vector<int> cluster;  // sorted indices into Exploration::variables
};

struct ExploredEdge {
  int from = 0;
  int to = 0;
  int direction = 0;
  bool operator<(const ExploredEdge& o) const {
    return std::tie(from, to, direction) < std::tie(o.from, o.to, o.direction);
  }
};

struct Exploration {
  std::vector<ExploredSeed> seeds;
  std::vector<ExploredEdge> edges;
  std::vector<LaurentPoly> variables;  // distinct unfrozen cluster variables
  bool closed = false;
  std::string truncation;  // why exploration stopped early, when it did

  std::size_t cluster_count() const {
    std::set<std::vector<int>> distinct;
    for (const auto& s : seeds) distinct.insert(s.cluster);
    return distinct.size();
  }

  // Index of the variable, or -1 when it was never reached.
  int variable_index(const LaurentPoly& x) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i] == x) return int(i);
    return -1;
  }

  void require_closed() const {
    if (!closed) throw ExplorationBudgetExceeded("exchange graph not closed within budget: " + truncation);
  }
};

namespace detail {

inline std::string seed_key(const IntMatrix& bt, const std::vector<LaurentPoly>& x) {
  std::string key = bt.str();
  for (const auto& v : x) key += "|" + to_string(v);
  return key;
}

// Permutations of [0, n) that preserve r.
inline std::vector<std::vector<int>> r_preserving_permutations(const std::vector<int>& r) {
  std::vector<int> p(r.size());
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < p.size(); ++i) ok = ok && r[p[i]] == r[i];
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::string canonical_key(const Seed& s, const std::vector<std::vector<int>>& perms) {
  const int n = s.md().n(), m = s.md().m();
  std::string best;
  for (const auto& p : perms) {
    // unfrozen position i of the relabeled seed holds old position p[i]
    auto old = [&](int i) { return i < n ? p[i] : i; };
    IntMatrix bt(m, n);
    std::vector<LaurentPoly> x;
    for (int i = 0; i < m; ++i) {
      x.push_back(s.x(old(i)));
      for (int j = 0; j < n; ++j) bt(i, j) = s.Btilde()(old(i), p[j]);
    }
    std::string key = seed_key(bt, x);
    if (best.empty() || key < best) best = std::move(key);
  }
  return best;
}

}  // namespace detail

inline Exploration explore(const MutationData& md, const IntMatrix& bt0, const ExploreOptions& opts = {}) {
  if (opts.max_seeds == 0) throw StructuralError("exploration budget must be positive");
  const auto perms = opts.unlabeled ? detail::r_preserving_permutations(md.r())
                                    : std::vector<std::vector<int>>{[&] {
                                        std::vector<int> id(md.n());
                                        std::iota(id.begin(), id.end(), 0);
                                        return id;
                                      }()};
  Exploration ex;
  std::map<std::string, int> index;
  auto intern = [&](const Seed& s) {
    std::vector<int> cl;
    for (int i = 0; i < md.n(); ++i) {
      int v = ex.variable_index(s.x(i));
      if (v < 0) {
        v = int(ex.variables.size());
        ex.variables.push_back(s.x(i));
      }
      cl.push_back(v);
    }
    std::sort(cl.begin(), cl.end());
    return cl;
  };

  const Seed root = Seed::initial(md, bt0);
  index[detail::canonical_key(root, perms)] = 0;
  ex.seeds.push_back({{}, 0, root, intern(root)});
  std::set<ExploredEdge> edges;
  bool truncated = false;
  for (std::size_t cur = 0; cur < ex.seeds.size(); ++cur) {
    for (int k = 0; k < md.n(); ++k) {
      const ExploredSeed& here = ex.seeds[cur];
      Seed next = mutate_seed(here.seed, k);
      const std::string key = detail::canonical_key(next, perms);
      auto it = index.find(key);
      if (it == index.end()) {
        if (here.depth >= opts.max_depth) {
          truncated = true;
          ex.truncation = "depth limit " + std::to_string(opts.max_depth);
          continue;
        }
        if (ex.seeds.size() >= opts.max_seeds) {
          truncated = true;
          ex.truncation = "seed limit " + std::to_string(opts.max_seeds);
          continue;
        }
        Word w = here.word;
        w.push_back(k);
        const int depth = here.depth + 1;
        auto cl = intern(next);
        it = index.emplace(key, int(ex.seeds.size())).first;
        ex.seeds.push_back({std::move(w), depth, std::move(next), std::move(cl)});
      }
      // each edge is recorded once, from the endpoint discovered first
      if (int(cur) <= it->second) edges.insert({int(cur), it->second, k});
    }
  }
  ex.edges.assign(edges.begin(), edges.end());
  ex.closed = !truncated;
  return ex;
}

}  // namespace gca
