#pragma once

// Randomized verification suites. Every suite draws its cases from a seed
// file when one is given and from the random instance generator otherwise,
// and reports counts together with the first failure.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gca/invariant.hpp"
#include "gca/io.hpp"
#include "gca/pattern.hpp"
#include "gca/random.hpp"
#include "gca/tropical.hpp"

namespace gca {

struct VerifyConfig {
  int trials = 100;
  int depth = 8;
  std::uint64_t rand_seed = 1;
  std::size_t max_terms = 20000;
  std::uint64_t max_work = 50000000;
  int pairs = 5;  // vertex pairs per case in the symmetry suite
  std::optional<SeedSpec> seed;
};

struct SuiteResult {
  std::string suite;
  long cases = 0;
  long checks = 0;
  long failures = 0;
  long skipped = 0;         // check groups abandoned at the size or exponent limits
  long not_applicable = 0;  // cases outside the hypotheses of the suite
  long completed = 0;       // cases with every check group run
  std::map<std::string, long> failure_kinds;
  std::optional<json> first_failure;

  bool pass() const { return failures == 0; }

  void fail(json context, const std::string& kind, const std::string& message) {
    ++failures;
    ++failure_kinds[kind];
    if (first_failure) return;
    context["kind"] = kind;
    context["message"] = message;
    first_failure = std::move(context);
  }

  void absorb(const CheckReport& rep, const json& context) {
    for (const auto& c : rep.checks) {
      ++checks;
      if (!c.pass) {
        json ctx = context;
        ctx["check"] = c.name;
        fail(ctx, "check", c.witness);
      }
    }
  }

  json to_json() const {
    json out{{"suite", suite},     {"cases", cases},       {"checks", checks},
             {"failures", failures}, {"skipped_over_budget", skipped}, {"not_applicable", not_applicable},
             {"completed", completed}, {"pass", pass()}};
    out["failure_kinds"] = failure_kinds;
    out["first_failure"] = first_failure ? *first_failure : json(nullptr);
    return out;
  }
};

struct VerifyCase {
  MutationData md;
  IntMatrix bt;
  std::optional<CompatiblePair> cp;
  std::optional<SquareCompletion> sq;
  std::string origin;
};

namespace detail {

inline std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline VerifyCase make_case(std::mt19937_64& rng, const VerifyConfig& cfg) {
  if (cfg.seed) {
    const auto& s = *cfg.seed;
    VerifyCase c{s.md, s.bt, s.compatible_pair(), std::nullopt, s.source};
    if (s.bsq_completion) {
      IntMatrix full(s.md.m(), s.md.m());
      for (int i = 0; i < s.md.m(); ++i)
        for (int j = 0; j < s.md.m(); ++j) full(i, j) = j < s.md.n() ? s.bt(i, j) : (*s.bsq_completion)(i, j - s.md.n());
      c.sq = SquareCompletion(s.md, s.bt, *s.bsq_completion, skew_symmetrizer(full));
    } else {
      c.sq = SquareCompletion::standard(s.md, s.bt);
    }
    return c;
  }
  const Instance in = random_instance(rng);
  return {in.md, in.bt, CompatiblePair::solve(in.md, in.bt), SquareCompletion::standard(in.md, in.bt), "random"};
}

inline json case_context(const VerifyCase& c, long id, const Word& w) {
  return {{"case", id}, {"origin", c.origin}, {"Btilde", matrix_to_json(c.bt)}, {"r", c.md.r()},
          {"word", word_to_json(w)}};
}

inline Vec random_point(std::mt19937_64& rng, int size, int bound) {
  Vec v(size);
  for (auto& x : v) x = draw(rng, -bound, bound);
  return v;
}

}  // namespace detail

// Body signature: void(const VerifyCase&, const Word&, std::mt19937_64&,
// SuiteResult&, const json& context).
template <class Body>
SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg, Body body) {
  SuiteResult res;
  res.suite = name;
  std::mt19937_64 rng(cfg.rand_seed ^ detail::name_hash(name));
  for (int trial = 0; trial < cfg.trials; ++trial) {
    VerifyCase c = detail::make_case(rng, cfg);
    const Word w = random_word(rng, c.md.n(), cfg.depth);
    const json ctx = detail::case_context(c, trial, w);
    ++res.cases;
    ScopedLimits guard({cfg.max_terms, cfg.max_work});
    const long before = res.skipped + res.not_applicable;
    try {
      body(c, w, rng, res, ctx);
      if (res.skipped + res.not_applicable == before) ++res.completed;
    } catch (const TermLimitExceeded&) {
      ++res.skipped;
    } catch (const OverflowError&) {
      ++res.skipped;
    } catch (const Error& e) {
      res.fail(ctx, error_kind(e), e.what());
    }
  }
  return res;
}

namespace detail {

// Runs one group of checks; hitting the size limit abandons only that group.
template <class Fn>
void guarded(SuiteResult& res, Fn fn) {
  try {
    fn();
  } catch (const TermLimitExceeded&) {
    ++res.skipped;
  } catch (const OverflowError&) {
    ++res.skipped;
  }
}

inline CompatiblePair checked_pair(const VerifyCase& c) {
  c.cp->validate();
  return *c.cp;
}

}  // namespace detail

// Seed, Y-seed and compatible-pair mutations are involutions. Seeds are
// checked with fresh variables at the end of the word, which is the
// universal form of the identity.
inline SuiteResult verify_involution(const VerifyConfig& cfg) {
  return run_suite("involution", cfg, [](const VerifyCase& c, const Word& w, std::mt19937_64&, SuiteResult& res,
                                         const json& ctx) {
    CheckReport rep;
    const IntMatrix bt = mutate_matrix_along(c.bt, c.md.r(), w);
    const Seed s = Seed::initial(c.md, bt);
    std::optional<CompatiblePair> cp;
    if (c.cp) cp = mutate_compatible_pair_along(detail::checked_pair(c), w);
    for (int k = 0; k < c.md.n(); ++k) {
      const std::string at = " in direction " + std::to_string(k + 1);
      rep.add("matrix involution" + at, mutate_matrix(mutate_matrix(bt, k, c.md.r()), k, c.md.r()) == bt, bt.str());
      rep.add("seed involution" + at, mutate_seed(mutate_seed(s, k), k) == s, bt.str());
      if (cp)
        rep.add("compatible pair involution" + at, mutate_compatible_pair(mutate_compatible_pair(*cp, k), k) == *cp,
                cp->Lambda().str());
    }
    res.absorb(rep, ctx);
    detail::guarded(res, [&] {
      CheckReport yrep;
      const YSeed ys = YSeed::langlands_dual(c.md, bt);
      for (int k = 0; k < c.md.n(); ++k)
        yrep.add("Y-seed involution in direction " + std::to_string(k + 1),
                 mutate_y_seed(mutate_y_seed(ys, k), k) == ys, bt.str());
      res.absorb(yrep, ctx);
    });
  });
}

// Mutation with eps = -1 agrees with eps = +1 for every object.
inline SuiteResult verify_epsilon(const VerifyConfig& cfg) {
  return run_suite("epsilon", cfg, [](const VerifyCase& c, const Word& w, std::mt19937_64&, SuiteResult& res,
                                      const json& ctx) {
    CheckReport rep;
    const IntMatrix bt = mutate_matrix_along(c.bt, c.md.r(), w);
    const Seed s = Seed::initial(c.md, bt);
    const YSeed ys = YSeed::langlands_dual(c.md, bt);
    std::optional<CompatiblePair> cp;
    if (c.cp) cp = mutate_compatible_pair_along(detail::checked_pair(c), w);
    for (int k = 0; k < c.md.n(); ++k) {
      const std::string at = " in direction " + std::to_string(k + 1);
      rep.add("matrix sign choice" + at, mutate_matrix(bt, k, c.md.r(), -1) == mutate_matrix(bt, k, c.md.r()), bt.str());
      rep.add("seed sign choice" + at, mutate_seed(s, k, -1) == mutate_seed(s, k, 1), bt.str());
      rep.add("Y-seed sign choice" + at, mutate_y_seed(ys, k, -1) == mutate_y_seed(ys, k, 1), bt.str());
      if (cp)
        rep.add("compatible pair sign choice" + at, mutate_compatible_pair(*cp, k, -1) == mutate_compatible_pair(*cp, k, 1),
                cp->Lambda().str());
    }
    PatternState st = PatternState::root(c.md, c.bt);
    for (int k : w) {
      const PatternState plus = step(st, k, 1), minus = step(st, k, -1);
      const bool same = plus.C_plus() == minus.C_plus() && plus.C_minus() == minus.C_minus() &&
                        plus.G() == minus.G() && plus.Gext() == minus.Gext() && plus.Fmat() == minus.Fmat() &&
                        plus.Fpolys() == minus.Fpolys();
      rep.add("pattern sign choice at " + word_str(plus.word()), same, plus.Fmat().str() + " vs " + minus.Fmat().str());
      st = plus;
    }
    res.absorb(rep, ctx);
  });
}

// Every cluster variable along the word comes out of an exact division.
inline SuiteResult verify_laurent(const VerifyConfig& cfg) {
  return run_suite("laurent", cfg, [](const VerifyCase& c, const Word& w, std::mt19937_64&, SuiteResult& res,
                                      const json& ctx) {
    CheckReport rep;
    Seed s = Seed::initial(c.md, c.bt);
    Word here;
    for (int k : w) {
      here.push_back(k);
      s = mutate_seed(s, k);  // NotDivisible propagates as a failure
      rep.add("x" + std::to_string(k + 1) + " at " + word_str(here) + " is a Laurent polynomial", true);
    }
    res.absorb(rep, ctx);
  });
}

// C/G/F dualities and conjugations, plus the F-matrix against the maximal
// degrees of the F-polynomials at every vertex of the word.
inline SuiteResult verify_dualities(const VerifyConfig& cfg) {
  return run_suite("dualities", cfg, [](const VerifyCase& c, const Word& w, std::mt19937_64&, SuiteResult& res,
                                        const json& ctx) {
    res.absorb(check_dualities(run_pattern(c.md, c.bt, w, matrices_only())), ctx);
    PatternOptions opts;
    opts.strict = false;
    CheckReport rep;
    try {
      PatternState st = PatternState::root(c.md, c.bt, opts);
      for (int k : w) {
        st = step(st, k);
        for (int i = 0; i < c.md.n(); ++i) {
          const auto f = max_divisor_monomial(st.Fpolys()[i]);
          rep.add("F-matrix column " + std::to_string(i + 1) + " at " + word_str(st.word()),
                  f && *f == st.Fmat().column(i),
                  vec_str(st.Fmat().column(i)) + " vs " + to_string(st.Fpolys()[i]));
        }
      }
    } catch (const TermLimitExceeded&) {
      ++res.skipped;
    } catch (const OverflowError&) {
      ++res.skipped;
    }
    res.absorb(rep, ctx);
  });
}

// D F_{t'}^t D^-1 = (F_t^{t'})^T from two independent rerooted runs, and the
// same identity recovered from the F-invariant when Btilde has full rank.
inline SuiteResult verify_symmetry(const VerifyConfig& cfg) {
  return run_suite("symmetry", cfg, [&cfg](const VerifyCase& c, const Word&, std::mt19937_64& rng, SuiteResult& res,
                                           const json& ctx) {
    CheckReport rep;
    const IntMatrix dm = IntMatrix::diagonal(validate(c.md, c.bt));
    std::optional<InvariantContext> inv;
    if (rank_of(c.bt) == c.md.n()) inv.emplace(c.md, c.bt);
    for (int p = 0; p < cfg.pairs; ++p) {
      const Word t = random_word(rng, c.md.n(), cfg.depth), tp = random_word(rng, c.md.n(), cfg.depth);
      const std::string at = word_str(t) + " -> " + word_str(tp);
      const IntMatrix f_t_tp = reroot(c.md, c.bt, t, tp, matrices_only()).Fmat();
      const IntMatrix f_tp_t = reroot(c.md, c.bt, tp, t, matrices_only()).Fmat();
      rep.add("D F D^-1 = F^T for " + at, dm * f_t_tp == f_tp_t.transpose() * dm,
              detail::mismatch(dm * f_t_tp, f_tp_t.transpose() * dm));
      if (inv) {
        try {
          const IntMatrix from_inv = f_matrix_from_invariant(*inv, t, tp);
          rep.add("F-invariant recovers D F for " + at, from_inv == dm * f_t_tp,
                  detail::mismatch(from_inv, dm * f_t_tp));
        } catch (const TermLimitExceeded&) {
          ++res.skipped;
        } catch (const OverflowError&) {
          ++res.skipped;
        }
      }
    }
    if (!inv) ++res.not_applicable;
    res.absorb(rep, ctx);
  });
}

// Every c-vector met along the word, for B and for -B, is sign-coherent.
inline SuiteResult verify_sign_coherence(const VerifyConfig& cfg) {
  return run_suite("sign-coherence", cfg, [](const VerifyCase& c, const Word& w, std::mt19937_64&, SuiteResult& res,
                                             const json& ctx) {
    CheckReport rep;
    PatternState st = PatternState::root(c.md, c.bt, matrices_only());
    for (int k : w) {
      st = step(st, k);
      for (const IntMatrix* m : {&st.C_plus(), &st.C_minus()})
        for (int j = 0; j < c.md.n(); ++j) {
          std::string witness;
          bool ok = true;
          try {
            column_sign(*m, j);
          } catch (const SignCoherenceViolated& e) {
            ok = false;
            witness = e.what();
          }
          rep.add("c-vector " + std::to_string(j + 1) + " at " + word_str(st.word()), ok, witness);
        }
    }
    res.absorb(rep, ctx);
  });
}

// F-matrix after mutating the initial seed, against a rerooted run.
inline SuiteResult verify_initial_seed(const VerifyConfig& cfg) {
  return run_suite("initial-seed", cfg, [](const VerifyCase& c, const Word& w, std::mt19937_64& rng,
                                           SuiteResult& res, const json& ctx) {
    CheckReport rep;
    const int k = int(draw(rng, 0, c.md.n() - 1));
    const IntMatrix expect = initial_f_by_rerooting(c.md, c.bt, concat(w, {k}));
    for (int eps : {1, -1}) {
      const IntMatrix got = initial_seed_mutation_f(c.md, c.bt, w, k, eps);
      rep.add("initial-seed F-matrix, direction " + std::to_string(k + 1) + ", eps " + std::to_string(eps),
              got == expect, detail::mismatch(got, expect));
    }
    res.absorb(rep, ctx);
  });
}

// Naturality of Phi and Psi, transport round trips, and the Y-recurrence
// for rerooted extended g-vectors.
inline SuiteResult verify_tropical(const VerifyConfig& cfg) {
  return run_suite("tropical", cfg, [](const VerifyCase& c, const Word& w, std::mt19937_64& rng, SuiteResult& res,
                                       const json& ctx) {
    std::optional<CompatiblePair> cp;
    if (c.cp) cp = detail::checked_pair(c);
    const int m = c.md.m();
    res.absorb(check_tropical_duality(c.md, c.bt, c.sq ? &*c.sq : nullptr, cp ? &*cp : nullptr,
                                      detail::random_point(rng, m, 5), detail::random_point(rng, m, 5), w),
               ctx);
    CheckReport rep;
    const Word t = random_word(rng, c.md.n(), 4);
    const int i = int(draw(rng, 0, c.md.n() - 1));
    Word here;
    Vec g = reroot(c.md, c.bt, here, t, matrices_only()).Gext().column(i);
    for (int k : w) {
      const IntMatrix bt = mutate_matrix_along(c.bt, c.md.r(), here);
      here.push_back(k);
      const Vec next = reroot(c.md, c.bt, here, t, matrices_only()).Gext().column(i);
      const Vec moved = transport_y(g, -bt.transpose(), k, c.md.r());
      rep.add("extended g-vector of x" + std::to_string(i + 1) + ";" + word_str(t) + " at " + word_str(here),
              moved == next, vec_str(moved) + " != " + vec_str(next));
      g = next;
    }
    res.absorb(rep, ctx);
  });
}

// Vertex independence of the pairing, the f-vector identity and linearity
// of the F-invariant.
inline SuiteResult verify_invariant(const VerifyConfig& cfg) {
  return run_suite("invariant", cfg, [](const VerifyCase& c, const Word& w, std::mt19937_64& rng, SuiteResult& res,
                                        const json& ctx) {
    if (rank_of(c.bt) < c.md.n()) {
      ++res.not_applicable;
      return;
    }
    std::optional<CompatiblePair> cp;
    if (c.cp) cp = detail::checked_pair(c);
    const InvariantContext inv(c.md, c.bt, cp);
    const int n = c.md.n(), m = c.md.m();
    auto exps = [&](int hi) {
      Vec h(m);
      for (auto& x : h) x = draw(rng, 0, hi);
      return h;
    };
    CheckReport rep;
    const ClusterMonomial u{random_word(rng, n, 4), exps(2)}, v{random_word(rng, n, 4), exps(2)};
    if (inv.has_lambda()) {
      const Integer ref = pairing_at(inv, u, v, {});
      for (int s = 0; s < 4; ++s) {
        const Word at = random_reduced_word(rng, n, int(draw(rng, 1, 4)));
        const Integer val = pairing_at(inv, u, v, at);
        rep.add("pairing at " + word_str(at) + " equals pairing at t0", val == ref, val.str() + " != " + ref.str());
      }
    }
    const Word t = w;
    const Vec f = fvec_of_pointed(inv.at(u, t));
    const Word elsewhere = random_word(rng, n, 4);
    for (int i = 0; i < m; ++i) {
      const Integer got = f_invariant(inv, cluster_variable(t, i, m), u, elsewhere);
      const Integer want = i < n ? inv.D()[i] * f[i] : Integer(0);
      rep.add("(x" + std::to_string(i + 1) + " || u)_F = d f", got == want, got.str() + " != " + want.str());
    }
    const Vec h = exps(3);
    Integer sum = 0;
    for (int j = 0; j < m; ++j) sum += h[j] * f_invariant(inv, u, cluster_variable(t, j, m));
    const Integer lhs = f_invariant(inv, u, ClusterMonomial{t, h}, elsewhere);
    rep.add("linearity in the exponent " + vec_str(h), lhs == sum, lhs.str() + " != " + sum.str());
    res.absorb(rep, ctx);
  });
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"involution", "epsilon",      "laurent",  "dualities", "symmetry",
                                              "sign-coherence", "initial-seed", "tropical", "invariant"};
  return names;
}

inline SuiteResult run_named_suite(const std::string& name, const VerifyConfig& cfg) {
  if (name == "involution") return verify_involution(cfg);
  if (name == "epsilon") return verify_epsilon(cfg);
  if (name == "laurent") return verify_laurent(cfg);
  if (name == "dualities") return verify_dualities(cfg);
  if (name == "symmetry") return verify_symmetry(cfg);
  if (name == "sign-coherence") return verify_sign_coherence(cfg);
  if (name == "initial-seed") return verify_initial_seed(cfg);
  if (name == "tropical") return verify_tropical(cfg);
  if (name == "invariant") return verify_invariant(cfg);
  throw ParseError("unknown suite '" + name + "'");
}

inline std::vector<SuiteResult> run_suites(const std::string& name, const VerifyConfig& cfg) {
  std::vector<SuiteResult> out;
  if (name == "all") {
    for (const auto& s : suite_names()) out.push_back(run_named_suite(s, cfg));
  } else {
    out.push_back(run_named_suite(name, cfg));
  }
  return out;
}

}  // namespace gca
