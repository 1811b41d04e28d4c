#pragma once

// Tropical points of the X- and Y-patterns, the duality maps between them,
// the dominance order, and pointed elements (cluster monomials or
// user-supplied good elements) read at arbitrary vertices.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gca/errors.hpp"
#include "gca/linalg.hpp"
#include "gca/matrix.hpp"
#include "gca/pattern.hpp"
#include "gca/poly.hpp"
#include "gca/seed.hpp"

namespace gca {

// One edge of the Y-recurrence. bhat is the n x m matrix at the current vertex.
inline Vec transport_y(const Vec& g, const IntMatrix& bhat, int k, const std::vector<int>& r) {
  if (int(g.size()) != bhat.cols()) throw StructuralError("transport_y: point has wrong dimension");
  const Integer rk = r.at(k);
  Vec out = g;
  for (int i = 0; i < int(g.size()); ++i) {
    if (i == k) continue;
    const Integer rb = rk * bhat(k, i);
    out[i] = g[i] + pos(rb) * g[k] - rb * pos(g[k]);
  }
  out[k] = -g[k];
  return out;
}

// One edge of the X-recurrence. bt is the m x n matrix at the current vertex.
inline Vec transport_x(const Vec& a, const IntMatrix& bt, int k, const std::vector<int>& r) {
  if (int(a.size()) != bt.rows()) throw StructuralError("transport_x: point has wrong dimension");
  const Integer rk = r.at(k);
  Integer up = 0, down = 0;
  for (int j = 0; j < bt.rows(); ++j) {
    up += pos(bt(j, k) * rk) * a[j];
    down += pos(-bt(j, k) * rk) * a[j];
  }
  Vec out = a;
  out[k] = -a[k] + std::max(up, down);
  return out;
}

inline Vec transport_y_along(Vec g, IntMatrix bt, const std::vector<int>& r, const Word& path) {
  for (int k : path) {
    g = transport_y(g, -bt.transpose(), k, r);
    bt = mutate_matrix(bt, k, r);
  }
  return g;
}

inline Vec transport_x_along(Vec a, IntMatrix bt, const std::vector<int>& r, const Word& path) {
  for (int k : path) {
    a = transport_x(a, bt, k, r);
    bt = mutate_matrix(bt, k, r);
  }
  return a;
}

// A point of the Y- or X-pattern given by its coordinates at a base vertex.
template <bool IsY>
class TropicalPoint {
 public:
  TropicalPoint(MutationData md, IntMatrix bt0, Word base, Vec coords)
      : md_(std::move(md)), bt0_(std::move(bt0)), base_(reduce_word(base)), v_(std::move(coords)) {
    if (int(v_.size()) != md_.m()) throw StructuralError("tropical point must have m coordinates");
  }

  const MutationData& md() const noexcept { return md_; }
  const IntMatrix& Btilde0() const noexcept { return bt0_; }
  const Word& base() const noexcept { return base_; }
  const Vec& coords() const noexcept { return v_; }

  Vec at(const Word& w) const {
    const IntMatrix bt = mutate_matrix_along(bt0_, md_.r(), base_);
    const Word path = path_between(base_, w);
    return IsY ? transport_y_along(v_, bt, md_.r(), path) : transport_x_along(v_, bt, md_.r(), path);
  }

 private:
  MutationData md_;
  IntMatrix bt0_;
  Word base_;
  Vec v_;
};

using TropicalPointY = TropicalPoint<true>;
using TropicalPointX = TropicalPoint<false>;

// ---------------------------------------------------------------------------

// Bsq = (Btilde | M), m x m, with Dtilde Bsq skew-symmetric.
class SquareCompletion {
 public:
  SquareCompletion(const MutationData& md, const IntMatrix& bt, const IntMatrix& extra, Vec dtilde)
      : md_(md), dtilde_(std::move(dtilde)) {
    const int m = md.m(), n = md.n();
    if (bt.rows() != m || bt.cols() != n) throw StructuralError("square completion: bad Btilde shape");
    if (extra.rows() != m || extra.cols() != m - n)
      throw StructuralError("square completion: M must be " + std::to_string(m) + "x" + std::to_string(m - n));
    if (int(dtilde_.size()) != m) throw StructuralError("square completion: Dtilde must have m entries");
    bsq_ = IntMatrix(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) bsq_(i, j) = j < n ? bt(i, j) : extra(i, j - n);
    for (const auto& d : dtilde_)
      if (d <= 0) throw StructuralError("square completion: Dtilde must be positive");
    const IntMatrix sym = IntMatrix::diagonal(dtilde_) * bsq_;
    if (!sym.is_skew_symmetric()) throw NotSkewSymmetrizable("square completion: Dtilde Bsq is not skew-symmetric", 0, 0);
  }

  // Dtilde = (D, L, ..., L) with L = lcm(D), M_{ji} = -L b_{ij} / d_j on the
  // unfrozen rows and zero on the frozen rows.
  static SquareCompletion standard(const MutationData& md, const IntMatrix& bt) {
    const Vec d = validate(md, bt);
    const int m = md.m(), n = md.n();
    const Integer l = lcm_of(d);
    Vec dt = d;
    dt.resize(m, l);
    IntMatrix extra(m, m - n);
    for (int j = 0; j < n; ++j)
      for (int i = n; i < m; ++i) extra(j, i - n) = -l * bt(i, j) / d[j];
    return SquareCompletion(md, bt, extra, dt);
  }

  const MutationData& md() const noexcept { return md_; }
  const IntMatrix& Bsq() const noexcept { return bsq_; }
  const Vec& Dtilde() const noexcept { return dtilde_; }
  IntMatrix M() const {
    IntMatrix out(md_.m(), md_.m() - md_.n());
    for (int i = 0; i < out.rows(); ++i)
      for (int j = 0; j < out.cols(); ++j) out(i, j) = bsq_(i, md_.n() + j);
    return out;
  }

  // S_i = lcm(Dtilde) / Dtilde_i, so that S Bsq^T is skew-symmetric up to the
  // global factor lcm(Dtilde).
  Vec right_symmetrizer() const {
    const Integer l = lcm_of(dtilde_);
    Vec s;
    for (const auto& d : dtilde_) s.push_back(l / d);
    return s;
  }

  IntMatrix Bsq_at(const Word& w) const { return mutate_matrix_along(bsq_, md_.r(), w); }

 private:
  MutationData md_;
  IntMatrix bsq_;
  Vec dtilde_;
};

// Phi at a single vertex w: S (Bsq_w)^T a_w.
inline Vec phi_at(const SquareCompletion& sq, const Word& w, const Vec& a) {
  const IntMatrix s = IntMatrix::diagonal(sq.right_symmetrizer());
  return (s * sq.Bsq_at(w).transpose()) * a;
}

inline TropicalPointY phi(const TropicalPointX& p, const SquareCompletion& sq) {
  return TropicalPointY(p.md(), p.Btilde0(), p.base(), phi_at(sq, p.base(), p.coords()));
}

// Psi at a single vertex: Lambda_w g_w, with cp already transported to w.
inline Vec psi_at(const CompatiblePair& cp_w, const Vec& g) { return cp_w.Lambda() * g; }

inline TropicalPointX psi(const TropicalPointY& p, const CompatiblePair& cp0) {
  const CompatiblePair at = mutate_compatible_pair_along(cp0, p.base());
  return TropicalPointX(p.md(), p.Btilde0(), p.base(), psi_at(at, p.coords()));
}

// Naturality of Phi and Psi along every edge of a word, together with the
// reverse-word round trips of both transports.
inline CheckReport check_tropical_duality(const MutationData& md, const IntMatrix& bt0, const SquareCompletion* sq,
                                          const CompatiblePair* cp0, const Vec& a0, const Vec& g0, const Word& w) {
  CheckReport rep;
  const auto& r = md.r();
  IntMatrix bt = bt0;
  Vec a = a0, g = g0;
  std::optional<CompatiblePair> cp;
  if (cp0) cp = *cp0;
  Word here;
  for (int k : w) {
    const Vec a_next = transport_x(a, bt, k, r);
    const Vec g_next = transport_y(g, -bt.transpose(), k, r);
    Word there = here;
    there.push_back(k);
    rep.add("x round trip at " + word_str(there), transport_x(a_next, mutate_matrix(bt, k, r), k, r) == a,
            vec_str(a));
    rep.add("y round trip at " + word_str(there), transport_y(g_next, -mutate_matrix(bt, k, r).transpose(), k, r) == g,
            vec_str(g));
    if (sq) {
      const Vec lhs = transport_y(phi_at(*sq, here, a), -bt.transpose(), k, r);
      const Vec rhs = phi_at(*sq, there, a_next);
      rep.add("Phi commutes with edge " + word_str(there), lhs == rhs, vec_str(lhs) + " != " + vec_str(rhs));
    }
    if (cp) {
      const CompatiblePair cp_next = mutate_compatible_pair(*cp, k);
      const Vec lhs = transport_x(psi_at(*cp, g), bt, k, r);
      const Vec rhs = psi_at(cp_next, g_next);
      rep.add("Psi commutes with edge " + word_str(there), lhs == rhs, vec_str(lhs) + " != " + vec_str(rhs));
      cp = cp_next;
    }
    bt = mutate_matrix(bt, k, r);
    a = a_next;
    g = g_next;
    here = there;
  }
  return rep;
}

// ---------------------------------------------------------------------------

// g1 <=_t g2 iff g1 = g2 + Btilde_t nu for some nu in N^n.
inline bool dominance_leq(const Vec& g1, const Vec& g2, const IntMatrix& bt) {
  if (int(g1.size()) != bt.rows() || int(g2.size()) != bt.rows())
    throw StructuralError("dominance_leq: vectors must have m entries");
  Vec diff(g1.size());
  for (std::size_t i = 0; i < g1.size(); ++i) diff[i] = g1[i] - g2[i];
  const auto sol = solve_rational(to_rational(bt), to_rational(diff));
  if (sol.rank < bt.cols()) throw RankDeficient("dominance order needs Btilde of full column rank");
  if (!sol.consistent) return false;
  for (const auto& x : sol.x)
    if (boost::multiprecision::denominator(x) != 1 || x < 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Pointed elements.

// Data of a good element at one vertex: extended degree, and F-polynomial
// in the yh variables together with a subtraction-free representative.
struct PointedAt {
  Vec g;
  std::optional<LaurentPoly> F;
  PositiveFraction Fpos;
};

inline Vec fvec_of_pointed(const PointedAt& u) {
  if (!u.F) throw StructuralError("f-vector needs the F-polynomial at this vertex");
  return max_degrees(*u.F);
}

inline bool is_bipointed(const PointedAt& u) {
  if (!u.F) throw StructuralError("bipointedness needs the F-polynomial at this vertex");
  return max_divisor_monomial(*u.F).has_value();
}

// x_t^h for a vertex t (word from t0) and h in N^m.
struct ClusterMonomial {
  Word t;
  Vec h;
};

// A good element supplied by the user: its degree at a base vertex and
// F-data at whichever vertices it will be read.
struct UserPointed {
  Word base;
  Vec g;
  std::map<Word, PositiveFraction> fpos;
  std::map<Word, LaurentPoly> fpolys;
};

using GoodElement = std::variant<ClusterMonomial, UserPointed>;

inline std::string describe(const GoodElement& u) {
  if (const auto* c = std::get_if<ClusterMonomial>(&u)) return "x_" + word_str(c->t) + "^" + vec_str(c->h);
  const auto& p = std::get<UserPointed>(u);
  return "pointed(" + word_str(p.base) + ", " + vec_str(p.g) + ")";
}

inline ClusterMonomial cluster_variable(const Word& t, int i, int m) {
  Vec h(m, Integer(0));
  h.at(i) = 1;
  return {t, h};
}

// Reads u at the vertex w, the F-data taken with respect to w as root.
inline PointedAt materialize(const MutationData& md, const IntMatrix& bt0, const GoodElement& u, const Word& w) {
  const Word wr = reduce_word(w);
  if (const auto* c = std::get_if<ClusterMonomial>(&u)) {
    if (int(c->h.size()) != md.m()) throw StructuralError("cluster monomial exponent must have m entries");
    for (const auto& x : c->h)
      if (x < 0) throw StructuralError("cluster monomial exponent must be non-negative");
    const PatternState st = reroot(md, bt0, wr, c->t);
    const auto& yh = st.yh_ambient();
    LaurentPoly f = LaurentPoly::one(yh);
    PositiveFraction fp = PositiveFraction::one(yh);
    for (int j = 0; j < md.n(); ++j) {
      if (c->h[j] == 0) continue;
      f = f * pow(st.Fpolys()[j], c->h[j]);
      fp = fp * pow(st.FposReps()[j], c->h[j]);
    }
    return {st.Gext() * c->h, f, fp};
  }
  const auto& p = std::get<UserPointed>(u);
  const Vec g = TropicalPointY(md, bt0, p.base, p.g).at(wr);
  const auto it = p.fpos.find(wr);
  const auto jt = p.fpolys.find(wr);
  if (it == p.fpos.end() && jt == p.fpolys.end())
    throw StructuralError("no F-data supplied for " + describe(u) + " at vertex " + word_str(wr));
  std::optional<LaurentPoly> f;
  if (jt != p.fpolys.end()) f = jt->second;
  PositiveFraction fp = it != p.fpos.end() ? it->second : PositiveFraction::of_polynomial(*f);
  return {g, f, fp};
}

}  // namespace gca
