#pragma once

// C-, G-, extended G- and F-matrices plus F-polynomials, transported along
// mutation words from a root vertex t0.

#include <optional>
#include <string>
#include <vector>

#include "gca/errors.hpp"
#include "gca/matrix.hpp"
#include "gca/poly.hpp"
#include "gca/seed.hpp"

namespace gca {

struct PatternOptions {
  bool track_polys = true;
  // Run the internal cross-checks on every step and throw on disagreement.
  bool strict = true;
  // A subtraction-free representative is replaced by (F, 1) once it has
  // more than this many times the terms of F itself.
  std::size_t fpos_collapse_factor = 8;
};

class PatternState {
 public:
  static PatternState root(const MutationData& md, const IntMatrix& bt0, PatternOptions opts = {}) {
    PatternState p;
    p.md_ = md;
    p.D_ = validate(md, bt0);
    p.opts_ = opts;
    p.bt0_ = bt0;
    p.bt_ = bt0;
    const int n = md.n();
    p.cplus_ = p.cminus_ = p.g_ = IntMatrix::identity(n);
    p.gext_ = IntMatrix::identity(md.m());
    p.fmat_ = IntMatrix(n, n);
    if (opts.track_polys) {
      p.yh_ = make_ambient("yh", n, md.r());
      p.fpolys_.assign(n, LaurentPoly::one(p.yh_));
      p.fpos_.assign(n, PositiveFraction::one(p.yh_));
    }
    return p;
  }

  const MutationData& md() const noexcept { return md_; }
  const PatternOptions& options() const noexcept { return opts_; }
  const Word& word() const noexcept { return word_; }
  const Vec& D() const noexcept { return D_; }
  const IntMatrix& Btilde0() const noexcept { return bt0_; }
  IntMatrix B0() const { return bt0_.top_left(md_.n(), md_.n()); }
  const IntMatrix& Btilde() const noexcept { return bt_; }
  IntMatrix B() const { return bt_.top_left(md_.n(), md_.n()); }
  const IntMatrix& C_plus() const noexcept { return cplus_; }
  const IntMatrix& C_minus() const noexcept { return cminus_; }
  const IntMatrix& G() const noexcept { return g_; }
  const IntMatrix& Gext() const noexcept { return gext_; }
  const IntMatrix& Fmat() const noexcept { return fmat_; }
  bool tracks_polys() const noexcept { return opts_.track_polys; }
  const AmbientPtr& yh_ambient() const noexcept { return yh_; }
  const std::vector<LaurentPoly>& Fpolys() const { return fpolys_; }
  const std::vector<PositiveFraction>& FposReps() const { return fpos_; }

 private:
  friend PatternState step(const PatternState&, int, int);

  MutationData md_;
  Vec D_;
  PatternOptions opts_;
  Word word_;
  IntMatrix bt0_, bt_;
  IntMatrix cplus_, cminus_, g_, gext_, fmat_;
  AmbientPtr yh_;
  std::vector<LaurentPoly> fpolys_;
  std::vector<PositiveFraction> fpos_;
};

// One C-matrix step against the B-matrix b of the current vertex.
inline IntMatrix step_c(const IntMatrix& c, const IntMatrix& b, int k, const Integer& rk, int eps = 1) {
  const int n = c.rows();
  IntMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == k) {
        out(i, j) = -c(i, j);
        continue;
      }
      out(i, j) = c(i, j) + rk * (c(i, k) * pos(eps * b(k, j)) + pos(-eps * c(i, k)) * b(k, j));
    }
  return out;
}

// Common sign of column k, or SignCoherenceViolated.
inline int column_sign(const IntMatrix& c, int k) {
  bool has_pos = false, has_neg = false;
  for (int i = 0; i < c.rows(); ++i) {
    has_pos = has_pos || c(i, k) > 0;
    has_neg = has_neg || c(i, k) < 0;
  }
  if (has_pos == has_neg)
    throw SignCoherenceViolated("c-vector " + std::to_string(k + 1) + " is not sign-coherent: " + vec_str(c.column(k)),
                                k);
  return has_pos ? 1 : -1;
}

// New column k of G from the sign-free recursion with an explicit eps.
inline Vec g_column_with_eps(const IntMatrix& g, const IntMatrix& b, const IntMatrix& c, const IntMatrix& b0, int k,
                             const Integer& rk, int eps) {
  const int n = g.rows();
  Vec col(n, Integer(0));
  for (int j = 0; j < n; ++j) {
    const Integer wb = pos(-eps * b(j, k)), wc = pos(-eps * c(j, k));
    for (int i = 0; i < n; ++i) col[i] += wb * g(i, j) - wc * b0(i, j);
  }
  for (int i = 0; i < n; ++i) col[i] = rk * col[i] - g(i, k);
  return col;
}

// New column k of G using the sign of the c-vector; the c-term drops out.
inline Vec g_column_signed(const IntMatrix& g, const IntMatrix& b, int k, const Integer& rk, int sign) {
  const int n = g.rows();
  Vec col(n, Integer(0));
  for (int j = 0; j < n; ++j) {
    const Integer w = pos(-sign * b(j, k));
    if (w == 0) continue;
    for (int i = 0; i < n; ++i) col[i] += w * g(i, j);
  }
  for (int i = 0; i < n; ++i) col[i] = rk * col[i] - g(i, k);
  return col;
}

namespace detail {

inline IntMatrix keep_column(const IntMatrix& m, int k) { return m.only_column(k); }

inline bool is_nonnegative(const LaurentPoly& p) { return has_nonnegative_coefficients(p); }

inline PositiveFraction next_fpos(const std::vector<PositiveFraction>& fpos, const AmbientPtr& yh, const Vec& ck,
                                  const Vec& bk, int k, int rk, int eps) {
  const int n = int(ck.size());
  LaurentPoly unum = LaurentPoly::one(yh), uden = LaurentPoly::one(yh);
  LaurentPoly vnum = LaurentPoly::one(yh), vden = LaurentPoly::one(yh);
  Exponents up(yh->width()), vp(yh->width());
  for (int i = 0; i < n; ++i) {
    const Integer e = eps * ck[i];
    if (e > 0) up[i] = to_i32(e);
    if (e < 0) vp[i] = to_i32(-e);
  }
  unum = LaurentPoly::monomial(yh, up);
  vnum = LaurentPoly::monomial(yh, vp);
  for (int j = 0; j < n; ++j) {
    const Integer e = eps * bk[j];
    if (e > 0) {
      unum = unum * pow(fpos[j].num(), e);
      uden = uden * pow(fpos[j].den(), e);
    }
    if (e < 0) {
      vnum = vnum * pow(fpos[j].num(), -e);
      vden = vden * pow(fpos[j].den(), -e);
    }
  }
  auto powers = [&](const LaurentPoly& p) {
    std::vector<LaurentPoly> out{LaurentPoly::one(yh)};
    for (int s = 1; s <= rk; ++s) out.push_back(out.back() * p);
    return out;
  };
  const auto un = powers(unum), ud = powers(uden), vn = powers(vnum), vd = powers(vden);
  LaurentPoly mnum = LaurentPoly::zero(yh);
  for (int s = 0; s <= rk; ++s) mnum = mnum + LaurentPoly::zsym(yh, k, s) * un[s] * ud[rk - s] * vn[rk - s] * vd[s];
  const LaurentPoly mden = ud[rk] * vd[rk];
  return PositiveFraction(mnum * fpos[k].den(), mden * fpos[k].num());
}

}  // namespace detail

inline PatternState step(const PatternState& st, int k, int eps = 1) {
  const auto& md = st.md_;
  md.check_direction(k);
  const int n = md.n(), m = md.m();
  const Integer rk = md.r(k);
  const IntMatrix b = st.B();
  const IntMatrix b0 = st.B0();
  const IntMatrix& c = st.cplus_;
  const IntMatrix& cm = st.cminus_;
  const IntMatrix rr = md.R();

  PatternState out = st;
  out.word_.push_back(k);
  out.cplus_ = step_c(c, b, k, rk, eps);
  out.cminus_ = step_c(cm, -b, k, rk, eps);

  const int sign = column_sign(c, k);
  if (st.opts_.strict) column_sign(cm, k);
  const Vec gk = g_column_signed(st.g_, b, k, rk, sign);
  if (st.opts_.strict) {
    for (int e : {1, -1})
      if (g_column_with_eps(st.g_, b, c, b0, k, rk, e) != gk)
        throw InvariantViolation("g-vector recursions disagree at direction " + std::to_string(k + 1));
  }
  out.g_.set_column(k, gk);

  {
    Vec col(m, Integer(0));
    for (int j = 0; j < m; ++j) {
      const Integer w = pos(-st.bt_(j, k));
      if (w == 0) continue;
      for (int i = 0; i < m; ++i) col[i] += w * st.gext_(i, j);
    }
    for (int j = 0; j < n; ++j) {
      const Integer w = pos(-c(j, k));
      if (w == 0) continue;
      for (int i = 0; i < m; ++i) col[i] -= w * st.bt0_(i, j);
    }
    for (int i = 0; i < m; ++i) col[i] = rk * col[i] - st.gext_(i, k);
    out.gext_.set_column(k, col);
  }

  out.fmat_ = st.fmat_ * (flip_matrix(n, k) + detail::keep_column((-eps * (b * rr)).positive_part(), k)) +
              detail::keep_column((-eps * (c * rr)).positive_part(), k) +
              detail::keep_column((eps * (cm * rr)).positive_part(), k);

  if (st.opts_.track_polys) {
    const auto& yh = st.yh_;
    // F-polynomials: M = sum_s z_{k,s} U^s V^{r_k-s} over the values
    // (yh_1..yh_n, F_1..F_n) with exponent column (c_k; b_k).
    std::vector<LaurentPoly> vals;
    for (int i = 0; i < n; ++i) vals.push_back(LaurentPoly::variable(yh, i));
    vals.insert(vals.end(), st.fpolys_.begin(), st.fpolys_.end());
    Vec col = c.column(k);
    const Vec bk = b.column(k);
    col.insert(col.end(), bk.begin(), bk.end());
    const LaurentPoly mk = exchange_sum(vals, col, k, md.r(k), eps, yh);
    out.fpolys_[k] = div_exact(mk, st.fpolys_[k]);

    PositiveFraction rep = detail::next_fpos(st.fpos_, yh, c.column(k), bk, k, md.r(k), eps);
    const auto& fk = out.fpolys_[k];
    const std::size_t limit = st.opts_.fpos_collapse_factor * (fk.size() + 4);
    if (rep.num().size() + rep.den().size() > limit && detail::is_nonnegative(fk)) {
      if (st.opts_.strict && !rep.reduces_to(fk))
        throw InvariantViolation("subtraction-free representative does not reduce to F" + std::to_string(k + 1));
      rep = PositiveFraction::of_polynomial(fk);
    }
    out.fpos_[k] = std::move(rep);

    if (st.opts_.strict) {
      const auto f = max_divisor_monomial(fk);
      if (!f) throw InvariantViolation("F" + std::to_string(k + 1) + " has no maximal monomial: " + to_string(fk));
      if (*f != out.fmat_.column(k))
        throw InvariantViolation("F-matrix column " + std::to_string(k + 1) + " " + vec_str(out.fmat_.column(k)) +
                                 " differs from maximal degree " + vec_str(*f));
      if (!out.fpos_[k].reduces_to(fk))
        throw InvariantViolation("subtraction-free representative does not reduce to F" + std::to_string(k + 1));
    }
  }

  out.bt_ = mutate_matrix(st.bt_, k, md.r(), eps);
  return out;
}

inline PatternState run_pattern(const MutationData& md, const IntMatrix& bt0, const Word& w, PatternOptions opts = {}) {
  PatternState p = PatternState::root(md, bt0, opts);
  for (int k : w) p = step(p, k);
  return p;
}

inline PatternOptions matrices_only() {
  PatternOptions o;
  o.track_polys = false;
  return o;
}

// Matrices of the ordinary (all r_i = 1) pattern with principal part b.
inline PatternState run_ordinary(const IntMatrix& b, const Word& w) {
  const int n = b.rows();
  return run_pattern(MutationData(n, n, std::vector<int>(n, 1)), b, w, matrices_only());
}

// The pattern rooted at the vertex `from`, read at the vertex `to`.
inline PatternState reroot(const MutationData& md, const IntMatrix& bt0, const Word& from, const Word& to,
                           PatternOptions opts = {}) {
  return run_pattern(md, mutate_matrix_along(bt0, md.r(), from), path_between(from, to), opts);
}

// ---------------------------------------------------------------------------

struct Check {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct CheckReport {
  std::vector<Check> checks;

  void add(std::string name, bool pass, std::string witness = {}) {
    checks.push_back({std::move(name), pass, pass ? std::string{} : std::move(witness)});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
};

namespace detail {
inline std::string mismatch(const IntMatrix& lhs, const IntMatrix& rhs) { return lhs.str() + " != " + rhs.str(); }

inline bool columns_sign_coherent(const IntMatrix& c, std::string& witness) {
  for (int k = 0; k < c.cols(); ++k) {
    try {
      column_sign(c, k);
    } catch (const SignCoherenceViolated& e) {
      witness = e.what();
      return false;
    }
  }
  return true;
}
}  // namespace detail

// Every duality, conjugation and symmetry identity that relates the state
// at `st.word()` to independently computed patterns.
inline CheckReport check_dualities(const PatternState& st) {
  CheckReport rep;
  const auto& md = st.md();
  const int n = md.n();
  const IntMatrix b0 = st.B0(), bt = st.B(), rr = md.R();
  const IntMatrix dm = IntMatrix::diagonal(st.D());
  const Word& w = st.word();

  const PatternState minus = run_pattern(md, -st.Btilde0(), w, matrices_only());
  rep.add("C_minus is the C-pattern of -B", minus.C_plus() == st.C_minus(), detail::mismatch(st.C_minus(), minus.C_plus()));
  const IntMatrix c_rhs = st.C_plus() + st.Fmat() * bt;
  rep.add("C^{-B} = C^B + F B_t", minus.C_plus() == c_rhs, detail::mismatch(minus.C_plus(), c_rhs));
  const IntMatrix g_rhs = st.G() + b0 * st.Fmat();
  rep.add("G^{-B} = G^B + B_t0 F", minus.G() == g_rhs, detail::mismatch(minus.G(), g_rhs));
  rep.add("F^{-B} = F^B", minus.Fmat() == st.Fmat(), detail::mismatch(minus.Fmat(), st.Fmat()));

  const PatternState left = run_ordinary(rr * b0, w);
  const PatternState right = run_ordinary(b0 * rr, w);
  rep.add("C = left ordinary C", left.C_plus() == st.C_plus(), detail::mismatch(st.C_plus(), left.C_plus()));
  rep.add("C R = R (right ordinary C)", st.C_plus() * rr == rr * right.C_plus(),
          detail::mismatch(st.C_plus() * rr, rr * right.C_plus()));
  rep.add("G = right ordinary G", right.G() == st.G(), detail::mismatch(st.G(), right.G()));
  rep.add("R G = (left ordinary G) R", rr * st.G() == left.G() * rr, detail::mismatch(rr * st.G(), left.G() * rr));

  const PatternState dual = run_ordinary(-(rr * b0.transpose()), w);
  rep.add("D C D^-1 = ordinary C of -R B^T", dm * st.C_plus() == dual.C_plus() * dm,
          detail::mismatch(dm * st.C_plus(), dual.C_plus() * dm));

  const PatternState back = run_pattern(md, st.Btilde(), reversed(w), matrices_only());
  rep.add("D F_t^t0 D^-1 = (F_t0^t)^T", dm * st.Fmat() == back.Fmat().transpose() * dm,
          detail::mismatch(dm * st.Fmat(), back.Fmat().transpose() * dm));

  {
    std::string witness;
    const bool ok = detail::columns_sign_coherent(st.C_plus(), witness) &&
                    detail::columns_sign_coherent(st.C_minus(), witness);
    rep.add("sign-coherence of c-vectors", ok, witness);
  }
  {
    bool ok = st.Gext().top_left(n, n) == st.G();
    for (int i = 0; i < md.m(); ++i)
      for (int j = n; j < md.m(); ++j) ok = ok && st.Gext()(i, j) == (i == j ? 1 : 0);
    rep.add("extended G block shape", ok, st.Gext().str());
  }
  if (st.tracks_polys()) {
    bool ok = true;
    std::string witness;
    for (int i = 0; i < n && ok; ++i) {
      const auto f = max_divisor_monomial(st.Fpolys()[i]);
      if (!f || *f != st.Fmat().column(i)) {
        ok = false;
        witness = "column " + std::to_string(i + 1) + ": F-polynomial " + to_string(st.Fpolys()[i]);
      } else if (!coefficient(st.Fpolys()[i], Exponents(n)).is_one()) {
        ok = false;
        witness = "constant term of F" + std::to_string(i + 1) + " is not 1";
      }
    }
    rep.add("F-matrix = maximal degrees of F-polynomials", ok, witness);
  }
  return rep;
}

// Scale invariance of f-vectors: when B_A R_A = B_B R_B, the matrices
// R_A^-1 F_A and R_B^-1 F_B agree along every word.
inline CheckReport f_pattern_scale_invariance(const MutationData& mda, const IntMatrix& ba, const MutationData& mdb,
                                              const IntMatrix& bb, const std::vector<Word>& words) {
  if (mda.n() != mdb.n() || ba.rows() != mda.n() || bb.rows() != mdb.n())
    throw HypothesisUnmet("scale invariance needs two square B-matrices of the same rank");
  if (ba * mda.R() != bb * mdb.R()) throw HypothesisUnmet("B_A R_A != B_B R_B");
  const MutationData sa(mda.n(), mda.n(), mda.r()), sb(mdb.n(), mdb.n(), mdb.r());
  CheckReport rep;
  for (const auto& w : words) {
    const IntMatrix fa = run_pattern(sa, ba, w, matrices_only()).Fmat();
    const IntMatrix fb = run_pattern(sb, bb, w, matrices_only()).Fmat();
    // R_A^-1 F_A = R_B^-1 F_B  <=>  R_B F_A = R_A F_B for diagonal R.
    rep.add("R^-1 F agrees along " + word_str(w), mdb.R() * fa == mda.R() * fb,
            detail::mismatch(mdb.R() * fa, mda.R() * fb));
  }
  return rep;
}

// F-matrix of the pattern rooted at t' = t k, read at t0, from data at t.
inline IntMatrix initial_seed_mutation_f(const MutationData& md, const IntMatrix& bt0, const Word& t, int k,
                                         int eps = 1) {
  md.check_direction(k);
  const int n = md.n();
  const IntMatrix btt = mutate_matrix_along(bt0, md.r(), t);
  const IntMatrix b = btt.top_left(n, n);
  const IntMatrix rr = md.R();
  const Integer rk = md.r(k);
  const Word back = reversed(t);
  const IntMatrix f = run_pattern(md, btt, back, matrices_only()).Fmat();
  const IntMatrix gp = run_ordinary(b * rr, back).G();
  const IntMatrix gm = run_ordinary(-(b * rr), back).G();
  return (flip_matrix(n, k) + (-eps * (rr * b)).positive_part().only_row(k)) * f +
         rk * (eps * gm).positive_part().only_row(k) + rk * (-eps * gp).positive_part().only_row(k);
}

// Direct recomputation of F_{t0}^{t'} by rooting at t'.
inline IntMatrix initial_f_by_rerooting(const MutationData& md, const IntMatrix& bt0, const Word& tp) {
  return run_pattern(md, mutate_matrix_along(bt0, md.r(), tp), reversed(tp), matrices_only()).Fmat();
}

}  // namespace gca
