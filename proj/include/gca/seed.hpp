#pragma once

// Mutation data, (r,z)-seeds, Y-seeds and compatible pairs.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gca/errors.hpp"
#include "gca/linalg.hpp"
#include "gca/matrix.hpp"
#include "gca/poly.hpp"

namespace gca {

using Word = std::vector<int>;

// Cancels adjacent repeated directions; the result names the same vertex of
// the n-regular tree.
inline Word reduce_word(const Word& w) {
  Word out;
  for (int k : w) {
    if (!out.empty() && out.back() == k)
      out.pop_back();
    else
      out.push_back(k);
  }
  return out;
}

inline Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Path from the vertex reached by `from` to the vertex reached by `to`.
inline Word path_between(const Word& from, const Word& to) { return reduce_word(concat(reversed(from), to)); }

inline std::string word_str(const Word& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i] + 1);
  return s + "]";
}

class MutationData {
 public:
  MutationData() = default;
  MutationData(int n, int m, std::vector<int> r) : n_(n), m_(m), r_(std::move(r)) {
    if (n_ < 1) throw StructuralError("mutation data: rank must be at least 1");
    if (m_ < n_) throw StructuralError("mutation data: m must be at least n");
    if (int(r_.size()) != n_) throw StructuralError("mutation data: r must have n entries");
    for (int x : r_)
      if (x < 1) throw StructuralError("mutation data: exchange degrees must be positive");
  }

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  const std::vector<int>& r() const noexcept { return r_; }
  int r(int k) const { return r_.at(k); }
  Vec rvec() const { return {r_.begin(), r_.end()}; }
  IntMatrix R() const { return IntMatrix::diagonal(rvec()); }
  bool is_ordinary() const {
    return std::all_of(r_.begin(), r_.end(), [](int x) { return x == 1; });
  }

  void check_direction(int k) const {
    if (k < 0 || k >= n_) throw StructuralError("mutation direction " + std::to_string(k + 1) + " out of range");
  }

  bool operator==(const MutationData&) const = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<int> r_;
};

// Matrix mutation in direction k for any matrix with at least k+1 rows and
// columns (m x n exchange matrices, m x m completions, n x m Y-matrices).
inline IntMatrix mutate_matrix(const IntMatrix& b, int k, const std::vector<int>& r, int eps = 1) {
  if (k < 0 || k >= b.rows() || k >= b.cols() || k >= int(r.size()))
    throw StructuralError("mutate_matrix: direction out of range");
  const Integer rk = r[k];
  IntMatrix out(b.rows(), b.cols());
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      if (i == k || j == k) {
        out(i, j) = -b(i, j);
        continue;
      }
      out(i, j) = b(i, j) + rk * (pos(-eps * b(i, k)) * b(k, j) + b(i, k) * pos(eps * b(k, j)));
    }
  return out;
}

inline IntMatrix mutate_matrix_along(IntMatrix b, const std::vector<int>& r, const Word& w) {
  for (int k : w) b = mutate_matrix(b, k, r);
  return b;
}

// Minimal positive diagonal d with diag(d)*B skew-symmetric, for the square
// top block of B. Each connected component is normalized to gcd 1.
inline Vec skew_symmetrizer(const IntMatrix& b) {
  const int n = std::min(b.rows(), b.cols());
  std::vector<std::optional<Rational>> d(n);
  std::vector<int> component(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (d[s]) continue;
    d[s] = Rational(1);
    component[s] = ncomp;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        const Integer& bij = b(i, j);
        const Integer& bji = b(j, i);
        if (i == j) {
          if (bij != 0) throw NotSkewSymmetrizable("nonzero diagonal entry", i, i);
          continue;
        }
        if (bij == 0 && bji == 0) continue;
        if (bij == 0 || bji == 0 || (bij > 0) == (bji > 0))
          throw NotSkewSymmetrizable("sign pattern of b_ij and b_ji is not skew", i, j);
        const Rational v = -*d[i] * Rational(bij) / Rational(bji);
        if (!d[j]) {
          d[j] = v;
          component[j] = ncomp;
          stack.push_back(j);
        } else if (*d[j] != v) {
          throw NotSkewSymmetrizable("inconsistent cycle through entry", i, j);
        }
      }
    }
    ++ncomp;
  }
  Vec out(n, Integer(0));
  for (int c = 0; c < ncomp; ++c) {
    Integer l = 1;
    for (int i = 0; i < n; ++i)
      if (component[i] == c) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(*d[i]));
    Integer g = 0;
    for (int i = 0; i < n; ++i)
      if (component[i] == c) g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(*d[i] * l));
    for (int i = 0; i < n; ++i)
      if (component[i] == c) {
        out[i] = boost::multiprecision::numerator(*d[i] * l) / g;
      }
  }
  return out;
}

// Checks the shape of an extended exchange matrix and returns the
// skew-symmetrizer of its principal part.
inline Vec validate(const MutationData& md, const IntMatrix& bt) {
  if (bt.rows() != md.m() || bt.cols() != md.n())
    throw StructuralError("exchange matrix must be " + std::to_string(md.m()) + "x" + std::to_string(md.n()));
  return skew_symmetrizer(bt.top_left(md.n(), md.n()));
}

// ---------------------------------------------------------------------------

class Seed {
 public:
  static Seed initial(const MutationData& md, const IntMatrix& bt) {
    Seed s;
    s.md_ = md;
    s.D_ = validate(md, bt);
    s.bt_ = bt;
    s.amb_ = make_ambient("x", md.m(), md.r());
    for (int i = 0; i < md.m(); ++i) s.x_.push_back(LaurentPoly::variable(s.amb_, i));
    return s;
  }

  const MutationData& md() const noexcept { return md_; }
  const IntMatrix& Btilde() const noexcept { return bt_; }
  IntMatrix B() const { return bt_.top_left(md_.n(), md_.n()); }
  const std::vector<LaurentPoly>& x() const noexcept { return x_; }
  const LaurentPoly& x(int i) const { return x_.at(i); }
  const Vec& D() const noexcept { return D_; }
  const AmbientPtr& ambient() const noexcept { return amb_; }

  friend bool operator==(const Seed& a, const Seed& b) {
    return a.md_ == b.md_ && a.bt_ == b.bt_ && a.x_ == b.x_;
  }

 private:
  friend Seed mutate_seed(const Seed&, int, int);

  MutationData md_;
  IntMatrix bt_;
  Vec D_;
  AmbientPtr amb_;
  std::vector<LaurentPoly> x_;
};

// The exchange polynomial sum_s z_{k,s} U^s V^{r_k-s}, with
// U = prod_{eps b_jk > 0} v_j^{|b_jk|} and V = prod_{eps b_jk < 0} v_j^{|b_jk|}.
inline LaurentPoly exchange_sum(const std::vector<LaurentPoly>& v, const Vec& bcol, int k, int rk, int eps,
                                const AmbientPtr& amb) {
  LaurentPoly u = LaurentPoly::one(amb), w = LaurentPoly::one(amb);
  for (std::size_t j = 0; j < bcol.size(); ++j) {
    const Integer e = eps * bcol[j];
    if (e > 0) u = u * pow(v[j], e);
    if (e < 0) w = w * pow(v[j], -e);
  }
  std::vector<LaurentPoly> up{LaurentPoly::one(amb)}, wp{LaurentPoly::one(amb)};
  for (int s = 1; s <= rk; ++s) {
    up.push_back(up.back() * u);
    wp.push_back(wp.back() * w);
  }
  LaurentPoly sum = LaurentPoly::zero(amb);
  for (int s = 0; s <= rk; ++s) sum = sum + LaurentPoly::zsym(amb, k, s) * up[s] * wp[rk - s];
  return sum;
}

inline Seed mutate_seed(const Seed& s, int k, int eps = 1) {
  s.md_.check_direction(k);
  Seed out = s;
  const LaurentPoly sum = exchange_sum(s.x_, s.bt_.column(k), k, s.md_.r(k), eps, s.amb_);
  out.x_[k] = div_exact(sum, s.x_[k]);
  out.bt_ = mutate_matrix(s.bt_, k, s.md_.r(), eps);
  return out;
}

inline Seed mutate_seed_along(Seed s, const Word& w) {
  for (int k : w) s = mutate_seed(s, k);
  return s;
}

// yhat_k = prod_j x_j^{b_jk} in the current cluster, expanded in the initial
// variables. Away from the initial seed this is a rational function.
inline RationalFunction yhat(const Seed& s, int k) {
  s.md().check_direction(k);
  LaurentPoly num = LaurentPoly::one(s.ambient()), den = LaurentPoly::one(s.ambient());
  for (int j = 0; j < s.md().m(); ++j) {
    const Integer& b = s.Btilde()(j, k);
    if (b > 0) num = num * pow(s.x(j), b);
    if (b < 0) den = den * pow(s.x(j), -b);
  }
  return RationalFunction(num, den);
}

// ---------------------------------------------------------------------------

class YSeed {
 public:
  static YSeed initial(const MutationData& md, const IntMatrix& bhat) {
    if (bhat.rows() != md.n() || bhat.cols() != md.m())
      throw StructuralError("Y-seed matrix must be " + std::to_string(md.n()) + "x" + std::to_string(md.m()));
    skew_symmetrizer(bhat.top_left(md.n(), md.n()));
    YSeed ys;
    ys.md_ = md;
    ys.bhat_ = bhat;
    ys.amb_ = make_ambient("y", md.m(), md.r());
    for (int i = 0; i < md.m(); ++i) ys.y_.emplace_back(LaurentPoly::variable(ys.amb_, i));
    return ys;
  }
  // The Y-seed paired with a cluster seed: Bhat = -Btilde^T.
  static YSeed langlands_dual(const MutationData& md, const IntMatrix& bt) { return initial(md, -bt.transpose()); }

  const MutationData& md() const noexcept { return md_; }
  const IntMatrix& Bhat() const noexcept { return bhat_; }
  const std::vector<RationalFunction>& y() const noexcept { return y_; }
  const AmbientPtr& ambient() const noexcept { return amb_; }

  friend bool operator==(const YSeed& a, const YSeed& b) {
    return a.md_ == b.md_ && a.bhat_ == b.bhat_ && a.y_ == b.y_;
  }

 private:
  friend YSeed mutate_y_seed(const YSeed&, int, int);

  MutationData md_;
  IntMatrix bhat_;
  AmbientPtr amb_;
  std::vector<RationalFunction> y_;
};

inline YSeed mutate_y_seed(const YSeed& ys, int k, int eps = 1) {
  ys.md_.check_direction(k);
  const int rk = ys.md_.r(k);
  const auto& amb = ys.amb_;
  const RationalFunction& yk = ys.y_[k];
  // sum_s z_{k,s} yk^{eps s} over a common denominator.
  const LaurentPoly& top = eps > 0 ? yk.num() : yk.den();
  const LaurentPoly& bot = eps > 0 ? yk.den() : yk.num();
  LaurentPoly sum = LaurentPoly::zero(amb);
  std::vector<LaurentPoly> tp{LaurentPoly::one(amb)}, bp{LaurentPoly::one(amb)};
  for (int s = 1; s <= rk; ++s) {
    tp.push_back(tp.back() * top);
    bp.push_back(bp.back() * bot);
  }
  for (int s = 0; s <= rk; ++s) sum = sum + LaurentPoly::zsym(amb, k, s) * tp[s] * bp[rk - s];
  const RationalFunction p(sum, bp[rk]);

  YSeed out = ys;
  for (int i = 0; i < ys.md_.m(); ++i) {
    if (i == k) {
      out.y_[i] = yk.inverse();
      continue;
    }
    const Integer& b = ys.bhat_(k, i);
    if (b == 0) continue;
    out.y_[i] = ys.y_[i] * pow(yk, rk * pos(eps * b)) * pow(p, -b);
  }
  out.bhat_ = mutate_matrix(ys.bhat_, k, ys.md_.r(), eps);
  return out;
}

// ---------------------------------------------------------------------------

// (Btilde, Lambda) with Lambda skew-symmetric and Btilde^T Lambda = [D 0].
class CompatiblePair {
 public:
  CompatiblePair(MutationData md, IntMatrix bt, IntMatrix lambda, Vec d)
      : md_(std::move(md)), bt_(std::move(bt)), lambda_(std::move(lambda)), d_(std::move(d)) {
    if (bt_.rows() != md_.m() || bt_.cols() != md_.n()) throw StructuralError("compatible pair: bad Btilde shape");
    if (lambda_.rows() != md_.m() || lambda_.cols() != md_.m()) throw StructuralError("compatible pair: bad Lambda shape");
    if (int(d_.size()) != md_.n()) throw StructuralError("compatible pair: bad D length");
  }

  // Btilde = [B; I_n], Lambda = [[0, -D], [D, B^T D]] with D the minimal
  // skew-symmetrizer of B.
  static CompatiblePair principal(const IntMatrix& b, const std::vector<int>& r) {
    const int n = b.rows();
    if (b.cols() != n) throw StructuralError("principal pair: B must be square");
    const Vec d = skew_symmetrizer(b);
    const IntMatrix dm = IntMatrix::diagonal(d);
    IntMatrix bt(2 * n, n), lambda(2 * n, 2 * n);
    const IntMatrix btd = b.transpose() * dm;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        bt(i, j) = b(i, j);
        bt(n + i, j) = i == j;
        lambda(i, n + j) = -dm(i, j);
        lambda(n + i, j) = dm(i, j);
        lambda(n + i, n + j) = btd(i, j);
      }
    CompatiblePair cp(MutationData(n, 2 * n, r), bt, lambda, d);
    cp.validate();
    return cp;
  }

  // Finds Lambda with Btilde^T Lambda = [c D 0] for the minimal
  // skew-symmetrizer D and the least positive integer c that makes Lambda
  // integral. nullopt when no such Lambda exists.
  static std::optional<CompatiblePair> solve(const MutationData& md, const IntMatrix& bt) {
    const Vec d = validate_shape_and_symmetrizer(md, bt);
    const int m = md.m(), n = md.n();
    std::vector<std::pair<int, int>> unknowns;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) unknowns.push_back({i, j});
    if (unknowns.empty()) return std::nullopt;
    RatMatrix a;
    std::vector<Rational> rhs;
    for (int row = 0; row < n; ++row)
      for (int col = 0; col < m; ++col) {
        std::vector<Rational> eq(unknowns.size(), Rational(0));
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
          const auto [i, j] = unknowns[u];
          // Lambda(i,j) = lambda_u, Lambda(j,i) = -lambda_u
          if (j == col) eq[u] += bt(i, row);
          if (i == col) eq[u] -= bt(j, row);
        }
        a.push_back(std::move(eq));
        rhs.push_back(row == col ? Rational(d[row]) : Rational(0));
      }
    const auto sol = solve_rational(a, rhs);
    if (!sol.consistent) return std::nullopt;
    Integer scale = 1;
    for (const auto& x : sol.x) scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(x));
    IntMatrix lambda(m, m);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const Rational v = sol.x[u] * Rational(scale);
      const auto [i, j] = unknowns[u];
      lambda(i, j) = boost::multiprecision::numerator(v);
      lambda(j, i) = -lambda(i, j);
    }
    Vec dc = d;
    for (auto& x : dc) x *= scale;
    CompatiblePair cp(md, bt, lambda, dc);
    cp.validate();
    return cp;
  }

  const MutationData& md() const noexcept { return md_; }
  const IntMatrix& Btilde() const noexcept { return bt_; }
  const IntMatrix& Lambda() const noexcept { return lambda_; }
  const Vec& D() const noexcept { return d_; }

  // Empty when compatible; otherwise a description of the first violation.
  std::optional<std::string> violation() const {
    if (!lambda_.is_skew_symmetric()) return "Lambda is not skew-symmetric";
    for (const auto& x : d_)
      if (x <= 0) return "D has a non-positive diagonal entry";
    const IntMatrix prod = bt_.transpose() * lambda_;
    for (int i = 0; i < md_.n(); ++i)
      for (int j = 0; j < md_.m(); ++j) {
        const Integer want = (i == j) ? d_[i] : Integer(0);
        if (prod(i, j) != want)
          return "Btilde^T Lambda differs from [D 0] at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                 "): " + prod(i, j).str() + " != " + want.str();
      }
    return std::nullopt;
  }
  void validate() const {
    if (auto v = violation()) throw CompatibilityBroken(*v);
  }

  friend bool operator==(const CompatiblePair& a, const CompatiblePair& b) {
    return a.md_ == b.md_ && a.bt_ == b.bt_ && a.lambda_ == b.lambda_ && a.d_ == b.d_;
  }

 private:
  static Vec validate_shape_and_symmetrizer(const MutationData& md, const IntMatrix& bt) { return gca::validate(md, bt); }

  MutationData md_;
  IntMatrix bt_;
  IntMatrix lambda_;
  Vec d_;
};

// Btilde' = E Btilde F and Lambda' = E^T Lambda E, where E differs from the
// identity only in column k and F only in row k.
inline CompatiblePair mutate_compatible_pair(const CompatiblePair& cp, int k, int eps = 1) {
  const auto& md = cp.md();
  md.check_direction(k);
  const Integer rk = md.r(k);
  const auto& bt = cp.Btilde();
  IntMatrix e = IntMatrix::identity(md.m());
  for (int i = 0; i < md.m(); ++i) e(i, k) = i == k ? Integer(-1) : pos(-eps * bt(i, k) * rk);
  IntMatrix f = IntMatrix::identity(md.n());
  for (int i = 0; i < md.n(); ++i) f(k, i) = i == k ? Integer(-1) : pos(eps * rk * bt(k, i));
  CompatiblePair out(md, e * bt * f, e.transpose() * cp.Lambda() * e, cp.D());
  out.validate();
  return out;
}

inline CompatiblePair mutate_compatible_pair_along(CompatiblePair cp, const Word& w) {
  for (int k : w) cp = mutate_compatible_pair(cp, k);
  return cp;
}

}  // namespace gca
