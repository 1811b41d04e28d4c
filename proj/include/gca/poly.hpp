#pragma once

// Exact sparse Laurent polynomials with integer coefficients over a set of
// ambient variables and formal z-symbols.
//
// A polynomial lives in an Ambient: `nvars` Laurent variables (x_1..x_m for
// cluster variables, yh_1..yh_n for F-polynomials, y_1..y_m for Y-seeds)
// followed by the canonical z-symbols of the mutation data. Internally a
// monomial is one flat exponent vector over both groups, so a LaurentPoly is
// a map ambient-exponent -> ZPoly in the usual sense, stored flattened.
//
// Indices are 0-based throughout the library; only the text rendering shows
// the 1-based names (x1, z[1,1], ...).

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gca/errors.hpp"
#include "gca/integer.hpp"
#include "gca/matrix.hpp"

namespace gca {


inline constexpr int kMaxVars = 24;

// z_{i,s} with i a 0-based direction and s canonical: 1 <= s <= r_i - s.
struct ZSymbol {
  int i = 0;
  int s = 0;
  auto operator<=>(const ZSymbol&) const = default;
};

// The canonical z-symbols for an exchange-degree vector r. z_{i,s} and
// z_{i,r_i-s} are the same symbol; z_{i,0} = z_{i,r_i} = 1 is not a symbol.
class ZAlphabet {
 public:
  ZAlphabet() = default;
  explicit ZAlphabet(std::vector<int> r) : r_(std::move(r)) {
    for (std::size_t i = 0; i < r_.size(); ++i) {
      if (r_[i] < 1) throw StructuralError("ZAlphabet: exchange degrees must be positive");
      for (int s = 1; 2 * s <= r_[i]; ++s) symbols_.push_back({int(i), s});
    }
  }

  const std::vector<int>& r() const noexcept { return r_; }
  const std::vector<ZSymbol>& symbols() const noexcept { return symbols_; }
  int size() const noexcept { return int(symbols_.size()); }

  // Position of z_{i,s} in the alphabet, or nullopt when the symbol is 1.
  std::optional<int> index_of(int i, int s) const {
    if (i < 0 || i >= int(r_.size())) throw StructuralError("z-symbol direction out of range");
    if (s < 0 || s > r_[i]) throw StructuralError("z-symbol index out of range");
    const int c = std::min(s, r_[i] - s);
    if (c == 0) return std::nullopt;
    for (int p = 0; p < size(); ++p)
      if (symbols_[p].i == i && symbols_[p].s == c) return p;
    throw StructuralError("z-symbol not in alphabet");
  }

  bool operator==(const ZAlphabet& o) const { return r_ == o.r_; }

 private:
  std::vector<int> r_;
  std::vector<ZSymbol> symbols_;
};

class Ambient {
 public:
  Ambient(std::string prefix, int nvars, std::vector<int> r)
      : prefix_(std::move(prefix)), nvars_(nvars), z_(std::move(r)) {
    if (nvars_ < 0 || nvars_ + z_.size() > kMaxVars)
      throw StructuralError("Ambient: too many variables (limit " + std::to_string(kMaxVars) + ")");
  }

  const std::string& prefix() const noexcept { return prefix_; }
  int nvars() const noexcept { return nvars_; }
  const ZAlphabet& z() const noexcept { return z_; }
  int width() const noexcept { return nvars_ + z_.size(); }

  bool operator==(const Ambient& o) const {
    return nvars_ == o.nvars_ && prefix_ == o.prefix_ && z_ == o.z_;
  }

 private:
  std::string prefix_;
  int nvars_;
  ZAlphabet z_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

inline AmbientPtr make_ambient(std::string prefix, int nvars, std::vector<int> r) {
  return std::make_shared<const Ambient>(std::move(prefix), nvars, std::move(r));
}

inline bool same_ambient(const AmbientPtr& a, const AmbientPtr& b) {
  return a == b || (a && b && *a == *b);
}

class Exponents {
 public:
  Exponents() = default;
  explicit Exponents(int n) : n_(std::uint8_t(n)) {
    if (n < 0 || n > kMaxVars) throw StructuralError("Exponents: bad length");
  }

  int size() const noexcept { return n_; }
  std::int32_t operator[](int i) const noexcept { return e_[i]; }
  std::int32_t& operator[](int i) noexcept { return e_[i]; }

  friend Exponents operator+(const Exponents& a, const Exponents& b) {
    Exponents out(a.n_);
    for (int i = 0; i < a.n_; ++i) {
      if (__builtin_add_overflow(a.e_[i], b.e_[i], &out.e_[i])) throw OverflowError("exponent overflow");
    }
    return out;
  }
  friend Exponents operator-(const Exponents& a, const Exponents& b) {
    Exponents out(a.n_);
    for (int i = 0; i < a.n_; ++i) {
      if (__builtin_sub_overflow(a.e_[i], b.e_[i], &out.e_[i])) throw OverflowError("exponent overflow");
    }
    return out;
  }
  Exponents scaled(std::int64_t k) const {
    Exponents out(n_);
    for (int i = 0; i < n_; ++i) {
      std::int64_t v;
      if (__builtin_mul_overflow(std::int64_t(e_[i]), k, &v) || v > INT32_MAX || v < INT32_MIN)
        throw OverflowError("exponent overflow");
      out.e_[i] = std::int32_t(v);
    }
    return out;
  }
  bool is_zero() const {
    for (int i = 0; i < n_; ++i)
      if (e_[i] != 0) return false;
    return true;
  }

  auto operator<=>(const Exponents&) const = default;
  bool operator==(const Exponents&) const = default;

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int i = 0; i < n_; ++i) {
      h ^= std::size_t(std::uint32_t(e_[i]));
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  std::array<std::int32_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
};

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept { return e.hash(); }
};

// Size guards. GCA_MAX_TERMS caps the term count of any product; the work
// limit caps the number of coefficient multiplications in one operation.
struct Limits {
  std::size_t max_terms = 0;   // 0 = unlimited
  std::uint64_t max_work = 0;  // 0 = unlimited
};

inline Limits& limits() {
  thread_local Limits l = [] {
    Limits out;
    if (const char* env = std::getenv("GCA_MAX_TERMS")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env) out.max_terms = std::size_t(v);
    }
    return out;
  }();
  return l;
}

class ScopedLimits {
 public:
  explicit ScopedLimits(Limits l) : saved_(limits()) {
    Limits& cur = limits();
    if (l.max_terms && (!cur.max_terms || l.max_terms < cur.max_terms)) cur.max_terms = l.max_terms;
    if (l.max_work && (!cur.max_work || l.max_work < cur.max_work)) cur.max_work = l.max_work;
  }
  ~ScopedLimits() { limits() = saved_; }
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  Limits saved_;
};

namespace detail {
inline void charge_work(std::uint64_t work) {
  const auto lim = limits().max_work;
  if (lim && work > lim) throw TermLimitExceeded("polynomial work limit exceeded (" + std::to_string(work) + ")");
}
inline void check_terms(std::size_t n) {
  const auto lim = limits().max_terms;
  if (lim && n > lim) throw TermLimitExceeded("polynomial term limit exceeded (" + std::to_string(n) + " terms)");
}
}  // namespace detail

struct LaurentTag {};
struct ZTag {};

template <class Tag>
class BasicPoly {
 public:
  struct Term {
    Exponents exp;
    Integer coeff;
    bool operator==(const Term&) const = default;
  };

  BasicPoly() = default;
  explicit BasicPoly(AmbientPtr amb) : amb_(std::move(amb)) {
    if (!amb_) throw StructuralError("polynomial needs an ambient");
  }

  static BasicPoly zero(AmbientPtr amb) { return BasicPoly(std::move(amb)); }
  static BasicPoly constant(AmbientPtr amb, Integer c) {
    BasicPoly p(std::move(amb));
    if (c != 0) p.terms_.push_back({Exponents(p.amb_->width()), std::move(c)});
    return p;
  }
  static BasicPoly one(AmbientPtr amb) { return constant(std::move(amb), 1); }
  static BasicPoly monomial(AmbientPtr amb, const Exponents& e, Integer c = 1) {
    BasicPoly p(std::move(amb));
    if (e.size() != p.amb_->width()) throw StructuralError("monomial: exponent length mismatch");
    if (c != 0) p.terms_.push_back({e, std::move(c)});
    return p;
  }
  // x_i^power (0-based i).
  static BasicPoly variable(AmbientPtr amb, int i, std::int32_t power = 1) {
    if (i < 0 || i >= amb->nvars()) throw StructuralError("variable index out of range");
    Exponents e(amb->width());
    e[i] = power;
    return monomial(std::move(amb), e);
  }
  // z_{i,s}, canonicalized; z_{i,0} = z_{i,r_i} = 1.
  static BasicPoly zsym(AmbientPtr amb, int i, int s) {
    const auto idx = amb->z().index_of(i, s);
    Exponents e(amb->width());
    if (idx) e[amb->nvars() + *idx] = 1;
    return monomial(std::move(amb), e);
  }
  // Builds from unsorted terms; merges duplicates and drops zeros.
  static BasicPoly from_terms(AmbientPtr amb, std::vector<Term> terms) {
    BasicPoly p(std::move(amb));
    for (const auto& t : terms)
      if (t.exp.size() != p.amb_->width()) throw StructuralError("from_terms: exponent length mismatch");
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().exp == t.exp)
        p.terms_.back().coeff += t.coeff;
      else
        p.terms_.push_back(std::move(t));
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    }
    return p;
  }

  const AmbientPtr& ambient() const noexcept { return amb_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_[0].coeff == 1 && terms_[0].exp.is_zero();
  }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  const Term& leading() const {
    if (terms_.empty()) throw StructuralError("leading term of zero polynomial");
    return terms_.back();
  }
  const Term& trailing() const {
    if (terms_.empty()) throw StructuralError("trailing term of zero polynomial");
    return terms_.front();
  }

  friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
    return same_ambient(a.amb_, b.amb_) && a.terms_ == b.terms_;
  }

  friend BasicPoly operator+(const BasicPoly& a, const BasicPoly& b) { return merge(a, b, false); }
  friend BasicPoly operator-(const BasicPoly& a, const BasicPoly& b) { return merge(a, b, true); }
  BasicPoly operator-() const {
    BasicPoly p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  // Machine words in the largest coefficient.
  std::uint64_t max_limbs() const {
    std::size_t bits = 0;
    for (const auto& t : terms_)
      if (t.coeff != 0) bits = std::max<std::size_t>(bits, boost::multiprecision::msb(abs(t.coeff)));
    return bits / 64 + 1;
  }

  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    require_same(a, b, "*");
    BasicPoly out(a.amb_);
    if (a.is_zero() || b.is_zero()) return out;
    if (a.is_monomial() || b.is_monomial()) {
      const BasicPoly& m = a.is_monomial() ? a : b;
      const BasicPoly& p = a.is_monomial() ? b : a;
      out.terms_.reserve(p.size());
      for (const auto& t : p.terms_) out.terms_.push_back({t.exp + m.terms_[0].exp, t.coeff * m.terms_[0].coeff});
      return out;  // shifting by a monomial keeps the order
    }
    const std::uint64_t work = std::uint64_t(a.size()) * b.size();
    detail::charge_work(work * a.max_limbs() * b.max_limbs());
    std::unordered_map<Exponents, Integer, ExponentsHash> acc;
    acc.reserve(std::size_t(std::min<std::uint64_t>(work, 1u << 22)));
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        auto [it, fresh] = acc.try_emplace(ta.exp + tb.exp);
        if (fresh)
          it->second = ta.coeff * tb.coeff;
        else
          it->second += ta.coeff * tb.coeff;
      }
    out.terms_.reserve(acc.size());
    for (auto& [e, c] : acc)
      if (c != 0) out.terms_.push_back({e, std::move(c)});
    detail::check_terms(out.terms_.size());
    std::sort(out.terms_.begin(), out.terms_.end(), [](const Term& x, const Term& y) { return x.exp < y.exp; });
    return out;
  }

  BasicPoly& operator+=(const BasicPoly& o) { return *this = *this + o; }
  BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

  BasicPoly scaled(const Integer& c) const {
    if (c == 0) return zero(amb_);
    BasicPoly p = *this;
    for (auto& t : p.terms_) t.coeff *= c;
    return p;
  }

  // Exponents restricted to the ambient variables (z-part dropped).
  Exponents ambient_part(const Exponents& e) const {
    Exponents out(amb_->nvars());
    for (int i = 0; i < amb_->nvars(); ++i) out[i] = e[i];
    return out;
  }

 private:
  static void require_same(const BasicPoly& a, const BasicPoly& b, const char* op) {
    if (!same_ambient(a.amb_, b.amb_)) throw StructuralError(std::string("polynomial ") + op + ": ambient mismatch");
  }
  static BasicPoly merge(const BasicPoly& a, const BasicPoly& b, bool subtract) {
    require_same(a, b, subtract ? "-" : "+");
    BasicPoly out(a.amb_);
    out.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a.terms_[i].exp < b.terms_[j].exp)) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || b.terms_[j].exp < a.terms_[i].exp) {
        out.terms_.push_back(b.terms_[j++]);
        if (subtract) out.terms_.back().coeff = -out.terms_.back().coeff;
      } else {
        Integer c = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
        if (c != 0) out.terms_.push_back({a.terms_[i].exp, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  AmbientPtr amb_;
  std::vector<Term> terms_;  // ascending by exponent, no zero coefficients
};

using LaurentPoly = BasicPoly<LaurentTag>;
using ZPoly = BasicPoly<ZTag>;

template <class Tag>
BasicPoly<Tag> pow(const BasicPoly<Tag>& p, std::int64_t e) {
  if (e < 0) throw StructuralError("pow: negative exponent on a polynomial");
  BasicPoly<Tag> result = BasicPoly<Tag>::one(p.ambient());
  if (e == 0) return result;
  if (p.is_monomial()) {
    const auto& t = p.terms()[0];
    return BasicPoly<Tag>::monomial(p.ambient(), t.exp.scaled(e), boost::multiprecision::pow(t.coeff, unsigned(e)));
  }
  BasicPoly<Tag> base = p;
  while (true) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (!e) break;
    base = base * base;
  }
  return result;
}

template <class Tag>
BasicPoly<Tag> pow(const BasicPoly<Tag>& p, const Integer& e) {
  return pow(p, to_i64(e));
}

// The z-only ambient matching a LaurentPoly ambient.
inline AmbientPtr z_ambient(const AmbientPtr& amb) { return make_ambient("", 0, amb->z().r()); }

// Coefficient of x^xexp as a polynomial in the z-symbols.
inline ZPoly coefficient(const LaurentPoly& p, const Exponents& xexp) {
  const auto& amb = p.ambient();
  if (xexp.size() != amb->nvars()) throw StructuralError("coefficient: exponent length mismatch");
  std::vector<ZPoly::Term> zt;
  for (const auto& t : p.terms()) {
    bool match = true;
    for (int i = 0; i < amb->nvars() && match; ++i) match = t.exp[i] == xexp[i];
    if (!match) continue;
    Exponents ze(amb->z().size());
    for (int s = 0; s < amb->z().size(); ++s) ze[s] = t.exp[amb->nvars() + s];
    zt.push_back({ze, t.coeff});
  }
  return ZPoly::from_terms(z_ambient(amb), std::move(zt));
}

// Distinct ambient-variable exponents appearing in p (z-part ignored), sorted.
inline std::vector<Exponents> support(const LaurentPoly& p) {
  std::vector<Exponents> out;
  for (const auto& t : p.terms()) out.push_back(p.ambient_part(t.exp));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Exact division in the Laurent ring. Returns nullopt when the divisor does
// not divide; `remainder` then receives the partially reduced dividend.
//
// Leading-term elimination under lex order. Degrees in every variable add
// under multiplication, so a quotient must lie in the box
// [min_a - min_b, max_a - max_b]; a candidate term outside it proves
// non-divisibility and bounds the loop.
template <class Tag>
std::optional<BasicPoly<Tag>> try_div_exact(const BasicPoly<Tag>& a, const BasicPoly<Tag>& b,
                                            BasicPoly<Tag>* remainder = nullptr) {
  using P = BasicPoly<Tag>;
  if (!same_ambient(a.ambient(), b.ambient())) throw StructuralError("division: ambient mismatch");
  if (b.is_zero()) throw StructuralError("division by zero polynomial");
  if (a.is_zero()) return P::zero(a.ambient());
  const int w = a.ambient()->width();

  if (b.is_monomial()) {
    const auto& m = b.terms()[0];
    std::vector<typename P::Term> q;
    q.reserve(a.size());
    for (const auto& t : a.terms()) {
      Integer quo, rem;
      boost::multiprecision::divide_qr(t.coeff, m.coeff, quo, rem);
      if (rem != 0) {
        if (remainder) *remainder = a;
        return std::nullopt;
      }
      q.push_back({t.exp - m.exp, std::move(quo)});
    }
    return P::from_terms(a.ambient(), std::move(q));
  }

  Exponents lo(w), hi(w);
  {
    Exponents amin(w), amax(w), bmin(w), bmax(w);
    for (int i = 0; i < w; ++i) {
      amin[i] = bmin[i] = INT32_MAX;
      amax[i] = bmax[i] = INT32_MIN;
    }
    for (const auto& t : a.terms())
      for (int i = 0; i < w; ++i) amin[i] = std::min(amin[i], t.exp[i]), amax[i] = std::max(amax[i], t.exp[i]);
    for (const auto& t : b.terms())
      for (int i = 0; i < w; ++i) bmin[i] = std::min(bmin[i], t.exp[i]), bmax[i] = std::max(bmax[i], t.exp[i]);
    lo = amin - bmin;
    hi = amax - bmax;
    for (int i = 0; i < w; ++i)
      if (lo[i] > hi[i]) {
        if (remainder) *remainder = a;
        return std::nullopt;
      }
  }

  std::map<Exponents, Integer> rest;
  for (const auto& t : a.terms()) rest.emplace_hint(rest.end(), t.exp, t.coeff);
  const auto& lb = b.leading();
  std::vector<typename P::Term> q;
  std::uint64_t work = 0;
  auto fail = [&]() -> std::optional<P> {
    if (remainder) {
      std::vector<typename P::Term> rt;
      for (auto& [e, c] : rest) rt.push_back({e, c});
      *remainder = P::from_terms(a.ambient(), std::move(rt));
    }
    return std::nullopt;
  };
  while (!rest.empty()) {
    auto top = std::prev(rest.end());
    const Exponents cand = top->first - lb.exp;
    for (int i = 0; i < w; ++i)
      if (cand[i] < lo[i] || cand[i] > hi[i]) return fail();
    Integer quo, rem;
    boost::multiprecision::divide_qr(top->second, lb.coeff, quo, rem);
    if (rem != 0) return fail();
    work += b.size();
    detail::charge_work(work);
    for (const auto& tb : b.terms()) {
      auto [it, fresh] = rest.try_emplace(cand + tb.exp);
      if (fresh)
        it->second = -(quo * tb.coeff);
      else
        it->second -= quo * tb.coeff;
      if (it->second == 0) rest.erase(it);
    }
    q.push_back({cand, std::move(quo)});
    detail::check_terms(q.size());
  }
  std::reverse(q.begin(), q.end());
  return P::from_terms(a.ambient(), std::move(q));
}

std::string to_string(const LaurentPoly& p);

template <class Tag>
BasicPoly<Tag> div_exact(const BasicPoly<Tag>& a, const BasicPoly<Tag>& b) {
  BasicPoly<Tag> rem;
  auto q = try_div_exact(a, b, &rem);
  if (!q) {
    if constexpr (std::is_same_v<Tag, LaurentTag>)
      throw NotDivisible("exact division failed", to_string(rem));
    else
      throw NotDivisible("exact division failed", "");
  }
  return *std::move(q);
}

// ---------------------------------------------------------------------------
// Text rendering. Terms in descending exponent order; x variables print as
// <prefix><i>, z-symbols as z[i,s] (both 1-based).

namespace detail {
template <class Tag>
std::string render(const BasicPoly<Tag>& p) {
  if (p.is_zero()) return "0";
  const auto& amb = p.ambient();
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    std::vector<std::string> factors;
    for (int s = 0; s < amb->z().size(); ++s) {
      const auto e = it->exp[amb->nvars() + s];
      if (!e) continue;
      const auto& z = amb->z().symbols()[s];
      std::string f = "z[" + std::to_string(z.i + 1) + "," + std::to_string(z.s) + "]";
      if (e != 1) f += "^" + std::to_string(e);
      factors.push_back(f);
    }
    for (int i = 0; i < amb->nvars(); ++i) {
      const auto e = it->exp[i];
      if (!e) continue;
      std::string f = amb->prefix() + std::to_string(i + 1);
      if (e != 1) f += "^" + std::to_string(e);
      factors.push_back(f);
    }
    const bool neg = it->coeff < 0;
    const Integer mag = neg ? Integer(-it->coeff) : it->coeff;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool need_star = false;
    if (factors.empty() || mag != 1) {
      os << mag.str();
      need_star = true;
    }
    for (const auto& f : factors) {
      if (need_star) os << '*';
      os << f;
      need_star = true;
    }
  }
  return os.str();
}
}  // namespace detail

inline std::string to_string(const LaurentPoly& p) { return detail::render(p); }
inline std::string to_string(const ZPoly& p) { return detail::render(p); }

// Evaluation at a rational point; used by numeric oracles in tests.
template <class Tag>
Rational evaluate(const BasicPoly<Tag>& p, const std::vector<Rational>& vars, const std::vector<Rational>& zvals) {
  const auto& amb = p.ambient();
  if (int(vars.size()) != amb->nvars() || int(zvals.size()) != amb->z().size())
    throw StructuralError("evaluate: point has wrong dimension");
  auto rpow = [](const Rational& x, std::int32_t e) {
    Rational base = e < 0 ? Rational(1) / x : x;
    Rational out = 1;
    for (std::int32_t k = 0; k < (e < 0 ? -e : e); ++k) out *= base;
    return out;
  };
  Rational sum = 0;
  for (const auto& t : p.terms()) {
    Rational v = Rational(t.coeff);
    for (int i = 0; i < amb->nvars(); ++i)
      if (t.exp[i]) v *= rpow(vars[i], t.exp[i]);
    for (int s = 0; s < amb->z().size(); ++s)
      if (t.exp[amb->nvars() + s]) v *= rpow(zvals[s], t.exp[amb->nvars() + s]);
    sum += v;
  }
  return sum;
}

// Arithmetic modulo the Mersenne prime 2^61 - 1, for fast probabilistic
// comparison of polynomial values before an exact check.
namespace modp {
inline constexpr std::uint64_t kPrime = (std::uint64_t(1) << 61) - 1;
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 x = (unsigned __int128)a * b;
  std::uint64_t r = std::uint64_t(x & kPrime) + std::uint64_t(x >> 61);
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul(a, a))
    if (e & 1) r = mul(r, a);
  return r;
}
inline std::uint64_t inverse(std::uint64_t a) {
  if (a == 0) throw StructuralError("modp: inverse of zero");
  return power(a, kPrime - 2);
}
inline std::uint64_t reduce(const Integer& c) {
  Integer r = c % Integer(kPrime);
  if (r < 0) r += kPrime;
  return r.convert_to<std::uint64_t>();
}
}  // namespace modp

// Value of p modulo 2^61 - 1 at non-zero residues for the ambient variables
// and the coefficient symbols.
template <class Tag>
std::uint64_t evaluate_mod(const BasicPoly<Tag>& p, const std::vector<std::uint64_t>& point) {
  const int w = p.ambient()->width();
  if (int(point.size()) != w) throw StructuralError("evaluate_mod: point has wrong dimension");
  std::vector<std::uint64_t> inv(w);
  for (int i = 0; i < w; ++i) inv[i] = modp::inverse(point[i]);
  std::uint64_t sum = 0;
  for (const auto& t : p.terms()) {
    std::uint64_t v = modp::reduce(t.coeff);
    for (int i = 0; i < w; ++i) {
      const std::int32_t e = t.exp[i];
      if (e > 0) v = modp::mul(v, modp::power(point[i], std::uint64_t(e)));
      if (e < 0) v = modp::mul(v, modp::power(inv[i], std::uint64_t(-std::int64_t(e))));
    }
    sum = modp::add(sum, v);
  }
  return sum;
}

// Substitutes the ambient variable i of p by the monomial images[i] of the
// target ambient, which must carry the same coefficient alphabet.
inline LaurentPoly substitute_monomials(const LaurentPoly& p, const AmbientPtr& target,
                                        const std::vector<Exponents>& images) {
  const auto& src = p.ambient();
  if (!(src->z() == target->z())) throw StructuralError("substitute_monomials: coefficient alphabets differ");
  if (int(images.size()) != src->nvars()) throw StructuralError("substitute_monomials: wrong number of images");
  std::vector<LaurentPoly::Term> terms;
  for (const auto& t : p.terms()) {
    Exponents e(target->width());
    for (int i = 0; i < src->nvars(); ++i)
      if (t.exp[i]) e = e + images[i].scaled(t.exp[i]);
    for (int s = 0; s < src->z().size(); ++s) e[target->nvars() + s] += t.exp[src->nvars() + s];
    terms.push_back({e, t.coeff});
  }
  return LaurentPoly::from_terms(target, std::move(terms));
}

// ---------------------------------------------------------------------------
// F-polynomial helpers.

// Componentwise maximum of the ambient exponents over the support.
inline Vec max_degrees(const LaurentPoly& F) {
  const int n = F.ambient()->nvars();
  std::vector<std::int32_t> out(n, 0);
  bool first = true;
  for (const auto& t : F.terms()) {
    for (int i = 0; i < n; ++i) out[i] = first ? t.exp[i] : std::max(out[i], t.exp[i]);
    first = false;
  }
  return {out.begin(), out.end()};
}

// The exponent f such that every monomial of F divides yh^f and yh^f itself
// appears with coefficient exactly 1; nullopt (NoMax) otherwise.
inline std::optional<Vec> max_divisor_monomial(const LaurentPoly& F) {
  if (F.is_zero()) return std::nullopt;
  const Vec f = max_degrees(F);
  Exponents fe(F.ambient()->nvars());
  for (int i = 0; i < fe.size(); ++i) fe[i] = to_i32(f[i]);
  if (!coefficient(F, fe).is_one()) return std::nullopt;
  return f;
}

// A subtraction-free representative num/den of a rational function: both are
// polynomials in the ambient variables with non-negative integer
// coefficients and constant term exactly 1.
class PositiveFraction {
 public:
  PositiveFraction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (!same_ambient(num_.ambient(), den_.ambient())) throw StructuralError("PositiveFraction: ambient mismatch");
    check(num_, "numerator");
    check(den_, "denominator");
  }
  static PositiveFraction one(const AmbientPtr& amb) {
    return PositiveFraction(LaurentPoly::one(amb), LaurentPoly::one(amb));
  }
  // Valid only when F itself is subtraction-free.
  static PositiveFraction of_polynomial(const LaurentPoly& F) {
    return PositiveFraction(F, LaurentPoly::one(F.ambient()));
  }

  const LaurentPoly& num() const noexcept { return num_; }
  const LaurentPoly& den() const noexcept { return den_; }

  bool reduces_to(const LaurentPoly& F) const { return num_ == F * den_; }

  friend PositiveFraction operator*(const PositiveFraction& a, const PositiveFraction& b) {
    return PositiveFraction(a.num_ * b.num_, a.den_ * b.den_);
  }

 private:
  static void check(const LaurentPoly& p, const char* which) {
    const int n = p.ambient()->nvars();
    for (const auto& t : p.terms()) {
      if (t.coeff < 0) throw StructuralError(std::string("PositiveFraction: negative coefficient in ") + which);
      for (int i = 0; i < p.ambient()->width(); ++i)
        if (t.exp[i] < 0) throw StructuralError(std::string("PositiveFraction: negative exponent in ") + which);
    }
    if (!coefficient(p, Exponents(n)).is_one())
      throw StructuralError(std::string("PositiveFraction: constant term of ") + which + " is not 1");
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

inline bool has_nonnegative_coefficients(const LaurentPoly& p) {
  return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) { return t.coeff >= 0; });
}

inline PositiveFraction pow(const PositiveFraction& f, const Integer& e) {
  return PositiveFraction(pow(f.num(), e), pow(f.den(), e));
}

// F[h] = max{nu.h : nu in supp(num)} - max{mu.h : mu in supp(den)}.
inline Integer trop_eval(const PositiveFraction& F, const Vec& h) {
  const int n = F.num().ambient()->nvars();
  if (int(h.size()) != n) throw StructuralError("trop_eval: vector length mismatch");
  auto best = [&](const LaurentPoly& p) {
    Integer m = 0;
    bool first = true;
    for (const auto& t : p.terms()) {
      Integer v = 0;
      for (int i = 0; i < n; ++i) v += t.exp[i] * h[i];
      m = first ? v : std::max(m, v);
      first = false;
    }
    return m;
  };
  return best(F.num()) - best(F.den());
}

// ---------------------------------------------------------------------------
// Rational functions as unreduced num/den pairs. Equality is decided by
// cross-multiplication; no gcd machinery is involved.

class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(LaurentPoly num) : num_(std::move(num)), den_(LaurentPoly::one(num_.ambient())) {}
  RationalFunction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw StructuralError("RationalFunction: zero denominator");
    if (!same_ambient(num_.ambient(), den_.ambient())) throw StructuralError("RationalFunction: ambient mismatch");
    simplify();
  }

  const LaurentPoly& num() const noexcept { return num_; }
  const LaurentPoly& den() const noexcept { return den_; }
  const AmbientPtr& ambient() const noexcept { return num_.ambient(); }

  bool is_laurent() const { return den_.is_monomial(); }
  // The Laurent polynomial this fraction equals, when it is one.
  std::optional<LaurentPoly> as_laurent() const {
    if (den_.is_one()) return num_;
    return try_div_exact(num_, den_);
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num_.is_zero()) throw StructuralError("RationalFunction: division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  RationalFunction inverse() const { return RationalFunction(den_, num_); }

  std::string str() const {
    if (den_.is_one()) return to_string(num_);
    return "(" + to_string(num_) + ")/(" + to_string(den_) + ")";
  }

 private:
  // Cheap normalizations only: exact division when it succeeds, and pushing
  // a monomial denominator into the numerator.
  void simplify() {
    if (den_.is_one()) return;
    if (den_.is_monomial() && (den_.leading().coeff == 1 || den_.leading().coeff == -1)) {
      num_ = div_exact(num_, den_);
      den_ = LaurentPoly::one(num_.ambient());
      return;
    }
    if (num_.size() >= den_.size()) {
      if (auto q = try_div_exact(num_, den_)) {
        num_ = *std::move(q);
        den_ = LaurentPoly::one(num_.ambient());
      }
    }
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

inline RationalFunction pow(const RationalFunction& f, const Integer& e) {
  if (e >= 0) return RationalFunction(pow(f.num(), e), pow(f.den(), e));
  return RationalFunction(pow(f.den(), -e), pow(f.num(), -e));
}

}  // namespace gca
