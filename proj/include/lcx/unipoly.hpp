// Univariate polynomials over a Field, root extraction, and field embeddings.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lcx/field.hpp"

namespace lcx {

/// Dense univariate polynomial, low degree first; the zero polynomial has no
/// coefficients but still knows its field.
class UniPoly {
 public:
  explicit UniPoly(FieldPtr f) : f_(std::move(f)) {}
  UniPoly(FieldPtr f, std::vector<Scalar> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(const Scalar& c) { return UniPoly(c.field(), {c}); }
  static UniPoly x(FieldPtr f) { return UniPoly(f, {Scalar::zero(f), Scalar::one(f)}); }
  /// x - r
  static UniPoly linear_root(const Scalar& r) { return UniPoly(r.field(), {-r, Scalar::one(r.field())}); }
  static UniPoly from_ints(FieldPtr f, std::initializer_list<std::int64_t> cs) {
    std::vector<Scalar> v;
    for (auto c : cs) v.push_back(Scalar::from_int(f, c));
    return UniPoly(std::move(f), std::move(v));
  }

  const FieldPtr& field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Scalar::zero(f_); }
  Scalar lead() const { return c_.back(); }

  Scalar operator()(const Scalar& x) const {
    Scalar r = Scalar::zero(f_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar::zero(a.f_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UniPoly(a.f_, std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + b * Scalar::from_int(b.f_, -1); }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly(a.f_);
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar::zero(a.f_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(a.f_, std::move(r));
  }
  friend UniPoly operator*(const UniPoly& a, const Scalar& s) {
    std::vector<Scalar> r = a.c_;
    for (auto& c : r) c *= s;
    return UniPoly(a.f_, std::move(r));
  }

  /// (quotient, remainder)
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& b) const {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Scalar> rem = c_;
    if (rem.size() < b.c_.size()) return {UniPoly(f_), *this};
    std::vector<Scalar> q(rem.size() - b.c_.size() + 1, Scalar::zero(f_));
    const Scalar inv = b.lead().inverse();
    for (std::size_t i = rem.size(); i-- > b.c_.size() - 1;) {
      const Scalar c = rem[i] * inv;
      const std::size_t shift = i - (b.c_.size() - 1);
      q[shift] = c;
      if (!c.is_zero())
        for (std::size_t j = 0; j < b.c_.size(); ++j) rem[shift + j] -= c * b.c_[j];
    }
    return {UniPoly(f_, std::move(q)), UniPoly(f_, std::move(rem))};
  }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return a.divmod(b).second; }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return a.divmod(b).first; }

  UniPoly monic() const { return is_zero() ? *this : *this * lead().inverse(); }

  UniPoly derivative() const {
    std::vector<Scalar> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * Scalar::from_int(f_, static_cast<std::int64_t>(i)));
    return UniPoly(f_, std::move(r));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  FieldPtr f_;
  std::vector<Scalar> c_;
};

inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline UniPoly powmod(UniPoly base, BigInt e, const UniPoly& m) {
  UniPoly r = UniPoly::constant(Scalar::one(m.field())) % m;
  base = base % m;
  while (e > 0) {
    if ((e & 1) != 0) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

struct Root {
  Scalar value;
  int multiplicity = 1;
};

namespace detail {

inline int root_multiplicity(UniPoly f, const Scalar& r) {
  int m = 0;
  const UniPoly lin = UniPoly::linear_root(r);
  while (!f.is_zero() && f.degree() >= 1) {
    auto [q, rem] = f.divmod(lin);
    if (!rem.is_zero()) break;
    ++m;
    f = std::move(q);
  }
  return m;
}

inline void sort_roots(std::vector<Root>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    if (a.value.field()->is_finite()) return a.value.index() < b.value.index();
    return a.value.rational() < b.value.rational();
  });
}

// Equal-degree splitting of a squarefree product of distinct linear factors.
inline void split_linear(const UniPoly& g, Rng& rng, std::vector<Scalar>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0) / g.coeff(1));
    return;
  }
  const FieldPtr& f = g.field();
  const BigInt half = (BigInt(f->order()) - 1) / 2;
  for (int attempt = 0; attempt < 200; ++attempt) {
    const Scalar a = Scalar::random(f, rng);
    UniPoly t = powmod(UniPoly(f, {a, Scalar::one(f)}), half, g) - UniPoly::constant(Scalar::one(f));
    UniPoly h = gcd(g, t);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, rng, out);
      split_linear((g / h).monic(), rng, out);
      return;
    }
  }
  throw InconsistencyError("equal-degree splitting did not converge");
}

inline std::vector<BigInt> divisors_of(BigInt n) {
  if (n < 0) n = -n;
  std::vector<BigInt> ds;
  if (n == 0) return ds;
  if (n > BigInt(1000000000000LL)) throw PreconditionError("rational root search: coefficient too large");
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d * d != n) ds.push_back(n / d);
    }
  }
  return ds;
}

inline std::vector<Root> rational_roots(const UniPoly& f) {
  // Clear denominators, then apply the rational root theorem.
  BigInt lcm_den = 1;
  for (const auto& c : f.coeffs()) {
    const BigInt d = boost::multiprecision::denominator(c.rational());
    lcm_den = lcm_den / boost::multiprecision::gcd(lcm_den, d) * d;
  }
  std::vector<BigInt> ic;
  for (const auto& c : f.coeffs()) ic.push_back(boost::multiprecision::numerator(Rational(c.rational() * lcm_den)));
  std::vector<Root> roots;
  std::size_t low = 0;
  while (low < ic.size() && ic[low] == 0) ++low;
  if (low > 0) roots.push_back({Scalar::zero(f.field()), static_cast<int>(low)});
  if (low + 1 >= ic.size()) return roots;
  for (const auto& num : divisors_of(ic[low])) {
    for (const auto& den : divisors_of(ic.back())) {
      for (int sign : {1, -1}) {
        const Scalar r = Scalar::from_rational(f.field(), Rational(num * sign, den));
        if (!f(r).is_zero()) continue;
        bool seen = false;
        for (const auto& x : roots) seen = seen || x.value == r;
        if (!seen) roots.push_back({r, root_multiplicity(f, r)});
      }
    }
  }
  return roots;
}

}  // namespace detail

inline constexpr std::uint64_t kExhaustiveRootLimit = 10000;

/// All roots of f lying in f's own coefficient field, with multiplicities,
/// sorted canonically. Deterministic for a given seed.
inline std::vector<Root> roots_in_field(const UniPoly& f, Rng& rng) {
  if (f.is_zero()) throw PreconditionError("roots of the zero polynomial");
  std::vector<Root> roots;
  if (f.degree() == 0) return roots;
  const FieldPtr& fld = f.field();
  if (!fld->is_finite()) {
    roots = detail::rational_roots(f);
  } else if (fld->order() <= kExhaustiveRootLimit) {
    for (std::uint64_t i = 0; i < fld->order(); ++i) {
      const Scalar r = Scalar::from_index(fld, i);
      if (f(r).is_zero()) roots.push_back({r, detail::root_multiplicity(f, r)});
    }
  } else {
    const UniPoly fm = f.monic();
    const UniPoly xq = powmod(UniPoly::x(fld), BigInt(fld->order()), fm);
    const UniPoly g = gcd(fm, xq - UniPoly::x(fld));
    std::vector<Scalar> distinct;
    detail::split_linear(g, rng, distinct);
    for (const auto& r : distinct) roots.push_back({r, detail::root_multiplicity(f, r)});
  }
  detail::sort_roots(roots);
  return roots;
}

/// Field embedding F_{p^a} -> F_{p^b} (a | b), given by the image of the generator.
class Embedding {
 public:
  static Embedding identity(FieldPtr f) {
    Embedding e;
    e.from_ = f;
    e.to_ = std::move(f);
    return e;
  }

  /// Any embedding from -> to; the root of from's modulus chosen is the
  /// smallest in canonical order, so the result is deterministic.
  static Embedding between(FieldPtr from, FieldPtr to) {
    if (!from->is_finite() || !to->is_finite() || from->characteristic() != to->characteristic())
      throw PreconditionError("embedding needs finite fields of equal characteristic");
    if (to->degree() % from->degree() != 0) throw PreconditionError("no embedding: degree does not divide");
    Embedding e;
    e.from_ = from;
    e.to_ = to;
    if (from->degree() == 1) return e;
    if (same_field(from, to)) return identity(from);
    std::vector<Scalar> m;
    for (auto c : from->modulus()) m.push_back(Scalar::from_int(to, static_cast<std::int64_t>(c)));
    Rng rng(from->degree() * 7919 + to->degree());
    const auto roots = roots_in_field(UniPoly(to, m), rng);
    if (roots.empty()) throw InconsistencyError("modulus has no root in the larger field");
    const Scalar g = roots.front().value;
    Scalar pw = Scalar::one(to);
    for (int i = 0; i < from->degree(); ++i) {
      e.powers_.push_back(pw);
      pw *= g;
    }
    return e;
  }

  const FieldPtr& from() const { return from_; }
  const FieldPtr& to() const { return to_; }

  Scalar operator()(const Scalar& x) const {
    if (!same_field(x.field(), from_)) throw PreconditionError("embedding applied to an element of the wrong field");
    if (same_field(from_, to_)) return x;
    if (!from_->is_finite()) return x;
    if (from_->degree() == 1) return Scalar::from_int(to_, static_cast<std::int64_t>(x.coeff(0)));
    Scalar r = Scalar::zero(to_);
    for (int i = 0; i < from_->degree(); ++i)
      if (x.coeff(i)) r += powers_[i] * Scalar::from_int(to_, x.coeff(i));
    return r;
  }

  UniPoly operator()(const UniPoly& f) const {
    std::vector<Scalar> c;
    for (const auto& s : f.coeffs()) c.push_back((*this)(s));
    return UniPoly(to_, std::move(c));
  }

  /// Inverse image when y lies in the image, found by linear algebra over F_p.
  std::optional<Scalar> preimage(const Scalar& y) const;

 private:
  FieldPtr from_, to_;
  std::vector<Scalar> powers_;
};

inline std::optional<Scalar> Embedding::preimage(const Scalar& y) const {
  if (same_field(from_, to_)) return y;
  if (from_->degree() == 1) {
    if (!y.in_prime_subfield()) return std::nullopt;
    return Scalar::from_int(from_, static_cast<std::int64_t>(y.coeff(0)));
  }
  // Solve sum_i c_i powers_[i] = y coordinate-wise over F_p (Gaussian elimination).
  const std::uint64_t p = from_->characteristic();
  const int a = from_->degree(), b = to_->degree();
  std::vector<std::vector<std::uint64_t>> rows(b, std::vector<std::uint64_t>(a + 1));
  for (int r = 0; r < b; ++r) {
    for (int i = 0; i < a; ++i) rows[r][i] = powers_[i].coeff(r);
    rows[r][a] = y.coeff(r);
  }
  int rank = 0;
  std::vector<int> pivcol;
  for (int col = 0; col < a && rank < b; ++col) {
    int piv = -1;
    for (int r = rank; r < b; ++r)
      if (rows[r][col]) piv = r;
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    const std::uint64_t inv = detail::invmod(rows[rank][col], p);
    for (auto& v : rows[rank]) v = detail::mulmod(v, inv, p);
    for (int r = 0; r < b; ++r) {
      if (r == rank || !rows[r][col]) continue;
      const std::uint64_t c = rows[r][col];
      for (int j = 0; j <= a; ++j) rows[r][j] = (rows[r][j] + p - detail::mulmod(c, rows[rank][j], p)) % p;
    }
    pivcol.push_back(col);
    ++rank;
  }
  for (int r = rank; r < b; ++r)
    if (rows[r][a]) return std::nullopt;
  std::vector<std::uint64_t> c(a, 0);
  for (int r = 0; r < rank; ++r) c[pivcol[r]] = rows[r][a];
  return Scalar::from_coeffs(from_, c);
}

struct Extension {
  FieldPtr field;
  Embedding embedding;
};

/// field_extend: F_{p^k} -> F_{p^{k*degree}} with an explicit embedding of the base.
inline Extension field_extend(const FieldPtr& base, int degree) {
  if (!base->is_finite()) throw PreconditionError("extensions of the rationals are not supported");
  if (degree < 2) throw PreconditionError("extension degree must be at least 2");
  FieldPtr big = Field::finite(base->characteristic(), base->degree() * degree);
  return {big, Embedding::between(base, big)};
}

/// Roots of f, possibly in an extension. When allow_extension is set and
/// deg f <= 4, the smallest extension in which f splits is used and all roots
/// are returned there; otherwise only roots in f's own field.
struct RootSet {
  FieldPtr field;
  std::optional<Embedding> embedding;
  std::vector<Root> roots;

  int total_multiplicity() const {
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
  }
};

inline RootSet poly_roots(const UniPoly& f, bool allow_extension, Rng& rng) {
  if (f.degree() < 1) throw PreconditionError("poly_roots needs degree at least 1");
  if (!allow_extension) return {f.field(), std::nullopt, roots_in_field(f, rng)};
  if (!f.field()->is_finite()) throw PreconditionError("root extraction in extensions of Q is not supported");
  if (f.degree() > 4) throw PreconditionError("extension root extraction is limited to degree 4");
  RootSet best{f.field(), std::nullopt, roots_in_field(f, rng)};
  if (best.total_multiplicity() == f.degree()) return best;
  for (int e = 2; e <= 4; ++e) {
    Extension ext = field_extend(f.field(), e);
    RootSet rs{ext.field, ext.embedding, roots_in_field(ext.embedding(f), rng)};
    if (rs.total_multiplicity() == f.degree()) return rs;
  }
  throw InconsistencyError("polynomial of degree <= 4 did not split in a degree <= 4 extension");
}

}  // namespace lcx
