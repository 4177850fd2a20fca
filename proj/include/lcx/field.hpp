// Exact coefficient fields: the rationals and finite fields F_{p^k}.
//
// Every finite field is represented as F_p[x]/(m(x)) with m monic and
// irreducible over the prime field, so that towers F_{p^k} -> F_{p^km} are
// realised by explicit embeddings (see unipoly.hpp) and never by nesting.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lcx {

/// A mathematical precondition of an operation was violated by its input.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two independent routes disagreed: the implementation, not the input, is at fault.
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Rng = std::mt19937_64;

inline constexpr int kMaxExtensionDegree = 12;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) { return rng() % n; }

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, low degree first, no trailing zeros.
using FpPoly = std::vector<std::uint64_t>;

inline void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_sub(FpPoly a, const FpPoly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

// Returns (quotient, remainder).
inline std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, std::uint64_t p) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  FpPoly q(a.size() - b.size() + 1, 0);
  const std::uint64_t lead_inv = invmod(b.back(), p);
  for (std::size_t i = a.size() - 1;; --i) {
    const std::uint64_t c = mulmod(a[i], lead_inv, p);
    const std::size_t shift = i - (b.size() - 1);
    q[shift] = c;
    if (c)
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + p - mulmod(c, b[j], p)) % p;
    if (i == b.size() - 1) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline FpPoly fp_mod(const FpPoly& a, const FpPoly& b, std::uint64_t p) { return fp_divmod(a, b, p).second; }

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

inline FpPoly fp_powmod(FpPoly base, BigInt e, const FpPoly& m, std::uint64_t p) {
  FpPoly r{1};
  base = fp_mod(base, m, p);
  while (e > 0) {
    if ((e & 1) != 0) r = fp_mod(fp_mul(r, base, p), m, p);
    base = fp_mod(fp_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

// Rabin's test: f of degree d is irreducible over F_p iff x^{p^d} = x mod f and
// gcd(x^{p^{d/r}} - x, f) = 1 for every prime r | d.
inline bool fp_irreducible(const FpPoly& f, std::uint64_t p) {
  const std::size_t d = f.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  auto frob_power = [&](std::size_t times) {
    FpPoly x{0, 1};
    for (std::size_t i = 0; i < times; ++i) x = fp_powmod(x, BigInt(p), f, p);
    return x;
  };
  const FpPoly x{0, 1};
  if (!fp_sub(frob_power(d), x, p).empty()) return false;
  for (std::size_t r = 2; r <= d; ++r) {
    if (d % r != 0 || !is_prime(r)) continue;
    FpPoly g = fp_gcd(f, fp_sub(frob_power(d / r), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

// Extended Euclid: inverse of a modulo m over F_p.
inline FpPoly fp_invmod(const FpPoly& a, const FpPoly& m, std::uint64_t p) {
  FpPoly r0 = m, r1 = a, s0{}, s1{1};
  trim(r1);
  if (r1.empty()) throw std::domain_error("inverse of zero");
  while (!r1.empty()) {
    auto [q, r] = fp_divmod(r0, r1, p);
    FpPoly s = fp_sub(s0, fp_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant when a, m are coprime.
  if (r0.size() != 1) throw std::domain_error("element not invertible");
  const std::uint64_t c = invmod(r0[0], p);
  for (auto& x : s0) x = mulmod(x, c, p);
  return s0;
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// FieldDesc: characteristic 0 (the rationals) or F_{p^k} for an odd prime p.
class Field {
 public:
  static FieldPtr rationals() {
    static const FieldPtr q(new Field(0, 1, {}));
    return q;
  }

  static FieldPtr prime(std::uint64_t p) {
    if (p == 2) throw PreconditionError("characteristic 2 is not supported");
    if (p >= (1ULL << 31) || !detail::is_prime(p)) throw PreconditionError("characteristic must be an odd prime below 2^31");
    return FieldPtr(new Field(p, 1, {}));
  }

  /// F_p[x]/(modulus); modulus is given low degree first and must be monic irreducible.
  static FieldPtr with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
    auto base = prime(p);
    for (auto& c : modulus) c %= p;
    detail::trim(modulus);
    if (modulus.size() < 2) throw PreconditionError("modulus must have positive degree");
    if (modulus.back() != 1) throw PreconditionError("modulus must be monic");
    const int k = static_cast<int>(modulus.size()) - 1;
    if (k == 1) return base;
    if (k > kMaxExtensionDegree) throw PreconditionError("extension degree exceeds " + std::to_string(kMaxExtensionDegree));
    check_order(p, k);
    if (!detail::fp_irreducible(modulus, p)) throw PreconditionError("modulus is not irreducible");
    return FieldPtr(new Field(p, k, std::move(modulus)));
  }

  /// The field with p^k elements, modulus found by a bounded seeded search.
  static FieldPtr finite(std::uint64_t p, int k) {
    if (k == 1) return prime(p);
    prime(p);
    if (k < 1 || k > kMaxExtensionDegree) throw PreconditionError("unsupported extension degree");
    check_order(p, k);
    Rng rng(0x9e3779b97f4a7c15ULL ^ (p * 131 + static_cast<std::uint64_t>(k)));
    for (int attempt = 0; attempt < 20000; ++attempt) {
      detail::FpPoly f(k + 1);
      f[k] = 1;
      for (int i = 0; i < k; ++i) f[i] = uniform_below(rng, p);
      if (f[0] == 0) continue;
      if (detail::fp_irreducible(f, p)) return FieldPtr(new Field(p, k, std::move(f)));
    }
    throw PreconditionError("no irreducible modulus found within the search bound");
  }

  std::uint64_t characteristic() const { return p_; }
  int degree() const { return k_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  bool is_finite() const { return p_ != 0; }
  bool is_prime_field() const { return p_ != 0 && k_ == 1; }

  /// Number of elements; only for finite fields.
  std::uint64_t order() const {
    if (!is_finite()) throw PreconditionError("the rationals have no finite order");
    return order_;
  }

  bool same_as(const Field& o) const { return this == &o || (p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_); }

  std::string describe() const {
    if (p_ == 0) return "Q";
    if (k_ == 1) return "F_" + std::to_string(p_);
    return "F_" + std::to_string(p_) + "^" + std::to_string(k_);
  }

 private:
  Field(std::uint64_t p, int k, std::vector<std::uint64_t> m) : p_(p), k_(k), modulus_(std::move(m)) {
    order_ = 1;
    if (p_) for (int i = 0; i < k_; ++i) order_ *= p_;
  }

  static void check_order(std::uint64_t p, int k) {
    long double size = 1;
    for (int i = 0; i < k; ++i) size *= static_cast<long double>(p);
    if (size >= static_cast<long double>(1ULL << 62)) throw PreconditionError("field too large (order must stay below 2^62)");
  }

  std::uint64_t p_;
  int k_;
  std::vector<std::uint64_t> modulus_;
  std::uint64_t order_ = 0;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) { return a == b || (a && b && a->same_as(*b)); }

/// An element of a Field. Arithmetic between different fields throws: all
/// transfers go through an explicit Embedding.
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(FieldPtr f) { return Scalar(std::move(f)); }
  static Scalar one(FieldPtr f) { return from_int(std::move(f), 1); }

  static Scalar from_int(FieldPtr f, std::int64_t v) {
    Scalar s(std::move(f));
    if (s.f_->is_finite()) {
      const auto p = static_cast<std::int64_t>(s.f_->characteristic());
      s.c_[0] = static_cast<std::uint32_t>(((v % p) + p) % p);
    } else {
      s.q_ = v;
    }
    return s;
  }

  static Scalar from_rational(FieldPtr f, const Rational& v) {
    if (f->is_finite()) {
      const std::uint64_t p = f->characteristic();
      auto reduce = [p](BigInt x) {
        x %= p;
        if (x < 0) x += p;
        return static_cast<std::uint64_t>(x);
      };
      const std::uint64_t den = reduce(boost::multiprecision::denominator(v));
      if (den == 0) throw PreconditionError("denominator divisible by the characteristic");
      Scalar s(std::move(f));
      s.c_[0] = static_cast<std::uint32_t>(detail::mulmod(reduce(boost::multiprecision::numerator(v)), detail::invmod(den, p), p));
      return s;
    }
    Scalar s(std::move(f));
    s.q_ = v;
    return s;
  }

  /// Element sum c_i x^i of F_p[x]/(m).
  static Scalar from_coeffs(FieldPtr f, std::span<const std::uint64_t> coeffs) {
    if (!f->is_finite()) throw PreconditionError("coefficient vectors need a finite field");
    Scalar s(std::move(f));
    detail::FpPoly a(coeffs.begin(), coeffs.end());
    for (auto& c : a) c %= s.f_->characteristic();
    detail::trim(a);
    if (s.f_->degree() > 1 && static_cast<int>(a.size()) > s.f_->degree()) a = detail::fp_mod(a, s.f_->modulus(), s.f_->characteristic());
    if (s.f_->degree() == 1 && a.size() > 1) throw PreconditionError("prime field element has a single coefficient");
    for (std::size_t i = 0; i < a.size(); ++i) s.c_[i] = static_cast<std::uint32_t>(a[i]);
    return s;
  }

  /// The class of x in F_p[x]/(m).
  static Scalar generator(FieldPtr f) {
    if (f->degree() == 1) throw PreconditionError("prime fields have no polynomial generator");
    const std::uint64_t c[2] = {0, 1};
    return from_coeffs(std::move(f), c);
  }

  /// Finite field elements are numbered 0..q-1 by their base-p coefficient digits.
  static Scalar from_index(FieldPtr f, std::uint64_t idx) {
    Scalar s(std::move(f));
    const std::uint64_t p = s.f_->characteristic();
    for (int i = 0; i < s.f_->degree(); ++i) {
      s.c_[i] = static_cast<std::uint32_t>(idx % p);
      idx /= p;
    }
    return s;
  }

  static Scalar random(FieldPtr f, Rng& rng) {
    if (!f->is_finite()) {
      // Small signed integers: enough for genericity tests over Q.
      return from_int(std::move(f), static_cast<std::int64_t>(uniform_below(rng, 1999)) - 999);
    }
    const std::uint64_t q = f->order();
    return from_index(std::move(f), uniform_below(rng, q));
  }

  std::uint64_t index() const {
    std::uint64_t idx = 0;
    for (int i = f_->degree() - 1; i >= 0; --i) idx = idx * f_->characteristic() + c_[i];
    return idx;
  }

  const FieldPtr& field() const { return f_; }
  bool valid() const { return static_cast<bool>(f_); }
  std::uint64_t coeff(int i) const { return c_[i]; }
  const Rational& rational() const { return q_; }

  bool is_zero() const {
    if (!f_->is_finite()) return q_ == 0;
    for (int i = 0; i < f_->degree(); ++i)
      if (c_[i]) return false;
    return true;
  }
  bool is_one() const { return *this == one(f_); }

  /// True when the element lies in the prime subfield (or Q).
  bool in_prime_subfield() const {
    if (!f_->is_finite()) return true;
    for (int i = 1; i < f_->degree(); ++i)
      if (c_[i]) return false;
    return true;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check(b);
    Scalar r(a.f_);
    if (!a.f_->is_finite()) {
      r.q_ = a.q_ + b.q_;
    } else {
      const std::uint64_t p = a.f_->characteristic();
      for (int i = 0; i < a.f_->degree(); ++i) r.c_[i] = static_cast<std::uint32_t>((a.c_[i] + static_cast<std::uint64_t>(b.c_[i])) % p);
    }
    return r;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    a.check(b);
    Scalar r(a.f_);
    if (!a.f_->is_finite()) {
      r.q_ = a.q_ - b.q_;
    } else {
      const std::uint64_t p = a.f_->characteristic();
      for (int i = 0; i < a.f_->degree(); ++i) r.c_[i] = static_cast<std::uint32_t>((a.c_[i] + p - b.c_[i]) % p);
    }
    return r;
  }

  Scalar operator-() const { return zero(f_) - *this; }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check(b);
    Scalar r(a.f_);
    if (!a.f_->is_finite()) {
      r.q_ = a.q_ * b.q_;
      return r;
    }
    const std::uint64_t p = a.f_->characteristic();
    const int k = a.f_->degree();
    if (k == 1) {
      r.c_[0] = static_cast<std::uint32_t>(detail::mulmod(a.c_[0], b.c_[0], p));
      return r;
    }
    std::array<std::uint64_t, 2 * kMaxExtensionDegree> prod{};
    for (int i = 0; i < k; ++i) {
      if (!a.c_[i]) continue;
      for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(a.c_[i]) * b.c_[j]) % p;
    }
    const auto& m = a.f_->modulus();
    for (int d = 2 * k - 2; d >= k; --d) {
      const std::uint64_t c = prod[d];
      if (!c) continue;
      prod[d] = 0;
      for (int j = 0; j < k; ++j) prod[d - k + j] = (prod[d - k + j] + p - detail::mulmod(c, m[j], p)) % p;
    }
    for (int i = 0; i < k; ++i) r.c_[i] = static_cast<std::uint32_t>(prod[i]);
    return r;
  }

  Scalar inverse() const {
    if (is_zero()) throw PreconditionError("inverse of zero");
    Scalar r(f_);
    if (!f_->is_finite()) {
      r.q_ = 1 / q_;
      return r;
    }
    const std::uint64_t p = f_->characteristic();
    if (f_->degree() == 1) {
      r.c_[0] = static_cast<std::uint32_t>(detail::invmod(c_[0], p));
      return r;
    }
    detail::FpPoly a(c_.begin(), c_.begin() + f_->degree());
    detail::trim(a);
    const auto inv = detail::fp_invmod(a, f_->modulus(), p);
    for (std::size_t i = 0; i < inv.size(); ++i) r.c_[i] = static_cast<std::uint32_t>(inv[i]);
    return r;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  Scalar pow(BigInt e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r = one(f_), b = *this;
    while (e > 0) {
      if ((e & 1) != 0) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (!same_field(a.f_, b.f_)) return false;
    if (!a.f_->is_finite()) return a.q_ == b.q_;
    return a.c_ == b.c_;
  }

  /// Literal form: integers for F_p, "num/den" for Q, coefficient lists for F_{p^k}.
  std::string to_string() const {
    if (!f_->is_finite()) return q_.str();
    if (f_->degree() == 1) return std::to_string(c_[0]);
    std::string s = "[";
    for (int i = 0; i < f_->degree(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
    return s + "]";
  }

 private:
  explicit Scalar(FieldPtr f) : f_(std::move(f)) {
    if (!f_) throw std::invalid_argument("scalar without field");
  }

  void check(const Scalar& b) const {
    if (f_.get() != b.f_.get() && !same_field(f_, b.f_)) throw PreconditionError("arithmetic across different fields needs an explicit embedding");
  }

  FieldPtr f_;
  std::array<std::uint32_t, kMaxExtensionDegree> c_{};
  Rational q_;
};

}  // namespace lcx
