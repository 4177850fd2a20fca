// Multivariate polynomials, binary forms, and common zeros of ternary forms
// by resultant elimination after a random projective change of coordinates.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "lcx/matrix.hpp"

namespace lcx {

using Exponent = std::vector<int>;

class MPoly {
 public:
  MPoly(FieldPtr f, int nvars) : f_(std::move(f)), n_(nvars) {}

  static MPoly constant(const Scalar& c, int nvars) {
    MPoly p(c.field(), nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  static MPoly var(FieldPtr f, int nvars, int i) {
    MPoly p(f, nvars);
    Exponent e(nvars, 0);
    e[i] = 1;
    p.add_term(e, Scalar::one(f));
    return p;
  }

  /// sum_j coeffs[j] * x_j
  static MPoly linear(FieldPtr f, const std::vector<Scalar>& coeffs) {
    MPoly p(f, static_cast<int>(coeffs.size()));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      Exponent e(coeffs.size(), 0);
      e[j] = 1;
      p.add_term(e, coeffs[j]);
    }
    return p;
  }

  void add_term(const Exponent& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  const FieldPtr& field() const { return f_; }
  int nvars() const { return n_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<Exponent, Scalar, std::greater<>>& terms() const { return t_; }

  Scalar coeff(const Exponent& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Scalar::zero(f_) : it->second;
  }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  Scalar operator()(const std::vector<Scalar>& x) const {
    Scalar acc = Scalar::zero(f_);
    for (const auto& [e, c] : t_) {
      Scalar m = c;
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < e[i]; ++k) m *= x[i];
      acc += m;
    }
    return acc;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) {
    for (const auto& [e, c] : b.t_) a.add_term(e, c);
    return a;
  }
  friend MPoly operator*(const Scalar& s, const MPoly& a) {
    MPoly r(a.f_, a.n_);
    for (const auto& [e, c] : a.t_) r.add_term(e, s * c);
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + Scalar::from_int(b.f_, -1) * b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(a.f_, a.n_);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        Exponent e(a.n_);
        for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

  MPoly partial(int i) const {
    MPoly r(f_, n_);
    for (const auto& [e, c] : t_) {
      if (e[i] == 0) continue;
      Exponent d = e;
      --d[i];
      r.add_term(d, Scalar::from_int(f_, e[i]) * c);
    }
    return r;
  }

  /// Substitute x_i := images[i] (all images share a variable count).
  MPoly substitute(const std::vector<MPoly>& images) const {
    const int m = images.front().nvars();
    MPoly r(f_, m);
    std::vector<std::vector<MPoly>> pow(n_);
    for (const auto& [e, c] : t_) {
      MPoly term = constant(c, m);
      for (int i = 0; i < n_; ++i) {
        if (e[i] == 0) continue;
        while (static_cast<int>(pow[i].size()) <= e[i]) pow[i].push_back(pow[i].empty() ? constant(Scalar::one(f_), m) : pow[i].back() * images[i]);
        term = term * pow[i][e[i]];
      }
      r = r + term;
    }
    return r;
  }

  MPoly embedded(const Embedding& emb) const {
    MPoly r(emb.to(), n_);
    for (const auto& [e, c] : t_) r.add_term(e, emb(c));
    return r;
  }

 private:
  FieldPtr f_;
  int n_;
  std::map<Exponent, Scalar, std::greater<>> t_;
};

/// Monomials of the given degree in descending lexicographic exponent order
/// (for three variables and degree 3: x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, ...).
inline std::vector<Exponent> monomials(int nvars, int degree) {
  std::vector<Exponent> out;
  Exponent e(nvars, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == nvars - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

inline MPoly form_from_coefficients(FieldPtr f, int nvars, int degree, const std::vector<Scalar>& coeffs) {
  const auto mons = monomials(nvars, degree);
  if (coeffs.size() != mons.size()) throw PreconditionError("wrong number of form coefficients");
  MPoly p(f, nvars);
  for (std::size_t i = 0; i < mons.size(); ++i) p.add_term(mons[i], coeffs[i]);
  return p;
}

inline std::vector<Scalar> form_coefficients(const MPoly& p, int degree) {
  std::vector<Scalar> out;
  for (const auto& e : monomials(p.nvars(), degree)) out.push_back(p.coeff(e));
  return out;
}

/// Linear change of variables x = M y.
inline MPoly change_coordinates(const MPoly& p, const Matrix& m) {
  std::vector<MPoly> images;
  for (int i = 0; i < m.rows(); ++i) images.push_back(MPoly::linear(p.field(), m.row(i)));
  return p.substitute(images);
}

/// Scales a projective point so that its first nonzero coordinate is 1.
inline std::vector<Scalar> normalize_point(std::vector<Scalar> v) {
  for (const auto& x : v)
    if (!x.is_zero()) {
      const Scalar inv = x.inverse();
      for (auto& y : v) y *= inv;
      return v;
    }
  throw PreconditionError("the zero vector is not a projective point");
}

// ---------------------------------------------------------------- binary forms

/// A root (s:t) of a binary form with multiplicity; s, t live in `field` of the owning set.
struct ProjRoot {
  Scalar s, t;
  int multiplicity;
};

struct BinaryRootSet {
  FieldPtr field;
  std::optional<Embedding> embedding;
  std::vector<ProjRoot> roots;
  int total_multiplicity() const {
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
  }
};

/// Roots of the binary form sum_i c[i] s^i t^(d-i), d = c.size()-1, not identically zero.
/// The root (1:0) has multiplicity equal to the degree drop of c in s.
inline BinaryRootSet binary_form_roots(const std::vector<Scalar>& c, bool allow_extension, Rng& rng) {
  const FieldPtr f = c.front().field();
  const int d = static_cast<int>(c.size()) - 1;
  UniPoly g(f, c);
  if (g.is_zero()) throw PreconditionError("binary form vanishes identically");
  const int at_infinity = d - g.degree();
  BinaryRootSet out{f, std::nullopt, {}};
  if (g.degree() >= 1) {
    RootSet rs = poly_roots(g, allow_extension, rng);
    out.field = rs.field;
    out.embedding = rs.embedding;
    for (const auto& r : rs.roots) out.roots.push_back({r.value, Scalar::one(rs.field), r.multiplicity});
  }
  if (at_infinity > 0) out.roots.push_back({Scalar::one(out.field), Scalar::zero(out.field), at_infinity});
  return out;
}

/// Restriction of a ternary form of degree d to the line s*P + t*Q, as binary coefficients (power of s).
inline std::vector<Scalar> restrict_to_line(const MPoly& form, int degree, const std::vector<Scalar>& p, const std::vector<Scalar>& q) {
  const FieldPtr& f = form.field();
  std::vector<MPoly> images;
  for (std::size_t i = 0; i < p.size(); ++i) images.push_back(MPoly::linear(f, {p[i], q[i]}));
  const MPoly b = form.substitute(images);
  std::vector<Scalar> out;
  for (int i = 0; i <= degree; ++i) out.push_back(b.coeff({i, degree - i}));
  return out;
}

// ---------------------------------------------------------------- elimination

namespace detail {

/// Coefficients in y of p(x, y, 1), each a polynomial in x.
inline std::vector<UniPoly> y_coefficients(const MPoly& p) {
  std::vector<UniPoly> out;
  for (const auto& [e, c] : p.terms()) {
    while (static_cast<int>(out.size()) <= e[1]) out.push_back(UniPoly(p.field(), {}));
    std::vector<Scalar> mono(static_cast<std::size_t>(e[0]) + 1, Scalar::zero(p.field()));
    mono.back() = c;
    out[e[1]] = out[e[1]] + UniPoly(p.field(), mono);
  }
  return out;
}

/// Sylvester resultant in y of p(x,y,1) and q(x,y,1); p must have a nonzero constant y-leading coefficient.
inline UniPoly resultant_y(const MPoly& p, const MPoly& q) {
  const auto a = y_coefficients(p), b = y_coefficients(q);
  const FieldPtr& f = p.field();
  const int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
  const UniPoly zero(f, {}), one = UniPoly::constant(Scalar::one(f));
  if (db < 0) return zero;
  if (db == 0) {
    UniPoly r = one;
    for (int i = 0; i < da; ++i) r = r * b[0];
    return r;
  }
  const int n = da + db;
  std::vector<std::vector<UniPoly>> s(n, std::vector<UniPoly>(n, zero));
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) s[r][r + k] = a[da - k];
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k) s[db + r][r + k] = b[db - k];
  return laplace_determinant(s, zero, one);
}

/// p(x0, y, 1) as a polynomial in y over x0's field.
inline UniPoly fibre_poly(const MPoly& p, const Scalar& x0) {
  const auto ys = y_coefficients(p);
  std::vector<Scalar> c;
  for (const auto& u : ys) c.push_back(u.is_zero() ? Scalar::zero(x0.field()) : u(x0));
  return UniPoly(x0.field(), c);
}

/// p(x, 1, 0) as a polynomial in x.
inline UniPoly infinity_poly(const MPoly& p) {
  std::vector<Scalar> c;
  for (const auto& [e, v] : p.terms()) {
    if (e[2] != 0) continue;
    while (static_cast<int>(c.size()) <= e[0]) c.push_back(Scalar::zero(p.field()));
    c[e[0]] += v;
  }
  return UniPoly(p.field(), c);
}

inline Matrix random_invertible(const FieldPtr& f, int n, Rng& rng) {
  for (;;) {
    Matrix m = Matrix::random(f, n, n, rng);
    if (!determinant(m).is_zero()) return m;
  }
}

/// gcd of a list of polynomials (zero polynomials are skipped); zero if all are zero.
inline UniPoly gcd_all(const std::vector<UniPoly>& ps) {
  std::optional<UniPoly> g;
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    g = g ? gcd(*g, p) : p.monic();
  }
  return g ? *g : UniPoly(ps.front().field(), {});
}

/// Roots of g (deg >= 1) in the first field F_{q^e}, e = 1..deg g, where each
/// lies; the callback receives the roots found in each field together with
/// the embedding of the base field. Returns false if some roots could not be
/// reached (rationals with irrational roots).
template <class Visit>
bool visit_all_roots(const UniPoly& g, Rng& rng, const Visit& visit) {
  const FieldPtr& f = g.field();
  std::vector<Root> base = roots_in_field(g, rng);
  int found = 0;
  for (const auto& r : base) found += r.multiplicity;
  if (!base.empty() && visit(Embedding::identity(f), base)) return true;
  if (found == g.degree()) return true;
  if (!f->is_finite()) return false;
  for (int e = 2; e <= g.degree(); ++e) {
    Extension ext = field_extend(f, e);
    auto rs = roots_in_field(ext.embedding(g), rng);
    std::vector<Root> fresh;
    for (const auto& r : rs)
      if (!ext.embedding.preimage(r.value)) fresh.push_back(r);
    if (!fresh.empty() && visit(ext.embedding, fresh)) return true;
  }
  return true;
}

}  // namespace detail

struct CommonZeroReport {
  bool exists = false;
  bool fixed_component = false;  // all generic combinations share a curve
  FieldPtr witness_field;
  std::optional<std::vector<Scalar>> witness;  // a common zero, over witness_field
  std::optional<Embedding> witness_embedding;  // base field -> witness_field
  int attempts = 0;
};

/// Decides whether nonzero ternary forms have a common projective zero over the
/// algebraic closure of a finite field; over Q the answer is exact when the
/// eliminant has no irrational roots, otherwise a PreconditionError is raised.
inline CommonZeroReport common_zeros(const std::vector<MPoly>& forms_in, Rng& rng, int max_attempts = 40) {
  std::vector<MPoly> forms;
  for (const auto& p : forms_in)
    if (!p.is_zero()) forms.push_back(p);
  if (forms.empty()) throw PreconditionError("common_zeros needs a nonzero form");
  const FieldPtr f = forms.front().field();
  CommonZeroReport rep;
  rep.witness_field = f;
  int min_deg = forms.front().degree();
  for (const auto& p : forms) min_deg = std::min(min_deg, p.degree());
  if (min_deg == 0) return rep;
  std::vector<int> degrees;
  for (const auto& p : forms)
    if (std::find(degrees.begin(), degrees.end(), p.degree()) == degrees.end()) degrees.push_back(p.degree());

  auto combo = [&](const std::vector<MPoly>& fs, int deg) {
    MPoly r(f, 3);
    for (const auto& p : fs)
      if (p.degree() == deg) r = r + Scalar::random(f, rng) * p;
    return r;
  };

  int shared = 0;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    rep.attempts = attempt + 1;
    const Matrix m = detail::random_invertible(f, 3, rng);
    std::vector<MPoly> t;
    for (const auto& p : forms) t.push_back(change_coordinates(p, m));
    const MPoly pivot = combo(t, min_deg);
    if (pivot({Scalar::zero(f), Scalar::one(f), Scalar::zero(f)}).is_zero()) continue;
    std::vector<UniPoly> res;
    bool nonzero = false;
    for (int deg : degrees)
      for (int k = 0; k < 2; ++k) {
        const MPoly q = combo(t, deg);
        if (q.is_zero()) continue;
        res.push_back(detail::resultant_y(pivot, q));
        nonzero = nonzero || !res.back().is_zero();
      }
    if (!nonzero) {
      if (forms.size() == 1 || ++shared >= 8) {
        rep.exists = true;
        rep.fixed_component = true;
        return rep;
      }
      continue;
    }
    for (const auto& q : t) res.push_back(detail::resultant_y(pivot, q));
    const UniPoly g = detail::gcd_all(res);

    auto record = [&](const Embedding& emb, std::vector<Scalar> pt) {
      rep.exists = true;
      rep.witness_field = emb.to();
      rep.witness_embedding = emb;
      rep.witness = normalize_point(m.embedded(emb).apply(pt));
    };

    bool complete = true;
    if (g.degree() >= 1) {
      complete = detail::visit_all_roots(g, rng, [&](const Embedding& emb, const std::vector<Root>& roots) {
        for (const auto& r : roots) {
          std::vector<UniPoly> fib;
          for (const auto& q : t) fib.push_back(detail::fibre_poly(q.embedded(emb), r.value));
          const UniPoly h = detail::gcd_all(fib);
          if (h.is_zero() || h.degree() < 1) continue;
          rep.exists = true;
          auto ys = roots_in_field(h, rng);
          if (!ys.empty()) record(emb, {r.value, ys.front().value, Scalar::one(emb.to())});
          return true;
        }
        return false;
      });
      if (rep.exists) return rep;
    }
    std::vector<UniPoly> inf;
    for (const auto& q : t) inf.push_back(detail::infinity_poly(q));
    const UniPoly gi = detail::gcd_all(inf);
    if (gi.degree() >= 1) {
      rep.exists = true;
      detail::visit_all_roots(gi, rng, [&](const Embedding& emb, const std::vector<Root>& roots) {
        record(emb, {roots.front().value, Scalar::one(emb.to()), Scalar::zero(emb.to())});
        return true;
      });
      return rep;
    }
    if (!complete) throw PreconditionError("common zero test over Q met irrational candidates");
    return rep;
  }
  throw PreconditionError("no usable projection centre found for the common zero test");
}

/// A rational intersection point with its intersection multiplicity.
struct IntersectionPoint {
  std::vector<Scalar> point;
  int multiplicity;
};

struct CurveIntersection {
  std::vector<IntersectionPoint> points;
  int irrational_degree = 0;  // Bezout total minus the rational multiplicities
};

/// Intersection of two plane curves without common component: rational points
/// with multiplicities, via a projection centre off both curves and off every
/// line joining two intersection points.
inline CurveIntersection intersect_curves(const MPoly& a, const MPoly& b, Rng& rng, int max_attempts = 200) {
  const FieldPtr f = a.field();
  const int da = a.degree(), db = b.degree();
  if (da < 1 || db < 1) throw PreconditionError("curves must have positive degree");
  const std::vector<Scalar> centre{Scalar::zero(f), Scalar::one(f), Scalar::zero(f)};
  int zero_res = 0;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const Matrix m = detail::random_invertible(f, 3, rng);
    const MPoly ta = change_coordinates(a, m), tb = change_coordinates(b, m);
    if (ta(centre).is_zero() || tb(centre).is_zero()) continue;
    const UniPoly r = detail::resultant_y(ta, tb);
    if (r.is_zero()) {
      if (++zero_res >= 3) throw PreconditionError("curves share a component");
      continue;
    }
    if (r.degree() != da * db) continue;  // an intersection point on the line at infinity
    CurveIntersection out;
    bool ok = true;
    int rational = 0;
    for (const auto& root : roots_in_field(r, rng)) {
      const UniPoly h = gcd(detail::fibre_poly(ta, root.value), detail::fibre_poly(tb, root.value));
      const auto ys = h.degree() >= 1 ? roots_in_field(h, rng) : std::vector<Root>{};
      if (ys.size() != 1 || ys.front().multiplicity != h.degree()) {
        ok = false;
        break;
      }
      out.points.push_back({normalize_point(m.apply({root.value, ys.front().value, Scalar::one(f)})), root.multiplicity});
      rational += root.multiplicity;
    }
    if (!ok) continue;
    out.irrational_degree = da * db - rational;
    return out;
  }
  throw PreconditionError("no generic projection centre found for curve intersection");
}

}  // namespace lcx
