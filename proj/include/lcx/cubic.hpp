// Plane cubics with a marked base point: chord-tangent group law, divisor
// classes of any degree, 2-torsion, halving, and polar-conic contact.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "lcx/mpoly.hpp"

namespace lcx {

using Point2 = std::vector<Scalar>;  // projective point of P^2, first nonzero coordinate 1

inline const std::vector<Exponent>& cubic_monomials() {
  static const std::vector<Exponent> m = monomials(3, 3);
  return m;
}

class PlaneCubic {
 public:
  /// Coefficients in the wire order x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
  PlaneCubic(FieldPtr f, std::vector<Scalar> coeffs, Point2 base) : f_(std::move(f)), c_(std::move(coeffs)) {
    if (c_.size() != 10) throw PreconditionError("a plane cubic has 10 coefficients");
    bool zero = true;
    for (const auto& x : c_) zero = zero && x.is_zero();
    if (zero) throw PreconditionError("the zero polynomial is not a cubic");
    o_ = normalize_point(std::move(base));
    if (!(*this)(o_).is_zero()) throw PreconditionError("base point is not on the cubic");
  }

  /// Cubic with a base point chosen as the first rational point found.
  static PlaneCubic with_some_base_point(FieldPtr f, std::vector<Scalar> coeffs);

  const FieldPtr& field() const { return f_; }
  const std::vector<Scalar>& coefficients() const { return c_; }
  const Point2& base_point() const { return o_; }

  Scalar operator()(const Point2& p) const {
    const Scalar &x = p[0], &y = p[1], &z = p[2];
    const Scalar xx = x * x, yy = y * y, zz = z * z;
    return c_[0] * xx * x + c_[1] * xx * y + c_[2] * xx * z + c_[3] * x * yy + c_[4] * x * y * z + c_[5] * x * zz + c_[6] * yy * y + c_[7] * yy * z +
           c_[8] * y * zz + c_[9] * zz * z;
  }

  std::array<Scalar, 3> gradient(const Point2& p) const {
    const Scalar &x = p[0], &y = p[1], &z = p[2];
    const Scalar two = Scalar::from_int(f_, 2), three = Scalar::from_int(f_, 3);
    return {three * c_[0] * x * x + two * c_[1] * x * y + two * c_[2] * x * z + c_[3] * y * y + c_[4] * y * z + c_[5] * z * z,
            c_[1] * x * x + two * c_[3] * x * y + c_[4] * x * z + three * c_[6] * y * y + two * c_[7] * y * z + c_[8] * z * z,
            c_[2] * x * x + c_[4] * x * y + two * c_[5] * x * z + c_[7] * y * y + two * c_[8] * y * z + three * c_[9] * z * z};
  }

  MPoly form() const { return form_from_coefficients(f_, 3, 3, c_); }

  PlaneCubic embedded(const Embedding& e) const {
    std::vector<Scalar> c;
    for (const auto& x : c_) c.push_back(e(x));
    Point2 o;
    for (const auto& x : o_) o.push_back(e(x));
    return PlaneCubic(e.to(), c, o);
  }

  PlaneCubic with_base_point(const Point2& o) const { return PlaneCubic(f_, c_, o); }

  void require_on_curve(const Point2& p) const {
    if (!(*this)(p).is_zero()) throw PreconditionError("point is not on the cubic");
  }

  /// Coefficients b[i] of s^i t^(3-i) in F(sP + tQ), using four evaluations (odd characteristic).
  std::array<Scalar, 4> on_line(const Point2& p, const Point2& q) const {
    Point2 plus(3), minus(3);
    for (int i = 0; i < 3; ++i) {
      plus[i] = p[i] + q[i];
      minus[i] = p[i] - q[i];
    }
    const Scalar b3 = (*this)(p), b0 = (*this)(q), fp = (*this)(plus), fm = (*this)(minus);
    const Scalar half = Scalar::from_int(f_, 2).inverse();
    // F(P + uQ) = b3 + b2 u + b1 u^2 + b0 u^3
    return {b0, half * (fp + fm) - b3, half * (fp - fm) - b0, b3};
  }

  /// A point on the tangent line at p, different from p.
  Point2 tangent_direction(const Point2& p) const {
    const auto g = gradient(p);
    if (g[0].is_zero() && g[1].is_zero() && g[2].is_zero()) throw PreconditionError("singular point of the cubic");
    // Two independent solutions of g . x = 0; at least one differs from p.
    const std::array<Point2, 3> cands{Point2{g[1], -g[0], Scalar::zero(f_)}, Point2{g[2], Scalar::zero(f_), -g[0]}, Point2{Scalar::zero(f_), g[2], -g[1]}};
    for (const auto& c : cands) {
      if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero()) continue;
      if (!same_point(c, p)) return normalize_point(c);
    }
    throw InconsistencyError("tangent line degenerate");
  }

  /// The third intersection of the line PQ (the tangent at P when P = Q) with the cubic.
  Point2 third(const Point2& p, const Point2& q) const {
    if (same_point(p, q)) {
      const Point2 d = tangent_direction(p);
      const auto b = on_line(p, d);  // b[3] = b[2] = 0
      return combine(p, d, b[0], -b[1]);
    }
    const auto b = on_line(p, q);  // b[3] = b[0] = 0
    return combine(p, q, b[1], -b[2]);
  }

  Point2 add(const Point2& p, const Point2& q) const { return third(third(p, q), o_); }
  Point2 neg(const Point2& p) const { return third(p, third(o_, o_)); }
  Point2 sub(const Point2& p, const Point2& q) const { return add(p, neg(q)); }
  Point2 dbl(const Point2& p) const { return add(p, p); }

  Point2 mul(std::int64_t n, const Point2& p) const {
    Point2 acc = o_, base = n < 0 ? neg(p) : p;
    for (std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n); k; k >>= 1) {
      if (k & 1) acc = add(acc, base);
      base = dbl(base);
    }
    return acc;
  }

  static bool same_point(const Point2& a, const Point2& b) {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
  }

 private:
  Point2 combine(const Point2& p, const Point2& q, const Scalar& s, const Scalar& t) const {
    Point2 r(3);
    for (int i = 0; i < 3; ++i) r[i] = s * p[i] + t * q[i];
    for (const auto& x : r)
      if (!x.is_zero()) return normalize_point(r);
    throw PreconditionError("line is a component of the cubic");
  }

  FieldPtr f_;
  std::vector<Scalar> c_;
  Point2 o_;
};

/// All points of the cubic over its field (finite fields only).
inline std::vector<Point2> rational_points(const FieldPtr& f, const std::vector<Scalar>& c, Rng& rng) {
  if (!f->is_finite()) throw PreconditionError("point enumeration needs a finite field");
  const Scalar zero = Scalar::zero(f), one = Scalar::one(f);
  std::vector<Point2> out;
  const auto& mons = cubic_monomials();
  for (std::uint64_t i = 0; i < f->order(); ++i) {
    const Scalar x = Scalar::from_index(f, i);
    std::vector<Scalar> yc(4, zero);
    for (std::size_t k = 0; k < 10; ++k) {
      if (c[k].is_zero()) continue;
      Scalar m = c[k];
      for (int a = 0; a < mons[k][0]; ++a) m *= x;
      yc[mons[k][1]] += m;
    }
    UniPoly g(f, yc);
    if (g.is_zero()) {
      for (std::uint64_t j = 0; j < f->order(); ++j) out.push_back({x, Scalar::from_index(f, j), one});
      continue;
    }
    if (g.degree() < 1) continue;
    for (const auto& r : roots_in_field(g, rng)) out.push_back({x, r.value, one});
  }
  // line z = 0: points (x : 1 : 0) and (1 : 0 : 0)
  std::vector<Scalar> xc(4, zero);
  for (std::size_t k = 0; k < 10; ++k)
    if (mons[k][2] == 0) xc[mons[k][0]] += c[k];
  UniPoly h(f, xc);
  if (h.is_zero()) {
    for (std::uint64_t j = 0; j < f->order(); ++j) out.push_back({Scalar::from_index(f, j), one, zero});
  } else if (h.degree() >= 1) {
    for (const auto& r : roots_in_field(h, rng)) out.push_back({r.value, one, zero});
  }
  if (c[0].is_zero()) out.push_back({one, zero, zero});
  for (auto& p : out) p = normalize_point(p);
  return out;
}

inline std::vector<Point2> rational_points(const PlaneCubic& c, Rng& rng) { return rational_points(c.field(), c.coefficients(), rng); }

inline PlaneCubic PlaneCubic::with_some_base_point(FieldPtr f, std::vector<Scalar> coeffs) {
  Rng rng(0xc0be);
  const auto pts = rational_points(f, coeffs, rng);
  if (pts.empty()) throw PreconditionError("cubic has no rational point to serve as base point");
  return PlaneCubic(f, std::move(coeffs), pts.front());
}

// ---------------------------------------------------------------- smoothness

struct SmoothnessReport {
  bool smooth;
  std::optional<Point2> singular_point;  // over witness_field when found
  FieldPtr witness_field;
  int attempts;
};

/// is_smooth: no common zero of F and its three partials over the algebraic closure.
inline SmoothnessReport is_smooth(const PlaneCubic& c, Rng& rng) {
  const MPoly f = c.form();
  const auto rep = common_zeros({f, f.partial(0), f.partial(1), f.partial(2)}, rng);
  return {!rep.exists, rep.witness, rep.witness_field, rep.attempts};
}

// ---------------------------------------------------------------- line sections

struct DivisorPoint {
  Point2 point;
  int multiplicity;
};

struct LineSection {
  FieldPtr field;
  std::optional<Embedding> embedding;
  std::vector<DivisorPoint> points;
  int degree() const {
    int d = 0;
    for (const auto& p : points) d += p.multiplicity;
    return d;
  }
};

/// Two points spanning the line {a . x = 0} of P^2.
inline std::pair<Point2, Point2> line_points(const std::vector<Scalar>& a) {
  const Matrix k = rank_kernel(Matrix::from_rows(a.front().field(), {a}, 3)).kernel;
  if (k.rows() != 2) throw PreconditionError("not a line: the linear form vanishes");
  return {k.row(0), k.row(1)};
}

/// line_section: the degree-3 intersection divisor of the cubic with the line a . x = 0,
/// over the smallest extension where it splits.
inline LineSection line_section(const PlaneCubic& c, const std::vector<Scalar>& a, Rng& rng) {
  const auto [p, q] = line_points(a);
  const auto b = c.on_line(p, q);
  const BinaryRootSet rs = binary_form_roots({b[0], b[1], b[2], b[3]}, c.field()->is_finite(), rng);
  LineSection out{rs.field, rs.embedding, {}};
  for (const auto& r : rs.roots) {
    Point2 pt(3);
    for (int i = 0; i < 3; ++i) {
      const Scalar pi = rs.embedding ? (*rs.embedding)(p[i]) : p[i];
      const Scalar qi = rs.embedding ? (*rs.embedding)(q[i]) : q[i];
      pt[i] = r.s * pi + r.t * qi;
    }
    out.points.push_back({normalize_point(pt), r.multiplicity});
  }
  if (out.degree() != 3) throw PreconditionError("line section does not split over the available extensions");
  return out;
}

// ---------------------------------------------------------------- divisor classes

/// The class [P] + (d - 1)[O] of degree d; every divisor class has exactly one such form.
struct DivisorClass {
  int degree;
  Point2 point;
  friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.degree == b.degree && PlaneCubic::same_point(a.point, b.point); }
};

inline DivisorClass class_of_point(const PlaneCubic& c, const Point2& p) {
  c.require_on_curve(p);
  return {1, normalize_point(p)};
}

inline DivisorClass zero_class(const PlaneCubic& c) { return {0, c.base_point()}; }

inline DivisorClass class_add(const PlaneCubic& c, const DivisorClass& a, const DivisorClass& b) { return {a.degree + b.degree, c.add(a.point, b.point)}; }
inline DivisorClass class_neg(const PlaneCubic& c, const DivisorClass& a) { return {-a.degree, c.neg(a.point)}; }
inline DivisorClass class_sub(const PlaneCubic& c, const DivisorClass& a, const DivisorClass& b) { return class_add(c, a, class_neg(c, b)); }
inline bool class_eq(const DivisorClass& a, const DivisorClass& b) { return a == b; }

/// Class of a formal divisor sum n_i [P_i].
inline DivisorClass class_of_divisor(const PlaneCubic& c, const std::vector<DivisorPoint>& d) {
  DivisorClass acc = zero_class(c);
  for (const auto& p : d) {
    c.require_on_curve(p.point);
    acc = class_add(c, acc, {p.multiplicity, c.mul(p.multiplicity, p.point)});
  }
  return acc;
}

/// The hyperplane class H_C: any line section, reduced to [S] + 2[O] with S the third point of the tangent at O.
inline DivisorClass hyperplane_class(const PlaneCubic& c) { return {3, c.third(c.base_point(), c.base_point())}; }

// ---------------------------------------------------------------- 2-torsion, halving

struct TwoTorsion {
  std::vector<DivisorClass> classes;  // degree 0
  bool full() const { return classes.size() == 4; }
};

inline TwoTorsion two_torsion(const PlaneCubic& c, Rng& rng) {
  TwoTorsion out;
  for (const auto& p : rational_points(c, rng))
    if (PlaneCubic::same_point(c.dbl(p), c.base_point())) out.classes.push_back({0, p});
  return out;
}

/// Doubling table of all rational points, reusable for repeated halvings.
class HalvingTable {
 public:
  HalvingTable(const PlaneCubic& c, Rng& rng) : c_(c) {
    for (const auto& p : rational_points(c, rng)) pairs_.emplace_back(p, c.dbl(p));
  }

  /// All rational P with 2([P] - [O]) = q, i.e. P + P = q in the group law.
  std::vector<Point2> halvings(const Point2& q) const {
    std::vector<Point2> out;
    for (const auto& [p, d] : pairs_)
      if (PlaneCubic::same_point(d, q)) out.push_back(p);
    return out;
  }

  const PlaneCubic& curve() const { return c_; }
  std::size_t point_count() const { return pairs_.size(); }

 private:
  PlaneCubic c_;
  std::vector<std::pair<Point2, Point2>> pairs_;
};

/// halvings: rational P with 2([P] - [O]) equal to the degree-0 class q.
inline std::vector<Point2> halvings(const PlaneCubic& c, const DivisorClass& q, Rng& rng) {
  if (q.degree != 0) throw PreconditionError("halving needs a degree-0 class");
  return HalvingTable(c, rng).halvings(q.point);
}

// ---------------------------------------------------------------- polar conic

struct PolarContact {
  std::vector<Scalar> conic;            // x^2, xy, xz, y^2, yz, z^2
  std::vector<DivisorPoint> divisor;    // rational part of the degree-6 intersection
  std::vector<DivisorPoint> residual;   // divisor minus 2k
  int irrational_degree;
};

/// polar_contact: the polar conic sum k_i dF/dx_i, its intersection with the cubic,
/// and the residual after removing the tangency 2k.
inline PolarContact polar_contact(const PlaneCubic& c, const Point2& k, Rng& rng) {
  c.require_on_curve(k);
  const MPoly f = c.form();
  MPoly polar(c.field(), 3);
  for (int i = 0; i < 3; ++i) polar = polar + k[i] * f.partial(i);
  PolarContact out{form_coefficients(polar, 2), {}, {}, 0};
  const CurveIntersection in = intersect_curves(polar, f, rng);
  out.irrational_degree = in.irrational_degree;
  bool found_k = false;
  for (const auto& p : in.points) {
    out.divisor.push_back({p.point, p.multiplicity});
    int m = p.multiplicity;
    if (PlaneCubic::same_point(p.point, k)) {
      found_k = true;
      if (m < 2) throw InconsistencyError("polar conic is not tangent at its pole");
      m -= 2;
    }
    if (m > 0) out.residual.push_back({p.point, m});
  }
  if (!found_k) throw InconsistencyError("polar conic misses its pole");
  return out;
}

}  // namespace lcx
