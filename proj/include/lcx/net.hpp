// Degeneracy loci of m skew forms on P^n, and nets of complexes in P^5:
// the Pfaffian plane cubic, the elliptic scroll X, point counts, degree
// probes, directrix planes, restricted fibres and the net type.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcx/cubic.hpp"
#include "lcx/pencil.hpp"

namespace lcx {

/// m independent skew forms of order n+1.
class GenericMorphism {
 public:
  GenericMorphism(int n, std::vector<SkewMatrix> mats) : n_(n), mats_(std::move(mats)) {
    if (mats_.empty() || static_cast<int>(mats_.size()) > n_) throw PreconditionError("need 1 <= m <= n skew matrices");
    std::vector<std::vector<Scalar>> rows;
    for (const auto& a : mats_) {
      if (a.order() != n_ + 1) throw PreconditionError("matrix order must be n+1");
      if (!same_field(a.field(), mats_.front().field())) throw PreconditionError("matrices over different fields");
      std::vector<Scalar> flat;
      for (int i = 0; i <= n_; ++i)
        for (int j = i + 1; j <= n_; ++j) flat.push_back(a(i, j));
      rows.push_back(flat);
    }
    if (rank(Matrix::from_rows(field(), rows, (n_ + 1) * n_ / 2)) != static_cast<int>(mats_.size())) throw PreconditionError("matrices are dependent");
  }

  static GenericMorphism random(const FieldPtr& f, int n, int m, Rng& rng) {
    for (;;) {
      std::vector<SkewMatrix> ms;
      for (int i = 0; i < m; ++i) ms.push_back(SkewMatrix::random(f, n + 1, rng));
      try {
        return GenericMorphism(n, ms);
      } catch (const PreconditionError&) {
      }
    }
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(mats_.size()); }
  const FieldPtr& field() const { return mats_.front().field(); }
  const std::vector<SkewMatrix>& matrices() const { return mats_; }

  SkewMatrix combination(const std::vector<Scalar>& lambda) const {
    if (static_cast<int>(lambda.size()) != m()) throw PreconditionError("parameter vector has the wrong length");
    SkewMatrix s = SkewMatrix::zero(field(), n_ + 1);
    for (int i = 0; i < m(); ++i) s = s + lambda[i] * mats_[i];
    return s;
  }

 private:
  int n_;
  std::vector<SkewMatrix> mats_;
};

inline void require_nonzero(const std::vector<Scalar>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return;
  throw PreconditionError("the zero vector is not a projective point");
}

/// x_membership: the columns A_1 P, ..., A_m P are linearly dependent.
inline bool x_membership(const GenericMorphism& phi, const std::vector<Scalar>& p) {
  require_nonzero(p);
  if (static_cast<int>(p.size()) != phi.n() + 1) throw PreconditionError("point has the wrong number of coordinates");
  std::vector<std::vector<Scalar>> cols;
  for (const auto& a : phi.matrices()) cols.push_back(a.matrix().apply(p));
  return rank(Matrix::from_rows(phi.field(), cols, phi.n() + 1)) <= phi.m() - 1;
}

/// scroll_fiber: P(ker(sum lambda_i A_i)).
inline ProjSubspace scroll_fiber(const GenericMorphism& phi, const std::vector<Scalar>& lambda) {
  require_nonzero(lambda);
  const SkewMatrix s = phi.combination(lambda);
  if (phi.n() % 2 == 1 && !pfaffian(s).is_zero()) throw PreconditionError("parameter is off the Pfaffian hypersurface");
  return singular_space(s);
}

// ---------------------------------------------------------------- nets

class Net {
 public:
  Net(Complex a, Complex b, Complex c) : g_{std::move(a), std::move(b), std::move(c)} {
    for (const auto& x : g_)
      if (!same_field(x.field(), g_[0].field())) throw PreconditionError("net generators over different fields");
    if (rank(Matrix::from_rows(field(), {g_[0].coefficients(), g_[1].coefficients(), g_[2].coefficients()}, 15)) != 3) throw PreconditionError("net generators are dependent");
  }

  static Net random(const FieldPtr& f, Rng& rng) {
    for (;;) {
      try {
        return Net(Complex(SkewMatrix::random(f, 6, rng)), Complex(SkewMatrix::random(f, 6, rng)), Complex(SkewMatrix::random(f, 6, rng)));
      } catch (const PreconditionError&) {
      }
    }
  }

  const std::array<Complex, 3>& generators() const { return g_; }
  const FieldPtr& field() const { return g_[0].field(); }
  std::vector<SkewMatrix> matrices() const { return {g_[0].matrix(), g_[1].matrix(), g_[2].matrix()}; }
  GenericMorphism morphism() const { return GenericMorphism(5, matrices()); }

  SkewMatrix member(const std::vector<Scalar>& l) const { return l[0] * g_[0].matrix() + l[1] * g_[1].matrix() + l[2] * g_[2].matrix(); }

  Net embedded(const Embedding& e) const { return Net(g_[0].embedded(e), g_[1].embedded(e), g_[2].embedded(e)); }

  /// The plane of the dual P^14 spanned by the net.
  ProjSubspace plane() const { return dual_span({g_[0], g_[1], g_[2]}); }

 private:
  std::array<Complex, 3> g_;
};

/// Coefficients of Pf(l1 A1 + l2 A2 + l3 A3) in the cubic wire order.
inline std::vector<Scalar> net_cubic_coefficients(const Net& d) {
  const MPoly p = pfaffian_form(d.matrices(), {0, 1, 2, 3, 4, 5});
  return form_coefficients(p, 3);
}

/// net_pfaffian_cubic, with the first rational curve point as base point.
inline PlaneCubic net_pfaffian_cubic(const Net& d) {
  auto c = net_cubic_coefficients(d);
  bool zero = true;
  for (const auto& x : c) zero = zero && x.is_zero();
  if (zero) throw PreconditionError("the Pfaffian of the net vanishes identically");
  return PlaneCubic::with_some_base_point(d.field(), c);
}

inline ProjSubspace scroll_fiber(const Net& d, const std::vector<Scalar>& lambda) { return scroll_fiber(d.morphism(), lambda); }

// ---------------------------------------------------------------- counting

namespace detail {

/// Fast rank test over a prime field: rank of the 6x3 matrix [A1 P | A2 P | A3 P] <= 2.
struct PrimeScanner {
  std::uint64_t p;
  std::array<std::array<std::array<std::uint64_t, 6>, 6>, 3> a{};

  PrimeScanner(const Net& d) : p(d.field()->characteristic()) {
    const auto ms = d.matrices();
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) a[k][i][j] = ms[k](i, j).coeff(0);
  }

  bool member(const std::array<std::uint64_t, 6>& x) const {
    std::uint64_t m[3][6];
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 6; ++i) {
        std::uint64_t s = 0;
        for (int j = 0; j < 6; ++j) s += a[k][i][j] * x[j];
        m[k][i] = s % p;
      }
    // Gaussian elimination on three 6-vectors
    int r = 0;
    for (int col = 0; col < 6 && r < 3; ++col) {
      int piv = -1;
      for (int k = r; k < 3; ++k)
        if (m[k][col]) {
          piv = k;
          break;
        }
      if (piv < 0) continue;
      if (piv != r)
        for (int i = 0; i < 6; ++i) std::swap(m[piv][i], m[r][i]);
      const std::uint64_t inv = invmod(m[r][col], p);
      for (int k = r + 1; k < 3; ++k) {
        if (!m[k][col]) continue;
        const std::uint64_t fct = m[k][col] * inv % p;
        for (int i = 0; i < 6; ++i) m[k][i] = (m[k][i] + (p - fct) * m[r][i]) % p;
      }
      ++r;
    }
    return r <= 2;
  }
};

/// Calls visit(x) for each point of P^n(F_p) in normalized form (first nonzero = 1).
template <int N, class Visit>
void for_each_prime_point(std::uint64_t p, const Visit& visit) {
  std::array<std::uint64_t, N> x{};
  for (int lead = N - 1; lead >= 0; --lead) {
    // x[lead] = 1, x[<lead] = 0, x[>lead] free
    x.fill(0);
    x[lead] = 1;
    const int free = N - 1 - lead;
    std::uint64_t total = 1;
    for (int i = 0; i < free; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (int i = lead + 1; i < N; ++i) {
        x[i] = c % p;
        c /= p;
      }
      visit(x);
    }
  }
}

inline std::vector<Scalar> to_scalars(const FieldPtr& f, const std::uint64_t* x, int n) {
  std::vector<Scalar> v;
  for (int i = 0; i < n; ++i) v.push_back(Scalar::from_int(f, static_cast<std::int64_t>(x[i])));
  return v;
}

}  // namespace detail

inline constexpr std::uint64_t kMaxExhaustiveOrder = 11;

/// All points of P^2(F_q) on the Pfaffian cubic (finite fields).
inline std::vector<Point2> cubic_points(const Net& d, Rng& rng) { return rational_points(d.field(), net_cubic_coefficients(d), rng); }

struct ScrollCount {
  std::uint64_t x_count = 0;
  std::uint64_t c_count = 0;
  bool fibered = false;
  bool all_rank_four = true;       // every F_q-point of the cubic has rank exactly 4
  bool fibres_disjoint = true;     // no two F_q-fibres share a point
  std::uint64_t points_scanned = 0;
};

/// count_scroll_points: exhaustive scan of P^5(F_q), q <= 11.
inline ScrollCount count_scroll_points(const Net& d, Rng& rng) {
  const FieldPtr& f = d.field();
  if (!f->is_finite() || f->order() > kMaxExhaustiveOrder) throw PreconditionError("exhaustive scroll count needs a finite field with at most 11 elements");
  ScrollCount out;
  if (f->is_prime_field()) {
    const detail::PrimeScanner sc(d);
    detail::for_each_prime_point<6>(f->order(), [&](const std::array<std::uint64_t, 6>& x) {
      ++out.points_scanned;
      if (sc.member(x)) ++out.x_count;
    });
  } else {
    const GenericMorphism phi = d.morphism();
    const std::uint64_t q = f->order();
    for (int lead = 5; lead >= 0; --lead) {
      std::uint64_t total = 1;
      for (int i = lead + 1; i < 6; ++i) total *= q;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<Scalar> x(6, Scalar::zero(f));
        x[lead] = Scalar::one(f);
        std::uint64_t c = code;
        for (int i = lead + 1; i < 6; ++i) {
          x[i] = Scalar::from_index(f, c % q);
          c /= q;
        }
        ++out.points_scanned;
        if (x_membership(phi, x)) ++out.x_count;
      }
    }
  }
  const auto pts = cubic_points(d, rng);
  out.c_count = pts.size();
  std::vector<ProjSubspace> fibres;
  for (const auto& l : pts) {
    const SkewMatrix m = d.member(l);
    if (m.rank() != 4) {
      out.all_rank_four = false;
      continue;
    }
    fibres.push_back(singular_space(m));
  }
  for (std::size_t i = 0; i < fibres.size() && out.fibres_disjoint; ++i)
    for (std::size_t j = i + 1; j < fibres.size(); ++j)
      if (lines_meet(fibres[i], fibres[j])) {
        out.fibres_disjoint = false;
        break;
      }
  out.fibered = out.x_count == (f->order() + 1) * out.c_count;
  return out;
}

// ---------------------------------------------------------------- degree probe

struct FibreFamily {
  FieldPtr field;
  Embedding embedding;  // base -> field
  std::vector<Point2> params;
  std::vector<ProjSubspace> fibres;  // kernel of the member at params[i]
};

/// Fibres of the net over every point of the Pfaffian cubic over F_{q^e}.
inline FibreFamily fibres_over_extension(const Net& d, int e, Rng& rng) {
  Embedding emb = Embedding::identity(d.field());
  if (e > 1) {
    const Extension ext = field_extend(d.field(), e);
    emb = ext.embedding;
  }
  const Net big = e > 1 ? d.embedded(emb) : d;
  FibreFamily out{emb.to(), emb, {}, {}};
  for (const auto& l : rational_points(emb.to(), net_cubic_coefficients(big), rng)) {
    out.params.push_back(l);
    out.fibres.push_back(singular_space(big.member(l)));
  }
  return out;
}

struct ProbeCount {
  std::size_t points = 0;  // distinct points of X meet Lambda over the field
  bool non_generic = false;  // some fibre lies inside Lambda or is not a line
};

inline ProbeCount probe_space(const FibreFamily& fam, const ProjSubspace& lambda) {
  ProbeCount out;
  const ProjSubspace big = lambda.embedded(fam.embedding);
  std::set<std::string> seen;
  for (const auto& fb : fam.fibres) {
    if (fb.dim() != 1) out.non_generic = true;
    const ProjSubspace m = meet(fb, big);
    if (m.empty()) continue;
    if (m.dim() > 0) {
      out.non_generic = true;
      continue;
    }
    seen.insert(subspace_key(m));
  }
  out.points = seen.size();
  return out;
}

struct DegreeProbeTrial {
  std::array<std::size_t, 3> counts{};  // over F_q, F_{q^2}, F_{q^3}
  std::size_t stabilized = 0;           // points of degree 1, 2 or 3 over F_q
  bool non_generic = false;
};

/// degree_probe: intersections of X with random codimension-2 spaces.
inline std::vector<DegreeProbeTrial> degree_probe(const Net& d, int trials, Rng& rng) {
  if (!d.field()->is_finite()) throw PreconditionError("degree probe needs a finite field");
  std::array<FibreFamily, 3> fam{fibres_over_extension(d, 1, rng), fibres_over_extension(d, 2, rng), fibres_over_extension(d, 3, rng)};
  std::vector<DegreeProbeTrial> out;
  for (int t = 0; t < trials; ++t) {
    const ProjSubspace lambda = ProjSubspace::random(d.field(), 5, 3, rng);
    DegreeProbeTrial tr;
    for (int e = 0; e < 3; ++e) {
      const ProbeCount pc = probe_space(fam[e], lambda);
      tr.counts[e] = pc.points;
      tr.non_generic = tr.non_generic || pc.non_generic;
    }
    tr.stabilized = tr.counts[1] + tr.counts[2] - tr.counts[0];
    out.push_back(tr);
  }
  return out;
}

// ---------------------------------------------------------------- directrix planes

struct DirectrixReport {
  FieldPtr field;                     // field of the planes (base or its quadratic extension)
  std::optional<Embedding> embedding;  // base -> field when escalated
  std::vector<ProjSubspace> planes;
  bool infinite_family = false;
  std::array<ProjSubspace, 3> parameter_fibres;
};

inline bool isotropic(const std::vector<SkewMatrix>& forms, const ProjSubspace& w) {
  for (const auto& a : forms)
    for (int i = 0; i < w.basis().rows(); ++i)
      for (int j = i + 1; j < w.basis().rows(); ++j)
        if (!bilinear(a, w.basis_vector(i), w.basis_vector(j)).is_zero()) return false;
  return true;
}

namespace detail {

/// Solutions (s:t) of the 3 linear equations  a_k(x, s u + t v) = 0 (k over forms).
/// Returns nullopt if every (s:t) solves them.
inline std::optional<std::vector<std::array<Scalar, 2>>> solve_on_line(const std::vector<SkewMatrix>& forms, const std::vector<Scalar>& x, const std::vector<Scalar>& u,
                                                                       const std::vector<Scalar>& v) {
  const FieldPtr& f = u.front().field();
  std::vector<std::vector<Scalar>> rows;
  for (const auto& a : forms) rows.push_back({bilinear(a, x, u), bilinear(a, x, v)});
  const RankKernel rk = rank_kernel(Matrix::from_rows(f, rows, 2));
  if (rk.rank == 0) return std::nullopt;
  std::vector<std::array<Scalar, 2>> out;
  if (rk.rank == 1) out.push_back({rk.kernel(0, 0), rk.kernel(0, 1)});
  return out;
}

inline std::vector<Scalar> point_on(const ProjSubspace& l, const Scalar& s, const Scalar& t) {
  std::vector<Scalar> p(6);
  const auto u = l.basis_vector(0), v = l.basis_vector(1);
  for (int i = 0; i < 6; ++i) p[i] = s * u[i] + t * v[i];
  return p;
}

inline void for_each_p1_point(const FieldPtr& f, const std::function<void(const Scalar&, const Scalar&)>& visit) {
  visit(Scalar::one(f), Scalar::zero(f));
  for (std::uint64_t i = 0; i < f->order(); ++i) visit(Scalar::from_index(f, i), Scalar::one(f));
}

inline void directrix_search(const std::vector<SkewMatrix>& forms, const std::array<ProjSubspace, 3>& l, DirectrixReport& rep, std::size_t limit) {
  const FieldPtr& f = l[0].field();
  auto add_plane = [&](const std::vector<Scalar>& a, const std::vector<Scalar>& b, const std::vector<Scalar>& c) {
    const ProjSubspace w = ProjSubspace::from_vectors(f, {a, b, c}, 5);
    if (w.dim() != 2 || !isotropic(forms, w)) return;
    for (const auto& x : rep.planes)
      if (x == w) return;
    rep.planes.push_back(w);
  };
  for_each_p1_point(f, [&](const Scalar& s1, const Scalar& t1) {
    if (rep.planes.size() > limit) return;
    const auto p1 = point_on(l[0], s1, t1);
    const auto c2 = solve_on_line(forms, p1, l[1].basis_vector(0), l[1].basis_vector(1));
    const auto c3 = solve_on_line(forms, p1, l[2].basis_vector(0), l[2].basis_vector(1));
    if (c2 && c3) {
      for (const auto& a : *c2)
        for (const auto& b : *c3) add_plane(p1, point_on(l[1], a[0], a[1]), point_on(l[2], b[0], b[1]));
    } else if (c2 || c3) {
      // one of p2, p3 is free on its line: solve for it from the other
      const int fixed = c2 ? 1 : 2, free = c2 ? 2 : 1;
      for (const auto& a : c2 ? *c2 : *c3) {
        const auto pf = point_on(l[fixed], a[0], a[1]);
        const auto sol = solve_on_line(forms, pf, l[free].basis_vector(0), l[free].basis_vector(1));
        if (!sol) {
          rep.infinite_family = true;
          continue;
        }
        for (const auto& b : *sol) add_plane(p1, pf, point_on(l[free], b[0], b[1]));
      }
    } else {
      rep.infinite_family = true;
    }
  });
}

}  // namespace detail

/// Rational points of the Pfaffian cubic whose member has rank 4, with pairwise skew fibres.
inline std::vector<std::pair<Point2, ProjSubspace>> rank_four_fibres(const Net& d, Rng& rng, std::size_t want) {
  std::vector<std::pair<Point2, ProjSubspace>> out;
  auto pts = cubic_points(d, rng);
  std::shuffle(pts.begin(), pts.end(), rng);
  for (const auto& l : pts) {
    const SkewMatrix m = d.member(l);
    if (m.rank() != 4) continue;
    const ProjSubspace k = singular_space(m);
    bool skew = true;
    for (const auto& [p, o] : out) skew = skew && !lines_meet(o, k);
    if (!skew) continue;
    out.emplace_back(l, k);
    if (out.size() >= want) break;
  }
  return out;
}

inline constexpr std::size_t kDirectrixFamilyThreshold = 8;

/// directrix_planes: common isotropic planes of the three forms, found by
/// parametrizing a point on each of three fixed fibres. A plane whose three
/// marked points happen to be collinear is missed by one triple, so a fourth
/// fibre supplies two more triples. Escalates to F_{q^2} when fewer than two
/// planes are rational.
inline DirectrixReport directrix_planes(const Net& d, Rng& rng) {
  if (!d.field()->is_finite()) throw PreconditionError("directrix planes need a finite field");
  const auto fib = rank_four_fibres(d, rng, 4);
  if (fib.size() < 3) throw PreconditionError("fewer than three disjoint rational rank-4 fibres");
  auto search = [&](const FieldPtr& f, const std::optional<Embedding>& e) {
    const Net big = e ? d.embedded(*e) : d;
    std::vector<ProjSubspace> ls;
    for (const auto& [p, l] : fib) ls.push_back(e ? l.embedded(*e) : l);
    DirectrixReport rep{f, e, {}, false, {ls[0], ls[1], ls[2]}};
    const std::vector<std::array<int, 3>> triples{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}};
    for (const auto& [a, b, c] : triples) {
      if (c >= static_cast<int>(ls.size()) || rep.planes.size() >= 2 || rep.infinite_family) break;
      detail::directrix_search(big.matrices(), {ls[a], ls[b], ls[c]}, rep, kDirectrixFamilyThreshold);
    }
    return rep;
  };
  DirectrixReport rep = search(d.field(), std::nullopt);
  if (rep.planes.size() >= 2 || rep.infinite_family) return rep;
  const Extension ext = field_extend(d.field(), 2);
  return search(ext.field, ext.embedding);
}

/// Every sampled line of the plane lies in every given complex.
inline bool plane_lines_in_complexes(const ProjSubspace& plane, const std::vector<Complex>& cs, int samples, Rng& rng) {
  for (int i = 0; i < samples; ++i) {
    ProjSubspace l = ProjSubspace::from_vectors(plane.field(), {plane.random_point(rng), plane.random_point(rng)}, 5);
    if (l.dim() != 1) {
      --i;
      continue;
    }
    for (const auto& c : cs)
      if (!contains_line(c, l)) return false;
  }
  return true;
}

/// The plane meets the fibre in exactly one point.
inline bool unisecant(const ProjSubspace& plane, const ProjSubspace& fibre) { return meet(plane, fibre).dim() == 0; }

// ---------------------------------------------------------------- restricted fibres

/// Parameter of the net member whose kernel contains the line k, if any.
inline std::optional<std::vector<Scalar>> fibre_parameter(const Net& d, const ProjSubspace& k) {
  require_line_in_p5(k);
  const auto ms = d.matrices();
  Matrix eq(d.field(), 12, 3);
  for (int w = 0; w < 2; ++w)
    for (int c = 0; c < 3; ++c) {
      const auto col = ms[c].matrix().apply(k.basis_vector(w));
      for (int r = 0; r < 6; ++r) eq(6 * w + r, c) = col[r];
    }
  const Matrix ker = rank_kernel(eq).kernel;
  if (ker.rows() == 0) return std::nullopt;
  return ker.row(0);
}

struct RestrictedFibre {
  int projective_dim;
  Matrix basis;  // rows: 15-coefficient vectors of the members
  int lines_tested = 0;
  bool common_member_for_lines = false;  // some member contains every tested scroll line
};

/// restricted_fiber_dim: members of P^5_k containing all lines of every given plane,
/// then intersected with the conditions of containing the given scroll lines.
inline RestrictedFibre restricted_fiber_dim(const Net& d, const ProjSubspace& k, const std::vector<ProjSubspace>& planes, const std::vector<ProjSubspace>& scroll_lines) {
  if (!fibre_parameter(d, k)) throw PreconditionError("the line is not a fibre of the net's scroll");
  const FieldPtr& f = k.field();
  const Matrix fib = skew_annihilating(f, {k.basis_vector(0), k.basis_vector(1)});
  auto conditions_solution = [&](const std::vector<std::vector<Scalar>>& eqs) {
    // eqs: rows of a linear map on 15-vectors; restrict to the fibre basis
    Matrix m(f, static_cast<int>(eqs.size()), fib.rows());
    for (std::size_t r = 0; r < eqs.size(); ++r)
      for (int b = 0; b < fib.rows(); ++b) m(static_cast<int>(r), b) = pairing(fib.row(b), eqs[r]);
    return rank_kernel(m).kernel;
  };
  std::vector<std::vector<Scalar>> eqs;
  for (const auto& w : planes) {
    if (!same_field(w.field(), f)) throw PreconditionError("plane and line over different fields");
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) eqs.push_back(wedge(w.basis_vector(i), w.basis_vector(j)));
  }
  const Matrix sol = eqs.empty() ? Matrix::identity(f, fib.rows()) : conditions_solution(eqs);
  RestrictedFibre out{sol.rows() - 1, sol.rows() ? sol * fib : Matrix(f, 0, 15), 0, false};
  if (!scroll_lines.empty()) {
    for (const auto& l : scroll_lines) eqs.push_back(pluecker_of_line(l).coords());
    out.lines_tested = static_cast<int>(scroll_lines.size());
    out.common_member_for_lines = conditions_solution(eqs).rows() > 0;
  }
  return out;
}

// ---------------------------------------------------------------- net type

enum class NetType { general, contains_second_type };

inline std::string to_string(NetType t) { return t == NetType::general ? "general" : "contains-second-type"; }

struct NetTypeReport {
  NetType type;
  bool fixed_component = false;  // the rank <= 2 locus contains a curve
  FieldPtr witness_field;
  std::optional<std::vector<Scalar>> witness_parameter;  // lambda with rank <= 2, over witness_field
  std::optional<SkewMatrix> witness;
};

/// net_type: decides whether some member (over the algebraic closure) has rank <= 2,
/// i.e. whether the 15 sub-Pfaffian conics have a common zero.
inline NetTypeReport net_type(const Net& d, Rng& rng) {
  const auto forms = subpfaffian_forms(d.matrices());
  NetTypeReport out{NetType::general, false, d.field(), std::nullopt, std::nullopt};
  bool all_zero = true;
  for (const auto& q : forms) all_zero = all_zero && q.is_zero();
  if (all_zero) {
    out.type = NetType::contains_second_type;
    out.fixed_component = true;
    out.witness_parameter = std::vector<Scalar>{Scalar::one(d.field()), Scalar::zero(d.field()), Scalar::zero(d.field())};
    out.witness = d.generators()[0].matrix();
    return out;
  }
  // Check the generators and rational points first so witnesses stay rational when possible.
  for (int i = 0; i < 3; ++i)
    if (d.generators()[i].matrix().rank() <= 2) {
      std::vector<Scalar> l(3, Scalar::zero(d.field()));
      l[i] = Scalar::one(d.field());
      out.type = NetType::contains_second_type;
      out.witness_parameter = l;
      out.witness = d.generators()[i].matrix();
      return out;
    }
  const CommonZeroReport cz = common_zeros(forms, rng);
  if (!cz.exists) return out;
  out.type = NetType::contains_second_type;
  out.fixed_component = cz.fixed_component;
  if (cz.witness) {
    out.witness_field = cz.witness_field;
    out.witness_parameter = cz.witness;
    const Net big = cz.witness_embedding ? d.embedded(*cz.witness_embedding) : d;
    out.witness = big.member(*cz.witness);
  }
  return out;
}

/// Independent check by scanning the cubic's points over F_{q^e}, e = 1..3 (small fields).
inline bool has_rank2_point_by_scan(const Net& d, Rng& rng) {
  for (int e = 1; e <= 3; ++e) {
    const FibreFamily fam = fibres_over_extension(d, e, rng);
    for (const auto& f : fam.fibres)
      if (f.dim() >= 3) return true;
  }
  return false;
}

// ---------------------------------------------------------------- type-II locus

struct TypeTwoLocus {
  ProjSubspace three_space;
  std::uint64_t space_points = 0;
  std::uint64_t space_points_in_x = 0;
  std::uint64_t x_count = 0;         // all of X(F_q), when counted
  std::uint64_t off_space_points = 0;
  std::uint64_t off_space_on_fibres = 0;  // off-space points on a rank-4 fibre
  bool decomposition_holds = false;
};

/// type2_singular_locus_check: the singular 3-space of a second-type member lies in X,
/// and the remaining points of X(F_q) lie on rank-4 fibres.
inline TypeTwoLocus type2_singular_locus_check(const Net& d, Rng& rng) {
  const NetTypeReport nt = net_type(d, rng);
  if (nt.type != NetType::contains_second_type || !nt.witness || !same_field(nt.witness_field, d.field())) throw PreconditionError("net has no rational second-type member");
  const FieldPtr& f = d.field();
  if (!f->is_finite() || f->order() > kMaxExhaustiveOrder || !f->is_prime_field()) throw PreconditionError("type-II locus check scans P^5(F_p), p <= 11");
  TypeTwoLocus out{singular_space(*nt.witness)};
  const GenericMorphism phi = d.morphism();
  const Matrix basis = out.three_space.basis();
  const std::uint64_t p = f->order();
  detail::for_each_prime_point<4>(p, [&](const std::array<std::uint64_t, 4>& c) {
    std::vector<Scalar> x(6, Scalar::zero(f));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 6; ++j) x[j] += Scalar::from_int(f, static_cast<std::int64_t>(c[i])) * basis(i, j);
    ++out.space_points;
    if (x_membership(phi, x)) ++out.space_points_in_x;
  });
  const detail::PrimeScanner sc(d);
  detail::for_each_prime_point<6>(p, [&](const std::array<std::uint64_t, 6>& x) {
    if (!sc.member(x)) return;
    ++out.x_count;
    const auto v = detail::to_scalars(f, x.data(), 6);
    if (out.three_space.contains(v)) return;
    ++out.off_space_points;
    // lambda with (sum lambda_i A_i) x = 0
    Matrix cols(f, 6, 3);
    const auto ms = d.matrices();
    for (int k = 0; k < 3; ++k) {
      const auto col = ms[k].matrix().apply(v);
      for (int r = 0; r < 6; ++r) cols(r, k) = col[r];
    }
    const Matrix ker = rank_kernel(cols).kernel;
    for (int i = 0; i < ker.rows(); ++i)
      if (d.member(ker.row(i)).rank() == 4) {
        ++out.off_space_on_fibres;
        break;
      }
  });
  out.decomposition_holds = out.space_points_in_x == out.space_points && out.off_space_on_fibres == out.off_space_points;
  return out;
}

}  // namespace lcx
