// Pencils of linear complexes in P^5: the binary Pfaffian cubic, the singular
// lines of its special members, the four configurations of three lines, the
// plane sigma of a skew triple and the map alpha.
#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lcx/complex.hpp"
#include "lcx/mpoly.hpp"

namespace lcx {

class Pencil {
 public:
  Pencil(Complex a, Complex b) : a_(std::move(a)), b_(std::move(b)) {
    if (!same_field(a_.field(), b_.field())) throw PreconditionError("pencil generators live over different fields");
    if (rank(Matrix::from_rows(a_.field(), {a_.coefficients(), b_.coefficients()}, 15)) != 2) throw PreconditionError("pencil generators are dependent");
  }

  const Complex& first() const { return a_; }
  const Complex& second() const { return b_; }
  const FieldPtr& field() const { return a_.field(); }

  SkewMatrix member(const Scalar& s, const Scalar& t) const { return s * a_.matrix() + t * b_.matrix(); }

  Pencil embedded(const Embedding& e) const { return Pencil(a_.embedded(e), b_.embedded(e)); }

 private:
  Complex a_, b_;
};

/// Generic Pfaffian of sum_k x_k A_k as a form in the x_k (one variable per matrix).
inline MPoly pfaffian_form(const std::vector<SkewMatrix>& ms, const std::vector<int>& idx) {
  const FieldPtr& f = ms.front().field();
  const int nv = static_cast<int>(ms.size());
  auto entry = [&](int i, int j) {
    std::vector<Scalar> c;
    for (const auto& m : ms) c.push_back(m(i, j));
    return MPoly::linear(f, c);
  };
  return pfaffian_expand<MPoly>(idx, entry, MPoly(f, nv), MPoly::constant(Scalar::one(f), nv));
}

/// The 15 sub-Pfaffian forms (sign convention of subpfaffians()) of sum_k x_k A_k.
inline std::vector<MPoly> subpfaffian_forms(const std::vector<SkewMatrix>& ms) {
  std::vector<MPoly> out;
  for (auto [i, j] : kPairs) {
    std::vector<int> rest;
    for (int k = 0; k < 6; ++k)
      if (k != i && k != j) rest.push_back(k);
    MPoly p = pfaffian_form(ms, rest);
    if ((i + j + 1) % 2 != 0) p = Scalar::from_int(ms.front().field(), -1) * p;
    out.push_back(p);
  }
  return out;
}

/// Coefficients of Pf(s A1 + t A2) by power of s (index i = coefficient of s^i t^(3-i)).
inline std::vector<Scalar> binary_pfaffian_cubic(const Pencil& ph) {
  const MPoly p = pfaffian_form({ph.first().matrix(), ph.second().matrix()}, {0, 1, 2, 3, 4, 5});
  std::vector<Scalar> c;
  for (int i = 0; i <= 3; ++i) c.push_back(p.coeff({i, 3 - i}));
  return c;
}

struct SingularElement {
  Scalar s, t;  // the pencil parameter (s:t), over the reported field
  int multiplicity;
  Complex complex;
  ComplexClass cls;
};

struct PencilSingularElements {
  bool pfaffian_vanishes = false;  // the pencil lies inside the Pfaffian hypersurface
  FieldPtr field;
  std::optional<Embedding> embedding;
  std::vector<SingularElement> elements;
};

inline PencilSingularElements pencil_singular_elements(const Pencil& ph, bool allow_extension, Rng& rng) {
  PencilSingularElements out;
  out.field = ph.field();
  const auto cubic = binary_pfaffian_cubic(ph);
  if (std::all_of(cubic.begin(), cubic.end(), [](const Scalar& x) { return x.is_zero(); })) {
    out.pfaffian_vanishes = true;
    return out;
  }
  BinaryRootSet rs = binary_form_roots(cubic, allow_extension && ph.field()->is_finite(), rng);
  out.field = rs.field;
  out.embedding = rs.embedding;
  const Pencil big = rs.embedding ? ph.embedded(*rs.embedding) : ph;
  for (const auto& r : rs.roots) {
    Complex g(big.member(r.s, r.t));
    out.elements.push_back({r.s, r.t, r.multiplicity, g, classify_complex(g)});
  }
  return out;
}

/// Parameters (s:t) of pencil members of rank <= 2, from the common zeros of
/// the 15 binary sub-Pfaffian quadrics. Returns nullopt when every member has rank <= 2.
inline std::optional<std::vector<std::array<Scalar, 2>>> rank2_members(const SkewMatrix& a, const SkewMatrix& b) {
  const FieldPtr& f = a.field();
  std::vector<UniPoly> affine;
  bool any = false, infinity = true;
  for (const auto& q : subpfaffian_forms({a, b})) {
    if (q.is_zero()) continue;
    any = true;
    std::vector<Scalar> c;
    for (int i = 0; i <= 2; ++i) c.push_back(q.coeff({i, 2 - i}));
    if (!c[2].is_zero()) infinity = false;
    affine.push_back(UniPoly(f, c));
  }
  if (!any) return std::nullopt;
  std::vector<std::array<Scalar, 2>> out;
  const UniPoly g = detail::gcd_all(affine);
  if (g.degree() >= 1) {
    Rng rng(0x5eed);
    for (const auto& r : roots_in_field(g, rng)) out.push_back({r.value, Scalar::one(f)});
  }
  if (infinity) out.push_back({Scalar::one(f), Scalar::zero(f)});
  return out;
}

// ---------------------------------------------------------------- configurations

enum class ConfigurationCase { case1 = 1, case2 = 2, case3 = 3, case4 = 4, non_reduced = 5 };

inline std::string to_string(ConfigurationCase c) { return c == ConfigurationCase::non_reduced ? "non-reduced" : std::to_string(static_cast<int>(c)); }

struct ConfigurationReport {
  ConfigurationCase case_id;
  std::vector<ProjSubspace> lines;
  std::vector<int> multiplicities;
  int span_dim = -1;
  std::optional<ProjSubspace> trisecant;
  std::array<bool, 3> pairwise_meets{};  // pairs (1,2), (1,3), (2,3)
};

inline bool lines_meet(const ProjSubspace& l, const ProjSubspace& m) { return !meet(l, m).empty(); }

/// trisecant: the unique line meeting three pairwise skew lines spanning a P^4.
inline ProjSubspace trisecant(const ProjSubspace& l1, const ProjSubspace& l2, const ProjSubspace& l3) {
  for (const auto* l : {&l1, &l2, &l3}) require_line_in_p5(*l);
  if (lines_meet(l1, l2) || lines_meet(l1, l3) || lines_meet(l2, l3)) throw PreconditionError("trisecant needs pairwise skew lines");
  if (join(join(l1, l2), l3).dim() != 4) throw PreconditionError("trisecant needs three lines spanning a P^4");
  const ProjSubspace p = meet(join(l1, l2), l3);
  if (p.dim() != 0) throw InconsistencyError("the span of two lines meets the third in more than a point");
  const ProjSubspace r = meet(join(p, l1), join(p, l2));
  if (r.dim() != 1 || !lines_meet(r, l1) || !lines_meet(r, l2) || !lines_meet(r, l3)) throw InconsistencyError("trisecant construction failed");
  return r;
}

inline ConfigurationReport classify_configuration(const ProjSubspace& l1, const ProjSubspace& l2, const ProjSubspace& l3) {
  for (const auto* l : {&l1, &l2, &l3}) require_line_in_p5(*l);
  if (l1 == l2 || l1 == l3 || l2 == l3) throw PreconditionError("configuration needs three distinct lines");
  ConfigurationReport rep;
  rep.lines = {l1, l2, l3};
  rep.multiplicities = {1, 1, 1};
  rep.pairwise_meets = {lines_meet(l1, l2), lines_meet(l1, l3), lines_meet(l2, l3)};
  rep.span_dim = join(join(l1, l2), l3).dim();
  if (rep.pairwise_meets[0] || rep.pairwise_meets[1] || rep.pairwise_meets[2]) {
    rep.case_id = ConfigurationCase::case4;
  } else if (rep.span_dim == 5) {
    rep.case_id = ConfigurationCase::case1;
  } else if (rep.span_dim == 4) {
    rep.case_id = ConfigurationCase::case2;
    rep.trisecant = trisecant(l1, l2, l3);
  } else {
    rep.case_id = ConfigurationCase::case3;
  }
  return rep;
}

// ---------------------------------------------------------------- sigma family

struct SigmaFamily {
  Complex h12, h13, h23;
  std::array<ProjSubspace, 3> fibre_lines;  // L1, L2, L3 in the dual P^14
  ProjSubspace sigma;                       // plane of the dual P^14
};

inline ProjSubspace dual_span(const std::vector<Complex>& cs) {
  std::vector<std::vector<Scalar>> rows;
  for (const auto& c : cs) rows.push_back(c.coefficients());
  return ProjSubspace::from_vectors(cs.front().field(), rows, 14);
}

inline SigmaFamily sigma_family(const ProjSubspace& l1, const ProjSubspace& l2, const ProjSubspace& l3) {
  if (classify_configuration(l1, l2, l3).case_id != ConfigurationCase::case1) throw PreconditionError("sigma family needs a Case-1 triple");
  const Complex h12 = type2_complex_of_3space(join(l1, l2));
  const Complex h13 = type2_complex_of_3space(join(l1, l3));
  const Complex h23 = type2_complex_of_3space(join(l2, l3));
  const ProjSubspace sigma = dual_span({h12, h13, h23});
  if (sigma.dim() != 2) throw InconsistencyError("sigma is not a plane");
  std::array<ProjSubspace, 3> ls{dual_span({h12, h13}), dual_span({h12, h23}), dual_span({h13, h23})};
  const std::array<const ProjSubspace*, 3> lines{&l1, &l2, &l3};
  for (int i = 0; i < 3; ++i)
    if (!(ls[i] == meet(sigma, special_fiber_space(*lines[i])))) throw InconsistencyError("sigma meets a fibre outside the expected line");
  return {h12, h13, h23, ls, sigma};
}

enum class SigmaPencilKind { avoiding_vertices, through_vertex };

/// pencils_with_singular_lines: a random pencil of kind a) (a line of sigma
/// missing the three vertices H_ij) or b) (the line joining H_12 to a random
/// member of the fibre of l_3).
inline Pencil pencils_with_singular_lines(const ProjSubspace& l1, const ProjSubspace& l2, const ProjSubspace& l3, SigmaPencilKind kind, Rng& rng) {
  const SigmaFamily sf = sigma_family(l1, l2, l3);
  const FieldPtr& f = l1.field();
  const std::array<SkewMatrix, 3> h{sf.h12.matrix(), sf.h13.matrix(), sf.h23.matrix()};
  if (kind == SigmaPencilKind::through_vertex) {
    const auto fib = special_fiber(l3);
    for (;;) {
      SkewMatrix b = SkewMatrix::zero(f, 6);
      for (const auto& m : fib) b = b + Scalar::random(f, rng) * m;
      if (b.rank() != 4) continue;
      const Complex cb(b);
      if (rank(Matrix::from_rows(f, {sf.h12.coefficients(), cb.coefficients()}, 15)) == 2) return Pencil(sf.h12, cb);
    }
  }
  for (;;) {
    std::array<Scalar, 3> a, b;
    for (int i = 0; i < 3; ++i) {
      a[i] = Scalar::random(f, rng);
      b[i] = Scalar::random(f, rng);
    }
    // the line through a and b in sigma's coordinates contains vertex k iff the k-th cross-product entry vanishes
    const std::array<Scalar, 3> n{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    if (n[0].is_zero() || n[1].is_zero() || n[2].is_zero()) continue;
    return Pencil(Complex(a[0] * h[0] + a[1] * h[1] + a[2] * h[2]), Complex(b[0] * h[0] + b[1] * h[1] + b[2] * h[2]));
  }
}

// ---------------------------------------------------------------- alpha

enum class AlphaVerdict { expected_dim_1, degenerate, non_reduced, pfaffian_vanishes };

inline std::string to_string(AlphaVerdict v) {
  switch (v) {
    case AlphaVerdict::expected_dim_1: return "expected-dim-1";
    case AlphaVerdict::degenerate: return "degenerate";
    case AlphaVerdict::non_reduced: return "non-reduced";
    case AlphaVerdict::pfaffian_vanishes: return "pfaffian-vanishes";
  }
  return "?";
}

struct AlphaResult {
  AlphaVerdict verdict;
  FieldPtr field;                                // where the lines live
  std::optional<Embedding> embedding;            // base -> field
  std::vector<ProjSubspace> lines;               // sorted, for the reduced cases
  std::optional<ConfigurationReport> configuration;
  std::optional<Complex> second_type_member;     // witness over the base field
  std::optional<ProjSubspace> witness_3space;    // its singular 3-space, inside the locus
  std::vector<int> multiplicities;               // of the Pfaffian roots
};

/// A total order on subspaces (by printed coordinates) so triples can be compared unordered.
inline std::string subspace_key(const ProjSubspace& s) {
  std::string k;
  for (int i = 0; i < s.basis().rows(); ++i)
    for (const auto& x : s.basis().row(i)) k += x.to_string() + ",";
  return k;
}

inline void sort_subspaces(std::vector<ProjSubspace>& v) {
  std::sort(v.begin(), v.end(), [](const ProjSubspace& a, const ProjSubspace& b) { return subspace_key(a) < subspace_key(b); });
}

inline AlphaResult alpha(const Pencil& ph, Rng& rng) {
  AlphaResult out{AlphaVerdict::degenerate, ph.field(), std::nullopt, {}, std::nullopt, std::nullopt, std::nullopt, {}};
  const auto r2 = rank2_members(ph.first().matrix(), ph.second().matrix());
  if (!r2 || !r2->empty()) {
    const SkewMatrix m = r2 ? ph.member((*r2)[0][0], (*r2)[0][1]) : ph.first().matrix();
    out.second_type_member = Complex(m);
    out.witness_3space = singular_space(m);
  }
  const PencilSingularElements se = pencil_singular_elements(ph, ph.field()->is_finite(), rng);
  if (se.pfaffian_vanishes) {
    out.verdict = out.second_type_member ? AlphaVerdict::degenerate : AlphaVerdict::pfaffian_vanishes;
    return out;
  }
  for (const auto& e : se.elements) out.multiplicities.push_back(e.multiplicity);
  if (out.second_type_member) return out;
  int total = 0;
  for (int m : out.multiplicities) total += m;
  if (total != 3) throw PreconditionError("the Pfaffian cubic does not split over the coefficient field");
  out.field = se.field;
  out.embedding = se.embedding;
  if (se.elements.size() != 3) {
    out.verdict = AlphaVerdict::non_reduced;
    for (const auto& e : se.elements) out.lines.push_back(e.cls.singular_space);
    return out;
  }
  for (const auto& e : se.elements) out.lines.push_back(e.cls.singular_space);
  sort_subspaces(out.lines);
  out.configuration = classify_configuration(out.lines[0], out.lines[1], out.lines[2]);
  out.verdict = out.configuration->case_id == ConfigurationCase::case1 ? AlphaVerdict::expected_dim_1 : AlphaVerdict::degenerate;
  return out;
}

}  // namespace lcx
