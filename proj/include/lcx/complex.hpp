// Linear line complexes in P^5: classification by rank, line containment,
// the fibres P^5_l of complexes singular along a line, and their meets.
#pragma once

#include <string>
#include <vector>

#include "lcx/projective.hpp"

namespace lcx {

enum class ComplexKind { general, special_first_type, special_second_type };

inline std::string to_string(ComplexKind k) {
  switch (k) {
    case ComplexKind::general: return "general";
    case ComplexKind::special_first_type: return "special-first-type";
    case ComplexKind::special_second_type: return "special-second-type";
  }
  return "?";
}

struct ComplexClass {
  ComplexKind kind;
  ProjSubspace singular_space;  // P(ker A): empty, a line, or a 3-space
  Scalar pfaffian;
};

/// Singular space P(ker A) of any skew matrix.
inline ProjSubspace singular_space(const SkewMatrix& a) {
  const Matrix k = rank_kernel(a.matrix()).kernel;
  if (k.rows() == 0) return ProjSubspace(a.field(), a.order() - 1);
  return ProjSubspace(k);
}

inline ComplexClass classify_complex(const Complex& g) {
  const SkewMatrix& a = g.matrix();
  const int r = a.rank();
  const Scalar pf = pfaffian(a);
  ComplexKind kind = r == 6 ? ComplexKind::general : r == 4 ? ComplexKind::special_first_type : ComplexKind::special_second_type;
  if ((kind == ComplexKind::general) == pf.is_zero()) throw InconsistencyError("Pfaffian and rank disagree on speciality");
  return {kind, singular_space(a), pf};
}

inline bool contains_line(const Complex& g, const ProjSubspace& l) {
  return pairing(g.coefficients(), pluecker_of_line(l).coords()).is_zero();
}

/// Coefficient vectors (15-vectors, as rows) of the skew 6x6 matrices A with
/// A w = 0 for every given w.
inline Matrix skew_annihilating(const FieldPtr& f, const std::vector<std::vector<Scalar>>& ws) {
  Matrix eq(f, static_cast<int>(ws.size()) * 6, 15);
  for (std::size_t wi = 0; wi < ws.size(); ++wi) {
    const auto& w = ws[wi];
    for (int r = 0; r < 6; ++r) {
      const int row = static_cast<int>(wi) * 6 + r;
      for (int k = 0; k < 15; ++k) {
        auto [i, j] = kPairs[k];
        if (r == i) eq(row, k) = w[j];
        if (r == j) eq(row, k) = -w[i];
      }
    }
  }
  return rank_kernel(eq).kernel;
}

/// special_fiber: basis of the 6-dimensional space {A skew : l in P(ker A)}.
inline std::vector<SkewMatrix> special_fiber(const ProjSubspace& l) {
  require_line_in_p5(l);
  const Matrix basis = skew_annihilating(l.field(), {l.basis_vector(0), l.basis_vector(1)});
  if (basis.rows() != 6) throw InconsistencyError("fibre over a line must have vector dimension 6");
  std::vector<SkewMatrix> out;
  for (int i = 0; i < 6; ++i) out.push_back(SkewMatrix::from_coefficients(l.field(), basis.row(i)));
  return out;
}

/// The fibre as a projective subspace of the dual P^14.
inline ProjSubspace special_fiber_space(const ProjSubspace& l) {
  require_line_in_p5(l);
  return ProjSubspace(skew_annihilating(l.field(), {l.basis_vector(0), l.basis_vector(1)}));
}

/// Tangent-hyperplane reading of P^5_l: the hyperplane of P^14 given by A
/// contains the tangent space of G(1,5) at l, spanned by u^w and v^w.
inline bool contains_tangent_space(const Complex& g, const ProjSubspace& l) {
  require_line_in_p5(l);
  const auto a = g.coefficients();
  const auto u = l.basis_vector(0), v = l.basis_vector(1);
  for (int k = 0; k < 6; ++k) {
    std::vector<Scalar> e(6, Scalar::zero(l.field()));
    e[k] = Scalar::one(l.field());
    if (!pairing(a, wedge(u, e)).is_zero() || !pairing(a, wedge(v, e)).is_zero()) return false;
  }
  return true;
}

/// fiber_meet: P^5_l meet P^5_m, a point (skew lines) or a plane (meeting lines).
inline ProjSubspace fiber_meet(const ProjSubspace& l, const ProjSubspace& m) {
  require_line_in_p5(l);
  require_line_in_p5(m);
  if (l == m) throw PreconditionError("fiber_meet needs two distinct lines");
  const Matrix k = skew_annihilating(l.field(), {l.basis_vector(0), l.basis_vector(1), m.basis_vector(0), m.basis_vector(1)});
  if (k.rows() == 0) return ProjSubspace(l.field(), 14);
  return ProjSubspace(k);
}

/// Number of F_q-points of P^5_l whose matrix has rank <= 2, by exhaustive scan.
inline std::uint64_t fiber_rank2_count(const ProjSubspace& l) {
  const FieldPtr& f = l.field();
  if (!f->is_finite() || f->order() > 13) throw PreconditionError("exhaustive fibre scan limited to fields with at most 13 elements");
  const auto basis = special_fiber(l);
  const std::uint64_t q = f->order();
  std::uint64_t count = 0;
  std::vector<std::uint64_t> digits(6, 0);
  std::uint64_t total = 1;
  for (int i = 0; i < 6; ++i) total *= q;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    int first = -1;
    for (int i = 0; i < 6; ++i) {
      digits[i] = c % q;
      c /= q;
    }
    for (int i = 5; i >= 0; --i)
      if (digits[i]) first = i;
    if (digits[first] != 1) continue;  // one representative per projective point
    SkewMatrix a = SkewMatrix::zero(f, 6);
    for (int i = 0; i < 6; ++i)
      if (digits[i]) a = a + Scalar::from_int(f, static_cast<std::int64_t>(digits[i])) * basis[i];
    if (a.rank() <= 2) ++count;
  }
  return count;
}

}  // namespace lcx
