// Linear subspaces of P^n, joins and meets, Pluecker coordinates of lines in
// P^5, and the identification of 3-spaces with rank-2 complexes.
#pragma once

#include <string>
#include <vector>

#include "lcx/matrix.hpp"

namespace lcx {

/// Row span in reduced echelon form; two subspaces are equal iff their
/// representations are equal. The empty subspace has no rows (dimension -1).
class ProjSubspace {
 public:
  ProjSubspace(FieldPtr f, int ambient) : span_(std::move(f), 0, ambient + 1) {}
  explicit ProjSubspace(const Matrix& spanning) : span_(row_space(spanning)) {}

  static ProjSubspace from_vectors(FieldPtr f, const std::vector<std::vector<Scalar>>& vs, int ambient) {
    if (vs.empty()) return ProjSubspace(std::move(f), ambient);
    return ProjSubspace(Matrix::from_rows(std::move(f), vs, ambient + 1));
  }

  static ProjSubspace coordinate(FieldPtr f, int ambient, const std::vector<int>& axes) {
    Matrix m(f, static_cast<int>(axes.size()), ambient + 1);
    for (std::size_t i = 0; i < axes.size(); ++i) m(static_cast<int>(i), axes[i]) = Scalar::one(f);
    return ProjSubspace(m);
  }

  /// A uniformly random subspace of the given projective dimension (resampled until independent).
  static ProjSubspace random(FieldPtr f, int ambient, int dim, Rng& rng) {
    for (;;) {
      ProjSubspace s(Matrix::random(f, dim + 1, ambient + 1, rng));
      if (s.dim() == dim) return s;
    }
  }

  const FieldPtr& field() const { return span_.field(); }
  int ambient_dim() const { return span_.cols() - 1; }
  int dim() const { return span_.rows() - 1; }
  bool empty() const { return span_.rows() == 0; }
  const Matrix& basis() const { return span_; }
  std::vector<Scalar> basis_vector(int i) const { return span_.row(i); }

  bool contains(const std::vector<Scalar>& point) const {
    Matrix one = Matrix::from_rows(field(), {point}, ambient_dim() + 1);
    return rank(Matrix::vstack(span_, one)) == span_.rows();
  }

  bool contains(const ProjSubspace& other) const { return rank(Matrix::vstack(span_, other.span_)) == span_.rows(); }

  /// Linear forms vanishing on the subspace, as rows.
  Matrix annihilator() const {
    if (empty()) return Matrix::identity(field(), ambient_dim() + 1);
    return rank_kernel(span_).kernel;
  }

  std::vector<Scalar> random_point(Rng& rng) const {
    if (empty()) throw PreconditionError("random point of the empty subspace");
    for (;;) {
      std::vector<Scalar> v(ambient_dim() + 1, Scalar::zero(field()));
      for (int i = 0; i < span_.rows(); ++i) {
        const Scalar c = Scalar::random(field(), rng);
        for (int j = 0; j < span_.cols(); ++j) v[j] += c * span_(i, j);
      }
      for (const auto& x : v)
        if (!x.is_zero()) return v;
    }
  }

  ProjSubspace embedded(const Embedding& e) const {
    ProjSubspace r(e.to(), ambient_dim());
    r.span_ = row_space(span_.embedded(e));
    return r;
  }

  friend bool operator==(const ProjSubspace& a, const ProjSubspace& b) { return a.span_ == b.span_; }

 private:
  Matrix span_;
};

inline void check_same_ambient(const ProjSubspace& s, const ProjSubspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw PreconditionError("subspaces live in different ambient spaces");
}

inline ProjSubspace join(const ProjSubspace& s, const ProjSubspace& t) {
  check_same_ambient(s, t);
  if (s.empty()) return t;
  if (t.empty()) return s;
  return ProjSubspace(Matrix::vstack(s.basis(), t.basis()));
}

inline ProjSubspace meet(const ProjSubspace& s, const ProjSubspace& t) {
  check_same_ambient(s, t);
  if (s.empty() || t.empty()) return ProjSubspace(s.field(), s.ambient_dim());
  const Matrix forms = Matrix::vstack(s.annihilator(), t.annihilator());
  const Matrix k = rank_kernel(forms).kernel;
  if (k.rows() == 0) return ProjSubspace(s.field(), s.ambient_dim());
  return ProjSubspace(k);
}

inline ProjSubspace point_subspace(const std::vector<Scalar>& p) {
  return ProjSubspace::from_vectors(p.front().field(), {p}, static_cast<int>(p.size()) - 1);
}

/// Projective point of P^14 (or of its dual) given by 15 coordinates,
/// normalized so that the first nonzero coordinate is 1.
class PlueckerPoint {
 public:
  explicit PlueckerPoint(std::vector<Scalar> coords) : c_(std::move(coords)) {
    if (c_.size() != 15) throw PreconditionError("Pluecker points have 15 coordinates");
    std::size_t k = 0;
    while (k < 15 && c_[k].is_zero()) ++k;
    if (k == 15) throw PreconditionError("the zero vector is not a projective point");
    const Scalar inv = c_[k].inverse();
    for (auto& x : c_) x *= inv;
  }

  const std::vector<Scalar>& coords() const { return c_; }
  const FieldPtr& field() const { return c_[0].field(); }
  const Scalar& at(int i, int j) const { return c_[pair_index(i, j)]; }

  friend bool operator==(const PlueckerPoint& a, const PlueckerPoint& b) { return a.c_ == b.c_; }

 private:
  std::vector<Scalar> c_;
};

/// The 15 three-term relations p_ij p_kl - p_ik p_jl + p_il p_jk, i<j<k<l.
inline std::vector<Scalar> pluecker_relations(const std::vector<Scalar>& p) {
  std::vector<Scalar> rel;
  auto at = [&](int i, int j) { return p[pair_index(i, j)]; };
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k)
        for (int l = k + 1; l < 6; ++l) rel.push_back(at(i, j) * at(k, l) - at(i, k) * at(j, l) + at(i, l) * at(j, k));
  return rel;
}

inline bool satisfies_pluecker_relations(const std::vector<Scalar>& p) {
  for (const auto& r : pluecker_relations(p))
    if (!r.is_zero()) return false;
  return true;
}

inline bool proportional(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  Matrix m = Matrix::from_rows(a.front().field(), {a, b}, static_cast<int>(a.size()));
  return rank(m) <= 1;
}

/// grassmannian_membership: decomposability via the Pluecker relations.
inline bool grassmannian_membership(const PlueckerPoint& x) { return satisfies_pluecker_relations(x.coords()); }

/// Same predicate via the rank of the associated skew matrix (rank <= 2).
inline bool grassmannian_membership_by_rank(const PlueckerPoint& x) { return SkewMatrix::from_coefficients(x.field(), x.coords()).rank() <= 2; }

inline std::vector<Scalar> wedge(const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
  std::vector<Scalar> p;
  for (auto [i, j] : kPairs) p.push_back(u[i] * v[j] - u[j] * v[i]);
  return p;
}

inline void require_line_in_p5(const ProjSubspace& l) {
  if (l.ambient_dim() != 5 || l.dim() != 1) throw PreconditionError("expected a line in P^5");
}

inline PlueckerPoint pluecker_of_line(const ProjSubspace& l) {
  require_line_in_p5(l);
  return PlueckerPoint(wedge(l.basis_vector(0), l.basis_vector(1)));
}

/// Inverse of pluecker_of_line: the line spanned by the columns of the skew matrix of x.
inline ProjSubspace line_of_pluecker(const PlueckerPoint& x) {
  if (!grassmannian_membership(x)) throw PreconditionError("point is not on the Grassmannian of lines");
  return ProjSubspace(SkewMatrix::from_coefficients(x.field(), x.coords()).matrix());
}

/// A linear line complex in P^5: nonzero skew 6x6 matrix up to scale,
/// normalized so its first nonzero coefficient (lexicographic) is 1.
class Complex {
 public:
  explicit Complex(const SkewMatrix& a) : a_(normalize(a)) {}

  static Complex from_coefficients(FieldPtr f, const std::vector<Scalar>& a) { return Complex(SkewMatrix::from_coefficients(std::move(f), a)); }

  const SkewMatrix& matrix() const { return a_; }
  const FieldPtr& field() const { return a_.field(); }
  std::vector<Scalar> coefficients() const { return a_.coefficients(); }
  Complex embedded(const Embedding& e) const { return Complex(a_.embedded(e)); }

  friend bool operator==(const Complex& a, const Complex& b) { return a.a_ == b.a_; }

 private:
  static SkewMatrix normalize(const SkewMatrix& a) {
    if (a.order() != 6) throw PreconditionError("complexes in P^5 have order-6 matrices");
    for (auto [i, j] : kPairs)
      if (!a(i, j).is_zero()) return a(i, j).inverse() * a;
    throw PreconditionError("the zero matrix is not a complex");
  }

  SkewMatrix a_;
};

/// type2_complex_of_3space: the rank-2 complex f^g whose kernel is W, where
/// f, g span the forms vanishing on W. Its lines are those meeting W.
inline Complex type2_complex_of_3space(const ProjSubspace& w) {
  if (w.ambient_dim() != 5 || w.dim() != 3) throw PreconditionError("expected a 3-space in P^5");
  const Matrix ann = w.annihilator();
  return Complex::from_coefficients(w.field(), wedge(ann.row(0), ann.row(1)));
}

/// Bilinear pairing sum a_ij p_ij = u^T A v.
inline Scalar pairing(const std::vector<Scalar>& a, const std::vector<Scalar>& p) {
  Scalar s = Scalar::zero(a.front().field());
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * p[k];
  return s;
}

inline Scalar bilinear(const SkewMatrix& a, const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
  Scalar s = Scalar::zero(a.field());
  for (int i = 0; i < a.order(); ++i) {
    if (u[i].is_zero()) continue;
    for (int j = 0; j < a.order(); ++j) s += u[i] * a(i, j) * v[j];
  }
  return s;
}

}  // namespace lcx
