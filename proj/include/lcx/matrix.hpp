// Dense exact linear algebra over a Field: echelon forms, kernels, solving,
// determinants, Pfaffians and sub-Pfaffians of skew-symmetric matrices.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcx/unipoly.hpp"

namespace lcx {

class Matrix {
 public:
  Matrix(FieldPtr f, int rows, int cols) : f_(std::move(f)), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Scalar::zero(f_)) {}

  static Matrix identity(FieldPtr f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
  }

  static Matrix from_ints(FieldPtr f, const std::vector<std::vector<std::int64_t>>& rows) {
    const int r = static_cast<int>(rows.size()), c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c) throw PreconditionError("ragged matrix");
      for (int j = 0; j < c; ++j) m(i, j) = Scalar::from_int(f, rows[i][j]);
    }
    return m;
  }

  static Matrix from_rows(FieldPtr f, const std::vector<std::vector<Scalar>>& rows, int cols) {
    Matrix m(std::move(f), static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows_; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  static Matrix random(FieldPtr f, int rows, int cols, Rng& rng) {
    Matrix m(f, rows, cols);
    for (auto& x : m.a_) x = Scalar::random(f, rng);
    return m;
  }

  const FieldPtr& field() const { return f_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::vector<Scalar> row(int i) const { return {a_.begin() + static_cast<std::ptrdiff_t>(i) * cols_, a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_}; }

  std::vector<std::vector<Scalar>> row_vectors() const {
    std::vector<std::vector<Scalar>> r;
    for (int i = 0; i < rows_; ++i) r.push_back(row(i));
    return r;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product: dimension mismatch");
    Matrix r(a.f_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix sum: dimension mismatch");
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
  }

  friend Matrix operator*(const Scalar& s, const Matrix& m) {
    Matrix r = m;
    for (auto& x : r.a_) x *= s;
    return r;
  }

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw PreconditionError("matrix-vector: dimension mismatch");
    std::vector<Scalar> r(rows_, Scalar::zero(f_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  /// Stack rows of b below a.
  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw PreconditionError("vstack: column mismatch");
    Matrix r(a.f_, a.rows_ + b.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
    return r;
  }

  Matrix embedded(const Embedding& e) const {
    Matrix r(e.to(), rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = e(a_[i]);
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_; }

 private:
  FieldPtr f_;
  int rows_, cols_;
  std::vector<Scalar> a_;
};

struct Echelon {
  Matrix reduced;           // reduced row echelon form, zero rows at the bottom
  int rank = 0;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

inline Echelon rref(Matrix m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const Scalar inv = m(r, c).inverse();
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), r, std::move(pivots)};
}

inline int rank(const Matrix& m) { return rref(m).rank; }

/// Nonzero rows of the reduced echelon form: the canonical basis of the row space.
inline Matrix row_space(const Matrix& m) {
  Echelon e = rref(m);
  Matrix r(m.field(), e.rank, m.cols());
  for (int i = 0; i < e.rank; ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = e.reduced(i, j);
  return r;
}

struct RankKernel {
  int rank = 0;
  Matrix kernel;  // basis vectors as rows, in reduced echelon form
};

/// rank_kernel: rank of M and a canonical basis of {v : M v = 0}.
inline RankKernel rank_kernel(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(m.cols(), Scalar::zero(m.field()));
    v[free] = Scalar::one(m.field());
    for (int i = 0; i < e.rank; ++i) v[e.pivots[i]] = -e.reduced(i, free);
    basis.push_back(std::move(v));
  }
  Matrix k = Matrix::from_rows(m.field(), basis, m.cols());
  if (k.rows() > 0) k = row_space(k);
  return {e.rank, std::move(k)};
}

/// One solution of A x = b, if any.
inline std::optional<std::vector<Scalar>> solve(const Matrix& a, const std::vector<Scalar>& b) {
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Echelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  std::vector<Scalar> x(a.cols(), Scalar::zero(a.field()));
  for (int i = 0; i < e.rank; ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
  return x;
}

inline Scalar determinant(Matrix m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  Scalar det = Scalar::one(m.field());
  const int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Scalar::zero(m.field());
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const Scalar inv = m(c, c).inverse();
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const Scalar f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Laplace expansion over any commutative ring; for small polynomial matrices.
template <class T>
T laplace_determinant(const std::vector<std::vector<T>>& m, const T& zero, const T& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  if (n == 1) return m[0][0];
  T acc = zero;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<T>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<T> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    T term = m[0][j] * laplace_determinant(minor, zero, one);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

/// First-row Pfaffian expansion over any commutative ring.
/// entry(i, j) must return a_ij for i < j among the indices in idx.
template <class T, class Entry>
T pfaffian_expand(const std::vector<int>& idx, const Entry& entry, const T& zero, const T& one) {
  if (idx.empty()) return one;
  if (idx.size() % 2 != 0) return zero;
  T acc = zero;
  for (std::size_t j = 1; j < idx.size(); ++j) {
    std::vector<int> rest;
    for (std::size_t k = 1; k < idx.size(); ++k)
      if (k != j) rest.push_back(idx[k]);
    T term = entry(idx[0], idx[j]) * pfaffian_expand<T>(rest, entry, zero, one);
    acc = (j % 2 == 1) ? acc + term : acc - term;
  }
  return acc;
}

/// The 15 index pairs (i, j), 0 <= i < j <= 5, in lexicographic order: the wire
/// order of both Pluecker coordinates and complex coefficients.
inline constexpr std::array<std::pair<int, int>, 15> kPairs = {{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}};

inline int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 15; ++k)
    if (kPairs[k].first == i && kPairs[k].second == j) return k;
  throw PreconditionError("pair index out of range");
}

/// Skew-symmetric matrix a_ij = -a_ji, a_ii = 0, validated on construction.
class SkewMatrix {
 public:
  explicit SkewMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw PreconditionError("skew matrix must be square");
    for (int i = 0; i < m_.rows(); ++i)
      for (int j = 0; j < m_.cols(); ++j)
        if (!(m_(i, j) + m_(j, i)).is_zero()) throw PreconditionError("matrix is not skew-symmetric: a_" + std::to_string(i) + std::to_string(j) + " + a_" + std::to_string(j) + std::to_string(i) + " != 0");
  }

  static SkewMatrix zero(FieldPtr f, int order) { return SkewMatrix(Matrix(std::move(f), order, order)); }

  /// Order-6 skew matrix from its 15 upper-triangular entries in lexicographic order.
  static SkewMatrix from_coefficients(FieldPtr f, const std::vector<Scalar>& a) {
    if (a.size() != 15) throw PreconditionError("a complex has 15 coefficients");
    Matrix m(f, 6, 6);
    for (int k = 0; k < 15; ++k) {
      auto [i, j] = kPairs[k];
      m(i, j) = a[k];
      m(j, i) = -a[k];
    }
    return SkewMatrix(std::move(m));
  }

  /// E_ij - E_ji scaled by v.
  static SkewMatrix elementary(FieldPtr f, int order, int i, int j, std::int64_t v = 1) {
    Matrix m(f, order, order);
    m(i, j) = Scalar::from_int(f, v);
    m(j, i) = Scalar::from_int(f, -v);
    return SkewMatrix(std::move(m));
  }

  static SkewMatrix random(FieldPtr f, int order, Rng& rng) {
    Matrix m(f, order, order);
    for (int i = 0; i < order; ++i)
      for (int j = i + 1; j < order; ++j) {
        m(i, j) = Scalar::random(f, rng);
        m(j, i) = -m(i, j);
      }
    return SkewMatrix(std::move(m));
  }

  int order() const { return m_.rows(); }
  const FieldPtr& field() const { return m_.field(); }
  const Matrix& matrix() const { return m_; }
  const Scalar& operator()(int i, int j) const { return m_(i, j); }

  /// Upper-triangular entries in lexicographic (i, j) order.
  std::vector<Scalar> coefficients() const {
    std::vector<Scalar> r;
    for (int i = 0; i < order(); ++i)
      for (int j = i + 1; j < order(); ++j) r.push_back(m_(i, j));
    return r;
  }

  friend SkewMatrix operator+(const SkewMatrix& a, const SkewMatrix& b) { return SkewMatrix(a.m_ + b.m_); }
  friend SkewMatrix operator*(const Scalar& s, const SkewMatrix& a) { return SkewMatrix(s * a.m_); }
  friend bool operator==(const SkewMatrix& a, const SkewMatrix& b) { return a.m_ == b.m_; }

  SkewMatrix embedded(const Embedding& e) const { return SkewMatrix(m_.embedded(e)); }

  /// Rank, checked to be even.
  int rank() const {
    const int r = lcx::rank(m_);
    if (r % 2 != 0) throw InconsistencyError("skew-symmetric matrix of odd rank");
    return r;
  }

 private:
  Matrix m_;
};

/// Pfaffian by first-row expansion; Pf of the empty matrix is 1.
inline Scalar pfaffian(const SkewMatrix& a) {
  if (a.order() % 2 != 0) throw PreconditionError("Pfaffian of an odd-order matrix");
  if (a.order() > 8) throw PreconditionError("Pfaffian expansion limited to order <= 8");
  std::vector<int> idx(a.order());
  for (int i = 0; i < a.order(); ++i) idx[i] = i;
  return pfaffian_expand<Scalar>(idx, [&](int i, int j) { return a(i, j); }, Scalar::zero(a.field()), Scalar::one(a.field()));
}

/// s_ij = (-1)^(i+j+1) Pf(A with rows/columns i, j deleted), lexicographic order.
/// With this sign the vector equals the Pluecker coordinates of ker A when
/// rank A = 4 (anchored by a01 = a23 = 1 giving p45 = 1).
inline std::vector<Scalar> subpfaffians(const SkewMatrix& a) {
  if (a.order() != 6) throw PreconditionError("sub-Pfaffian vector is defined for order 6");
  std::vector<Scalar> s;
  for (auto [i, j] : kPairs) {
    std::vector<int> idx;
    for (int k = 0; k < 6; ++k)
      if (k != i && k != j) idx.push_back(k);
    Scalar pf = pfaffian_expand<Scalar>(idx, [&](int x, int y) { return a(x, y); }, Scalar::zero(a.field()), Scalar::one(a.field()));
    s.push_back(((i + j + 1) % 2 == 0) ? pf : -pf);
  }
  return s;
}

}  // namespace lcx
