// Independent reference computations for the test suite. Everything here works
// on raw integers modulo a prime and shares no code with the library.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "lcx/field.hpp"
#include "lcx/matrix.hpp"

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using IntMatrix = std::vector<std::vector<i64>>;

inline i64 mod(i64 a, i64 p) { return ((a % p) + p) % p; }

inline i64 powmod(i64 a, i64 e, i64 p) {
  i64 r = 1;
  a = mod(a, p);
  while (e > 0) {
    if (e & 1) r = static_cast<i64>((static_cast<__int128>(r) * a) % p);
    a = static_cast<i64>((static_cast<__int128>(a) * a) % p);
    e >>= 1;
  }
  return r;
}

inline i64 inv(i64 a, i64 p) { return powmod(a, p - 2, p); }

/// Leibniz expansion over all permutations.
inline i64 det_leibniz(const IntMatrix& a, i64 p) {
  const int n = static_cast<int>(a.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  i64 total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    i64 term = 1;
    for (int i = 0; i < n; ++i) term = mod(term * mod(a[i][perm[i]], p), p);
    total = mod(total + (inversions % 2 ? -term : term), p);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Sum over perfect matchings of {0..n-1} with crossing signs.
inline i64 pfaffian_matchings(const IntMatrix& a, i64 p) {
  const int n = static_cast<int>(a.size());
  if (n % 2) return 0;
  i64 total = 0;
  std::vector<int> used(n, 0);
  std::vector<std::pair<int, int>> pairs;
  auto rec = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < n; ++i)
      if (!used[i]) {
        first = i;
        break;
      }
    if (first < 0) {
      int crossings = 0;
      for (std::size_t x = 0; x < pairs.size(); ++x)
        for (std::size_t y = 0; y < pairs.size(); ++y) {
          const auto [a1, b1] = pairs[x];
          const auto [a2, b2] = pairs[y];
          if (a1 < a2 && a2 < b1 && b1 < b2) ++crossings;
        }
      i64 term = 1;
      for (const auto& [i, j] : pairs) term = mod(term * mod(a[i][j], p), p);
      total = mod(total + (crossings % 2 ? -term : term), p);
      return;
    }
    used[first] = 1;
    for (int j = first + 1; j < n; ++j)
      if (!used[j]) {
        used[j] = 1;
        pairs.emplace_back(first, j);
        self(self);
        pairs.pop_back();
        used[j] = 0;
      }
    used[first] = 0;
  };
  rec(rec);
  return total;
}

inline int rank_mod(IntMatrix a, i64 p) {
  const int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (mod(a[i][c], p) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    const i64 iv = inv(mod(a[r][c], p), p);
    for (int i = 0; i < rows; ++i) {
      if (i == r || mod(a[i][c], p) == 0) continue;
      const i64 f = mod(a[i][c] * iv, p);
      for (int k = 0; k < cols; ++k) a[i][k] = mod(a[i][k] - f * a[r][k], p);
    }
    ++r;
  }
  return r;
}

/// Converts a library matrix over a prime field to integers.
inline IntMatrix to_ints(const lcx::Matrix& m) {
  IntMatrix out(m.rows(), std::vector<i64>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i][j] = static_cast<i64>(m(i, j).coeff(0));
  return out;
}

/// Calls visit on one representative of every point of P^n(F_p).
template <class F>
void for_each_projective_point(int n, i64 p, F&& visit) {
  std::vector<i64> x(n + 1, 0);
  for (int lead = 0; lead <= n; ++lead) {
    // x[lead] = 1, entries before it 0, entries after it free.
    const int free = n - lead;
    i64 total = 1;
    for (int i = 0; i < free; ++i) total *= p;
    for (i64 code = 0; code < total; ++code) {
      std::fill(x.begin(), x.end(), 0);
      x[lead] = 1;
      i64 c = code;
      for (int i = lead + 1; i <= n; ++i) {
        x[i] = c % p;
        c /= p;
      }
      visit(x);
    }
  }
}

/// Number of F_p points of the plane cubic with coefficients in the wire order.
inline i64 cubic_point_count(const std::vector<i64>& c, i64 p) {
  i64 count = 0;
  for_each_projective_point(2, p, [&](const std::vector<i64>& v) {
    const i64 x = v[0], y = v[1], z = v[2];
    const i64 mons[10] = {x * x * x, x * x * y, x * x * z, x * y * y, x * y * z, x * z * z, y * y * y, y * y * z, y * z * z, z * z * z};
    i64 s = 0;
    for (int i = 0; i < 10; ++i) s = mod(s + mod(c[i], p) * mod(mons[i], p), p);
    count += s == 0;
  });
  return count;
}

/// Is the monic polynomial f (low degree first) irreducible over F_p? Trial division by all monic polys.
inline bool irreducible_brute(const std::vector<i64>& f, i64 p) {
  const int n = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= n / 2; ++d) {
    i64 total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    for (i64 code = 0; code < total; ++code) {
      std::vector<i64> g(d + 1, 0);
      g[d] = 1;
      i64 c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      std::vector<i64> r(f);
      for (int k = n; k >= d; --k) {
        const i64 q = mod(r[k], p);
        if (q == 0) continue;
        for (int i = 0; i <= d; ++i) r[k - d + i] = mod(r[k - d + i] - q * g[i], p);
      }
      bool zero = true;
      for (int i = 0; i < d; ++i) zero = zero && mod(r[i], p) == 0;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace oracle
