// Numerical cohomology for degeneracy loci of n-m+1 general complexes in P^n:
// degree, Bott dimensions, Euler characteristics of the ideal sheaf, the
// predicted table of intermediate cohomology and the Stueckrad-Vogel test.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcx/field.hpp"

namespace lcx {

/// C(a, b), zero whenever a < 0, b < 0 or b > a.
inline std::int64_t binom(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

/// a(a-1)...(a-b+1)/b! for any integer a; b < 0 gives 0.
inline std::int64_t binom_poly(std::int64_t a, std::int64_t b) {
  if (b < 0) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

inline void require_nm(int n, int m) {
  if (m < 2 || m > n) throw PreconditionError("need 2 <= m <= n");
}

/// Degree of the degeneracy locus of n-m+1 general complexes in P^n.
inline std::int64_t degree_formula(int n, int m) {
  require_nm(n, m);
  std::int64_t d = 0;
  for (int i = 0; i <= n - m + 1; ++i) d += (i % 2 ? -1 : 1) * binom(n - i, m - 1);
  return d;
}

/// h^0..h^n of Omega^p(k) on P^n.
inline std::vector<std::int64_t> bott(int n, int p, int k) {
  if (n < 1 || p < 0 || p > n) throw PreconditionError("bott needs 0 <= p <= n");
  std::vector<std::int64_t> h(n + 1, 0);
  if (k > p) h[0] = binom(k + n - p, k) * binom(k - 1, p);
  if (k == 0) h[p] = 1;
  if (k < p - n) h[n] = binom(p - k, -k) * binom(-k - 1, n - p);
  return h;
}

inline std::int64_t alternating_sum(const std::vector<std::int64_t>& h) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < h.size(); ++i) s += (i % 2 ? -1 : 1) * h[i];
  return s;
}

inline std::int64_t chi_omega(int n, int p, int k) { return alternating_sum(bott(n, p, k)); }

/// chi(O_{P^n}(t)) as the Hilbert polynomial, valid for every t.
inline std::int64_t chi_projective(int n, int t) { return binom_poly(n + t, n); }

/// chi(Omega^p(k)) from the truncated Koszul complex, independent of bott.
inline std::int64_t chi_omega_koszul(int n, int p, int k) {
  std::int64_t s = 0;
  for (int i = 0; i <= p; ++i) s += (i % 2 ? -1 : 1) * binom(n + 1, p - i) * chi_projective(n, k - p + i);
  return s;
}

/// chi(I_X(p)) from the resolution of the ideal by twisted exterior powers of the cotangent bundle.
inline std::int64_t en_chi_ideal(int n, int m, int p) {
  require_nm(n, m);
  std::int64_t s = 0;
  for (int t = 0; t <= n - m; ++t) {
    const int j = n - m - t;
    s += (t % 2 ? -1 : 1) * binom(m + t - 1, m - 1) * chi_omega(n, j, 2 * j + p - n + 1);
  }
  return s;
}

// ---------------------------------------------------------------- geometric oracles

/// Oracle cohomology of I_X(p) for the two loci in P^5 with a direct description.
/// (5,2): three pairwise skew lines spanning P^5, known at every twist.
/// (5,3): the elliptic sextic scroll, known for p <= 1; for p < 0 ampleness of
/// O_X(1) kills h^1(O_X(p)), so h^2(O_X(p)) = chi(O_X(p)) = 3p^2 + 3p.
inline std::optional<std::vector<std::int64_t>> oracle_ideal_cohomology(int n, int m, int p) {
  if (n != 5) return std::nullopt;
  std::vector<std::int64_t> h(6, 0);
  if (m == 2) {
    const std::int64_t h0x = p >= 0 ? 3 * (p + 1) : 0;
    const std::int64_t h1x = p <= -2 ? 3 * (-p - 1) : 0;
    const std::int64_t h0p = binom(p + 5, 5);
    // Restriction of sections is surjective for p >= 1 and has rank 1 at p = 0.
    const std::int64_t img = p >= 1 ? h0x : (p == 0 ? 1 : 0);
    h[0] = h0p - img;
    h[1] = h0x - img;
    h[2] = h1x;
    h[5] = binom(-p - 1, 5);
    return h;
  }
  if (m == 3 && p <= 1) {
    // h^0(O_X) = h^1(O_X) = 1 at p = 0; linearly normal with h^1(O_X(1)) = 0.
    if (p == 0) h[2] = 1;
    if (p < 0) h[3] = 3 * p * p + 3 * p;
    h[5] = binom(-p - 1, 5);
    return h;
  }
  return std::nullopt;
}

/// chi(O_{P^5}(p)) - chi(O_X(p)) for the two oracle loci.
inline std::optional<std::int64_t> oracle_chi_ideal(int n, int m, int p) {
  if (n != 5) return std::nullopt;
  if (m == 2) return chi_projective(5, p) - 3 * (p + 1);
  if (m == 3) return chi_projective(5, p) - (3 * p * p + 3 * p);
  return std::nullopt;
}

// ---------------------------------------------------------------- table

enum class Provenance { en_predicted, oracle, conflict };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::en_predicted: return "EN-predicted";
    case Provenance::oracle: return "oracle";
    case Provenance::conflict: return "conflict";
  }
  return "?";
}

struct CohomologyEntry {
  std::int64_t value = 0;                // oracle value when one exists, else the prediction
  std::int64_t predicted = 0;
  std::optional<std::int64_t> oracle;
  Provenance provenance = Provenance::en_predicted;
};

struct CohomologyRow {
  int p = 0;
  std::vector<CohomologyEntry> h;  // h^0 .. h^n
  std::int64_t chi = 0;            // en_chi_ideal(n, m, p)

  std::int64_t value(int i) const { return h[i].value; }
  bool chi_consistent() const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < h.size(); ++i) s += (i % 2 ? -1 : 1) * h[i].value;
    return s == chi;
  }
};

struct CohomologyTable {
  int n = 0, m = 0;
  std::vector<CohomologyRow> rows;

  int from() const { return rows.empty() ? 0 : rows.front().p; }
  int to() const { return rows.empty() ? -1 : rows.back().p; }
  const CohomologyRow* row(int p) const {
    for (const auto& r : rows)
      if (r.p == p) return &r;
    return nullptr;
  }
  std::vector<std::pair<int, int>> conflicts() const {  // (i, p)
    std::vector<std::pair<int, int>> out;
    for (const auto& r : rows)
      for (std::size_t i = 0; i < r.h.size(); ++i)
        if (r.h[i].provenance == Provenance::conflict) out.emplace_back(static_cast<int>(i), r.p);
    return out;
  }
  /// Nonzero entries with 1 <= i <= n-1, as (i, p).
  std::vector<std::pair<int, int>> nonzero_intermediate() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& r : rows)
      for (int i = 1; i < n; ++i)
        if (r.h[i].value != 0) out.emplace_back(i, r.p);
    return out;
  }

  /// A table with the given nonzero entries (i, p, value) and nothing else.
  static CohomologyTable synthetic(int n, int m, int from, int to, const std::vector<std::array<int, 3>>& entries) {
    CohomologyTable t{n, m};
    for (int p = from; p <= to; ++p) {
      CohomologyRow r{p, std::vector<CohomologyEntry>(n + 1), 0};
      for (const auto& e : entries)
        if (e[1] == p) r.h[e[0]].value = r.h[e[0]].predicted = e[2];
      r.chi = alternating_sum([&] {
        std::vector<std::int64_t> v;
        for (const auto& x : r.h) v.push_back(x.value);
        return v;
      }());
      t.rows.push_back(std::move(r));
    }
    return t;
  }
};

/// The predicted positive-i entry h^i(I_X(p)), zero off the listed positions.
inline std::int64_t en_predicted_entry(int n, int m, int i, int p) {
  if (i < 1 || i > n - m || (n - m - i) % 2 != 0 || p != m - 1 - i) return 0;
  const int s = (n - m - i) / 2;
  return binom(m + s - 1, m - 1);
}

inline CohomologyTable en_table(int n, int m, int from, int to) {
  require_nm(n, m);
  if (from > to) throw PreconditionError("empty twist window");
  CohomologyTable t{n, m};
  for (int p = from; p <= to; ++p) {
    CohomologyRow r{p, std::vector<CohomologyEntry>(n + 1), en_chi_ideal(n, m, p)};
    std::int64_t rest = 0;
    for (int i = 1; i < n; ++i) {
      r.h[i].predicted = en_predicted_entry(n, m, i, p);
      rest += (i % 2 ? -1 : 1) * r.h[i].predicted;
    }
    // Top cohomology agrees with that of P^n since dim X <= n-2.
    r.h[n].predicted = binom(-p - 1, n);
    rest += (n % 2 ? -1 : 1) * r.h[n].predicted;
    r.h[0].predicted = r.chi - rest;
    const auto oracle = oracle_ideal_cohomology(n, m, p);
    for (int i = 0; i <= n; ++i) {
      auto& e = r.h[i];
      e.value = e.predicted;
      if (oracle) {
        e.oracle = (*oracle)[i];
        e.value = *e.oracle;
        e.provenance = *e.oracle == e.predicted ? Provenance::oracle : Provenance::conflict;
      } else if (e.predicted < 0) {
        e.provenance = Provenance::conflict;
      }
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

struct BuchsbaumResult {
  bool holds = true;
  std::optional<std::array<int, 4>> witness;  // i, p, j, q with i < j and j - i = p - q - 1
};

/// Stueckrad-Vogel gap condition over nonzero h^i(I_X(p)), 1 <= i <= dim X.
inline BuchsbaumResult buchsbaum_sv_check(const CohomologyTable& t) {
  const int lo = 2 * t.m - t.n - 1, hi = t.m - 2;
  if (t.rows.empty() || t.from() > lo || t.to() < hi)
    throw PreconditionError("twist window must cover [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  const int dim_x = t.m - 1;
  std::vector<std::pair<int, int>> nz;
  for (const auto& [i, p] : t.nonzero_intermediate())
    if (i <= dim_x) nz.emplace_back(i, p);
  BuchsbaumResult out;
  for (const auto& [i, p] : nz)
    for (const auto& [j, q] : nz)
      if (i < j && j - i == p - q - 1) {
        out.holds = false;
        out.witness = std::array<int, 4>{i, p, j, q};
        return out;
      }
  return out;
}

}  // namespace lcx
