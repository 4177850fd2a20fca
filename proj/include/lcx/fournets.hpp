// The four nets sharing one elliptic scroll: the complexes Gamma_k obtained
// from halvings on the Pfaffian cubic, their spans, and the series identities
// linking the cubic, its singular lines and the directrix planes.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lcx/net.hpp"

namespace lcx {

struct FourNetsConfig {
  int span_samples = 6;        // Gamma_k per torsion class used to fit the span
  int cross_samples = 50;      // scroll points checked in each direction
  int max_k_attempts = 60;     // candidate points k tried per class
};

/// Per-net data shared by every Gamma_k computation.
class FourNetsContext {
 public:
  FourNetsContext(const Net& d, Rng& rng)
      : net_(d), cubic_(net_pfaffian_cubic(d)), table_(cubic_, rng), planes_(directrix_planes(d, rng)) {
    if (!is_smooth(cubic_, rng).smooth) throw PreconditionError("the Pfaffian cubic is singular");
    if (planes_.planes.size() != 2) throw PreconditionError("expected exactly two directrix planes");
    work_ = planes_.embedding ? *planes_.embedding : Embedding::identity(d.field());
    for (const auto& p : rational_points(cubic_, rng))
      if (d.member(p).rank() == 4) points_.push_back(p);
  }

  const Net& net() const { return net_; }
  const PlaneCubic& cubic() const { return cubic_; }
  const HalvingTable& table() const { return table_; }
  const DirectrixReport& planes() const { return planes_; }
  const std::vector<Point2>& rank_four_points() const { return points_; }
  /// Base field -> field of the directrix planes.
  const Embedding& work() const { return work_; }

 private:
  Net net_;
  PlaneCubic cubic_;
  HalvingTable table_;
  DirectrixReport planes_;
  Embedding work_ = Embedding::identity(Field::rationals());
  std::vector<Point2> points_;
};

struct GammaResult {
  std::optional<Complex> gamma;          // over the base field
  int full_fiber_solution_dim = -1;      // vector dim inside P^5_k with the four line conditions
  int restricted_solution_dim = -1;      // same, inside the subspace containing the directrix planes' lines
  bool halvings_escalated = false;       // halvings found over F_{q^2}
  std::vector<Point2> halving_points;    // over the working field
  std::string failure;
};

namespace detail {

/// The four points P with P + P = target, over F_q or, failing that, over F_{q^2}
/// via the contact points of the tangents from third(target, O).
inline std::pair<std::vector<Point2>, std::optional<Embedding>> four_halvings(const FourNetsContext& ctx, const Point2& target, Rng& rng) {
  auto base = ctx.table().halvings(target);
  if (base.size() == 4) return {base, std::nullopt};
  if (!base.empty()) return {base, std::nullopt};
  const Extension ext = field_extend(ctx.net().field(), 2);
  const PlaneCubic big = ctx.cubic().embedded(ext.embedding);
  const Point2 r = ctx.cubic().third(target, ctx.cubic().base_point());
  Point2 rb;
  for (const auto& x : r) rb.push_back(ext.embedding(x));
  const PolarContact pc = polar_contact(big, rb, rng);
  std::vector<Point2> out;
  for (const auto& d : pc.residual)
    if (d.multiplicity == 1) out.push_back(d.point);
  return {out, ext.embedding};
}

/// Lift a point of the base field or of an intermediate field into `to`.
inline std::vector<Scalar> lift(const std::vector<Scalar>& v, const FieldPtr& to) {
  if (same_field(v.front().field(), to)) return v;
  const Embedding e = Embedding::between(v.front().field(), to);
  std::vector<Scalar> out;
  for (const auto& x : v) out.push_back(e(x));
  return out;
}

/// Descends a 15-vector from an extension to the base field after normalization.
inline std::optional<std::vector<Scalar>> descend(const std::vector<Scalar>& v, const Embedding& e) {
  const auto n = normalize_point(v);
  std::vector<Scalar> out;
  for (const auto& x : n) {
    auto y = e.preimage(x);
    if (!y) return std::nullopt;
    out.push_back(*y);
  }
  return out;
}

}  // namespace detail

/// gamma_k: the complex of P^5_k containing the four scroll lines over the
/// halvings of F - k, where F = [S] + 2[O] is given by its point S.
inline GammaResult gamma_k(const FourNetsContext& ctx, const Point2& class_point, const Point2& k, Rng& rng) {
  GammaResult out;
  const Net& d = ctx.net();
  const PlaneCubic& c = ctx.cubic();
  c.require_on_curve(k);
  if (d.member(k).rank() != 4) throw PreconditionError("gamma_k needs a rank-4 member at k");
  const Point2 target = c.sub(class_point, k);
  auto [pts, esc] = detail::four_halvings(ctx, target, rng);
  out.halvings_escalated = esc.has_value();
  if (pts.size() != 4) {
    out.failure = "found " + std::to_string(pts.size()) + " halvings";
    return out;
  }
  // Working field: the larger of the planes' field and the halvings' field (both inside F_{q^2}).
  const FieldPtr wf = esc ? esc->to() : ctx.work().to();
  const Embedding to_w = Embedding::between(d.field(), wf);
  const Net big = d.embedded(to_w);
  std::vector<ProjSubspace> lines;
  for (const auto& p : pts) {
    const auto pw = detail::lift(p, wf);
    out.halving_points.push_back(pw);
    const ProjSubspace l = singular_space(big.member(pw));
    if (l.dim() != 1) {
      out.failure = "a halving point has a non-line fibre";
      return out;
    }
    lines.push_back(l);
  }
  const ProjSubspace kf = singular_space(big.member(detail::lift(k, wf)));
  const Matrix fib = skew_annihilating(wf, {kf.basis_vector(0), kf.basis_vector(1)});
  auto solve_with = [&](const std::vector<std::vector<Scalar>>& eqs) {
    Matrix m(wf, static_cast<int>(eqs.size()), fib.rows());
    for (std::size_t r = 0; r < eqs.size(); ++r)
      for (int b = 0; b < fib.rows(); ++b) m(static_cast<int>(r), b) = pairing(fib.row(b), eqs[r]);
    return rank_kernel(m).kernel;
  };
  std::vector<std::vector<Scalar>> eqs;
  for (const auto& l : lines) eqs.push_back(pluecker_of_line(l).coords());
  out.full_fiber_solution_dim = solve_with(eqs).rows();
  for (const auto& w : ctx.planes().planes) {
    const auto w0 = detail::lift(w.basis_vector(0), wf), w1 = detail::lift(w.basis_vector(1), wf), w2 = detail::lift(w.basis_vector(2), wf);
    eqs.push_back(wedge(w0, w1));
    eqs.push_back(wedge(w0, w2));
    eqs.push_back(wedge(w1, w2));
  }
  const Matrix sol = solve_with(eqs);
  out.restricted_solution_dim = sol.rows();
  if (sol.rows() != 1) {
    out.failure = "restricted solution space has dimension " + std::to_string(sol.rows());
    return out;
  }
  const auto coeffs = (sol * fib).row(0);
  const auto down = detail::descend(coeffs, to_w);
  if (!down) {
    out.failure = "Gamma_k is not defined over the base field";
    return out;
  }
  out.gamma = Complex::from_coefficients(d.field(), *down);
  return out;
}

// ---------------------------------------------------------------- companion nets

struct CrossCheck {
  int forward_checked = 0, forward_passed = 0;    // points of X(input) in X(companion)
  int backward_checked = 0, backward_passed = 0;  // points of X(companion) in X(input)
  bool ok() const { return forward_checked > 0 && backward_checked > 0 && forward_passed == forward_checked && backward_passed == backward_checked; }
};

struct CompanionBranch {
  Point2 torsion_point;
  std::vector<Complex> gammas;
  std::vector<int> full_fiber_dims, restricted_dims;
  int span_rank = 0;
  std::optional<Net> net;
  bool general = false;
  CrossCheck cross;
  std::vector<std::string> log;
};

struct FourNetsReport {
  Net input;
  int torsion_classes_found = 0;
  std::vector<CompanionBranch> branches;
  std::vector<Net> companion_nets;
  bool self_recovered = false;
  bool pairwise_distinct = false;
  std::vector<std::string> field_escalations;

  bool success() const {
    if (companion_nets.size() != 4 || !self_recovered || !pairwise_distinct) return false;
    for (const auto& b : branches)
      if (!b.general || !b.cross.ok()) return false;
    return true;
  }
};

/// Random rational points of X: a random point on the fibre over a random rank-4 cubic point.
inline std::vector<std::vector<Scalar>> sample_scroll_points(const Net& d, const std::vector<Point2>& rank4, int count, Rng& rng) {
  std::vector<std::vector<Scalar>> out;
  if (rank4.empty()) return out;
  for (int i = 0; i < count; ++i) {
    const auto& l = rank4[uniform_below(rng, rank4.size())];
    out.push_back(singular_space(d.member(l)).random_point(rng));
  }
  return out;
}

inline std::vector<Point2> rank_four_points(const Net& d, Rng& rng) {
  std::vector<Point2> out;
  for (const auto& p : cubic_points(d, rng))
    if (d.member(p).rank() == 4) out.push_back(p);
  return out;
}

inline CrossCheck cross_membership(const Net& a, const Net& b, int samples, Rng& rng) {
  CrossCheck cc;
  const GenericMorphism pa = a.morphism(), pb = b.morphism();
  for (const auto& x : sample_scroll_points(a, rank_four_points(a, rng), samples, rng)) {
    ++cc.forward_checked;
    if (x_membership(pb, x)) ++cc.forward_passed;
  }
  for (const auto& x : sample_scroll_points(b, rank_four_points(b, rng), samples, rng)) {
    ++cc.backward_checked;
    if (x_membership(pa, x)) ++cc.backward_passed;
  }
  return cc;
}

/// The net spanned by complexes whose span is a plane, in canonical (echelon) generators.
inline Net net_from_span(const FieldPtr& f, const Matrix& span) {
  const Matrix rs = row_space(span);
  if (rs.rows() != 3) throw PreconditionError("span is not a plane");
  return Net(Complex::from_coefficients(f, rs.row(0)), Complex::from_coefficients(f, rs.row(1)), Complex::from_coefficients(f, rs.row(2)));
}

inline FourNetsReport companion_nets(const Net& d, Rng& rng, const FourNetsConfig& cfg = {}) {
  if (net_type(d, rng).type != NetType::general) throw PreconditionError("companion nets need a general net");
  const FourNetsContext ctx(d, rng);
  FourNetsReport rep{d};
  if (ctx.planes().embedding) rep.field_escalations.push_back("directrix planes over " + ctx.planes().field->describe());
  const PlaneCubic& c = ctx.cubic();
  const TwoTorsion tt = two_torsion(c, rng);
  rep.torsion_classes_found = static_cast<int>(tt.classes.size());
  const Point2 sh = hyperplane_class(c).point;
  auto candidates = ctx.rank_four_points();
  for (const auto& t : tt.classes) {
    CompanionBranch br{t.point};
    const Point2 sf = c.add(sh, t.point);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    int tried = 0, escalated = 0;
    for (const auto& k : candidates) {
      if (static_cast<int>(br.gammas.size()) >= cfg.span_samples || tried >= cfg.max_k_attempts) break;
      ++tried;
      const GammaResult g = gamma_k(ctx, sf, k, rng);
      br.full_fiber_dims.push_back(g.full_fiber_solution_dim);
      br.restricted_dims.push_back(g.restricted_solution_dim);
      if (g.halvings_escalated) ++escalated;
      if (!g.gamma) {
        br.log.push_back(g.failure);
        continue;
      }
      br.gammas.push_back(*g.gamma);
    }
    if (escalated > 0) rep.field_escalations.push_back(std::to_string(escalated) + " of " + std::to_string(tried) + " halving sets over the quadratic extension");
    if (br.gammas.empty()) {
      br.log.push_back("no Gamma_k found");
      rep.branches.push_back(br);
      continue;
    }
    std::vector<std::vector<Scalar>> rows;
    for (const auto& g : br.gammas) rows.push_back(g.coefficients());
    const Matrix span = Matrix::from_rows(d.field(), rows, 15);
    br.span_rank = rank(span);
    if (br.span_rank == 3 && static_cast<int>(br.gammas.size()) >= cfg.span_samples) {
      br.net = net_from_span(d.field(), span);
      br.general = net_type(*br.net, rng).type == NetType::general;
      br.cross = cross_membership(d, *br.net, cfg.cross_samples, rng);
      rep.companion_nets.push_back(*br.net);
      if (PlaneCubic::same_point(t.point, c.base_point())) rep.self_recovered = br.net->plane() == d.plane();
    } else {
      br.log.push_back("span rank " + std::to_string(br.span_rank) + " from " + std::to_string(br.gammas.size()) + " samples");
    }
    rep.branches.push_back(br);
  }
  rep.pairwise_distinct = true;
  for (std::size_t i = 0; i < rep.companion_nets.size(); ++i)
    for (std::size_t j = i + 1; j < rep.companion_nets.size(); ++j)
      if (rep.companion_nets[i].plane() == rep.companion_nets[j].plane()) rep.pairwise_distinct = false;
  return rep;
}

/// Same set of planes, in any order.
inline bool same_net_set(const std::vector<Net>& a, const std::vector<Net>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    bool found = false;
    for (const auto& y : b) found = found || x.plane() == y.plane();
    if (!found) return false;
  }
  return true;
}

/// A net over the searched field whose cubic is smooth with full rational 2-torsion.
struct FourNetsInstance {
  std::uint64_t q;
  std::uint64_t seed;
  Net net;
};

inline std::optional<FourNetsInstance> find_four_nets_instance(std::uint64_t seed, const std::vector<std::uint64_t>& primes, int tries_per_prime = 40) {
  for (std::uint64_t q : primes) {
    const FieldPtr f = Field::prime(q);
    Rng rng(seed ^ (q * 0x9e3779b97f4a7c15ULL));
    for (int t = 0; t < tries_per_prime; ++t) {
      const Net d = Net::random(f, rng);
      try {
        const PlaneCubic c = net_pfaffian_cubic(d);
        if (!is_smooth(c, rng).smooth) continue;
        if (!two_torsion(c, rng).full()) continue;
        if (net_type(d, rng).type != NetType::general) continue;
        if (directrix_planes(d, rng).planes.size() != 2) continue;
        return FourNetsInstance{q, seed, d};
      } catch (const PreconditionError&) {
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- series identities

struct SeriesIdentities {
  int subpfaffian_points = 0, subpfaffian_ok = 0;   // 2H_C: sub-Pfaffians proportional to kernel Pluecker
  int sum_series_trials = 0, sum_series_ok = 0;     // conic cut = D_r + D_r', of class 2H_C
  int g23_trials = 0, g23_ok = 0;                   // D_r classes agree for two lines of one plane
  int polar_trials = 0, polar_ok = 0;               // polar residual = halvings at F = H_C
};

namespace detail {

/// The points of the cubic whose fibre meets the line r (r inside a directrix plane).
inline std::vector<Point2> fibres_meeting(const Net& big, const std::vector<Point2>& pts, const ProjSubspace& r) {
  std::vector<Point2> out;
  for (const auto& p : pts)
    if (lines_meet(singular_space(big.member(p)), r)) out.push_back(p);
  return out;
}

inline bool same_multiset(std::vector<DivisorPoint> a, std::vector<Point2> b) {
  for (const auto& d : a)
    for (int m = 0; m < d.multiplicity; ++m) {
      auto it = std::find_if(b.begin(), b.end(), [&](const Point2& x) { return PlaneCubic::same_point(x, d.point); });
      if (it == b.end()) return false;
      b.erase(it);
    }
  return b.empty();
}

}  // namespace detail

inline SeriesIdentities series_identities(const FourNetsContext& ctx, Rng& rng, int trials = 10) {
  SeriesIdentities out;
  const Net& d = ctx.net();
  const auto& pts = ctx.rank_four_points();
  for (int i = 0; i < 20 && !pts.empty(); ++i) {
    const SkewMatrix m = d.member(pts[uniform_below(rng, pts.size())]);
    ++out.subpfaffian_points;
    if (proportional(subpfaffians(m), pluecker_of_line(singular_space(m)).coords())) ++out.subpfaffian_ok;
  }

  // Work over the field of the directrix planes.
  const Embedding& w = ctx.work();
  const Net big = d.embedded(w);
  const PlaneCubic cb = ctx.cubic().embedded(w);
  std::vector<Point2> wpts;
  for (const auto& p : rational_points(cb, rng))
    if (big.member(p).rank() == 4) wpts.push_back(p);
  const auto forms = subpfaffian_forms(big.matrices());
  const auto& planes = ctx.planes().planes;
  const DivisorClass two_h = class_add(cb, hyperplane_class(cb), hyperplane_class(cb));

  // A line of plane pi through the points where two rational fibres meet it.
  auto line_in = [&](const ProjSubspace& pi) -> std::optional<ProjSubspace> {
    const auto& a = wpts[uniform_below(rng, wpts.size())];
    const auto& b = wpts[uniform_below(rng, wpts.size())];
    const ProjSubspace pa = meet(singular_space(big.member(a)), pi), pb = meet(singular_space(big.member(b)), pi);
    if (pa.dim() != 0 || pb.dim() != 0 || pa == pb) return std::nullopt;
    return join(pa, pb);
  };

  for (int t = 0, guard = 0; t < trials && guard < 20 * trials && wpts.size() >= 2; ++guard) {
    const auto r = line_in(planes[0]), r2 = line_in(planes[1]), r3 = line_in(planes[0]);
    if (!r || !r2 || !r3 || lines_meet(*r, *r2)) continue;
    const Complex h = type2_complex_of_3space(join(*r, *r2));
    MPoly conic(big.field(), 3);
    const auto hc = h.coefficients();
    for (int k = 0; k < 15; ++k) conic = conic + hc[k] * forms[k];
    if (conic.is_zero()) continue;
    const auto dr = detail::fibres_meeting(big, wpts, *r), dr2 = detail::fibres_meeting(big, wpts, *r2), dr3 = detail::fibres_meeting(big, wpts, *r3);
    if (dr.size() != 3 || dr2.size() != 3 || dr3.size() != 3) continue;
    CurveIntersection in;
    try {
      in = intersect_curves(conic, cb.form(), rng);
    } catch (const PreconditionError&) {
      continue;
    }
    ++t;
    ++out.sum_series_trials;
    std::vector<Point2> expected = dr;
    expected.insert(expected.end(), dr2.begin(), dr2.end());
    std::vector<DivisorPoint> cut;
    for (const auto& p : in.points) cut.push_back({p.point, p.multiplicity});
    if (in.irrational_degree == 0 && detail::same_multiset(cut, expected) && class_of_divisor(cb, cut) == two_h) ++out.sum_series_ok;
    ++out.g23_trials;
    auto as_div = [](const std::vector<Point2>& ps) {
      std::vector<DivisorPoint> v;
      for (const auto& p : ps) v.push_back({p, 1});
      return v;
    };
    if (class_of_divisor(cb, as_div(dr)) == class_of_divisor(cb, as_div(dr3))) ++out.g23_ok;
  }

  const PlaneCubic& c = ctx.cubic();
  const Point2 sh = hyperplane_class(c).point;
  for (int i = 0; i < 20 && !pts.empty(); ++i) {
    const auto& k = pts[uniform_below(rng, pts.size())];
    PolarContact pc;
    try {
      pc = polar_contact(c, k, rng);
    } catch (const PreconditionError&) {
      continue;
    }
    if (pc.irrational_degree != 0) continue;
    ++out.polar_trials;
    const auto hs = ctx.table().halvings(c.sub(sh, k));
    if (detail::same_multiset(pc.residual, hs)) ++out.polar_ok;
  }
  return out;
}

}  // namespace lcx
