// JSON encoding of fields, scalars, matrices, subspaces and module reports.
// Wire orders: complexes and Pluecker vectors use the 15 pairs i<j in
// lexicographic order; plane cubics use x^3, x^2y, x^2z, xy^2, xyz, xz^2,
// y^3, y^2z, yz^2, z^3; cubic-point coordinates are (lambda_1, lambda_2, lambda_3).
#pragma once

#include <nlohmann/json.hpp>

#include <limits>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcx/cohomology.hpp"
#include "lcx/fournets.hpp"

namespace lcx {

using json = nlohmann::ordered_json;

/// Malformed input documents (CLI exit code 2).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------- fields and scalars

/// "Q", "F_p", "F_p^k", "GF(p)" or "GF(p^k)".
inline FieldPtr parse_field(const std::string& s) {
  if (s == "Q" || s == "QQ") return Field::rationals();
  static const std::regex re(R"(^(?:F_|GF\()(\d+)(?:\^(\d+))?\)?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw SchemaError("unrecognized field descriptor '" + s + "'");
  const std::uint64_t p = std::stoull(m[1].str());
  const int k = m[2].matched ? std::stoi(m[2].str()) : 1;
  return Field::finite(p, k);
}

inline json field_to_json(const FieldPtr& f) {
  json j{{"descriptor", f->describe()}};
  if (f->is_finite() && f->degree() > 1) j["modulus"] = f->modulus();
  return j;
}

inline json scalar_to_json(const Scalar& s) {
  const FieldPtr& f = s.field();
  if (!f->is_finite()) {
    const Rational& q = s.rational();
    if (boost::multiprecision::denominator(q) == 1) {
      const BigInt n = boost::multiprecision::numerator(q);
      if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max()) return static_cast<std::int64_t>(n);
    }
    return q.str();
  }
  if (f->degree() == 1) return s.coeff(0);
  json a = json::array();
  for (int i = 0; i < f->degree(); ++i) a.push_back(s.coeff(i));
  return a;
}

inline Scalar scalar_from_json(const FieldPtr& f, const json& j) {
  if (j.is_number_integer()) return Scalar::from_int(f, j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    static const std::regex re(R"(^-?\d+(/\d+)?$)");
    if (!std::regex_match(s, re)) throw SchemaError("bad scalar literal '" + s + "'");
    Rational q(s);
    return Scalar::from_rational(f, q);
  }
  if (j.is_array()) {
    if (!f->is_finite() || static_cast<int>(j.size()) != f->degree()) throw SchemaError("coefficient list does not match the field degree");
    std::vector<std::uint64_t> c;
    for (const auto& x : j) {
      if (!x.is_number_integer()) throw SchemaError("coefficients must be integers");
      const auto v = x.get<std::int64_t>();
      const auto p = static_cast<std::int64_t>(f->characteristic());
      c.push_back(static_cast<std::uint64_t>(((v % p) + p) % p));
    }
    return Scalar::from_coeffs(f, c);
  }
  throw SchemaError("scalar must be an integer, a rational string or a coefficient list");
}

inline json vector_to_json(const std::vector<Scalar>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(scalar_to_json(x));
  return a;
}

inline std::vector<Scalar> vector_from_json(const FieldPtr& f, const json& j, std::size_t expected) {
  if (!j.is_array() || (expected && j.size() != expected)) throw SchemaError("expected a list of " + std::to_string(expected) + " scalars");
  std::vector<Scalar> v;
  for (const auto& x : j) v.push_back(scalar_from_json(f, x));
  return v;
}

// ---------------------------------------------------------------- matrices and geometry

inline json matrix_to_json(const Matrix& m) {
  json a = json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(vector_to_json(m.row(i)));
  return a;
}

inline Matrix matrix_from_json(const FieldPtr& f, const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw SchemaError("matrix must be a non-empty list of rows");
  const std::size_t cols = j[0].size();
  std::vector<std::vector<Scalar>> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(f, r, cols));
  return Matrix::from_rows(f, rows, static_cast<int>(cols));
}

inline SkewMatrix skew_matrix_from_json(const FieldPtr& f, const json& j) {
  const Matrix m = matrix_from_json(f, j);
  if (m.rows() != m.cols()) throw SchemaError("matrix must be square");
  for (int i = 0; i < m.rows(); ++i)
    for (int k = i; k < m.cols(); ++k)
      if (!(m(i, k) + m(k, i)).is_zero()) throw SchemaError("matrix is not skew-symmetric at (" + std::to_string(i) + "," + std::to_string(k) + ")");
  return SkewMatrix(m);
}

/// A skew matrix given as {"matrix": rows} or {"coefficients": 15 upper entries}.
inline SkewMatrix skew_from_json(const FieldPtr& f, const json& j) {
  if (j.is_array()) return skew_matrix_from_json(f, j);
  if (!j.is_object()) throw SchemaError("complex must be an object or a matrix");
  if (j.contains("coefficients")) return SkewMatrix::from_coefficients(f, vector_from_json(f, j.at("coefficients"), 15));
  if (j.contains("matrix")) return skew_matrix_from_json(f, j.at("matrix"));
  throw SchemaError("complex needs 'matrix' or 'coefficients'");
}

inline Complex complex_from_json(const FieldPtr& f, const json& j) {
  const SkewMatrix a = skew_from_json(f, j);
  if (a.order() != 6) throw SchemaError("complexes of P^5 need 6x6 matrices");
  return Complex(a);
}

inline json complex_to_json(const Complex& c) { return json{{"coefficients", vector_to_json(c.coefficients())}}; }

inline json subspace_to_json(const ProjSubspace& s) {
  json basis = json::array();
  for (int i = 0; i <= s.dim(); ++i) basis.push_back(vector_to_json(s.basis_vector(i)));
  return json{{"dim", s.dim()}, {"basis", basis}};
}

inline json net_to_json(const Net& d) {
  json g = json::array();
  for (const auto& c : d.generators()) g.push_back(complex_to_json(c));
  return g;
}

inline Net net_from_json(const FieldPtr& f, const json& j) {
  if (!j.is_array() || j.size() != 3) throw SchemaError("a net needs three complexes");
  return Net(complex_from_json(f, j[0]), complex_from_json(f, j[1]), complex_from_json(f, j[2]));
}

inline Pencil pencil_from_json(const FieldPtr& f, const json& j) {
  if (!j.is_array() || j.size() != 2) throw SchemaError("a pencil needs two complexes");
  return Pencil(complex_from_json(f, j[0]), complex_from_json(f, j[1]));
}

// ---------------------------------------------------------------- reports

inline json class_to_json(const ComplexClass& c) {
  return json{{"kind", to_string(c.kind)}, {"rank", c.kind == ComplexKind::general ? 6 : (c.kind == ComplexKind::special_first_type ? 4 : 2)},
              {"pfaffian", scalar_to_json(c.pfaffian)}, {"singular_space", subspace_to_json(c.singular_space)}};
}

inline json configuration_to_json(const ConfigurationReport& r) {
  json lines = json::array();
  for (const auto& l : r.lines) lines.push_back(subspace_to_json(l));
  json j{{"case", to_string(r.case_id)}, {"lines", lines}, {"multiplicities", r.multiplicities}, {"span_dim", r.span_dim},
         {"pairwise_meets", r.pairwise_meets}};
  if (r.trisecant) j["trisecant"] = subspace_to_json(*r.trisecant);
  return j;
}

inline json alpha_to_json(const AlphaResult& a) {
  json lines = json::array();
  for (const auto& l : a.lines) lines.push_back(subspace_to_json(l));
  json j{{"verdict", to_string(a.verdict)}, {"field", field_to_json(a.field)}, {"lines", lines}, {"multiplicities", a.multiplicities}};
  if (a.configuration) j["configuration"] = configuration_to_json(*a.configuration);
  if (a.second_type_member) j["second_type_member"] = complex_to_json(*a.second_type_member);
  if (a.witness_3space) j["witness_3space"] = subspace_to_json(*a.witness_3space);
  return j;
}

inline json net_type_to_json(const NetTypeReport& r) {
  json j{{"type", to_string(r.type)}, {"fixed_component", r.fixed_component}};
  if (r.witness_field) j["witness_field"] = field_to_json(r.witness_field);
  if (r.witness_parameter) j["witness_parameter"] = vector_to_json(*r.witness_parameter);
  if (r.witness) j["witness"] = complex_to_json(Complex(*r.witness));
  return j;
}

inline json scroll_count_to_json(const ScrollCount& s) {
  return json{{"x_count", s.x_count}, {"c_count", s.c_count}, {"fibered", s.fibered}, {"all_rank_four", s.all_rank_four},
              {"fibres_disjoint", s.fibres_disjoint}, {"points_scanned", s.points_scanned}};
}

inline json degree_probe_to_json(const std::vector<DegreeProbeTrial>& trials) {
  json a = json::array();
  std::size_t mx = 0;
  for (const auto& t : trials) {
    a.push_back(json{{"counts", t.counts}, {"stabilized", t.stabilized}, {"non_generic", t.non_generic}});
    mx = std::max(mx, t.stabilized);
  }
  return json{{"trials", a}, {"max_stabilized", mx}};
}

inline json directrix_to_json(const DirectrixReport& r) {
  json planes = json::array();
  for (const auto& p : r.planes) planes.push_back(subspace_to_json(p));
  return json{{"field", field_to_json(r.field)}, {"escalated", r.embedding.has_value()}, {"planes", planes}, {"infinite_family", r.infinite_family}};
}

inline json fournets_to_json(const FourNetsReport& r) {
  json nets = json::array();
  for (const auto& n : r.companion_nets) nets.push_back(net_to_json(n));
  json branches = json::array();
  for (const auto& b : r.branches) {
    json br{{"torsion_point", vector_to_json(b.torsion_point)}, {"gamma_samples", b.gammas.size()}, {"span_rank", b.span_rank},
            {"full_fiber_solution_dims", b.full_fiber_dims}, {"restricted_solution_dims", b.restricted_dims}, {"general", b.general},
            {"cross_verification", {{"forward", {b.cross.forward_passed, b.cross.forward_checked}}, {"backward", {b.cross.backward_passed, b.cross.backward_checked}}}},
            {"log", b.log}};
    if (b.net) br["net"] = net_to_json(*b.net);
    branches.push_back(br);
  }
  return json{{"input_net", net_to_json(r.input)}, {"torsion_classes_found", r.torsion_classes_found}, {"companion_count", r.companion_nets.size()},
              {"companion_nets", nets}, {"self_recovered", r.self_recovered}, {"pairwise_distinct", r.pairwise_distinct},
              {"branches", branches}, {"field_escalations", r.field_escalations}, {"success", r.success()}};
}

inline json cohomology_to_json(const CohomologyTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json h = json::array(), prov = json::array(), conflicts = json::array();
    for (std::size_t i = 0; i < r.h.size(); ++i) {
      const auto& e = r.h[i];
      h.push_back(e.value);
      prov.push_back(to_string(e.provenance));
      if (e.provenance == Provenance::conflict) conflicts.push_back(json{{"i", i}, {"predicted", e.predicted}, {"oracle", e.oracle ? json(*e.oracle) : json(nullptr)}});
    }
    rows.push_back(json{{"p", r.p}, {"h", h}, {"provenance", prov}, {"chi", r.chi}, {"chi_consistent", r.chi_consistent()}, {"conflicts", conflicts}});
  }
  return json{{"n", t.n}, {"m", t.m}, {"rows", rows}};
}

/// Aligned text grid; conflict cells read value(predicted).
inline std::string cohomology_grid(const CohomologyTable& t) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{"p"};
  for (int i = 0; i <= t.n; ++i) head.push_back("h" + std::to_string(i));
  head.push_back("chi");
  cells.push_back(head);
  for (const auto& r : t.rows) {
    std::vector<std::string> row{std::to_string(r.p)};
    for (const auto& e : r.h) row.push_back(std::to_string(e.value) + (e.provenance == Provenance::conflict ? "(" + std::to_string(e.predicted) + ")!" : ""));
    row.push_back(std::to_string(r.chi));
    cells.push_back(row);
  }
  std::vector<std::size_t> w(cells[0].size(), 0);
  for (const auto& r : cells)
    for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
  std::string out;
  for (const auto& r : cells) {
    for (std::size_t c = 0; c < r.size(); ++c) out += std::string(w[c] - r[c].size() + (c ? 2 : 0), ' ') + r[c];
    out += '\n';
  }
  return out;
}

}  // namespace lcx
