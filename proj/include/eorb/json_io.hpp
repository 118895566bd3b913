#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "flag_class.hpp"
#include "orbit_lab.hpp"
#include "skew_spectral.hpp"
#include "symplectic.hpp"

namespace eorb::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

inline json to_json(const Vec & v)
{
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

/// Row-major nested arrays.
inline json to_json(const Mat & m)
{
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const ToleranceConfig & t) { return {{"abs", t.abs}, {"rank_rel", t.rank_rel}, {"eig_cluster_rel", t.eig_cluster_rel}}; }

inline json to_json(const GroupSpec & g)
{
  json j = {{"n", g.n()}, {"family", to_string(g.family())}, {"tol", to_json(g.tol())}};
  if (g.family() == Family::Custom) {
    json basis = json::array();
    for (const auto & b : g.h_basis()) basis.push_back(to_json(b));
    j["h_basis"] = std::move(basis);
  }
  return j;
}

inline json to_json(const GroupElement & a) { return {{"r", to_json(a.r)}, {"d", to_json(a.d)}}; }
inline json to_json(const AlgebraElement & x) { return {{"omega", to_json(x.omega)}, {"v", to_json(x.v)}}; }
inline json to_json(const DualElement & m) { return {{"L", to_json(m.L)}, {"p", to_json(m.p)}}; }

inline json to_json(const Block & b)
{
  return {{"lambda", b.lambda}, {"dim", b.dim()}, {"basis", to_json(b.basis)}, {"J", to_json(b.J)}};
}

inline json to_json(const SkewSpectrum & s)
{
  json blocks = json::array();
  for (const auto & b : s.blocks) blocks.push_back(to_json(b));
  return {{"n", s.n()}, {"d0", s.d0()}, {"kernel_basis", to_json(s.kernel_basis)}, {"blocks", std::move(blocks)}, {"source_norm", s.source_norm}};
}

inline std::string to_string(Marker m)
{
  switch (m) {
  case Marker::Plain: return "plain";
  case Marker::Oriented: return "oriented";
  case Marker::Complex: return "complex";
  }
  return "";
}

inline std::string to_string(FlagKind k)
{
  switch (k) {
  case FlagKind::Linear: return "linear";
  case FlagKind::Affine: return "affine";
  case FlagKind::AffineWithGrain: return "affine_with_grain";
  }
  return "";
}

inline json to_json(const FlagSignature & s)
{
  json entries = json::array();
  for (const auto & e : s.entries) entries.push_back({{"dim", e.dim}, {"marker", to_string(e.marker)}});
  return {{"kind", to_string(s.kind)}, {"entries", std::move(entries)}, {"head_count", s.head_count()}, {"rendered", s.render()}};
}

inline json to_json(const OrbitClass & c)
{
  json lambdas = json::array();
  for (const auto & l : c.lambda_multiset) lambdas.push_back({{"lambda", l.lambda}, {"multiplicity", l.multiplicity}});
  return {
    {"signature", c.signature.render()},
    {"display", display(c.signature)},
    {"signature_detail", to_json(c.signature)},
    {"kind", to_string(c.side)},
    {"family", to_string(c.family)},
    {"n", c.n},
    {"orbit_dim", c.orbit_dim},
    {"flag_dim", c.flag_dim},
    {"isotropy_dim", c.isotropy_dim},
    {"components", c.components},
    {"full_group_components", c.full_components},
    {"component_of_full", c.component_of_full},
    {"components_rule_derived", c.components_rule_derived},
    {"proper", c.proper},
    {"lambda_multiset", std::move(lambdas)},
    {"d0", c.d0},
    {"translation_norm", c.translation_norm},
    {"generic", c.generic},
    {"orientation", c.orientation},
  };
}

inline json to_json(const IsotropyReport & r)
{
  return {{"dim_full", r.dim_full}, {"dim_h_joint", r.dim_h_joint}, {"dim_ker_part", r.dim_ker_part}, {"proper_algebra_level", r.proper_algebra_level}};
}

template<typename Point>
json to_json(const NormalFormResult<Point> & r)
{
  return {{"point", to_json(r.point)}, {"mover", to_json(r.mover)}, {"residual", r.residual}};
}

inline json to_json(const BundleEdge & e)
{
  return {{"label", e.label},         {"total", e.total.render()},  {"base", e.base.render()}, {"fibre", e.fibre},
          {"total_dim", e.total_dim}, {"base_dim", e.base_dim}, {"fibre_dim", e.fibre_dim}};
}

inline json to_json(const BijectionReport & r)
{
  json edges = json::array();
  for (const auto & e : r.edges) edges.push_back(to_json(e));
  return {
    {"normal_form", to_json(r.normal_form)},
    {"partner", to_json(r.partner)},
    {"adjoint_class", to_json(r.adjoint_class)},
    {"coadjoint_class", to_json(r.coadjoint_class)},
    {"base_signature", r.base_signature.render()},
    {"base_signatures_agree", r.base_agrees()},
    {"bundle_direction", to_string(r.direction)},
    {"fibre_dim", r.fibre_dim},
    {"fibre_dim_consistent", r.fibre_consistent()},
    {"edges", std::move(edges)},
  };
}

inline json to_json(const OrientedLine & l) { return {{"direction", to_json(l.direction)}, {"base", to_json(l.base)}}; }

// ---------------------------------------------------------------------------
// Decoding; every failure surfaces as InputError
// ---------------------------------------------------------------------------

inline Vec vec_from_json(const json & j, const char * what)
{
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError(std::string(what) + ": expected an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

inline Mat mat_from_json(const json & j, const char * what)
{
  if (!j.is_array()) throw InputError(std::string(what) + ": expected a row-major array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Vec r = vec_from_json(j[static_cast<std::size_t>(i)], what);
    if (r.size() != cols) throw InputError(std::string(what) + ": ragged matrix");
    m.row(i) = r.transpose();
  }
  return m;
}

inline const json & field(const json & j, const char * key, const char * what)
{
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing field '" + key + "'");
  return j.at(key);
}

inline void require_shape(const Mat & m, int n, const char * what)
{
  if (m.rows() != n || m.cols() != n) throw InputError(std::string(what) + ": matrix must be " + std::to_string(n) + "x" + std::to_string(n));
}

inline void require_length(const Vec & v, int n, const char * what)
{
  if (v.size() != n) throw InputError(std::string(what) + ": vector must have length " + std::to_string(n));
}

/// Accepts O, SO, E, SE, custom and the On/SOn/En/SEn spellings.
inline Family family_from_string(std::string s)
{
  if (s.size() > 1 && s.back() == 'n' && s != "custom") s.pop_back();
  if (s == "O") return Family::O;
  if (s == "SO") return Family::SO;
  if (s == "E") return Family::E;
  if (s == "SE") return Family::SE;
  if (s == "custom" || s == "CustomCompact") return Family::Custom;
  throw InputError("unknown group family '" + s + "'");
}

inline ToleranceConfig tol_from_json(const json & j, ToleranceConfig base = {})
{
  if (!j.is_object()) throw InputError("tol: expected an object");
  auto get = [&](const char * key, double & out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number()) throw InputError(std::string("tol.") + key + ": expected a number");
    out = j.at(key).get<double>();
  };
  get("abs", base.abs);
  get("rank_rel", base.rank_rel);
  get("eig_cluster_rel", base.eig_cluster_rel);
  base.validate();
  return base;
}

inline GroupSpec group_from_json(const json & j)
{
  const auto & nj = field(j, "n", "GroupSpec");
  if (!nj.is_number_integer() || nj.get<int>() < 1) throw InputError("GroupSpec.n: expected a positive integer");
  const int n = nj.get<int>();
  const auto & fj = field(j, "family", "GroupSpec");
  if (!fj.is_string()) throw InputError("GroupSpec.family: expected a string");
  const Family f      = family_from_string(fj.get<std::string>());
  const ToleranceConfig tol = j.contains("tol") ? tol_from_json(j.at("tol")) : ToleranceConfig{};
  if (f != Family::Custom) return GroupSpec(n, f, tol);
  const auto & bj = field(j, "h_basis", "GroupSpec");
  if (!bj.is_array()) throw InputError("GroupSpec.h_basis: expected an array of matrices");
  std::vector<Mat> basis;
  for (const auto & b : bj) {
    basis.push_back(mat_from_json(b, "GroupSpec.h_basis"));
    require_shape(basis.back(), n, "GroupSpec.h_basis");
  }
  return GroupSpec::custom(n, basis, tol);
}

inline GroupElement group_element_from_json(const json & j, int n)
{
  GroupElement a{mat_from_json(field(j, "r", "GroupElement"), "GroupElement.r"), vec_from_json(field(j, "d", "GroupElement"), "GroupElement.d")};
  require_shape(a.r, n, "GroupElement.r");
  require_length(a.d, n, "GroupElement.d");
  return a;
}

inline AlgebraElement algebra_from_json(const json & j, int n)
{
  AlgebraElement x{mat_from_json(field(j, "omega", "AlgebraElement"), "AlgebraElement.omega"),
                   j.contains("v") ? vec_from_json(j.at("v"), "AlgebraElement.v") : Vec(Vec::Zero(n))};
  require_shape(x.omega, n, "AlgebraElement.omega");
  require_length(x.v, n, "AlgebraElement.v");
  return x;
}

inline DualElement dual_from_json(const json & j, int n)
{
  DualElement m{mat_from_json(field(j, "L", "DualElement"), "DualElement.L"),
                j.contains("p") ? vec_from_json(j.at("p"), "DualElement.p") : Vec(Vec::Zero(n))};
  require_shape(m.L, n, "DualElement.L");
  require_length(m.p, n, "DualElement.p");
  return m;
}

// ---------------------------------------------------------------------------
// Rounded view
// ---------------------------------------------------------------------------

/// Rounds to 12 significant digits; negative zero becomes zero.
inline double round_significant(double x, int digits = 12)
{
  if (!std::isfinite(x) || x == 0) return x == 0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  const double r = std::strtod(buf, nullptr);
  return r == 0 ? 0.0 : r;
}

/// Copy of j with every float rounded to 12 significant digits.
inline json rounded(const json & j)
{
  if (j.is_number_float()) return round_significant(j.get<double>());
  if (j.is_array()) {
    json out = json::array();
    for (const auto & e : j) out.push_back(rounded(e));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
    return out;
  }
  return j;
}

}  // namespace eorb::io
