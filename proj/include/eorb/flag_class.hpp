#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lie_core.hpp"
#include "orbit_lab/isotropy.hpp"
#include "orbit_lab/normal_form.hpp"
#include "skew_spectral.hpp"

namespace eorb {

// ---------------------------------------------------------------------------
// Flag signatures
// ---------------------------------------------------------------------------

/// Extra structure carried by one flag component.
enum class Marker { Plain, Oriented, Complex };

struct FlagEntry
{
  int dim       = 0;
  Marker marker = Marker::Plain;

  bool operator==(const FlagEntry &) const = default;
};

enum class FlagKind {
  Linear,          ///< F(d_1, ..., d_k)
  Affine,          ///< Aff(s; d_1, ..., d_k), s the flag pole
  AffineWithGrain  ///< Aff([~g, t]; d_1, ..., d_k), oriented grain g inside the pole
};

/// Signature of a (Hermitian, affine, or grain) flag manifold.
///
/// `entries` lists all components in order. For Affine the first entry is the
/// flag pole, for AffineWithGrain the first two are the bracketed grain group.
/// Rendering grammar: `F(...)`, `Aff(s;...)`, `Aff([s,t];...)` with entries
/// `~d` (oriented), `dC` (complex) or `d` (plain).
struct FlagSignature
{
  FlagKind kind = FlagKind::Linear;
  std::vector<FlagEntry> entries;

  bool operator==(const FlagSignature &) const = default;

  int head_count() const
  {
    switch (kind) {
    case FlagKind::Linear: return 0;
    case FlagKind::Affine: return 1;
    case FlagKind::AffineWithGrain: return 2;
    }
    return 0;
  }

  int total_dim() const
  {
    int s = 0;
    for (const auto & e : entries) s += e.dim;
    return s;
  }

  /// Brings the signature into the one canonical form.
  ///
  /// Zero-dimensional components are dropped, except the flag pole of an Affine
  /// signature (a 0-dimensional pole is a point of V). A grain group [~g, 0]
  /// collapses to the plain affine pole ~g.
  FlagSignature canonical() const
  {
    FlagSignature out{kind, {}};
    const int h = std::min<int>(head_count(), static_cast<int>(entries.size()));
    if (kind == FlagKind::AffineWithGrain && h == 2 && entries[1].dim == 0) {
      out.kind = FlagKind::Affine;
      out.entries.push_back(entries[0]);
    } else {
      for (int i = 0; i < h; ++i) out.entries.push_back(entries[i]);
    }
    for (std::size_t i = h; i < entries.size(); ++i) {
      if (entries[i].dim > 0) out.entries.push_back(entries[i]);
    }
    return out;
  }

  /// Throws MalformedSignature unless well-formed and canonical for ambient dimension n.
  void validate(int n) const
  {
    const int h = head_count();
    if (static_cast<int>(entries.size()) < h) throw MalformedSignature("signature: missing flag pole entries");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto & e = entries[i];
      const bool pole = kind == FlagKind::Affine && i == 0;
      if (e.dim < 0 || (e.dim == 0 && !pole)) throw MalformedSignature("signature: component dimension must be positive");
      if (e.marker == Marker::Complex && e.dim % 2 != 0) throw MalformedSignature("signature: complex component of odd dimension");
      if (pole && e.marker == Marker::Complex) throw MalformedSignature("signature: flag pole cannot be complex");
    }
    if (kind == FlagKind::AffineWithGrain) {
      if (entries[0].marker != Marker::Oriented) throw MalformedSignature("signature: grain must be oriented");
      if (entries[1].marker != Marker::Plain) throw MalformedSignature("signature: second grain-group entry must be plain");
    }
    if (total_dim() != n) throw MalformedSignature("signature: dimensions do not sum to n");
  }

  std::string render() const
  {
    auto entry = [](const FlagEntry & e) {
      switch (e.marker) {
      case Marker::Oriented: return "~" + std::to_string(e.dim);
      case Marker::Complex: return std::to_string(e.dim) + "C";
      case Marker::Plain: break;
      }
      return std::to_string(e.dim);
    };
    auto join = [&](std::size_t from) {
      std::string s;
      for (std::size_t i = from; i < entries.size(); ++i) {
        if (i > from) s += ",";
        s += entry(entries[i]);
      }
      return s;
    };
    const auto h = static_cast<std::size_t>(head_count());
    switch (kind) {
    case FlagKind::Linear: return "F(" + join(0) + ")";
    case FlagKind::Affine: {
      std::string s = "Aff(" + entry(entries.at(0));
      if (entries.size() > h) s += ";" + join(h);
      return s + ")";
    }
    case FlagKind::AffineWithGrain: {
      std::string s = "Aff([" + entry(entries.at(0)) + "," + entry(entries.at(1)) + "]";
      if (entries.size() > h) s += ";" + join(h);
      return s + ")";
    }
    }
    return "";
  }

  /// Parses the rendering grammar; the result is canonicalised.
  ///
  /// Accepts `[~g;t]` as an alternative spelling of the grain group `[~g,t]`.
  static FlagSignature parse(std::string_view text)
  {
    std::string s;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    auto fail = [&]() -> FlagSignature { throw MalformedSignature("cannot parse signature '" + std::string(text) + "'"); };
    auto parse_entry = [&](std::string_view tok) {
      FlagEntry e;
      if (tok.empty()) fail();
      if (tok.front() == '~') {
        e.marker = Marker::Oriented;
        tok.remove_prefix(1);
      } else if (tok.back() == 'C') {
        e.marker = Marker::Complex;
        tok.remove_suffix(1);
      }
      if (tok.empty()) fail();
      for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail();
      }
      e.dim = std::stoi(std::string(tok));
      return e;
    };
    auto parse_list = [&](std::string_view body) {
      std::vector<FlagEntry> out;
      if (body.empty()) return out;
      std::size_t start = 0;
      while (true) {
        const auto comma = body.find(',', start);
        out.push_back(parse_entry(body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      return out;
    };

    FlagSignature sig;
    std::string_view v = s;
    if (v.size() < 3 || v.back() != ')') fail();
    if (v.starts_with("F(")) {
      sig.kind    = FlagKind::Linear;
      sig.entries = parse_list(v.substr(2, v.size() - 3));
      if (sig.entries.empty()) fail();
      return sig.canonical();
    }
    if (!v.starts_with("Aff(")) fail();
    std::string_view body = v.substr(4, v.size() - 5);
    std::string_view head = body;
    std::string_view tail;
    // the grain group may also be written [~g;t]
    std::string grain_group;
    if (body.starts_with("[")) {
      const auto close = body.find(']');
      if (close == std::string_view::npos) fail();
      grain_group = std::string(body.substr(0, close + 1));
      std::replace(grain_group.begin(), grain_group.end(), ';', ',');
      s    = grain_group + std::string(body.substr(close + 1));
      body = s;
      head = body;
    }
    if (const auto semi = body.find(';'); semi != std::string_view::npos) {
      head = body.substr(0, semi);
      tail = body.substr(semi + 1);
      if (tail.empty()) fail();
    }
    if (head.starts_with("[")) {
      if (head.size() < 2 || head.back() != ']') fail();
      sig.kind    = FlagKind::AffineWithGrain;
      sig.entries = parse_list(head.substr(1, head.size() - 2));
      if (sig.entries.size() != 2) fail();
    } else {
      sig.kind    = FlagKind::Affine;
      sig.entries = parse_list(head);
      if (sig.entries.size() != 1) fail();
    }
    for (const auto & e : parse_list(tail)) sig.entries.push_back(e);
    return sig.canonical();
  }
};

namespace flags {

inline FlagSignature linear(std::vector<FlagEntry> entries) { return FlagSignature{FlagKind::Linear, std::move(entries)}.canonical(); }

inline FlagSignature affine(FlagEntry pole, const std::vector<FlagEntry> & tail)
{
  FlagSignature s{FlagKind::Affine, {pole}};
  s.entries.insert(s.entries.end(), tail.begin(), tail.end());
  return s.canonical();
}

inline FlagSignature grain(int grain_dim, int rest_dim, const std::vector<FlagEntry> & tail)
{
  FlagSignature s{FlagKind::AffineWithGrain, {{grain_dim, Marker::Oriented}, {rest_dim, Marker::Plain}}};
  s.entries.insert(s.entries.end(), tail.begin(), tail.end());
  return s.canonical();
}

inline std::vector<FlagEntry> complex_entries(const std::vector<int> & dims)
{
  std::vector<FlagEntry> out;
  for (int d : dims) out.push_back({d, Marker::Complex});
  return out;
}

inline std::vector<FlagEntry> cat(std::vector<FlagEntry> head, const std::vector<FlagEntry> & tail)
{
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

inline int dim_orthogonal(int d) { return d * (d - 1) / 2; }

/// Dimension of the stabiliser factor of one linear flag component.
inline int component_isotropy_dim(const FlagEntry & e)
{
  if (e.marker == Marker::Complex) return (e.dim / 2) * (e.dim / 2);  // U(d/2)
  return dim_orthogonal(e.dim);                                    // O(d) and SO(d) agree
}

}  // namespace flags

/// Dimension of the flag manifold as dim(group) - dim(isotropy).
///
/// Linear: O(n) / prod O(d), SO(d), U(d/2).
/// Affine: E(n) / (E(A_1) x ...), with E(A_1) of dimension dim O(s) + s.
/// Grain:  E(n) / (E(A_1)_[V_0] x ...), with E(A_1)_[V_0] = (SO(g) x O(t)) x| R^(g+t).
inline int flag_dimension(const FlagSignature & sig, int n)
{
  sig.validate(n);
  int iso = 0;
  int group = flags::dim_orthogonal(n);
  switch (sig.kind) {
  case FlagKind::Linear: break;
  case FlagKind::Affine: {
    group += n;
    const int s = sig.entries[0].dim;
    iso += flags::dim_orthogonal(s) + s;
    break;
  }
  case FlagKind::AffineWithGrain: {
    group += n;
    const int g = sig.entries[0].dim;
    const int t = sig.entries[1].dim;
    iso += flags::dim_orthogonal(g) + flags::dim_orthogonal(t) + g + t;
    break;
  }
  }
  for (std::size_t i = static_cast<std::size_t>(sig.head_count()); i < sig.entries.size(); ++i) {
    iso += flags::component_isotropy_dim(sig.entries[i]);
  }
  return group - iso;
}

/// Connected components of the orbit.
///
/// For O(n) and E(n): 1 when some plain component has positive dimension (its
/// stabiliser then holds an orientation-reversing element), else 2. Orbits of
/// the connected groups SO(n), SE(n) are single components.
inline int component_count(const FlagSignature & sig, Family family)
{
  if (family == Family::Custom) throw UnsupportedFamily("component_count: custom subgroups are not classified");
  sig.validate(sig.total_dim());
  if (is_special(family)) return 1;
  for (const auto & e : sig.entries) {
    if (e.marker == Marker::Plain && e.dim >= 1) return 1;
  }
  return 2;
}

/// True when the flag manifold is a single point (F(n) or Aff(n)).
inline bool is_point(const FlagSignature & sig)
{
  return sig.entries.size() == 1 && sig.entries[0].marker == Marker::Plain && sig.kind != FlagKind::AffineWithGrain;
}

/// `point` for single-point orbits, otherwise the rendered signature.
inline std::string display(const FlagSignature & sig) { return is_point(sig) ? "point" : sig.render(); }

// ---------------------------------------------------------------------------
// Orbit classes
// ---------------------------------------------------------------------------

struct LambdaEntry
{
  double lambda    = 0;
  int multiplicity = 0;  ///< real dimension of the block, always even
};

/// Classification of one adjoint or coadjoint orbit.
struct OrbitClass
{
  FlagSignature signature;
  OrbitKind side = OrbitKind::Adjoint;
  Family family  = Family::E;
  int n          = 0;

  int orbit_dim    = 0;  ///< rank of the linearised action
  int flag_dim     = 0;  ///< closed-form dimension of the signature's manifold
  int isotropy_dim = 0;
  int components   = 1;  ///< components of the orbit of the requested group
  int full_components = 1;  ///< components of the O(n) / E(n) orbit
  bool component_of_full = false;        ///< SO/SE orbit is one of two components of the full orbit
  bool components_rule_derived = false;  ///< component count extrapolated beyond n = 3
  bool proper = false;

  std::vector<LambdaEntry> lambda_multiset;
  int d0 = 0;
  double translation_norm = 0;  ///< |v_ker| (adjoint) or |p| (coadjoint) at the normal form
  bool generic = false;         ///< point lies off the h-slice (v_ker or p non-zero)
  int orientation = 0;          ///< +-1 when the full orbit has two components, else 0

  std::vector<int> complex_dims() const
  {
    std::vector<int> out;
    for (const auto & l : lambda_multiset) out.push_back(l.multiplicity);
    return out;
  }

  bool dims_consistent() const { return orbit_dim == flag_dim; }
};

/// Integer and signature equality plus float invariants within `rel` relative tolerance.
inline bool same_class(const OrbitClass & a, const OrbitClass & b, double rel = 1e-8)
{
  auto close = [rel](double x, double y) { return std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)}); };
  if (!(a.signature == b.signature) || a.side != b.side || a.n != b.n || a.orbit_dim != b.orbit_dim || a.flag_dim != b.flag_dim
      || a.isotropy_dim != b.isotropy_dim || a.components != b.components || a.full_components != b.full_components
      || a.proper != b.proper || a.d0 != b.d0 || a.generic != b.generic || a.lambda_multiset.size() != b.lambda_multiset.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.lambda_multiset.size(); ++i) {
    if (a.lambda_multiset[i].multiplicity != b.lambda_multiset[i].multiplicity) return false;
    if (!close(a.lambda_multiset[i].lambda, b.lambda_multiset[i].lambda)) return false;
  }
  return close(a.translation_norm, b.translation_norm);
}

namespace detail {

inline std::vector<LambdaEntry> lambda_data(const SkewSpectrum & sp)
{
  std::vector<LambdaEntry> out;
  for (const auto & b : sp.blocks) out.push_back({b.lambda, b.dim()});
  return out;
}

/// Sign of det[pole | block bases] for the orientation-sensitive two-component case.
inline int frame_orientation(const SkewSpectrum & sp, const Vec * pole)
{
  const int n = sp.n();
  Mat frame(n, n);
  Eigen::Index col = 0;
  if (pole != nullptr) frame.col(col++) = pole->normalized();
  for (const auto & b : sp.blocks) {
    frame.middleCols(col, b.dim()) = b.basis;
    col += b.dim();
  }
  if (col != n) return 0;
  return frame.determinant() > 0 ? 1 : -1;
}

inline bool is_nonzero_vector(const Vec & v, const ToleranceConfig & tol, double scale)
{
  return v.size() > 0 && v.norm() > tol.abs * std::max(1.0, scale);
}

inline void finish_class(OrbitClass & c, const SkewSpectrum & sp, const Vec * pole)
{
  c.flag_dim              = flag_dimension(c.signature, c.n);
  c.full_components       = component_count(c.signature, full_family(c.family));
  c.components            = component_count(c.signature, c.family);
  c.component_of_full     = is_special(c.family) && c.full_components == 2;
  c.components_rule_derived = c.n > 3;
  c.lambda_multiset       = lambda_data(sp);
  c.d0                    = sp.d0();
  c.orientation           = c.full_components == 2 ? frame_orientation(sp, pole) : 0;
}

inline void require_classifiable(const GroupSpec & g)
{
  if (g.family() == Family::Custom) throw UnsupportedFamily("classification is only available for O, SO, E and SE");
}

}  // namespace detail

/// O(n) orbit of a skew matrix: the Hermitian flag manifold F(d_0, d_1^C, ..., d_k^C).
inline OrbitClass classify_on_adjoint(const GroupSpec & g, const Mat & omega, OrbitKind side = OrbitKind::Adjoint)
{
  detail::require_classifiable(g);
  detail::require_square(omega, g.n(), "classify_on_adjoint");
  const auto sp = youla_decompose(omega, g.tol());
  OrbitClass c;
  c.side   = side;
  c.family = has_translations(g.family()) ? (is_special(g.family()) ? Family::SO : Family::O) : g.family();
  c.n      = g.n();
  c.signature    = flags::linear(flags::cat({{sp.d0(), Marker::Plain}}, flags::complex_entries(sp.block_dims())));
  c.orbit_dim    = h_orbit_dimension(g, omega);
  c.isotropy_dim = g.dim_h() - c.orbit_dim;
  c.proper       = true;
  detail::finish_class(c, sp, nullptr);
  return c;
}

/// E(n) adjoint orbit: Aff(d_0; d^C...) on the h-slice, Aff([~1, d_0 - 1]; d^C...) otherwise.
inline OrbitClass classify_en_adjoint(const GroupSpec & g, const AlgebraElement & x)
{
  detail::require_classifiable(g);
  if (!has_translations(g.family())) return classify_on_adjoint(g, x.omega, OrbitKind::Adjoint);
  const auto nf = normal_form_adjoint(g, x);
  const auto & pt = nf.point;
  const auto sp   = youla_decompose(pt.omega, g.tol());
  OrbitClass c;
  c.side   = OrbitKind::Adjoint;
  c.family = g.family();
  c.n      = g.n();
  c.generic = sp.d0() >= 1 && detail::is_nonzero_vector(pt.v, g.tol(), scale_of(pt));
  c.translation_norm = c.generic ? pt.v.norm() : 0.0;
  const auto cx      = flags::complex_entries(sp.block_dims());
  c.signature = c.generic ? flags::grain(1, sp.d0() - 1, cx) : flags::affine({sp.d0(), Marker::Plain}, cx);
  c.orbit_dim = orbit_dimension(g, pt);
  c.isotropy_dim = g.dim_g() - c.orbit_dim;
  c.proper       = isotropy_algebra_adjoint(g, pt).proper_algebra_level;
  detail::finish_class(c, sp, c.generic ? &pt.v : nullptr);
  return c;
}

/// E(n) coadjoint orbit: F(d_0, d^C...) when p = 0, Aff(~1; d_0 - 1, d^C...) otherwise.
inline OrbitClass classify_en_coadjoint(const GroupSpec & g, const DualElement & m)
{
  detail::require_classifiable(g);
  if (!has_translations(g.family())) return classify_on_adjoint(g, m.L, OrbitKind::Coadjoint);
  const auto nf = normal_form_coadjoint(g, m);
  const auto & pt = nf.point;
  const auto sp   = youla_decompose(pt.L, g.tol());
  OrbitClass c;
  c.side   = OrbitKind::Coadjoint;
  c.family = g.family();
  c.n      = g.n();
  c.generic = sp.d0() >= 1 && detail::is_nonzero_vector(pt.p, g.tol(), scale_of(pt));
  c.translation_norm = c.generic ? pt.p.norm() : 0.0;
  const auto cx      = flags::complex_entries(sp.block_dims());
  c.signature = c.generic ? flags::affine({1, Marker::Oriented}, flags::cat({{sp.d0() - 1, Marker::Plain}}, cx))
                          : flags::linear(flags::cat({{sp.d0(), Marker::Plain}}, cx));
  c.orbit_dim    = orbit_dimension(g, pt);
  c.isotropy_dim = g.dim_g() - c.orbit_dim;
  c.proper       = isotropy_algebra_coadjoint(g, pt).proper_algebra_level;
  detail::finish_class(c, sp, c.generic ? &pt.p : nullptr);
  return c;
}

/// Dispatch on the group family.
inline OrbitClass classify(const GroupSpec & g, const AlgebraElement & x)
{
  if (!has_translations(g.family())) return classify_on_adjoint(g, x.omega, OrbitKind::Adjoint);
  return classify_en_adjoint(g, x);
}

inline OrbitClass classify(const GroupSpec & g, const DualElement & m)
{
  if (!has_translations(g.family())) return classify_on_adjoint(g, m.L, OrbitKind::Coadjoint);
  return classify_en_coadjoint(g, m);
}

/// Signature of the H-orbit through the normal form: F(~1, d_0 - 1, d^C...) when generic, F(d_0, d^C...) otherwise.
inline FlagSignature h_orbit_signature(const OrbitClass & c)
{
  const auto cx = flags::complex_entries(c.complex_dims());
  if (c.generic) return flags::linear(flags::cat({{1, Marker::Oriented}, {c.d0 - 1, Marker::Plain}}, cx));
  return flags::linear(flags::cat({{c.d0, Marker::Plain}}, cx));
}

// ---------------------------------------------------------------------------
// Bundle bookkeeping
// ---------------------------------------------------------------------------

/// One directed fibre-bundle edge total -> base between flag manifolds.
struct BundleEdge
{
  std::string label;
  FlagSignature total;
  FlagSignature base;
  std::string fibre;  ///< e.g. "R^2" or "F(~1,2)"
  int total_dim = 0;
  int base_dim  = 0;
  int fibre_dim = 0;

  bool consistent() const { return total_dim == base_dim + fibre_dim; }
};

namespace detail {

inline BundleEdge vector_edge(std::string label, FlagSignature total, FlagSignature base, int fibre_dim, int n)
{
  BundleEdge e{std::move(label), std::move(total), std::move(base), "R^" + std::to_string(fibre_dim), 0, 0, fibre_dim};
  e.total_dim = flag_dimension(e.total, n);
  e.base_dim  = flag_dimension(e.base, n);
  return e;
}

inline BundleEdge flag_edge(std::string label, FlagSignature total, FlagSignature base, const FlagSignature & fibre, int fibre_ambient, int n)
{
  BundleEdge e{std::move(label), std::move(total), std::move(base), fibre.entries.empty() ? "point" : fibre.render(), 0, 0, 0};
  e.total_dim = flag_dimension(e.total, n);
  e.base_dim  = flag_dimension(e.base, n);
  e.fibre_dim = fibre.entries.empty() ? 0 : flag_dimension(fibre, fibre_ambient);
  return e;
}

}  // namespace detail

/// Every diagram edge that starts at the class's orbit or at its H-orbit.
///
/// Adjoint, h-slice:   Aff(d0;C) -> F(d0,C)                      fibre R^(n-d0)
/// Adjoint, generic:   Aff([~1,d0-1];C) -> F(~1,d0-1,C)          fibre R^(n-d0)
///                     Aff([~1,d0-1];C) -> Aff(d0;C)             fibre F(~1,d0-1)
///                     F(~1,d0-1,C) -> F(d0,C)                   fibre F(~1,d0-1)
/// Coadjoint, generic: Aff(~1;d0-1,C) -> F(~1,d0-1,C)            fibre R^(n-1)
///                     Aff(~1;n-1) -> F(~1,n-1)                  fibre R^(n-1)
///                     Aff(~1;d0-1,C) -> Aff(~1;n-1)             fibre F(d0-1,C)
///                     F(~1,d0-1,C) -> F(~1,n-1)                 fibre F(d0-1,C)
///                     Aff(~1;d0-1,C) -> Aff([~1,d0-1];C)        fibre R^(d0-1), affine
///
/// Returns nothing for O/SO (no translation part) and for coadjoint classes with p = 0.
inline std::vector<BundleEdge> orbit_edges(const OrbitClass & c)
{
  using namespace flags;
  std::vector<BundleEdge> out;
  if (!has_translations(c.family)) return out;
  const int n  = c.n;
  const int d  = c.d0;
  const auto cx = complex_entries(c.complex_dims());
  const auto h_slice_aff = affine({d, Marker::Plain}, cx);
  const auto h_slice_lin = linear(cat({{d, Marker::Plain}}, cx));

  if (c.side == OrbitKind::Adjoint) {
    if (!c.generic) {
      out.push_back(detail::vector_edge("V-orbit fibration (adjoint over coadjoint)", h_slice_aff, h_slice_lin, n - d, n));
      return out;
    }
    const auto total   = grain(1, d - 1, cx);
    const auto h_orbit = linear(cat({{1, Marker::Oriented}, {d - 1, Marker::Plain}}, cx));
    const auto sphere  = linear({{1, Marker::Oriented}, {d - 1, Marker::Plain}});
    out.push_back(detail::vector_edge("V-orbit fibration", total, h_orbit, n - d, n));
    out.push_back(detail::flag_edge("forget grain", total, h_slice_aff, sphere, d, n));
    out.push_back(detail::flag_edge("H-orbit: forget grain", h_orbit, h_slice_lin, sphere, d, n));
    return out;
  }

  if (!c.generic) return out;
  const auto total     = affine({1, Marker::Oriented}, cat({{d - 1, Marker::Plain}}, cx));
  const auto h_orbit   = linear(cat({{1, Marker::Oriented}, {d - 1, Marker::Plain}}, cx));
  const auto lines     = affine({1, Marker::Oriented}, {{n - 1, Marker::Plain}});
  const auto sphere    = linear({{1, Marker::Oriented}, {n - 1, Marker::Plain}});
  const auto pole_fibre = linear(cat({{d - 1, Marker::Plain}}, cx));
  out.push_back(detail::vector_edge("V-orbit fibration", total, h_orbit, n - 1, n));
  if (!(lines == total)) out.push_back(detail::vector_edge("oriented lines over the sphere", lines, sphere, n - 1, n));
  out.push_back(detail::flag_edge("flag pole projection", total, lines, pole_fibre, n - 1, n));
  out.push_back(detail::flag_edge("H-orbit: flag pole projection", h_orbit, sphere, pole_fibre, n - 1, n));
  out.push_back(detail::vector_edge("affine fibration (coadjoint over adjoint)", total, grain(1, d - 1, cx), d - 1, n));
  return out;
}

/// Edges joining the manifolds of two orbit classes, in either direction.
///
/// Throws InvariantViolation if an emitted edge breaks dim(total) = dim(base) + dim(fibre),
/// NotRelated when no edge joins the two.
inline std::vector<BundleEdge> bundle_bookkeeping(const OrbitClass & a, const OrbitClass & b)
{
  if (a.n != b.n || a.family != b.family) throw NotRelated("bundle_bookkeeping: classes come from different groups");
  std::vector<BundleEdge> out;
  auto consider = [&](const OrbitClass & from) {
    for (auto & e : orbit_edges(from)) {
      const bool joins = (e.total == a.signature && e.base == b.signature) || (e.total == b.signature && e.base == a.signature);
      if (!joins) continue;
      if (!e.consistent()) throw InvariantViolation("bundle_bookkeeping: edge '" + e.label + "' violates the dimension identity");
      const bool dup = std::any_of(out.begin(), out.end(), [&](const BundleEdge & o) {
        return o.total == e.total && o.base == e.base && o.fibre == e.fibre;
      });
      if (!dup) out.push_back(std::move(e));
    }
  };
  consider(a);
  consider(b);
  if (out.empty()) throw NotRelated("bundle_bookkeeping: no diagram edge joins " + a.signature.render() + " and " + b.signature.render());
  return out;
}

}  // namespace eorb
