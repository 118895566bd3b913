#pragma once

#include "../flag_class.hpp"

namespace eorb {

/// Which of the paired orbit manifolds fibres over the other.
enum class BundleDirection {
  AdjointOverCoadjoint,  ///< h-slice: adjoint orbit is a vector bundle over the coadjoint orbit
  CoadjointOverAdjoint,  ///< generic: coadjoint orbit is an affine bundle over the adjoint orbit
  Identical              ///< no translations: phi is an equivariant diffeomorphism
};

inline std::string to_string(BundleDirection d)
{
  switch (d) {
  case BundleDirection::AdjointOverCoadjoint: return "adjoint_over_coadjoint";
  case BundleDirection::CoadjointOverAdjoint: return "coadjoint_over_adjoint";
  case BundleDirection::Identical: return "identical";
  }
  return "";
}

/// Matched adjoint and coadjoint orbits through a point of Delta and its phi-image.
struct BijectionReport
{
  NormalFormResult<AlgebraElement> normal_form;
  DualElement partner;  ///< phi(normal form point)
  OrbitClass adjoint_class;
  OrbitClass coadjoint_class;
  FlagSignature base_signature;            ///< common H-orbit through the pair
  FlagSignature coadjoint_base_signature;  ///< same, computed from the coadjoint side
  BundleDirection direction = BundleDirection::Identical;
  int fibre_dim = 0;
  std::vector<BundleEdge> edges;

  bool base_agrees() const { return base_signature == coadjoint_base_signature; }

  /// Fibre dimension equals the difference of the two rank-oracle orbit dimensions.
  bool fibre_consistent() const
  {
    switch (direction) {
    case BundleDirection::AdjointOverCoadjoint: return adjoint_class.orbit_dim - coadjoint_class.orbit_dim == fibre_dim;
    case BundleDirection::CoadjointOverAdjoint: return coadjoint_class.orbit_dim - adjoint_class.orbit_dim == fibre_dim;
    case BundleDirection::Identical: return adjoint_class.orbit_dim == coadjoint_class.orbit_dim && fibre_dim == 0;
    }
    return false;
  }
};

/// Pairs the adjoint orbit through x with the coadjoint orbit through phi of its normal form.
///
/// h-slice points give fibre dimension n - d0, generic points d0 - 1.
inline BijectionReport bijection_pair(const GroupSpec & g, const AlgebraElement & x)
{
  if (g.family() == Family::Custom) throw UnsupportedFamily("bijection_pair: custom subgroups are not classified");
  validate(g, x);
  BijectionReport r;
  r.normal_form     = normal_form_adjoint(g, x);
  r.partner         = musical_phi(g, r.normal_form.point);
  r.adjoint_class   = classify(g, r.normal_form.point);
  r.coadjoint_class = classify(g, r.partner);
  if (!has_translations(g.family())) {
    r.direction                = BundleDirection::Identical;
    r.fibre_dim                = 0;
    r.base_signature           = r.adjoint_class.signature;
    r.coadjoint_base_signature = r.coadjoint_class.signature;
    return r;
  }
  r.base_signature           = h_orbit_signature(r.adjoint_class);
  r.coadjoint_base_signature = h_orbit_signature(r.coadjoint_class);
  const int d0 = r.adjoint_class.d0;
  if (r.adjoint_class.generic) {
    r.direction = BundleDirection::CoadjointOverAdjoint;
    r.fibre_dim = d0 - 1;
  } else {
    r.direction = BundleDirection::AdjointOverCoadjoint;
    r.fibre_dim = g.n() - d0;
  }
  r.edges = bundle_bookkeeping(r.adjoint_class, r.coadjoint_class);
  return r;
}

enum class OrbitMatch { Same, Different, Indeterminate };

inline std::string to_string(OrbitMatch m)
{
  switch (m) {
  case OrbitMatch::Same: return "same";
  case OrbitMatch::Different: return "different";
  case OrbitMatch::Indeterminate: return "indeterminate";
  }
  return "";
}

namespace detail {

inline bool spectra_match(const SkewSpectrum & a, const SkewSpectrum & b, double rel)
{
  if (a.d0() != b.d0() || a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const double x = a.blocks[i].lambda;
    const double y = b.blocks[i].lambda;
    if (a.blocks[i].dim() != b.blocks[i].dim()) return false;
    if (std::abs(x - y) > rel * std::max({1.0, x, y})) return false;
  }
  return true;
}

template<typename Point>
OrbitMatch same_orbit_impl(const GroupSpec & g, const Point & a, const Point & b, const Mat & ma, const Mat & mb,
                           double ta, double tb)
{
  const double rel = std::max(g.tol().eig_cluster_rel, 1e-8);
  if (g.family() == Family::Custom) {
    if (orbit_dimension(g, a) != orbit_dimension(g, b)) return OrbitMatch::Different;
    if (!spectra_match(youla_decompose(ma, g.tol()), youla_decompose(mb, g.tol()), rel)) return OrbitMatch::Different;
    if (std::abs(ta - tb) > rel * std::max({1.0, ta, tb})) return OrbitMatch::Different;
    return OrbitMatch::Indeterminate;
  }
  const auto ca = classify(g, a);
  const auto cb = classify(g, b);
  if (!same_class(ca, cb, rel)) return OrbitMatch::Different;
  if (is_special(g.family()) && ca.full_components == 2 && ca.orientation != cb.orientation) return OrbitMatch::Different;
  return OrbitMatch::Same;
}

}  // namespace detail

/// Decides whether two points lie on one adjoint orbit by comparing complete invariants.
///
/// For custom subgroups the invariants are only necessary: a match yields Indeterminate.
inline OrbitMatch same_orbit(const GroupSpec & g, const AlgebraElement & a, const AlgebraElement & b)
{
  check_dims(g, a);
  check_dims(g, b);
  auto trans = [&](const AlgebraElement & x) {
    return has_translations(g.family()) ? split_on_kernel(x.omega, x.v, g.tol()).v_ker.norm() : 0.0;
  };
  return detail::same_orbit_impl(g, a, b, a.omega, b.omega, trans(a), trans(b));
}

/// Coadjoint counterpart of same_orbit.
inline OrbitMatch same_orbit(const GroupSpec & g, const DualElement & a, const DualElement & b)
{
  check_dims(g, a);
  check_dims(g, b);
  if (g.family() == Family::Custom) {
    const auto na = normal_form_coadjoint(g, a).point;
    const auto nb = normal_form_coadjoint(g, b).point;
    return detail::same_orbit_impl(g, a, b, na.L, nb.L, na.p.norm(), nb.p.norm());
  }
  return detail::same_orbit_impl(g, a, b, a.L, b.L, 0.0, 0.0);
}

}  // namespace eorb
