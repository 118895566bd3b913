#pragma once

#include "../lie_core.hpp"

namespace eorb {

enum class OrbitKind { Adjoint, Coadjoint };

inline std::string to_string(OrbitKind k) { return k == OrbitKind::Adjoint ? "adjoint" : "coadjoint"; }

/// Dimensions of the stabiliser algebra of a point and its split pieces.
///
/// proper_algebra_level holds when dim_full = dim_h_joint + dim_ker_part, the
/// algebra-level shadow of the isotropy group splitting as a semidirect product.
struct IsotropyReport
{
  int dim_full     = 0;
  int dim_h_joint  = 0;
  int dim_ker_part = 0;
  bool proper_algebra_level = false;
};

namespace detail {

inline Vec flatten(const Mat & m, const Vec & v)
{
  Vec out(m.size() + v.size());
  out.head(m.size()) = Eigen::Map<const Vec>(m.data(), m.size());
  out.tail(v.size()) = v;
  return out;
}

inline Vec flatten(const AlgebraElement & x) { return flatten(x.omega, x.v); }
inline Vec flatten(const DualElement & m) { return flatten(m.L, m.p); }

}  // namespace detail

/// Matrix whose columns are the infinitesimal adjoint action [(xi, u), x] of each basis element of g.
inline Mat adjoint_generator_matrix(const GroupSpec & g, const AlgebraElement & x)
{
  const auto basis = algebra_basis(g);
  const int n      = g.n();
  Mat a(n * n + n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) a.col(i) = detail::flatten(bracket(g, basis[i], x));
  return a;
}

/// Matrix whose columns are the infinitesimal coadjoint action of each basis element of g.
inline Mat coadjoint_generator_matrix(const GroupSpec & g, const DualElement & m)
{
  const auto basis = algebra_basis(g);
  const int n      = g.n();
  Mat a(n * n + n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) a.col(i) = detail::flatten(coadjoint_generator(g, basis[i], m));
  return a;
}

inline IsotropyReport isotropy_algebra_adjoint(const GroupSpec & g, const AlgebraElement & x)
{
  check_dims(g, x);
  const auto & tol = g.tol();
  const Mat full   = adjoint_generator_matrix(g, x);
  IsotropyReport r;
  r.dim_full = linalg::nullity(full, tol);
  // only the h columns: xi -> ([xi, omega], xi v)
  r.dim_h_joint  = linalg::nullity(full.leftCols(g.dim_h()), tol);
  r.dim_ker_part = has_translations(g.family()) ? linalg::nullity(x.omega, tol) : 0;
  r.proper_algebra_level = r.dim_full == r.dim_h_joint + r.dim_ker_part;
  return r;
}

inline IsotropyReport isotropy_algebra_coadjoint(const GroupSpec & g, const DualElement & m)
{
  check_dims(g, m);
  const auto & tol = g.tol();
  const Mat full   = coadjoint_generator_matrix(g, m);
  IsotropyReport r;
  r.dim_full     = linalg::nullity(full, tol);
  r.dim_h_joint  = linalg::nullity(full.leftCols(g.dim_h()), tol);
  r.dim_ker_part = has_translations(g.family()) ? linalg::nullity(tau_matrix(g, m.p), tol) : 0;
  r.proper_algebra_level = r.dim_full == r.dim_h_joint + r.dim_ker_part;
  return r;
}

/// Rank of the linearised action at the point.
inline int orbit_dimension(const GroupSpec & g, const AlgebraElement & x)
{
  check_dims(g, x);
  return linalg::rank(adjoint_generator_matrix(g, x), g.tol());
}

inline int orbit_dimension(const GroupSpec & g, const DualElement & m)
{
  check_dims(g, m);
  return linalg::rank(coadjoint_generator_matrix(g, m), g.tol());
}

/// Dimension of the H-orbit of omega (conjugation only).
inline int h_orbit_dimension(const GroupSpec & g, const Mat & omega)
{
  detail::require_square(omega, g.n(), "h_orbit_dimension");
  Mat a(omega.size(), g.dim_h());
  for (int i = 0; i < g.dim_h(); ++i) {
    const Mat c = linalg::commutator(g.h_basis()[i], omega);
    a.col(i)    = Eigen::Map<const Vec>(c.data(), c.size());
  }
  return linalg::rank(a, g.tol());
}

}  // namespace eorb
