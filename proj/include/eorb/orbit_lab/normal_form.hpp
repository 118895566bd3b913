#pragma once

#include "../lie_core.hpp"

namespace eorb {

/// A representative in the Cartan subset together with the group element that moves the input there.
template<typename Point>
struct NormalFormResult
{
  Point point;
  GroupElement mover;
  double residual = 0;  ///< max of the slice residual and |action(mover, input) - point|
};

/// Orthogonal splitting of v along V = Im omega (+) ker omega.
struct KernelSplit
{
  Vec v_im;
  Vec v_ker;
  Vec d;  ///< minimum-norm solution of omega d = v_im
};

inline KernelSplit split_on_kernel(const Mat & omega, const Vec & v, const ToleranceConfig & tol)
{
  const linalg::RankedSvd svd(omega, tol);
  const Mat im = svd.range();
  KernelSplit s;
  s.v_im  = im * (im.transpose() * v);
  s.v_ker = v - s.v_im;
  s.d     = svd.solve(s.v_im);
  return s;
}

/// Moves (omega, v) into Delta = {omega v = 0} by a pure translation (I, d) with omega d = v_im.
inline NormalFormResult<AlgebraElement> normal_form_adjoint(const GroupSpec & g, const AlgebraElement & x)
{
  check_dims(g, x);
  const int n = g.n();
  NormalFormResult<AlgebraElement> out;
  if (!has_translations(g.family())) {
    out.point = x;
    out.mover = GroupElement::identity(n);
    return out;
  }
  const auto s = split_on_kernel(x.omega, x.v, g.tol());
  out.mover    = {Mat::Identity(n, n), s.d};
  out.point    = {x.omega, s.v_ker};
  const double slice = (x.omega * s.v_ker).cwiseAbs().maxCoeff();
  const double moved = distance(adjoint_action(g, out.mover, x), out.point);
  out.residual       = std::max(slice, moved);
  return out;
}

/// Splitting of L against Im tau_p (the realisation of the annihilator of h_p).
struct AnnihilatorSplit
{
  Mat L_ann;   ///< component in Im tau_p
  Mat L_comp;  ///< B_h-orthogonal complement, the realisation of L restricted to h_p
  Vec d;       ///< minimum-norm solution of tau_p(d) = -L_ann
};

inline AnnihilatorSplit split_on_annihilator(const GroupSpec & g, const Mat & L, const Vec & p)
{
  const Mat t   = tau_matrix(g, p);
  const Vec l   = g.h_coords(L);
  const linalg::RankedSvd svd(t, g.tol());
  const Mat im  = svd.range();
  const Vec ann = im * (im.transpose() * l);
  AnnihilatorSplit s;
  s.L_ann  = g.from_h_coords(ann);
  s.L_comp = g.from_h_coords(l - ann);
  s.d      = svd.solve(-ann);
  return s;
}

/// Moves (L, p) into Delta* by a pure translation (I, d) with tau_p(d) = -L_ann.
inline NormalFormResult<DualElement> normal_form_coadjoint(const GroupSpec & g, const DualElement & m)
{
  check_dims(g, m);
  const int n = g.n();
  NormalFormResult<DualElement> out;
  if (!has_translations(g.family())) {
    out.point = m;
    out.mover = GroupElement::identity(n);
    return out;
  }
  const auto s = split_on_annihilator(g, m.L, m.p);
  out.mover    = {Mat::Identity(n, n), s.d};
  out.point    = {s.L_comp, m.p};
  // the reduced L must be orthogonal to Im tau_p
  const double slice = split_on_annihilator(g, out.point.L, m.p).L_ann.cwiseAbs().maxCoeff();
  const double moved = distance(coadjoint_action(g, out.mover, m), out.point);
  out.residual       = std::max(slice, moved);
  return out;
}

}  // namespace eorb
