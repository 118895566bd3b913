#pragma once

#include <optional>
#include <vector>

#include "lie_core.hpp"
#include "orbit_lab/isotropy.hpp"
#include "orbit_lab/normal_form.hpp"
#include "sampling.hpp"

namespace eorb {

// ---------------------------------------------------------------------------
// KKS form
// ---------------------------------------------------------------------------

/// <m, [xi, eta]> = B_h(L, [w1, w2]) + p . (w1 v2 - w2 v1).
inline double kks_eval(const GroupSpec & g, const DualElement & m, const AlgebraElement & xi, const AlgebraElement & eta)
{
  check_dims(g, m);
  check_dims(g, xi);
  check_dims(g, eta);
  return pairing(g, m, bracket(g, xi, eta));
}

/// Gram matrix G_ij = kks_eval(m, gens_i, gens_j).
inline Mat kks_gram(const GroupSpec & g, const DualElement & m, const std::vector<AlgebraElement> & gens)
{
  const auto k = static_cast<Eigen::Index>(gens.size());
  Mat gram     = Mat::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      gram(i, j) = kks_eval(g, m, gens[i], gens[j]);
      gram(j, i) = -gram(i, j);
    }
  }
  return gram;
}

/// Combinations of `gens` whose coadjoint tangents at m are independent.
///
/// Right singular vectors of the tangent matrix above the rank threshold; the
/// returned generators have orthonormal coefficient vectors.
inline std::vector<AlgebraElement> independent_generators(const GroupSpec & g, const DualElement & m,
                                                          const std::vector<AlgebraElement> & gens)
{
  const int n = g.n();
  std::vector<AlgebraElement> out;
  if (gens.empty()) return out;
  Mat t(n * n + n, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) t.col(i) = detail::flatten(coadjoint_generator(g, gens[i], m));
  const linalg::RankedSvd svd(t, g.tol());
  for (int j = 0; j < svd.rank; ++j) {
    AlgebraElement z = AlgebraElement::zero(n);
    for (std::size_t i = 0; i < gens.size(); ++i) z = z + svd.V(static_cast<Eigen::Index>(i), j) * gens[i];
    out.push_back(z);
  }
  return out;
}

struct FibreIsotropyReport
{
  double max_abs        = 0;  ///< max |kks| over sampled V-generated pairs
  int fibre_dim         = 0;  ///< rank of {coad((0, e_k))(m)}
  int expected_fibre_dim = 0;  ///< dim h - dim h_p
  int trials            = 0;

  bool ok(double tol) const { return max_abs <= tol && fibre_dim == expected_fibre_dim; }
};

/// Evaluates the KKS form on pairs of translation generators (0, u1), (0, u2).
inline FibreIsotropyReport fibre_isotropy_check(const GroupSpec & g, const DualElement & m, int trials, sampling::Rng & rng)
{
  check_dims(g, m);
  const int n = g.n();
  FibreIsotropyReport r;
  r.trials = trials;
  if (!has_translations(g.family())) return r;
  for (int t = 0; t < trials; ++t) {
    const AlgebraElement a{Mat::Zero(n, n), sampling::random_vector(rng, n)};
    const AlgebraElement b{Mat::Zero(n, n), sampling::random_vector(rng, n)};
    r.max_abs = std::max(r.max_abs, std::abs(kks_eval(g, m, a, b)));
  }
  Mat t(n * n + n, n);
  for (int k = 0; k < n; ++k) t.col(k) = detail::flatten(coadjoint_generator(g, {Mat::Zero(n, n), Vec::Unit(n, k)}, m));
  r.fibre_dim          = linalg::rank(t, g.tol());
  r.expected_fibre_dim = linalg::rank(tau_matrix(g, m.p), g.tol());
  return r;
}

/// Basis of h_p = {xi in h : xi p = 0} as algebra elements (xi, 0).
inline std::vector<AlgebraElement> stabiliser_basis(const GroupSpec & g, const Vec & p)
{
  const int n = g.n();
  Mat act(n, g.dim_h());
  for (int i = 0; i < g.dim_h(); ++i) act.col(i) = g.h_basis()[static_cast<std::size_t>(i)] * p;
  const linalg::RankedSvd svd(act, g.tol());
  const Mat ns = svd.null_space();
  std::vector<AlgebraElement> out;
  for (Eigen::Index j = 0; j < ns.cols(); ++j) out.push_back({g.from_h_coords(ns.col(j)), Vec::Zero(n)});
  return out;
}

struct SymplecticFibreReport
{
  DualElement reduced;     ///< normal form of the input
  int fibre_dim = 0;       ///< dim of the H_p-orbit through the reduced L
  std::optional<double> min_singular_value;  ///< empty when the fibre is a point
};

/// Restricts the KKS form to the fibre over the base orbit through (0, p).
///
/// The fibre tangent space at the normal form is {coad((xi, 0))(m) : xi in h_p};
/// generators are rank-filtered before the Gram matrix is assembled.
inline SymplecticFibreReport symplectic_fibre_check(const GroupSpec & g, const DualElement & m)
{
  check_dims(g, m);
  if (!has_translations(g.family()) || m.p.norm() <= g.tol().abs * scale_of(m)) {
    throw ZeroMomentum("symplectic_fibre_check: p is zero");
  }
  SymplecticFibreReport r;
  r.reduced       = normal_form_coadjoint(g, m).point;
  const auto gens = independent_generators(g, r.reduced, stabiliser_basis(g, r.reduced.p));
  r.fibre_dim     = static_cast<int>(gens.size());
  if (!gens.empty()) r.min_singular_value = linalg::min_singular_value(kks_gram(g, r.reduced, gens));
  return r;
}

// ---------------------------------------------------------------------------
// Oriented lines
// ---------------------------------------------------------------------------

/// Oriented affine line {base + s direction}; |direction| = 1, base orthogonal to direction.
struct OrientedLine
{
  Vec direction;
  Vec base;
};

/// Tangent a + s b at a line: a moves the base point, b tilts the direction; both orthogonal to the line.
struct LineTangent
{
  OrientedLine line;
  Vec a;
  Vec b;
};

inline void validate(const OrientedLine & l, const ToleranceConfig & tol)
{
  if (l.direction.size() != l.base.size()) throw DimensionError("OrientedLine: direction and base differ in length");
  if (std::abs(l.direction.norm() - 1) > tol.abs) throw InvariantViolation("OrientedLine: direction is not a unit vector");
  if (std::abs(l.direction.dot(l.base)) > tol.abs * std::max(1.0, l.base.norm())) {
    throw InvariantViolation("OrientedLine: base is not orthogonal to direction");
  }
}

inline void validate(const LineTangent & t, const ToleranceConfig & tol)
{
  validate(t.line, tol);
  const auto n = t.line.direction.size();
  if (t.a.size() != n || t.b.size() != n) throw DimensionError("LineTangent: length mismatch");
  const double scale = std::max({1.0, t.a.norm(), t.b.norm()});
  if (std::abs(t.a.dot(t.line.direction)) > tol.abs * scale || std::abs(t.b.dot(t.line.direction)) > tol.abs * scale) {
    throw InvariantViolation("LineTangent: components are not orthogonal to the line");
  }
}

inline double line_distance(const OrientedLine & x, const OrientedLine & y)
{
  return std::max((x.direction - y.direction).cwiseAbs().maxCoeff(), (x.base - y.base).cwiseAbs().maxCoeff());
}

/// a1 . b2 - a2 . b1.
inline double line_form(const LineTangent & t1, const LineTangent & t2, const ToleranceConfig & tol = {})
{
  validate(t1, tol);
  validate(t2, tol);
  if (t1.line.direction.size() != t2.line.direction.size()) throw DimensionError("line_form: tangents live in different dimensions");
  if (line_distance(t1.line, t2.line) > tol.abs * std::max(1.0, t1.line.base.norm())) {
    throw LineMismatch("line_form: tangents are attached to different lines");
  }
  return t1.a.dot(t2.b) - t2.a.dot(t1.b);
}

/// Moves the parameter origin by delta along the line: a -> a + delta b.
inline LineTangent shift_base_point(const LineTangent & t, double delta) { return {t.line, t.a + delta * t.b, t.b}; }

/// Orthonormal basis (e_i, 0), (0, e_i) of the tangent space, e_i spanning the orthogonal complement of the line.
inline std::vector<LineTangent> line_tangent_basis(const OrientedLine & l)
{
  const auto n = l.direction.size();
  const Mat perp = linalg::RankedSvd(l.direction.transpose(), ToleranceConfig{}).null_space();
  std::vector<LineTangent> out;
  for (Eigen::Index i = 0; i < perp.cols(); ++i) out.push_back({l, perp.col(i), Vec::Zero(n)});
  for (Eigen::Index i = 0; i < perp.cols(); ++i) out.push_back({l, Vec::Zero(n), perp.col(i)});
  return out;
}

inline Mat line_form_gram(const OrientedLine & l, const ToleranceConfig & tol = {})
{
  const auto basis = line_tangent_basis(l);
  const auto k     = static_cast<Eigen::Index>(basis.size());
  Mat gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) gram(i, j) = line_form(basis[i], basis[j], tol);
  }
  return gram;
}

/// E(n) action: direction -> r direction, base -> orthogonal part of r base + d.
inline OrientedLine act_on_line(const GroupElement & a, const OrientedLine & l)
{
  OrientedLine out;
  out.direction   = a.r * l.direction;
  const Vec moved = a.r * l.base + a.d;
  out.base        = moved - out.direction.dot(moved) * out.direction;
  return out;
}

/// Pushes a tangent forward along act_on_line; the parameter shift is absorbed into a.
inline LineTangent act_on_tangent(const GroupElement & a, const LineTangent & t)
{
  const Vec moved    = a.r * t.line.base + a.d;
  const Vec dir      = a.r * t.line.direction;
  const double delta = dir.dot(moved);
  return {act_on_line(a, t.line), a.r * t.a - delta * (a.r * t.b), a.r * t.b};
}

/// Oriented line of a point on the orbit through (0, p): direction p / |p|, base the solution a orthogonal to p of tau_p(a) = L.
inline OrientedLine line_from_coadjoint(const GroupSpec & g, const DualElement & m)
{
  check_dims(g, m);
  if (!has_translations(g.family())) throw UnsupportedFamily("line_from_coadjoint: group has no translations");
  const double pn = m.p.norm();
  if (pn <= g.tol().abs * scale_of(m)) throw ZeroMomentum("line_from_coadjoint: p is zero");
  const auto split = split_on_annihilator(g, m.L, m.p);
  if (split.L_comp.cwiseAbs().maxCoeff() > g.tol().abs * scale_of(m)) {
    throw NotOnLineOrbit("line_from_coadjoint: reduced angular component is non-zero");
  }
  OrientedLine l;
  l.direction = m.p / pn;
  l.base      = -split.d;
  l.base -= l.direction.dot(l.base) * l.direction;
  return l;
}

struct LineKksFit
{
  double scale           = 0;  ///< fitted c with line_form = c * kks
  double max_rel_deviation = 0;
  int pairs              = 0;
  int resampled          = 0;  ///< pairs dropped because |kks| was too small for a stable ratio
  DualElement base_point;
};

/// Fits line_form(dl(xi), dl(eta)) = c kks(m, xi, eta) over random generator pairs.
///
/// dl is the central finite difference (step 1e-6) of t -> line_from_coadjoint(Ad*_{exp(t xi)} m).
inline LineKksFit line_form_vs_kks(const GroupSpec & g, const Vec & p, int trials, sampling::Rng & rng, double step = 1e-6)
{
  if (!has_translations(g.family()) || p.size() != g.n()) throw DimensionError("line_form_vs_kks: group without translations or wrong p length");
  if (p.norm() <= g.tol().abs) throw ZeroMomentum("line_form_vs_kks: p is zero");
  const int n = g.n();
  LineKksFit fit;
  fit.base_point = coadjoint_action(g, sampling::random_group_element(g, rng), DualElement{Mat::Zero(n, n), p});
  const OrientedLine l0 = line_from_coadjoint(g, fit.base_point);

  auto tangent = [&](const AlgebraElement & xi) {
    const auto fwd = line_from_coadjoint(g, coadjoint_action(g, group_exp(g, step * xi), fit.base_point));
    const auto bwd = line_from_coadjoint(g, coadjoint_action(g, group_exp(g, -step * xi), fit.base_point));
    const Vec db   = (fwd.base - bwd.base) / (2 * step);
    const Vec dd   = (fwd.direction - bwd.direction) / (2 * step);
    LineTangent t{l0, db - l0.direction.dot(db) * l0.direction, dd - l0.direction.dot(dd) * l0.direction};
    return t;
  };

  std::vector<double> lf;
  std::vector<double> kk;
  const double floor = 1e-2 * p.norm();
  int attempts       = 0;
  while (static_cast<int>(lf.size()) < trials && attempts < 100 * trials + 100) {
    ++attempts;
    const auto xi  = sampling::random_algebra_element(g, rng);
    const auto eta = sampling::random_algebra_element(g, rng);
    const double k = kks_eval(g, fit.base_point, xi, eta);
    if (std::abs(k) < floor) {
      ++fit.resampled;
      continue;
    }
    lf.push_back(line_form(tangent(xi), tangent(eta), g.tol()));
    kk.push_back(k);
  }
  double num = 0;
  double den = 0;
  for (std::size_t i = 0; i < lf.size(); ++i) {
    num += lf[i] * kk[i];
    den += kk[i] * kk[i];
  }
  fit.pairs = static_cast<int>(lf.size());
  fit.scale = den > 0 ? num / den : 0.0;
  for (std::size_t i = 0; i < lf.size(); ++i) {
    fit.max_rel_deviation = std::max(fit.max_rel_deviation, std::abs(lf[i] / kk[i] - fit.scale) / std::abs(fit.scale));
  }
  return fit;
}

}  // namespace eorb
