#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "skew_spectral.hpp"

namespace eorb {

/// Group families G = H x| V handled by the library.
///
/// O and SO have no translation part; E, SE and Custom act on V = R^n.
enum class Family { O, SO, E, SE, Custom };

inline bool has_translations(Family f) { return f == Family::E || f == Family::SE || f == Family::Custom; }

inline bool is_special(Family f) { return f == Family::SO || f == Family::SE; }

/// Full-group counterpart: SO -> O, SE -> E.
inline Family full_family(Family f)
{
  if (f == Family::SO) return Family::O;
  if (f == Family::SE) return Family::E;
  return f;
}

inline std::string to_string(Family f)
{
  switch (f) {
  case Family::O: return "O";
  case Family::SO: return "SO";
  case Family::E: return "E";
  case Family::SE: return "SE";
  case Family::Custom: return "custom";
  }
  return "?";
}

/// Lie group data: ambient dimension, family, a B_h-orthonormal basis of h, tolerances.
///
/// Inner products are fixed: B_V is the dot product and B_h(X, Y) = tr(X^T Y) / 2,
/// under which {E_ij - E_ji : i < j} is orthonormal in so(n). A custom basis is
/// orthonormalised at construction and must close under the commutator.
class GroupSpec
{
public:
  GroupSpec(int n, Family family, ToleranceConfig tol = {}) : n_(n), family_(family), tol_(tol)
  {
    if (n < 1) throw DimensionError("GroupSpec: n must be positive");
    if (family == Family::Custom) throw InputError("GroupSpec: use GroupSpec::custom for custom subgroups");
    tol_.validate();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Mat b   = Mat::Zero(n, n);
        b(i, j) = 1;
        b(j, i) = -1;
        basis_.push_back(std::move(b));
      }
    }
  }

  static GroupSpec custom(int n, const std::vector<Mat> & h_basis, ToleranceConfig tol = {})
  {
    GroupSpec g;
    g.n_      = n;
    g.family_ = Family::Custom;
    g.tol_    = tol;
    if (n < 1) throw DimensionError("GroupSpec: n must be positive");
    tol.validate();
    for (const auto & b : h_basis) {
      if (b.rows() != n || b.cols() != n) throw DimensionError("GroupSpec: h_basis matrix has wrong shape");
      if (linalg::skew_residual(b) > tol.abs) throw NotSkew("GroupSpec: h_basis matrix is not skew-symmetric");
      // Gram-Schmidt under B_h
      Mat x = linalg::skew_part(b);
      for (const auto & e : g.basis_) x -= inner_h(x, e) * e;
      for (const auto & e : g.basis_) x -= inner_h(x, e) * e;
      const double nrm = std::sqrt(inner_h(x, x));
      if (nrm <= tol.abs * std::max(1.0, std::sqrt(inner_h(b, b)))) {
        throw InvariantViolation("GroupSpec: h_basis is linearly dependent");
      }
      g.basis_.push_back(x / nrm);
    }
    for (std::size_t i = 0; i < g.basis_.size(); ++i) {
      for (std::size_t j = i + 1; j < g.basis_.size(); ++j) {
        const Mat c       = linalg::commutator(g.basis_[i], g.basis_[j]);
        const double res  = (c - g.project_h(c)).cwiseAbs().maxCoeff();
        if (res > tol.abs) {
          std::ostringstream os;
          os << "GroupSpec: h_basis not closed under commutator (residual " << res << ")";
          throw InvariantViolation(os.str());
        }
      }
    }
    return g;
  }

  int n() const { return n_; }
  Family family() const { return family_; }
  const ToleranceConfig & tol() const { return tol_; }
  const std::vector<Mat> & h_basis() const { return basis_; }

  int dim_h() const { return static_cast<int>(basis_.size()); }
  int dim_v() const { return has_translations(family_) ? n_ : 0; }
  int dim_g() const { return dim_h() + dim_v(); }

  /// True when h is all of so(n).
  bool full_h() const { return family_ != Family::Custom; }

  static double inner_h(const Mat & x, const Mat & y) { return 0.5 * (x.array() * y.array()).sum(); }

  /// Coordinates of X in the orthonormal basis, i.e. B_h(X, b_i).
  Vec h_coords(const Mat & x) const
  {
    Vec c(dim_h());
    for (int i = 0; i < dim_h(); ++i) c(i) = inner_h(x, basis_[i]);
    return c;
  }

  Mat from_h_coords(const Vec & c) const
  {
    Mat x = Mat::Zero(n_, n_);
    for (int i = 0; i < dim_h(); ++i) x += c(i) * basis_[i];
    return x;
  }

  /// B_h-orthogonal projection onto h.
  Mat project_h(const Mat & x) const
  {
    if (full_h()) return linalg::skew_part(x);
    return from_h_coords(h_coords(x));
  }

private:
  GroupSpec() = default;

  int n_          = 0;
  Family family_  = Family::E;
  ToleranceConfig tol_{};
  std::vector<Mat> basis_;
};

/// (r, d): rotation r in H and displacement d in V. d is zero for O and SO.
struct GroupElement
{
  Mat r;
  Vec d;

  static GroupElement identity(int n) { return {Mat::Identity(n, n), Vec::Zero(n)}; }
};

/// (omega, v) in g = h x V: angular velocity and linear velocity.
struct AlgebraElement
{
  Mat omega;
  Vec v;

  static AlgebraElement zero(int n) { return {Mat::Zero(n, n), Vec::Zero(n)}; }
};

/// (L, p) in g*: angular momentum realised in h via B_h, linear momentum in V via B_V.
struct DualElement
{
  Mat L;
  Vec p;

  static DualElement zero(int n) { return {Mat::Zero(n, n), Vec::Zero(n)}; }
};

namespace detail {

inline void require_square(const Mat & m, int n, const char * what)
{
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream os;
    os << what << ": expected " << n << "x" << n << " matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

inline void require_vector(const Vec & v, int n, const char * what)
{
  if (v.size() != n) {
    std::ostringstream os;
    os << what << ": expected length " << n << ", got " << v.size();
    throw DimensionError(os.str());
  }
}

}  // namespace detail

inline void check_dims(const GroupSpec & g, const GroupElement & a)
{
  detail::require_square(a.r, g.n(), "GroupElement.r");
  detail::require_vector(a.d, g.n(), "GroupElement.d");
}

inline void check_dims(const GroupSpec & g, const AlgebraElement & x)
{
  detail::require_square(x.omega, g.n(), "AlgebraElement.omega");
  detail::require_vector(x.v, g.n(), "AlgebraElement.v");
}

inline void check_dims(const GroupSpec & g, const DualElement & m)
{
  detail::require_square(m.L, g.n(), "DualElement.L");
  detail::require_vector(m.p, g.n(), "DualElement.p");
}

/// Full invariant check for a group element; throws InvariantViolation.
inline void validate(const GroupSpec & g, const GroupElement & a)
{
  check_dims(g, a);
  const auto & tol = g.tol();
  const int n      = g.n();
  const double orth = (a.r.transpose() * a.r - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  if (orth > tol.abs) throw InvariantViolation("GroupElement: r is not orthogonal");
  if (is_special(g.family()) && a.r.determinant() < 0) {
    throw InvariantViolation("GroupElement: det r = -1 in a special group");
  }
  if (!has_translations(g.family()) && a.d.cwiseAbs().maxCoeff() > tol.abs) {
    throw InvariantViolation("GroupElement: non-zero displacement in a group without translations");
  }
}

inline void validate(const GroupSpec & g, const AlgebraElement & x)
{
  check_dims(g, x);
  const auto & tol = g.tol();
  if (linalg::skew_residual(x.omega) > tol.abs) throw NotSkew("AlgebraElement: omega is not skew-symmetric");
  if (!g.full_h() && (x.omega - g.project_h(x.omega)).cwiseAbs().maxCoeff() > tol.abs) {
    throw InvariantViolation("AlgebraElement: omega is not in span(h_basis)");
  }
  if (!has_translations(g.family()) && x.v.size() > 0 && x.v.cwiseAbs().maxCoeff() > tol.abs) {
    throw InvariantViolation("AlgebraElement: non-zero v in a group without translations");
  }
}

inline void validate(const GroupSpec & g, const DualElement & m)
{
  check_dims(g, m);
  const auto & tol = g.tol();
  if (linalg::skew_residual(m.L) > tol.abs) throw NotSkew("DualElement: L is not skew-symmetric");
  if (!g.full_h() && (m.L - g.project_h(m.L)).cwiseAbs().maxCoeff() > tol.abs) {
    throw InvariantViolation("DualElement: L is not in span(h_basis)");
  }
  if (!has_translations(g.family()) && m.p.size() > 0 && m.p.cwiseAbs().maxCoeff() > tol.abs) {
    throw InvariantViolation("DualElement: non-zero p in a group without translations");
  }
}

/// (r1, d1)(r2, d2) = (r1 r2, d1 + r1 d2)
inline GroupElement compose(const GroupSpec & g, const GroupElement & a, const GroupElement & b)
{
  check_dims(g, a);
  check_dims(g, b);
  return {a.r * b.r, a.d + a.r * b.d};
}

inline GroupElement inverse(const GroupSpec & g, const GroupElement & a)
{
  check_dims(g, a);
  const Mat rt = a.r.transpose();
  return {rt, -(rt * a.d)};
}

/// Momentum map: the element mu(p, v) of h with B_h(mu, xi) = p . (xi v) for every xi in h.
///
/// For the full so(n) this is p v^T - v p^T.
inline Mat momentum_map(const GroupSpec & g, const Vec & p, const Vec & v)
{
  detail::require_vector(p, g.n(), "momentum_map.p");
  detail::require_vector(v, g.n(), "momentum_map.v");
  if (g.full_h()) return p * v.transpose() - v * p.transpose();
  Mat m = Mat::Zero(g.n(), g.n());
  for (const auto & b : g.h_basis()) m += p.dot(b * v) * b;
  return m;
}

/// tau_p(v) = mu(p, v).
inline Mat tau(const GroupSpec & g, const Vec & p, const Vec & v) { return momentum_map(g, p, v); }

/// Matrix of tau_p : V -> h in (h-coordinates x standard basis), shape dim_h x n.
inline Mat tau_matrix(const GroupSpec & g, const Vec & p)
{
  detail::require_vector(p, g.n(), "tau_matrix.p");
  Mat t(g.dim_h(), g.n());
  for (int i = 0; i < g.dim_h(); ++i) t.row(i) = (g.h_basis()[i].transpose() * p).transpose();
  return t;
}

/// Ad_(r,d)(omega, v) = (r omega r^T, r v - (r omega r^T) d)
inline AlgebraElement adjoint_action(const GroupSpec & g, const GroupElement & a, const AlgebraElement & x)
{
  check_dims(g, a);
  check_dims(g, x);
  const Mat w = a.r * x.omega * a.r.transpose();
  return {w, a.r * x.v - w * a.d};
}

/// Ad*_(r,d)(L, p) = (r L r^T + mu(r p, d), r p)
inline DualElement coadjoint_action(const GroupSpec & g, const GroupElement & a, const DualElement & m)
{
  check_dims(g, a);
  check_dims(g, m);
  const Vec rp = a.r * m.p;
  Mat l        = a.r * m.L * a.r.transpose() + momentum_map(g, rp, a.d);
  if (!g.full_h()) l = g.project_h(l);
  return {std::move(l), rp};
}

/// [(w1, v1), (w2, v2)] = ([w1, w2], w1 v2 - w2 v1)
inline AlgebraElement bracket(const GroupSpec & g, const AlgebraElement & x, const AlgebraElement & y)
{
  check_dims(g, x);
  check_dims(g, y);
  return {linalg::commutator(x.omega, y.omega), x.omega * y.v - y.omega * x.v};
}

/// Infinitesimal coadjoint action: d/dt Ad*_exp(t xi) m at t = 0, equal to ([w, L] + mu(p, u), w p).
inline DualElement coadjoint_generator(const GroupSpec & g, const AlgebraElement & xi, const DualElement & m)
{
  check_dims(g, xi);
  check_dims(g, m);
  Mat l = linalg::commutator(xi.omega, m.L) + momentum_map(g, m.p, xi.v);
  if (!g.full_h()) l = g.project_h(l);
  return {std::move(l), xi.omega * m.p};
}

/// <(L, p), (omega, v)> = B_h(L, omega) + p . v
inline double pairing(const GroupSpec & g, const DualElement & m, const AlgebraElement & x)
{
  check_dims(g, m);
  check_dims(g, x);
  return GroupSpec::inner_h(m.L, x.omega) + m.p.dot(x.v);
}

/// The H-equivariant isomorphism g -> g* induced by B_h and B_V; the identity on coordinates.
inline DualElement musical_phi(const GroupSpec & g, const AlgebraElement & x)
{
  check_dims(g, x);
  return {x.omega, x.v};
}

/// Inverse of musical_phi.
inline AlgebraElement musical_phi_inverse(const GroupSpec & g, const DualElement & m)
{
  check_dims(g, m);
  return {m.L, m.p};
}

/// exp of (omega, v): (exp omega, J(omega) v) with J the integral of exp(s omega) over [0, 1].
inline GroupElement group_exp(const GroupSpec & g, const AlgebraElement & x)
{
  check_dims(g, x);
  return {expm_skew(x.omega, g.tol()), left_jacobian_skew(x.omega, g.tol()) * x.v};
}

// Linear-space helpers on the algebra and dual.

inline AlgebraElement operator+(const AlgebraElement & a, const AlgebraElement & b) { return {a.omega + b.omega, a.v + b.v}; }
inline AlgebraElement operator-(const AlgebraElement & a, const AlgebraElement & b) { return {a.omega - b.omega, a.v - b.v}; }
inline AlgebraElement operator*(double s, const AlgebraElement & a) { return {s * a.omega, s * a.v}; }
inline DualElement operator+(const DualElement & a, const DualElement & b) { return {a.L + b.L, a.p + b.p}; }
inline DualElement operator-(const DualElement & a, const DualElement & b) { return {a.L - b.L, a.p - b.p}; }
inline DualElement operator*(double s, const DualElement & a) { return {s * a.L, s * a.p}; }

/// Max-entry distance between two points of the same kind.
inline double distance(const AlgebraElement & a, const AlgebraElement & b)
{
  return std::max((a.omega - b.omega).cwiseAbs().maxCoeff(), a.v.size() ? (a.v - b.v).cwiseAbs().maxCoeff() : 0.0);
}

inline double distance(const DualElement & a, const DualElement & b)
{
  return std::max((a.L - b.L).cwiseAbs().maxCoeff(), a.p.size() ? (a.p - b.p).cwiseAbs().maxCoeff() : 0.0);
}

inline double distance(const GroupElement & a, const GroupElement & b)
{
  return std::max((a.r - b.r).cwiseAbs().maxCoeff(), a.d.size() ? (a.d - b.d).cwiseAbs().maxCoeff() : 0.0);
}

/// Max-abs entry scale of a point, floored at 1; used for relative residuals.
inline double scale_of(const AlgebraElement & x)
{
  return std::max({1.0, x.omega.cwiseAbs().maxCoeff(), x.v.size() ? x.v.cwiseAbs().maxCoeff() : 0.0});
}

inline double scale_of(const DualElement & m)
{
  return std::max({1.0, m.L.cwiseAbs().maxCoeff(), m.p.size() ? m.p.cwiseAbs().maxCoeff() : 0.0});
}

/// Basis of g: (b_i, 0) for the h basis followed by (0, e_k) when V is present.
inline std::vector<AlgebraElement> algebra_basis(const GroupSpec & g)
{
  std::vector<AlgebraElement> out;
  const int n = g.n();
  for (const auto & b : g.h_basis()) out.push_back({b, Vec::Zero(n)});
  for (int k = 0; k < g.dim_v(); ++k) out.push_back({Mat::Zero(n, n), Vec::Unit(n, k)});
  return out;
}

}  // namespace eorb
