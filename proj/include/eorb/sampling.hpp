#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "lie_core.hpp"

namespace eorb::sampling {

using Rng = std::mt19937_64;

inline double normal(Rng & rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline double uniform(Rng & rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(Rng & rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Mat random_matrix(Rng & rng, int rows, int cols)
{
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

inline Vec random_vector(Rng & rng, int n)
{
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

inline Vec random_unit_vector(Rng & rng, int n)
{
  Vec v = random_vector(rng, n);
  while (v.norm() < 1e-3) v = random_vector(rng, n);
  return v.normalized();
}

/// Skew part of a matrix of i.i.d. standard normals.
inline Mat random_skew(Rng & rng, int n) { return linalg::skew_part(random_matrix(rng, n, n)); }

/// Haar-distributed orthogonal matrix via QR of a normal matrix; det +1 when `special`.
inline Mat random_rotation(Rng & rng, int n, bool special = true)
{
  if (n == 0) return Mat(0, 0);
  const Mat a = random_matrix(rng, n, n);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q        = qr.householderQ();
  const Mat rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (rr(i, i) < 0) q.col(i) = -q.col(i);
  }
  if (special && q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

/// Random element of h: i.i.d. normal coefficients on the orthonormal basis.
inline Mat random_h_element(const GroupSpec & g, Rng & rng)
{
  Vec c(g.dim_h());
  for (int i = 0; i < g.dim_h(); ++i) c(i) = normal(rng);
  return g.from_h_coords(c);
}

inline AlgebraElement random_algebra_element(const GroupSpec & g, Rng & rng)
{
  const int n = g.n();
  return {random_h_element(g, rng), has_translations(g.family()) ? random_vector(rng, n) : Vec::Zero(n)};
}

inline DualElement random_dual_element(const GroupSpec & g, Rng & rng)
{
  const int n = g.n();
  return {random_h_element(g, rng), has_translations(g.family()) ? random_vector(rng, n) : Vec::Zero(n)};
}

/// Random group element of the family; custom groups use exp of a random element of h.
inline GroupElement random_group_element(const GroupSpec & g, Rng & rng, double translation_scale = 1.0)
{
  const int n = g.n();
  GroupElement a;
  switch (g.family()) {
  case Family::O:
  case Family::E: a.r = random_rotation(rng, n, false); break;
  case Family::SO:
  case Family::SE: a.r = random_rotation(rng, n, true); break;
  case Family::Custom: a.r = expm_skew(random_h_element(g, rng), g.tol()); break;
  }
  a.d = has_translations(g.family()) ? Vec(translation_scale * random_vector(rng, n)) : Vec(Vec::Zero(n));
  return a;
}

/// Skew matrix with prescribed kernel dimension and block structure, conjugated by a random rotation.
struct StructuredSkew
{
  Mat omega;
  Mat frame;  ///< rotation used to conjugate; first d0 columns span the kernel
  int d0 = 0;
  std::vector<double> lambdas;  ///< increasing
  std::vector<int> dims;        ///< block dimensions matching `lambdas`
};

/// Builds diag(0_{d0}, lambda_1 J_{d_1}, ...) in a random orthonormal frame.
inline StructuredSkew structured_skew(Rng & rng, int n, int d0, const std::vector<double> & lambdas, const std::vector<int> & dims)
{
  StructuredSkew s;
  s.d0      = d0;
  s.lambdas = lambdas;
  s.dims    = dims;
  s.frame   = random_rotation(rng, n, true);
  Mat c     = Mat::Zero(n, n);
  int col   = d0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    for (int i = 0; i < dims[k] / 2; ++i) {
      c(col + 1, col) = lambdas[k];
      c(col, col + 1) = -lambdas[k];
      col += 2;
    }
  }
  s.omega = s.frame * c * s.frame.transpose();
  return s;
}

/// Random stratum: d0 of the parity of n, repeated rates allowed, rates in [0.5, 3] separated by at least 0.1.
inline StructuredSkew random_structured_skew(Rng & rng, int n, int d0 = -1, int min_d0 = 0)
{
  if (d0 < 0) {
    std::vector<int> options;
    for (int d = n % 2; d <= n; d += 2) {
      if (d >= min_d0) options.push_back(d);
    }
    d0 = options[uniform_int(rng, 0, static_cast<int>(options.size()) - 1)];
  }
  int planes = (n - d0) / 2;
  std::vector<int> dims;
  while (planes > 0) {
    const int take = uniform_int(rng, 1, planes);
    dims.push_back(2 * take);
    planes -= take;
  }
  std::vector<double> lambdas;
  while (lambdas.size() < dims.size()) {
    const double l = uniform(rng, 0.5, 3.0);
    if (std::all_of(lambdas.begin(), lambdas.end(), [l](double x) { return std::abs(x - l) >= 0.1; })) lambdas.push_back(l);
  }
  std::sort(lambdas.begin(), lambdas.end());
  return structured_skew(rng, n, d0, lambdas, dims);
}

/// Which slice a sampled Delta point lies in.
enum class Stratum { Zero, HSlice, Generic };

/// Random point of Delta = {omega v = 0}: structured omega and v in ker omega (or zero).
inline AlgebraElement random_delta_adjoint(const GroupSpec & g, Rng & rng, Stratum stratum, int d0 = -1)
{
  const int n = g.n();
  if (stratum == Stratum::Zero) return AlgebraElement::zero(n);
  const bool generic = stratum == Stratum::Generic && has_translations(g.family());
  const auto s       = random_structured_skew(rng, n, d0, generic ? 1 : 0);
  AlgebraElement x{s.omega, Vec::Zero(n)};
  if (generic && s.d0 > 0) {
    x.v = s.frame.leftCols(s.d0) * random_vector(rng, s.d0);
  }
  return x;
}

/// Random point of Delta* = {L in h_p}: p random (or zero) and L structured on the complement of p.
inline DualElement random_delta_coadjoint(const GroupSpec & g, Rng & rng, Stratum stratum)
{
  const int n = g.n();
  if (stratum == Stratum::Zero) return DualElement::zero(n);
  if (stratum == Stratum::HSlice || !has_translations(g.family()) || n == 0) {
    return {random_structured_skew(rng, n).omega, Vec::Zero(n)};
  }
  const auto s = random_structured_skew(rng, n - 1);
  const Mat q  = random_rotation(rng, n, true);
  Mat L        = Mat::Zero(n, n);
  L.bottomRightCorner(n - 1, n - 1) = s.omega;
  return {q * L * q.transpose(), uniform(rng, 0.5, 2.0) * q.col(0)};
}

inline Stratum random_stratum(Rng & rng)
{
  const int k = uniform_int(rng, 0, 9);
  if (k == 0) return Stratum::Zero;
  if (k <= 4) return Stratum::HSlice;
  return Stratum::Generic;
}

/// Delta point of a random stratum moved by a random group element.
inline AlgebraElement random_stratified_adjoint(const GroupSpec & g, Rng & rng)
{
  const auto x = random_delta_adjoint(g, rng, random_stratum(rng));
  return adjoint_action(g, random_group_element(g, rng), x);
}

inline DualElement random_stratified_coadjoint(const GroupSpec & g, Rng & rng)
{
  const auto m = random_delta_coadjoint(g, rng, random_stratum(rng));
  return coadjoint_action(g, random_group_element(g, rng), m);
}

}  // namespace eorb::sampling
