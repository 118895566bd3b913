#pragma once

#include <unsupported/Eigen/MatrixFunctions>

#include "eorb/eorb.hpp"

namespace eorb::test {

/// exp of (omega, v) through the (n+1)x(n+1) affine matrix [[omega, v], [0, 0]], by Pade scaling and squaring.
inline GroupElement affine_exp_oracle(const AlgebraElement & x)
{
  const auto n = x.omega.rows();
  Mat a                    = Mat::Zero(n + 1, n + 1);
  a.topLeftCorner(n, n)    = x.omega;
  a.topRightCorner(n, 1)   = x.v;
  const Mat e              = a.exp();
  return {e.topLeftCorner(n, n), e.topRightCorner(n, 1)};
}

/// Rotation generator e_{i+1} e_i^T - e_i e_{i+1}^T scaled by s.
inline Mat plane_generator(int n, int i, int j, double s = 1.0)
{
  Mat w   = Mat::Zero(n, n);
  w(j, i) = s;
  w(i, j) = -s;
  return w;
}

inline Mat rot2(double angle)
{
  Mat r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

inline std::vector<GroupSpec> all_groups(int n)
{
  return {GroupSpec(n, Family::O), GroupSpec(n, Family::SO), GroupSpec(n, Family::E), GroupSpec(n, Family::SE)};
}

/// Subgroup SO(2) x SO(n-2) of SO(n) acting on span(e1, e2) and its complement.
inline GroupSpec split_custom_group(int n)
{
  std::vector<Mat> basis{plane_generator(n, 0, 1)};
  for (int i = 2; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) basis.push_back(plane_generator(n, i, j));
  }
  return GroupSpec::custom(n, basis);
}

}  // namespace eorb::test
