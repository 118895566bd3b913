#pragma once

#include <algorithm>
#include <limits>
#include <cmath>

#include <Eigen/Dense>

#include "tolerance.hpp"

namespace eorb {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

namespace linalg {

/// Singular value decomposition together with the rank decided by a ToleranceConfig.
///
/// A singular value counts as non-zero when it exceeds
/// max(tol.abs, tol.rank_rel * sigma_max). The absolute floor keeps pure
/// round-off matrices (entries ~1e-16) at rank zero.
struct RankedSvd
{
  Mat U;
  Vec sigma;
  Mat V;
  int rank = 0;
  double threshold = 0;

  RankedSvd(const Mat & a, const ToleranceConfig & tol)
  {
    if (a.size() == 0) {
      U = Mat::Identity(a.rows(), a.rows());
      V = Mat::Identity(a.cols(), a.cols());
      sigma.resize(0);
      return;
    }
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    U         = svd.matrixU();
    V         = svd.matrixV();
    sigma     = svd.singularValues();
    threshold = std::max(tol.abs, tol.rank_rel * sigma(0));
    rank      = static_cast<int>((sigma.array() > threshold).count());
  }

  int nullity() const { return static_cast<int>(V.cols()) - rank; }

  /// Orthonormal basis of the right null space.
  Mat null_space() const { return V.rightCols(V.cols() - rank); }

  /// Orthonormal basis of the column space.
  Mat range() const { return U.leftCols(rank); }

  /// Minimum-norm least-squares solution of a x = b on the resolved range.
  Vec solve(const Vec & b) const
  {
    Vec x = Vec::Zero(V.rows());
    for (int i = 0; i < rank; ++i) { x += (U.col(i).dot(b) / sigma(i)) * V.col(i); }
    return x;
  }
};

inline int rank(const Mat & a, const ToleranceConfig & tol) { return RankedSvd(a, tol).rank; }

inline int nullity(const Mat & a, const ToleranceConfig & tol) { return RankedSvd(a, tol).nullity(); }

inline Mat skew_part(const Mat & a) { return 0.5 * (a - a.transpose()); }

/// Largest entry of |a + a^T|.
inline double skew_residual(const Mat & a)
{
  if (a.size() == 0) return 0;
  return (a + a.transpose()).cwiseAbs().maxCoeff();
}

inline Mat commutator(const Mat & a, const Mat & b) { return a * b - b * a; }

/// Smallest singular value, or +inf for an empty matrix.
inline double min_singular_value(const Mat & a)
{
  if (a.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace linalg
}  // namespace eorb
