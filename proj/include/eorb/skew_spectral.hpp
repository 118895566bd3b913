#pragma once

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "linalg.hpp"

namespace eorb {

/// One rotation block of a skew-symmetric matrix.
///
/// The block acts on the subspace spanned by `basis` (n x d, orthonormal, d even)
/// by `lambda * J`, where `J` is the canonical complex structure
/// diag([[0,-1],[1,0]], ...) in the basis coordinates. Basis columns come in
/// pairs (u, Ju).
struct Block
{
  double lambda = 0;
  Mat basis;
  Mat J;
  /// Rotation rate of each 2-plane before clustering; all within the cluster tolerance of `lambda`.
  std::vector<double> plane_rates;

  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Canonical (Youla) form of a skew-symmetric matrix: kernel plus ordered rotation blocks.
struct SkewSpectrum
{
  Mat kernel_basis;
  std::vector<Block> blocks;  ///< lambda strictly increasing
  double source_norm = 0;     ///< Frobenius norm of the decomposed matrix

  int n() const { return static_cast<int>(kernel_basis.rows()); }
  int d0() const { return static_cast<int>(kernel_basis.cols()); }

  /// Block dimensions d_1, ..., d_k.
  std::vector<int> block_dims() const
  {
    std::vector<int> out;
    for (const auto & b : blocks) out.push_back(b.dim());
    return out;
  }

  /// [kernel | block_1 | ... | block_k] as one orthogonal n x n matrix.
  Mat assembled_basis() const
  {
    Mat q(n(), n());
    q.leftCols(d0()) = kernel_basis;
    Eigen::Index col = d0();
    for (const auto & b : blocks) {
      q.middleCols(col, b.dim()) = b.basis;
      col += b.dim();
    }
    return q;
  }

  /// Block-diagonal canonical form in the assembled basis.
  Mat canonical_form() const
  {
    Mat c       = Mat::Zero(n(), n());
    Eigen::Index col = d0();
    for (const auto & b : blocks) {
      for (int i = 0; i < b.dim() / 2; ++i) {
        const double rate = b.plane_rates[i];
        c(col + 1, col) = rate;
        c(col, col + 1) = -rate;
        col += 2;
      }
    }
    return c;
  }
};

namespace detail {

inline Mat canonical_complex_structure(int dim)
{
  Mat j = Mat::Zero(dim, dim);
  for (int i = 0; i + 1 < dim; i += 2) {
    j(i + 1, i) = 1;
    j(i, i + 1) = -1;
  }
  return j;
}

/// Orthonormal basis of span(w) with deterministic column choice.
///
/// Columns are the projections of coordinate axes, picked greedily by largest
/// remaining norm (ties to the lowest index).
inline Mat pivoted_basis(const Mat & w)
{
  const auto n = w.rows();
  const auto d = w.cols();
  Mat out(n, d);
  Mat proj = w * w.transpose();
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::Index best = 0;
    double best_norm  = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double nrm = proj.col(i).norm();
      if (nrm > best_norm + 1e-12) {
        best_norm = nrm;
        best      = i;
      }
    }
    Vec x = proj.col(best);
    for (Eigen::Index j = 0; j < k; ++j) x -= out.col(j).dot(x) * out.col(j);
    x.normalize();
    out.col(k) = x;
    proj -= x * x.transpose();
  }
  return out;
}

/// Orthonormal basis of the orthogonal complement of `removed` inside span(w).
inline Mat complement_within(const Mat & w, const Mat & removed)
{
  Mat c = w - removed * (removed.transpose() * w);
  const auto keep = w.cols() - removed.cols();
  if (keep <= 0) return Mat(w.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(keep);
}

}  // namespace detail

/// Decomposes a skew-symmetric matrix into kernel plus rotation blocks.
///
/// Uses the SVD of omega: for skew omega the right singular subspace of a
/// singular value lambda is exactly the real invariant plane set on which omega
/// acts as lambda times a complex structure. Singular values within
/// eig_cluster_rel * sigma_max of each other share a block.
///
/// Inside a block, each 2-plane is (u, omega u / |omega u|) with u the unit
/// vector of the remaining block subspace maximising its first usable
/// coordinate (positive there), which fixes the output deterministically.
inline SkewSpectrum youla_decompose(const Mat & omega_in, const ToleranceConfig & tol = {})
{
  if (omega_in.rows() != omega_in.cols()) {
    throw DimensionError("youla_decompose: matrix is not square");
  }
  if (!omega_in.allFinite()) throw DecompositionError("youla_decompose: matrix has non-finite entries");
  const int n = static_cast<int>(omega_in.rows());
  const double norm = omega_in.norm();
  if (linalg::skew_residual(omega_in) > tol.abs * std::max(1.0, norm)) {
    std::ostringstream os;
    os << "youla_decompose: symmetry residual " << linalg::skew_residual(omega_in) << " exceeds tolerance";
    throw NotSkew(os.str());
  }
  const Mat omega = linalg::skew_part(omega_in);

  SkewSpectrum out;
  out.source_norm = norm;
  if (n == 0) {
    out.kernel_basis = Mat(0, 0);
    return out;
  }

  Eigen::JacobiSVD<Mat> svd(omega, Eigen::ComputeFullV);
  const Vec sigma = svd.singularValues();
  const Mat V     = svd.matrixV();
  if (!sigma.allFinite()) throw DecompositionError("youla_decompose: non-finite singular values");

  const double smax      = sigma(0);
  const double zero_thr  = std::max(tol.abs, tol.rank_rel * smax);
  const double cluster_gap = tol.eig_cluster_rel * smax;

  // singular values come sorted descending; walk them ascending
  std::vector<int> kernel_idx;
  std::vector<std::vector<int>> clusters;
  for (int i = n - 1; i >= 0; --i) {
    if (sigma(i) <= zero_thr) {
      kernel_idx.push_back(i);
      continue;
    }
    if (!clusters.empty() && sigma(i) - sigma(clusters.back().back()) <= cluster_gap) {
      clusters.back().push_back(i);
    } else {
      clusters.push_back({i});
    }
  }

  Mat kernel(n, static_cast<Eigen::Index>(kernel_idx.size()));
  for (std::size_t j = 0; j < kernel_idx.size(); ++j) kernel.col(j) = V.col(kernel_idx[j]);
  out.kernel_basis = detail::pivoted_basis(kernel);

  for (const auto & idx : clusters) {
    if (idx.size() % 2 != 0) {
      throw DecompositionError("youla_decompose: odd-dimensional rotation cluster");
    }
    Mat w(n, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) w.col(j) = V.col(idx[j]);

    Block block;
    block.basis.resize(n, w.cols());
    Eigen::Index col = 0;
    while (w.cols() >= 2) {
      Eigen::Index k = 0;
      while (k + 1 < n && w.row(k).norm() <= 1e-6) ++k;
      Vec u = w * w.row(k).transpose();
      u.normalize();
      Vec wu = w * (w.transpose() * (omega * u));
      wu -= u.dot(wu) * u;
      const double rate = (omega * u).norm();
      wu.normalize();
      block.basis.col(col)     = u;
      block.basis.col(col + 1) = wu;
      block.plane_rates.push_back(rate);
      col += 2;
      Mat plane(n, 2);
      plane << u, wu;
      w = detail::complement_within(w, plane);
    }
    block.lambda = std::accumulate(block.plane_rates.begin(), block.plane_rates.end(), 0.0)
                 / static_cast<double>(block.plane_rates.size());
    block.J = detail::canonical_complex_structure(block.dim());
    out.blocks.push_back(std::move(block));
  }
  return out;
}

/// Q * C * Q^T with Q the assembled basis and C the canonical block form.
inline Mat reconstruct(const SkewSpectrum & spec)
{
  const Mat q = spec.assembled_basis();
  return q * spec.canonical_form() * q.transpose();
}

/// exp(omega) for skew omega, assembled plane by plane from the canonical form.
inline Mat expm_skew(const Mat & omega, const ToleranceConfig & tol = {})
{
  const auto spec = youla_decompose(omega, tol);
  const int n     = spec.n();
  Mat r           = spec.kernel_basis * spec.kernel_basis.transpose();
  for (const auto & b : spec.blocks) {
    for (int i = 0; i < b.dim() / 2; ++i) {
      const Vec u = b.basis.col(2 * i);
      const Vec w = b.basis.col(2 * i + 1);
      const double t = b.plane_rates[i];
      r += std::cos(t) * (u * u.transpose() + w * w.transpose()) + std::sin(t) * (w * u.transpose() - u * w.transpose());
    }
  }
  if (n == 0) return Mat(0, 0);
  return r;
}

/// The integral of exp(s omega) over s in [0, 1]; maps v to the translation part of exp((omega, v)).
inline Mat left_jacobian_skew(const Mat & omega, const ToleranceConfig & tol = {})
{
  const auto spec = youla_decompose(omega, tol);
  Mat j           = spec.kernel_basis * spec.kernel_basis.transpose();
  for (const auto & b : spec.blocks) {
    for (int i = 0; i < b.dim() / 2; ++i) {
      const Vec u = b.basis.col(2 * i);
      const Vec w = b.basis.col(2 * i + 1);
      const double t = b.plane_rates[i];
      j += (std::sin(t) / t) * (u * u.transpose() + w * w.transpose())
         + ((1 - std::cos(t)) / t) * (w * u.transpose() - u * w.transpose());
    }
  }
  return j;
}

}  // namespace eorb
