#pragma once

#include <string>

#include "errors.hpp"

namespace eorb {

/// Numerical thresholds shared by every operation.
struct ToleranceConfig
{
  double abs             = 1e-10;  ///< absolute residual bound
  double rank_rel        = 1e-10;  ///< singular values below rank_rel * sigma_max count as zero
  double eig_cluster_rel = 1e-8;   ///< relative gap under which |lambda| values are merged

  void validate() const
  {
    if (!(abs > 0) || !(rank_rel > 0) || !(eig_cluster_rel > 0)) {
      throw InputError("tolerances must be strictly positive");
    }
  }

  bool operator==(const ToleranceConfig &) const = default;
};

}  // namespace eorb
