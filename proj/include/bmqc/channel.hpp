#pragma once

#include <vector>

#include "bmqc/state.hpp"
#include "bmqc/types.hpp"

namespace bmqc {

/// Ordered Kraus operators over a (usually small) local spec. Applied to
/// larger systems by naming the target factors.
struct KrausChannel {
  std::vector<MatXc> ops;
  HilbertSpec spec;

  /// max over basis states of |sum_j K_j^dag K_j - I|.
  double completeness_defect() const;

  /// rho -> sum_j K_j rho K_j^dag with the channel acting on `factors` of rho.
  DensityMatrix apply(const DensityMatrix& rho, const std::vector<int>& factors) const;
};

}  // namespace bmqc
