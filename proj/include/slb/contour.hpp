#pragma once

#include <span>
#include <vector>

#include "slb/curve.hpp"

namespace slb {

/// (1/2 pi i) * sum_j h_j dz_j w / (z_j - z): trapezoidal Cauchy integral of
/// the node density h over the grid contour.
cplx cauchy_integral(const ContourGrid& grid, std::span<const cplx> density, cplx z);

/// Continuous logarithm of nonvanishing node values, starting from the
/// principal branch at node 0 shifted by 2 pi i * base_branch. Throws
/// BranchUnresolved when an adjacent phase step reaches pi/2.
struct UnwrappedLog {
  std::vector<cplx> values;
  /// Total phase change around the closed contour divided by 2 pi, before
  /// rounding.
  double winding = 0.0;
};

UnwrappedLog unwrapped_log(std::span<const cplx> samples, int base_branch = 0);

}  // namespace slb
