#include "slb/contour.hpp"

#include <cmath>
#include <string>

#include "slb/error.hpp"

namespace slb {

cplx cauchy_integral(const ContourGrid& grid, std::span<const cplx> density, cplx z) {
  cplx acc{0.0};
  for (std::size_t j = 0; j < grid.n; ++j) acc += density[j] * grid.dz[j] / (grid.z[j] - z);
  return acc * grid.weight / (2.0 * kPi * kI);
}

UnwrappedLog unwrapped_log(std::span<const cplx> samples, int base_branch) {
  const std::size_t n = samples.size();
  UnwrappedLog out;
  out.values.resize(n);
  if (n == 0) return out;
  for (std::size_t j = 0; j < n; ++j)
    if (samples[j] == cplx{0.0})
      throw Error(Errc::BranchUnresolved, "value vanishes at node " + std::to_string(j));

  double phase = std::arg(samples[0]) + 2.0 * kPi * base_branch;
  out.values[0] = {std::log(std::abs(samples[0])), phase};
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double step = std::arg(samples[j % n] / samples[j - 1]);
    if (!(std::abs(step) < kPi / 2))
      throw Error(Errc::BranchUnresolved,
                  "phase step " + std::to_string(step) + " at node " + std::to_string(j - 1) +
                      "; refine the grid");
    total += step;
    if (j < n) {
      phase += step;
      out.values[j] = {std::log(std::abs(samples[j])), phase};
    }
  }
  out.winding = total / (2.0 * kPi);
  return out;
}

}  // namespace slb
