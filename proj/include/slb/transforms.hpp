#pragma once

#include <string_view>
#include <vector>

#include "slb/curve.hpp"

namespace slb {

enum class Side { Interior, Exterior };

struct Quadrant {
  Side z = Side::Exterior;
  Side w = Side::Exterior;

  friend bool operator==(const Quadrant&, const Quadrant&) = default;
};

/// "ext-ext", "int-ext", "ext-int" or "int-int" (side of z first).
std::string_view to_string(Quadrant q) noexcept;

/// Interior or Exterior; NearBoundary is raised as an error.
Side side_of(const ContourGrid& grid, cplx z);

/// Harmonic moments M_k = (1/2 pi i) \oint z^k conj(z) dz for k_min <= k <= k_max.
class MomentTable {
 public:
  MomentTable(int k_min, std::vector<cplx> values) : k_min_(k_min), values_(std::move(values)) {}

  [[nodiscard]] int k_min() const noexcept { return k_min_; }
  [[nodiscard]] int k_max() const noexcept { return k_min_ + static_cast<int>(values_.size()) - 1; }
  /// Throws InvalidArgument outside [k_min, k_max].
  [[nodiscard]] cplx operator[](int k) const;

 private:
  int k_min_;
  std::vector<cplx> values_;
};

struct TransformValue {
  cplx z;
  cplx w;
  Quadrant quadrant;
  cplx C;  // double Cauchy transform
  cplx E;  // exp(C)
};

/// For z exterior the Cauchy transform C_Omega(z) = -I(z); for z interior the
/// renormalized exterior transform I(z), where I(z) is the Cauchy integral of
/// conj(zeta) over the curve.
cplx cauchy_transform(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z);

/// Requires the origin to be interior (OriginNotInterior otherwise).
MomentTable harmonic_moments(const ConformalMapCurve& curve, const ContourGrid& grid, int k_min,
                             int k_max);

/// Coefficients b_k (0 <= k <= K) of log f2(z) = sum_k b_k / z^{k+1} at
/// infinity for the exp-Schwarz section, read off by a discrete Fourier
/// transform of log f2 on a circle enclosing the curve.
std::vector<cplx> log_section_laurent(const ConformalMapCurve& curve, const ContourGrid& grid, int K);

/// max_{0<=k<=K} |b_k + M_k|.
double moment_expansion_check(const ConformalMapCurve& curve, const ContourGrid& grid, int K);

/// Double Cauchy transform C(z, w) evaluated quadrant by quadrant from a
/// single contour integral plus the closed-form correction at zeta = z.
TransformValue double_cauchy(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z, cplx w);
TransformValue exponential_transform(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z,
                                     cplx w);

// Analytic pieces of E; each raises WrongQuadrant outside its own quadrant.
cplx piece_F(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z, cplx w);      // z, w exterior
cplx piece_G(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z, cplx w);      // z int, w ext
cplx piece_Gstar(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z, cplx w);  // z ext, w int
cplx piece_H(const ConformalMapCurve& curve, const ContourGrid& grid, cplx z, cplx w);      // z, w interior

}  // namespace slb
