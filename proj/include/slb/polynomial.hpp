#pragma once

#include <complex>
#include <span>
#include <vector>

namespace slb {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Dense univariate polynomial with complex coefficients, c[k] multiplying z^k.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);

  static Polynomial monomial(int k, cplx scale = 1.0);

  [[nodiscard]] cplx operator()(cplx z) const noexcept;
  [[nodiscard]] Polynomial derivative() const;
  /// Polynomial whose coefficients are the conjugates, so that
  /// conjugated()(z) == conj((*this)(conj(z))).
  [[nodiscard]] Polynomial conjugated() const;

  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] std::span<const cplx> coeffs() const noexcept { return c_; }
  [[nodiscard]] cplx coeff(int k) const noexcept;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx s, const Polynomial& p);

 private:
  void trim();

  std::vector<cplx> c_{cplx{0.0}};
};

}  // namespace slb
