#include "slb/polynomial.hpp"

#include <algorithm>

namespace slb {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0.0);
  trim();
}

Polynomial Polynomial::monomial(int k, cplx scale) {
  std::vector<cplx> c(static_cast<std::size_t>(k) + 1, cplx{0.0});
  c.back() = scale;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (c_.size() > 1 && c_.back() == cplx{0.0}) c_.pop_back();
}

cplx Polynomial::operator()(cplx z) const noexcept {
  cplx acc{0.0};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial{};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::conjugated() const {
  std::vector<cplx> d(c_.size());
  std::transform(c_.begin(), c_.end(), d.begin(), [](cplx v) { return std::conj(v); });
  return Polynomial(std::move(d));
}

cplx Polynomial::coeff(int k) const noexcept {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0.0;
  return c_[static_cast<std::size_t>(k)];
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), cplx{0.0});
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return Polynomial(std::move(c));
}

Polynomial operator*(cplx s, const Polynomial& p) {
  std::vector<cplx> c(p.c_);
  for (auto& v : c) v *= s;
  return Polynomial(std::move(c));
}

}  // namespace slb
