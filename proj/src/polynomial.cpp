#include "ifskit/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "ifskit/errors.hpp"

namespace ifskit {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw InputError("polynomial coefficients must be finite");
  // Drop trailing zero coefficients but keep at least the constant term.
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
  double v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

namespace {

// Coefficients of p(lo + w t) in t, computed by Horner with polynomial
// arithmetic.
std::vector<double> shift_to_unit(const std::vector<double>& a, double lo, double w) {
  std::vector<double> out{a.back()};
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    std::vector<double> next(out.size() + 1, 0.0);
    for (std::size_t k = 0; k < out.size(); ++k) {
      next[k] += out[k] * lo;
      next[k + 1] += out[k] * w;
    }
    next[0] += a[i];
    out = std::move(next);
  }
  return out;
}

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * static_cast<double>(n - k + i) / static_cast<double>(i);
  return v;
}

}  // namespace

Polynomial::Range Polynomial::range_on(double lo, double hi) const {
  if (!(lo <= hi)) throw InputError("polynomial range: lo must be <= hi");
  if (lo == hi) {
    const double v = (*this)(lo);
    return {v, v, true};
  }
  const double w = hi - lo;
  if (degree() <= 8) {
    // Bernstein coefficients of the polynomial rescaled to [0,1] enclose its
    // range on the interval.
    const auto q = shift_to_unit(coeffs_, lo, w);
    const int m = static_cast<int>(q.size()) - 1;
    double bmin = q[0], bmax = q[0];
    for (int j = 0; j <= m; ++j) {
      double b = 0.0;
      for (int k = 0; k <= j; ++k) b += q[static_cast<std::size_t>(k)] * binomial(j, k) / binomial(m, k);
      bmin = std::min(bmin, b);
      bmax = std::max(bmax, b);
    }
    return {bmin, bmax, true};
  }
  double vmin = (*this)(lo), vmax = vmin;
  const int n = 1024;
  for (int i = 1; i <= n; ++i) {
    const double x = (i == n) ? hi : lo + w * static_cast<double>(i) / n;
    const double v = (*this)(x);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  return {vmin, vmax, false};
}

}  // namespace ifskit
