#pragma once

#include <vector>

namespace ifskit {

// Real polynomial with coefficients stored constant-term first.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs);
  static Polynomial constant(double c) { return Polynomial({c}); }

  double operator()(double x) const;

  Polynomial derivative() const;

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  struct Range {
    double lo = 0.0;
    double hi = 0.0;
    // True when [lo, hi] is a guaranteed enclosure of the range (Bernstein
    // bound); false when it is the observed min/max of dense sampling.
    bool rigorous = false;
  };

  // Range of the polynomial on [lo, hi]: Bernstein coefficient enclosure for
  // degree <= 8, 1025-point sampling (endpoints included) above that.
  Range range_on(double lo, double hi) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<double> coeffs_;
};

}  // namespace ifskit
