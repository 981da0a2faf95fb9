#pragma once

#include <vector>

#include "heightlab/poly.hpp"

namespace heightlab {

/// Binary form of degree d in (x, y) with coefficients in Q[t]:
/// sum_j coeffs[j] * x^(d-j) * y^j.
class BiForm {
 public:
  BiForm() = default;
  /// Throws DomainError unless degree >= 1, coeffs.size() == degree + 1
  /// and at least one coefficient is nonzero.
  BiForm(int degree, std::vector<Poly> coeffs);

  int degree() const { return degree_; }
  const std::vector<Poly>& coeffs() const { return coeffs_; }
  const Poly& coeff(int j) const { return coeffs_[static_cast<std::size_t>(j)]; }

  /// Max t-degree over the coefficients.
  int coeff_degree() const;

  /// Substitute (x, y) = (a1, a2) with precomputed powers
  /// pow1[k] = a1^k, pow2[k] = a2^k for k = 0..d.
  Poly eval(const std::vector<Poly>& pow1, const std::vector<Poly>& pow2) const;
  Poly eval(const Poly& a1, const Poly& a2) const;

  friend bool operator==(const BiForm&, const BiForm&) = default;

 private:
  int degree_ = 0;
  std::vector<Poly> coeffs_;
};

/// Powers p^0..p^d.
std::vector<Poly> powers(const Poly& p, int d);

}  // namespace heightlab
