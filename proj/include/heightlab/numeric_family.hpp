#pragma once

#include <complex>
#include <vector>

#include "heightlab/family.hpp"
#include "heightlab/proj_point.hpp"

namespace heightlab {

using cd = std::complex<double>;

/// Floating-point image of a RationalMapFamily for grid work.
class NumericFamily {
 public:
  /// Coefficients of P and Q at one parameter value, and their t-derivatives.
  struct Specialized {
    std::vector<cd> p, q, dp, dq;
  };

  explicit NumericFamily(const RationalMapFamily& f);

  int degree() const { return d_; }

  void specialize(cd t, Specialized& out) const;

  /// (w1, w2) = F_t(z1, z2).
  static void apply(const Specialized& s, cd z1, cd z2, cd& w1, cd& w2);

  /// F_t(Z) together with d/dt F_t(Z(t)) = dF/dt + DF . Z'.
  static void apply_with_tangent(const Specialized& s, cd z1, cd z2, cd dz1, cd dz2, cd& w1,
                                 cd& w2, cd& dw1, cd& dw2);

  cd resultant(cd t) const;

 private:
  int d_;
  std::vector<std::vector<double>> p_, q_;
  std::vector<double> res_;
};

/// Floating-point image of a marked point a = (a1 : a2) and its t-derivative.
class NumericPoint {
 public:
  explicit NumericPoint(const ProjPointK& a);
  NumericPoint(const Poly& a1, const Poly& a2);

  void eval(cd t, cd& z1, cd& z2) const;
  void eval_with_derivative(cd t, cd& z1, cd& z2, cd& dz1, cd& dz2) const;

 private:
  std::vector<double> a1_, a2_, da1_, da2_;
};

/// Horner evaluation of real coefficients at a complex point.
cd horner(const std::vector<double>& c, cd z);

/// Chordal distance on the Riemann sphere between (z1 : z2) and (w1 : w2).
double chordal_distance(cd z1, cd z2, cd w1, cd w2);

}  // namespace heightlab
