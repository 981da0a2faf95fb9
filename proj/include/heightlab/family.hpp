#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "heightlab/biform.hpp"
#include "heightlab/poly.hpp"
#include "heightlab/proj_point.hpp"

namespace heightlab {

/// An algebraic family F_t = (P_t, Q_t) of homogeneous degree-d maps.
///
/// Construction removes the joint content of all coefficients and fixes
/// the scalar so the first nonzero coefficient (P before Q, low y-power
/// first) has positive leading term and all coefficients are integral and
/// jointly primitive. Equal families therefore compare equal.
class RationalMapFamily {
 public:
  /// Throws DomainError for degree < 2, mismatched degrees, or res = 0.
  static RationalMapFamily make(const BiForm& p, const BiForm& q);

  int degree() const { return p_.degree(); }
  const BiForm& P() const { return p_; }
  const BiForm& Q() const { return q_; }
  const Poly& resultant() const { return res_; }
  /// Max t-degree over all coefficients of P and Q.
  int coeff_degree() const { return coeff_degree_; }
  /// Order of vanishing at s = 0 of the flipped model's resultant.
  int q_infinity() const { return q_inf_; }
  /// deg res + q_infinity: the uniform per-step degree-change bound.
  int d_total() const { return res_.degree() + q_inf_; }
  bool is_constant() const { return coeff_degree_ == 0; }

  /// Parseable "N(z)/D(z)" with coefficients in t.
  std::string to_string() const;

  friend bool operator==(const RationalMapFamily& a, const RationalMapFamily& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }

 private:
  RationalMapFamily() = default;
  BiForm p_, q_;
  Poly res_;
  int coeff_degree_ = 0;
  int q_inf_ = 0;
};

inline RationalMapFamily make_family(const BiForm& p, const BiForm& q) {
  return RationalMapFamily::make(p, q);
}

struct ApplyResult {
  ProjPointK image;
  /// Monic gcd cancelled from (P(a), Q(a)); divides the resultant.
  Poly cancelled;
};

ApplyResult apply(const RationalMapFamily& f, const ProjPointK& a);

/// Recompose all coefficients under t -> t + t0.
RationalMapFamily shift(const RationalMapFamily& f, const Rational& t0);

/// The model at t = infinity: t = 1/s, cleared by s^e, content removed.
RationalMapFamily flip(const RationalMapFamily& f);

struct Place {
  std::complex<double> root;
  /// Set when the root is rational.
  std::optional<Rational> exact;
  int multiplicity = 0;
};

struct PlaceReport {
  std::vector<Place> finite_places;
  int q_infinity = 0;
  int d_total = 0;
};

PlaceReport degenerate_places(const RationalMapFamily& f);

}  // namespace heightlab
