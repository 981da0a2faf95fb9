#pragma once

#include <cstddef>
#include <string>

#include "heightlab/poly.hpp"

namespace heightlab {

/// A point of P^1(Q(t)) in canonical form: coprime (a1, a2), not both
/// zero, and the coordinate of larger degree (a2 on ties) is monic.
/// Equal values represent equal points.
class ProjPointK {
 public:
  /// Cancels gcd(a1, a2) and applies the scaling rule. Both zero is a
  /// DomainError.
  static ProjPointK normalize(const Poly& a1, const Poly& a2);
  /// Scaling rule only; the caller guarantees gcd(a1, a2) = 1.
  static ProjPointK from_coprime(Poly a1, Poly a2);
  static ProjPointK infinity() { return from_coprime(Poly(1), Poly()); }
  static ProjPointK constant(const Rational& c) { return from_coprime(Poly(c), Poly(1)); }

  const Poly& a1() const { return a1_; }
  const Poly& a2() const { return a2_; }

  /// max(deg a1, deg a2): the degree of t -> a(t) as a map to P^1.
  int degree() const { return std::max(a1_.degree(), a2_.degree()); }
  bool is_infinity() const { return a2_.is_zero(); }
  bool is_constant() const { return degree() == 0; }

  std::size_t hash() const;
  /// Parseable expression: "inf", "a1" or "(a1)/(a2)".
  std::string to_string() const;

  friend bool operator==(const ProjPointK&, const ProjPointK&) = default;

 private:
  ProjPointK() = default;
  Poly a1_, a2_;
};

inline ProjPointK proj_normalize(const Poly& a1, const Poly& a2) {
  return ProjPointK::normalize(a1, a2);
}

struct ProjPointHash {
  std::size_t operator()(const ProjPointK& p) const { return p.hash(); }
};

}  // namespace heightlab
