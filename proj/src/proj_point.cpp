#include "heightlab/proj_point.hpp"

#include "heightlab/algebra.hpp"
#include "heightlab/errors.hpp"

namespace heightlab {

ProjPointK ProjPointK::normalize(const Poly& a1, const Poly& a2) {
  if (a1.is_zero() && a2.is_zero()) throw DomainError("point with both coordinates zero");
  Poly g = poly_gcd(a1, a2);
  if (g.is_constant()) return from_coprime(a1, a2);
  return from_coprime(exact_div(a1, g), exact_div(a2, g));
}

ProjPointK ProjPointK::from_coprime(Poly a1, Poly a2) {
  ProjPointK p;
  const Poly& ref = a1.degree() > a2.degree() ? a1 : a2;
  Rational scale = Rational(1) / ref.leading();
  if (scale != 1) {
    a1 *= scale;
    a2 *= scale;
  }
  p.a1_ = std::move(a1);
  p.a2_ = std::move(a2);
  return p;
}

std::size_t ProjPointK::hash() const {
  std::size_t h = a1_.hash();
  return h ^ (a2_.hash() + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2));
}

std::string ProjPointK::to_string() const {
  if (is_infinity()) return "inf";
  if (a2_ == Poly(1)) return a1_.to_string();
  return "(" + a1_.to_string() + ")/(" + a2_.to_string() + ")";
}

}  // namespace heightlab
