#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "heightlab/zpoly.hpp"

namespace heightlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact dense univariate polynomial in the parameter t over Q.
///
/// Stored as integer numerators over one positive common denominator,
/// kept in lowest terms, so two Polys are equal iff their representations
/// are identical. The zero polynomial has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(std::initializer_list<long> coeffs);

  static Poly from_coeffs(std::span<const Rational> coeffs);
  static Poly from_integers(zpoly::Coeffs numerators, Integer denominator = 1);
  static Poly monomial(const Rational& c, std::size_t k);
  static Poly variable() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(num_.size()) - 1; }
  std::size_t size() const { return num_.size(); }
  bool is_zero() const { return num_.empty(); }
  bool is_constant() const { return num_.size() <= 1; }

  Rational coeff(std::size_t i) const;
  std::vector<Rational> coeffs() const;
  Rational leading() const;

  const zpoly::Coeffs& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

  Poly pow(unsigned e) const;
  Poly derivative() const;
  Rational operator()(const Rational& x) const;
  std::complex<double> eval(std::complex<double> z) const;
  /// Coefficients as doubles; entries overflowing double become +-inf.
  std::vector<double> to_doubles() const;

  /// Scaled so the leading coefficient is 1. Zero stays zero.
  Poly monic() const;
  /// Integer multiple with coprime coefficients and positive leading term.
  Poly primitive() const;

  /// p(t + t0).
  Poly taylor_shift(const Rational& t0) const;
  /// t^n p(1/t); requires n >= degree.
  Poly reversed(std::size_t n) const;
  /// p mod t^len.
  Poly truncated(std::size_t len) const;
  /// p / t^k; requires the division to be exact.
  Poly divided_by_t_power(std::size_t k) const;
  /// Multiplicity of t = 0 as a root (0 for the zero polynomial).
  std::size_t trailing_zeros() const;

  std::size_t hash() const;
  /// Total bits across numerators and denominator.
  std::size_t bit_size() const;

  /// Canonical, parseable text such as "t^2 - 1/2*t + 3".
  std::string to_string(const std::string& var = "t") const;

 private:
  void canonicalize();

  zpoly::Coeffs num_;
  Integer den_ = 1;
};

}  // namespace heightlab
