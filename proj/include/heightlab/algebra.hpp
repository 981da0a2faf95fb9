#pragma once

// Exact polynomial algebra over Q: division, gcd, valuations, squarefree
// decomposition, determinants and binary-form resultants.

#include <cstddef>
#include <optional>
#include <vector>

#include "heightlab/biform.hpp"
#include "heightlab/poly.hpp"

namespace heightlab {

struct DivMod {
  Poly quotient;
  Poly remainder;
};

/// Euclidean division over Q. Throws DomainError for b = 0.
DivMod divmod(const Poly& a, const Poly& b);

/// a / b when b | a; throws InternalError if the division is not exact.
Poly exact_div(const Poly& a, const Poly& b);

/// Monic gcd, with gcd(p, 0) = monic(p). Both zero is a DomainError.
Poly poly_gcd(const Poly& p, const Poly& q);

/// Monic gcd(x, y) computed inside a known multiple of it: the caller
/// guarantees gcd(x, y) | divisor. Cost is linear in deg x + deg y.
Poly gcd_within(const Poly& x, const Poly& y, const Poly& divisor);

/// Remainder of a modulo b scaled by a nonzero constant (a pseudo-remainder
/// with content removed). Same gcd with b as a mod b.
Poly scaled_remainder(const Poly& a, const Poly& b);

/// Multiplicity of c as a root of p. Zero polynomial is a DomainError.
std::size_t ord_at(const Poly& p, const Rational& c);

struct SquarefreeFactor {
  Poly factor;  // monic, squarefree
  int multiplicity = 0;

  friend bool operator==(const SquarefreeFactor&, const SquarefreeFactor&) = default;
};

/// Yun's algorithm. Factors are monic, pairwise coprime, nonconstant, in
/// increasing multiplicity; the leading constant is dropped.
std::vector<SquarefreeFactor> squarefree_factorization(const Poly& p);

/// True when p is proven squarefree by a gcd computation modulo a word
/// prime not dividing the leading coefficient. False means "not proven".
bool certify_squarefree(const Poly& p);

/// Determinant of a square matrix over Q[t] (fraction-free Bareiss).
Poly determinant(std::vector<std::vector<Poly>> m);

/// Homogeneous resultant of two binary forms of equal degree: the
/// Sylvester determinant of their formal degree-d coefficient vectors.
Poly resultant_forms(const BiForm& p, const BiForm& q);

/// If z is numerically close to a rational root of p with a modest
/// denominator, return that root (verified exactly).
std::optional<Rational> rationalize_root(const Poly& p, std::complex<double> z);

}  // namespace heightlab
