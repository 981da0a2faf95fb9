#pragma once

// Dense polynomials over Z stored as coefficient vectors, index i = t^i.
// These are the raw kernels underneath Poly; they do not trim or
// normalize unless a function says so.

#include <cstddef>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace heightlab::zpoly {

using Coeffs = std::vector<mpz_class>;

/// Drop trailing zero coefficients.
void trim(Coeffs& a);

/// Quadratic-time reference product. Kept for testing the fast path.
Coeffs mul_schoolbook(std::span<const mpz_class> a, std::span<const mpz_class> b);

/// Product via Kronecker substitution: both operands are packed into one
/// signed integer, multiplied by GMP, and unpacked with borrow handling.
Coeffs mul_kronecker(std::span<const mpz_class> a, std::span<const mpz_class> b);

/// Dispatching product (schoolbook for short operands).
Coeffs mul(std::span<const mpz_class> a, std::span<const mpz_class> b);

/// Product truncated modulo t^len.
Coeffs mul_truncated(std::span<const mpz_class> a, std::span<const mpz_class> b,
                     std::size_t len);

/// Non-negative gcd of all coefficients (0 for the zero polynomial).
mpz_class content(std::span<const mpz_class> a);

/// Largest coefficient bit length.
std::size_t max_bits(std::span<const mpz_class> a);

}  // namespace heightlab::zpoly
