#pragma once

// Seeded random inputs for property tests, plus slow reference
// implementations used as oracles.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "heightlab/algebra.hpp"
#include "heightlab/family.hpp"
#include "heightlab/parser.hpp"
#include "heightlab/poly.hpp"
#include "heightlab/proj_point.hpp"

namespace testgen {

using heightlab::BiForm;
using heightlab::Integer;
using heightlab::Poly;
using heightlab::ProjPointK;
using heightlab::Rational;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Integer big(int bits) {
    Integer x = 0;
    for (int i = 0; i < bits; i += 30) x = (x << 30) + integer(0, (1L << 30) - 1);
    return coin() ? Integer(-x) : x;
  }

  Rational rational(long num = 9, long den = 6) {
    Rational r(integer(-num, num), integer(1, den));
    r.canonicalize();
    return r;
  }

  Poly poly(int max_degree, long coeff = 9) {
    int deg = static_cast<int>(integer(-1, max_degree));
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(Rational(integer(-coeff, coeff)));
    return Poly::from_coeffs(c);
  }

  Poly nonzero_poly(int max_degree, long coeff = 9) {
    for (;;) {
      Poly p = poly(max_degree, coeff);
      if (!p.is_zero()) return p;
    }
  }

  Poly rational_poly(int max_degree) {
    int deg = static_cast<int>(integer(0, max_degree));
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(rational());
    return Poly::from_coeffs(c);
  }

  ProjPointK point(int max_degree) {
    if (integer(0, 15) == 0) return ProjPointK::infinity();
    for (;;) {
      Poly a1 = poly(max_degree, 5), a2 = poly(max_degree, 5);
      if (!a1.is_zero() || !a2.is_zero()) return ProjPointK::normalize(a1, a2);
    }
  }

  BiForm form(int d, int max_t_degree) {
    for (;;) {
      std::vector<Poly> c;
      for (int j = 0; j <= d; ++j) c.push_back(poly(max_t_degree, 4));
      if (std::any_of(c.begin(), c.end(), [](const Poly& p) { return !p.is_zero(); }))
        return BiForm(d, c);
    }
  }

  /// A family of degree d with nonzero resultant and t-dependence.
  heightlab::RationalMapFamily family(int d, int max_t_degree) {
    for (;;) {
      BiForm p = form(d, max_t_degree), q = form(d, max_t_degree);
      if (heightlab::resultant_forms(p, q).is_zero()) continue;
      auto f = heightlab::make_family(p, q);
      if (!f.is_constant()) return f;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline heightlab::RationalMapFamily quadratic() { return heightlab::parse_family("z^2 + t"); }
inline heightlab::RationalMapFamily lattes() {
  return heightlab::parse_family("(z^2 - t)^2 / (4*z*(z-1)*(z-t))");
}

/// Determinant by permutation expansion; exponential, for small matrices.
inline Poly leibniz_det(const std::vector<std::vector<Poly>>& m) {
  std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Poly term(1);
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    if (inversions % 2) total -= term; else total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Sylvester matrix of two degree-d forms from their coefficient lists.
inline std::vector<std::vector<Poly>> sylvester(const BiForm& p, const BiForm& q) {
  int d = p.degree();
  std::size_t n = static_cast<std::size_t>(2 * d);
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (int r = 0; r < d; ++r) {
    for (int j = 0; j <= d; ++j) {
      m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] = p.coeff(j);
      m[static_cast<std::size_t>(r + d)][static_cast<std::size_t>(r + j)] = q.coeff(j);
    }
  }
  return m;
}

/// Textbook Euclid over Q, monic result.
inline Poly euclid_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
      Rational c = r.leading() / b.leading();
      r -= Poly::monomial(c, static_cast<std::size_t>(r.degree() - b.degree())) * b;
    }
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Value of a binary form at (x, y) with t specialized, all exact.
inline Rational eval_form(const BiForm& f, const Rational& t, const Rational& x, const Rational& y) {
  Rational s = 0;
  int d = f.degree();
  for (int j = 0; j <= d; ++j) {
    Rational term = f.coeff(j)(t);
    for (int k = 0; k < d - j; ++k) term *= x;
    for (int k = 0; k < j; ++k) term *= y;
    s += term;
  }
  return s;
}

}  // namespace testgen
