#include <doctest.h>

#include "generators.hpp"
#include "heightlab/roots.hpp"
#include "heightlab/zpoly.hpp"

using namespace heightlab;

TEST_CASE("poly basics") {
  Poly p{1, -2, 0, 3};
  CHECK(p.degree() == 3);
  CHECK(p.coeff(1) == -2);
  CHECK(p(Rational(2)) == 1 - 4 + 24);
  CHECK(Poly().degree() == -1);
  CHECK(Poly(0).is_zero());
  CHECK((p - p).is_zero());
  CHECK(p.to_string() == "3*t^3 - 2*t + 1");

  Poly half = Poly{1, 1} * Rational(1, 2);
  CHECK(half.denominator() == 2);
  CHECK(half.to_string() == "1/2*t + 1/2");
  CHECK(half.primitive() == Poly{1, 1});
  CHECK(half.monic() == Poly{1, 1});
}

TEST_CASE("poly transforms") {
  Poly p{0, 0, 5, 1};
  CHECK(p.trailing_zeros() == 2);
  CHECK(p.divided_by_t_power(2) == Poly{5, 1});
  CHECK(p.reversed(4) == Poly{0, 1, 5});
  CHECK(p.truncated(3) == Poly{0, 0, 5});
  CHECK(p.derivative() == Poly{0, 10, 3});
  CHECK(Poly{1, 1}.pow(3) == Poly{1, 3, 3, 1});
  CHECK(Poly{0, 1}.taylor_shift(Rational(2)) == Poly{2, 1});
}

TEST_CASE("property: ring axioms and evaluation homomorphism") {
  testgen::Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    Poly a = g.rational_poly(6), b = g.rational_poly(6), c = g.rational_poly(4);
    Rational x = g.rational();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a * b)(x) == a(x) * b(x));
    CHECK((a + b)(x) == a(x) + b(x));
    CHECK(a.taylor_shift(x)(Rational(1)) == a(x + 1));
    if (!a.is_zero()) {
      auto n = static_cast<std::size_t>(a.degree());
      CHECK(a.reversed(n).reversed(n) == a);
    }
  }
}

TEST_CASE("property: Kronecker product equals schoolbook") {
  testgen::Gen g(12);
  for (int trial = 0; trial < 150; ++trial) {
    zpoly::Coeffs a, b;
    int na = static_cast<int>(g.integer(0, 60)), nb = static_cast<int>(g.integer(0, 60));
    int bits = static_cast<int>(g.integer(1, 300));
    for (int i = 0; i < na; ++i) a.push_back(g.coin() ? g.big(bits) : Integer(0));
    for (int i = 0; i < nb; ++i) b.push_back(g.big(bits));
    auto fast = zpoly::mul_kronecker(a, b);
    auto slow = zpoly::mul_schoolbook(a, b);
    zpoly::trim(fast);
    zpoly::trim(slow);
    CHECK(fast == slow);
  }
}

TEST_CASE("property: truncated product") {
  testgen::Gen g(13);
  for (int trial = 0; trial < 100; ++trial) {
    Poly a = g.poly(12, 1000), b = g.poly(12, 1000);
    std::size_t len = static_cast<std::size_t>(g.integer(0, 20));
    auto t = zpoly::mul_truncated(a.numerators(), b.numerators(), len);
    zpoly::trim(t);
    CHECK(Poly::from_integers(t) == (a * b).truncated(len));
  }
}

TEST_CASE("content and bits") {
  zpoly::Coeffs c{6, -9, 12};
  CHECK(zpoly::content(c) == 3);
  CHECK(zpoly::content(zpoly::Coeffs{}) == 0);
  CHECK(zpoly::max_bits(c) == 4);
}

TEST_CASE("log_abs for huge rationals") {
  Rational big(Integer(1) << 5000, 3);
  CHECK(log_abs(big) == doctest::Approx(5000 * std::log(2.0) - std::log(3.0)).epsilon(1e-12));
  CHECK(log_abs(Rational(-1, 8)) == doctest::Approx(-std::log(8.0)));
}
