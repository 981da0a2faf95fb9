#include <doctest.h>

#include "generators.hpp"
#include "heightlab/errors.hpp"

using namespace heightlab;

TEST_CASE("quadratic family invariants") {
  auto f = testgen::quadratic();
  CHECK(f.degree() == 2);
  CHECK(f.resultant().is_constant());
  CHECK_FALSE(f.resultant().is_zero());
  CHECK(f.q_infinity() == 4);
  CHECK(f.d_total() == 4);
  CHECK(f.coeff_degree() == 1);
}

TEST_CASE("q_infinity from an explicit substitution") {
  // Independent route: t = 1/s, multiply every coefficient by s^e, take
  // the order at s = 0 of the resultant of the cleared forms.
  testgen::Gen g(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = g.family(static_cast<int>(g.integer(2, 3)), 3);
    int e = f.coeff_degree();
    auto clear = [&](const BiForm& form) {
      std::vector<Poly> c;
      for (const auto& x : form.coeffs()) c.push_back(x.reversed(static_cast<std::size_t>(e)));
      return BiForm(form.degree(), c);
    };
    Poly r = resultant_forms(clear(f.P()), clear(f.Q()));
    CHECK(static_cast<int>(r.trailing_zeros()) == f.q_infinity());
  }
}

TEST_CASE("Lattes resultant and places") {
  auto f = testgen::lattes();
  CHECK(f.degree() == 4);
  Poly expect = Poly{0, 1}.pow(4) * Poly{-1, 1}.pow(4);
  CHECK(f.resultant().monic() == expect);
  CHECK(f.q_infinity() == 8);
  CHECK(f.d_total() == 16);
  auto places = degenerate_places(f);
  REQUIRE(places.finite_places.size() == 2);
  std::vector<Rational> roots;
  for (const auto& p : places.finite_places) {
    REQUIRE(p.exact.has_value());
    roots.push_back(*p.exact);
    CHECK(p.multiplicity == 4);
  }
  std::sort(roots.begin(), roots.end());
  CHECK(roots == std::vector<Rational>{0, 1});
}

TEST_CASE("construction rejects bad input") {
  BiForm x2(2, {Poly(1), Poly(), Poly()});
  CHECK_THROWS_AS(make_family(x2, x2), DomainError);
  BiForm lin(1, {Poly(1), Poly()});
  BiForm y(1, {Poly(), Poly(1)});
  CHECK_THROWS_AS(make_family(lin, y), DomainError);
  CHECK_THROWS_AS(make_family(x2, BiForm(3, {Poly(), Poly(), Poly(), Poly(1)})), DomainError);
}

TEST_CASE("property: canonical form ignores scalar and polynomial multiples") {
  testgen::Gen g(32);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = g.family(2, 2);
    Poly scale = g.nonzero_poly(2) * g.rational();
    if (scale.is_zero()) continue;
    auto times = [&](const BiForm& form) {
      std::vector<Poly> c;
      for (const auto& x : form.coeffs()) c.push_back(x * scale);
      return BiForm(form.degree(), c);
    };
    CHECK(make_family(times(f.P()), times(f.Q())) == f);
  }
}

TEST_CASE("property: apply agrees with exact specialization") {
  testgen::Gen g(33);
  for (int trial = 0; trial < 80; ++trial) {
    auto f = g.family(static_cast<int>(g.integer(2, 3)), 2);
    auto a = g.point(3);
    auto r = apply(f, a);
    CHECK(divmod(f.resultant(), r.cancelled).remainder.is_zero());
    CHECK(poly_gcd(r.image.a1(), r.image.a2()).is_constant());
    for (int k = 0; k < 4; ++k) {
      Rational t = g.rational();
      Rational x = a.a1()(t), y = a.a2()(t);
      Rational w1 = testgen::eval_form(f.P(), t, x, y), w2 = testgen::eval_form(f.Q(), t, x, y);
      CHECK(w1 * r.image.a2()(t) == w2 * r.image.a1()(t));
    }
  }
}

TEST_CASE("shift and flip") {
  auto f = testgen::lattes();
  auto g = shift(f, Rational(1));
  CHECK(g.resultant().monic() == Poly{1, 1}.pow(4) * Poly{0, 1}.pow(4));
  CHECK(shift(g, Rational(-1)) == f);
  auto h = flip(f);
  CHECK(static_cast<int>(h.resultant().trailing_zeros()) == f.q_infinity());
  CHECK(flip(h) == f);
}

TEST_CASE("text form parses back to the same family") {
  testgen::Gen g(34);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = g.family(static_cast<int>(g.integer(2, 3)), 2);
    CHECK(parse_family(f.to_string()) == f);
  }
}
