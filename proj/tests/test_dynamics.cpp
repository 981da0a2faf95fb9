#include <doctest.h>

#include "generators.hpp"
#include "heightlab/dynamics.hpp"
#include "heightlab/errors.hpp"

using namespace heightlab;

namespace {

// Degree of Q(a) for Q = z^2 + t by the case split on deg a1 vs deg a2.
int quadratic_image_degree(const ProjPointK& a) {
  if (a.a1().degree() > a.a2().degree()) return 2 * a.degree();
  return 2 * a.degree() + 1;
}

}  // namespace

TEST_CASE("point normalization") {
  auto p = ProjPointK::normalize(Poly{0, 2}, Poly{0, 0, 4});
  CHECK(p.a1() == Poly(Rational(1, 2)));
  CHECK(p.a2() == Poly{0, 1});
  CHECK(p.to_string() == "(1/2)/(t)");
  CHECK(ProjPointK::normalize(Poly{3}, Poly()).is_infinity());
  CHECK(ProjPointK::infinity().to_string() == "inf");
  CHECK_THROWS_AS(ProjPointK::normalize(Poly(), Poly()), DomainError);
  CHECK(ProjPointK::normalize(Poly{1, 1}, Poly(2)) == ProjPointK::normalize(Poly{-2, -2}, Poly(-4)));
}

TEST_CASE("property: quadratic degree recursion") {
  auto f = testgen::quadratic();
  testgen::Gen g(41);
  int both_cases[2] = {0, 0};
  for (int trial = 0; trial < 200; ++trial) {
    auto a = g.point(3);
    if (a.is_infinity()) continue;
    both_cases[a.a1().degree() > a.a2().degree() ? 0 : 1]++;
    auto degs = degree_sequence(f, a, 4);
    CHECK(degs[1] == quadratic_image_degree(a));
    for (int i = 2; i <= 4; ++i) CHECK(degs[static_cast<std::size_t>(i)] == 2 * degs[static_cast<std::size_t>(i - 1)]);
  }
  CHECK(both_cases[0] > 10);
  CHECK(both_cases[1] > 10);
}

TEST_CASE("quadratic heights") {
  auto f = testgen::quadratic();
  for (const char* s : {"0", "1", "2", "-1", "1/2", "t", "t^2+1", "1/t"}) {
    auto a = parse_point(s);
    auto h = canonical_height(f, a, 10);
    Rational expect = a.degree() == 0 ? Rational(1, 2) : Rational(quadratic_image_degree(a)) / 2;
    CHECK(h.lo <= expect);
    CHECK(expect <= h.hi);
    CHECK(h.max_deviation <= f.d_total());
  }
  auto inf = canonical_height(f, ProjPointK::infinity(), 10);
  CHECK(inf.preperiodic);
  CHECK(inf.lo == 0);
  CHECK(inf.hi == 0);
}

TEST_CASE("property: enclosures nest and contain every later estimate") {
  testgen::Gen g(42);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = g.family(2, 1);
    auto a = g.point(2);
    HeightEnclosure prev;
    bool first = true;
    for (int n = 1; n <= 5; ++n) {
      HeightEnclosure h;
      try {
        h = canonical_height(f, a, n);
      } catch (const ResourceError&) {
        break;
      }
      CHECK(h.lo >= 0);
      CHECK(h.lo <= h.hi);
      CHECK(h.max_deviation <= f.d_total());
      if (!first) {
        CHECK(h.lo >= prev.lo);
        CHECK(h.hi <= prev.hi);
      }
      prev = h;
      first = false;
    }
  }
}

TEST_CASE("accumulator matches the closed form") {
  EnclosureAccumulator acc(2, 4);
  acc.add(0);
  acc.add(1);
  acc.add(2);
  CHECK(acc.lo() == Rational(0));
  CHECK(acc.hi() == Rational(3, 2));
  EnclosureAccumulator bad(2, 0);
  bad.add(0);
  CHECK_THROWS_AS(bad.add(5), InternalError);
}

TEST_CASE("Lattes classification") {
  auto f = testgen::lattes();
  for (const char* s : {"0", "1", "t", "inf"}) {
    auto c = classify(f, parse_point(s), 64);
    REQUIRE(std::holds_alternative<Preperiodic>(c));
    auto orb = orbit(f, parse_point(s), 8);
    CHECK(orb.points.back().is_infinity());
  }
  for (const char* s : {"2", "-1", "1/3"}) {
    auto h = canonical_height(f, parse_point(s), 6);
    CHECK(h.lo <= Rational(1, 2));
    CHECK(Rational(1, 2) <= h.hi);
  }
}

TEST_CASE("orbit cycle bookkeeping") {
  auto f = testgen::lattes();
  auto orb = orbit(f, parse_point("t"), 10);
  REQUIRE(orb.cycle.has_value());
  CHECK(orb.points[static_cast<std::size_t>(orb.cycle->preperiod)] == orb.points.back());
  CHECK(orb.cycle->period == 1);
  CHECK(orb.degree_at(50) == 0);
  auto cert = constant_tail_certificate(orbit(f, parse_point("2"), 4), 4);
  CHECK_FALSE(cert.has_value());
}

TEST_CASE("constant family orbits give an isotriviality certificate") {
  auto f = parse_family("z^2 - 2*z");
  auto orb = orbit(f, parse_point("5"), 6);
  auto cert = constant_tail_certificate(orb, 2);
  REQUIRE(cert.has_value());
  CHECK(cert->points.size() == 5);
}

TEST_CASE("budgets raise resource errors") {
  auto f = testgen::quadratic();
  OrbitLimits tight;
  tight.max_coefficients = 40;
  CHECK_THROWS_AS(orbit(f, parse_point("t"), 20, tight), ResourceError);
  auto early = classify(f, parse_point("0"), 3);
  REQUIRE(std::holds_alternative<Undetermined>(early));
  CHECK(std::get<Undetermined>(early).cap == "nmax");
  CHECK(std::holds_alternative<PositiveHeight>(classify(f, parse_point("0"), 8)));
}
