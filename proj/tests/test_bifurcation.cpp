#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "heightlab/bifurcation.hpp"
#include "heightlab/errors.hpp"

using namespace heightlab;

namespace {

bool escapes(cd c, int cap) {
  cd z = 0.0;
  for (int i = 0; i < cap; ++i) {
    z = z * z + c;
    if (std::norm(z) > 4.0) return true;
  }
  return false;
}

bool has_root_near(const RootSet& r, cd z, double tol) {
  return std::any_of(r.verified.begin(), r.verified.end(),
                     [&](const ParameterRoot& p) { return std::abs(p.value - z) < tol; });
}

}  // namespace

TEST_CASE("grid geometry") {
  ParamGrid g{0, 0, 4, 2, 4, 2};
  CHECK(g.pixel(0, 0) == cd(0.5, 1.5));
  CHECK(g.pixel(3, 1) == cd(3.5, 0.5));
  CHECK(g.points().size() == 8);
  CHECK_THROWS_AS((ParamGrid{1, 0, 0, 1, 4, 4}.validate()), DomainError);
  CHECK_THROWS_AS((ParamGrid{0, 0, 1, 1, 0, 4}.validate()), DomainError);
}

TEST_CASE("activity agrees with escape time on a coarse grid") {
  auto f = testgen::quadratic();
  ParamGrid grid{-2.5, -1.5, 1.0, 1.5, 96, 96};
  auto map = activity_map(f, ProjPointK::constant(0), grid, 256);
  std::size_t agree = 0;
  for (int r = 0; r < grid.height; ++r)
    for (int c = 0; c < grid.width; ++c)
      agree += (map.values[static_cast<std::size_t>(r * grid.width + c)] > 0) ==
               escapes(grid.pixel(c, r), 256);
  CHECK(static_cast<double>(agree) / (96.0 * 96.0) >= 0.95);
  CHECK(map.nan_count() == 0);
}

TEST_CASE("spherical metric marks the same escaping region") {
  auto f = testgen::quadratic();
  ParamGrid grid{-2.5, -1.5, 1.0, 1.5, 48, 48};
  auto affine = activity_map(f, ProjPointK::constant(0), grid, 128);
  auto sph = activity_map(f, ProjPointK::constant(0), grid, 128, 1e12, ActivityMetric::Spherical);
  CHECK(sph.values.size() == affine.values.size());
  // Deep interior of the main cardioid is inactive under both metrics.
  std::size_t center = static_cast<std::size_t>(24 * 48 + 20);
  CHECK(affine.values[center] == 0);
  CHECK(sph.values[center] == 0);
}

TEST_CASE("low-order preperiodic equations") {
  auto f = testgen::quadratic();
  auto a = ProjPointK::constant(0);
  CHECK(preperiodic_equation(f, a, 1, 0).E == Poly{0, 1});
  CHECK(preperiodic_equation(f, a, 2, 0).E == Poly{0, 1, 1});
  CHECK(preperiodic_equation(f, a, 3, 0).E == Poly{0, 1, 1, 2, 1});

  auto r1 = preperiodic_parameters(f, a, 1, 0);
  REQUIRE(r1.verified.size() == 1);
  CHECK(std::abs(r1.verified[0].value) < 1e-9);
  auto r2 = preperiodic_parameters(f, a, 2, 0);
  CHECK(r2.verified.size() == 2);
  CHECK(has_root_near(r2, 0.0, 1e-9));
  CHECK(has_root_near(r2, -1.0, 1e-9));
  CHECK(r2.squarefree_certified);
}

TEST_CASE("identically preperiodic pair is detected") {
  auto f = testgen::lattes();
  auto eq = preperiodic_equation(f, parse_point("t"), 2, 1);
  CHECK(eq.identically_zero);
  CHECK(eq.E.is_zero());
  CHECK_THROWS_AS(preperiodic_parameters(f, parse_point("t"), 2, 1), DomainError);
  CHECK_THROWS_AS(preperiodic_equation(f, parse_point("2"), 1, 1), DomainError);
}

TEST_CASE("property: every verified root satisfies the collision") {
  auto f = testgen::quadratic();
  auto a = ProjPointK::constant(0);
  for (auto [n, m] : {std::pair{4, 0}, {5, 1}, {4, 2}, {6, 0}}) {
    auto r = preperiodic_parameters(f, a, n, m);
    CHECK(r.multiplicity_sum() == r.degree);
    CHECK(r.unverified.empty());
    for (const auto& p : r.verified) {
      cd z = 0.0, w = 0.0;
      for (int i = 0; i < n; ++i) {
        z = z * z + p.value;
        if (i + 1 == m) w = z;
      }
      if (m == 0) w = 0.0;
      CHECK(std::abs(z - w) < 1e-6);
      CHECK(p.collision <= 1e-6);
      CHECK(p.bridge_radius < 1e-8);
    }
  }
}

TEST_CASE("exact root radius brackets a known root") {
  Poly p{-2, 0, 1};
  double r = exact_root_radius(p, {1.41421356, 0.0});
  CHECK(r > std::abs(1.41421356 - std::sqrt(2.0)) * 0.5);
  CHECK(r < 1e-6);
}

TEST_CASE("density experiment on a small grid") {
  auto f = testgen::quadratic();
  ParamGrid grid{-2.5, -1.5, 1.0, 1.5, 64, 64};
  auto act = activity_map(f, ProjPointK::constant(0), grid, 128);
  auto rep = density_experiment(f, ProjPointK::constant(0), act, {{2, 0}, {4, 0}, {6, 0}});
  CHECK(rep.active_pixels == act.active_count());
  REQUIRE(rep.entries.size() == 3);
  CHECK(rep.entries[0].roots == 2);
  CHECK(rep.entries[2].roots == 32);
  CHECK(rep.nonincreasing);
}
