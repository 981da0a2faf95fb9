#include <doctest.h>

#include <cstring>

#include "generators.hpp"
#include "heightlab/degeneration.hpp"
#include "heightlab/kernels.hpp"
#include "heightlab/roots.hpp"

using namespace heightlab;

namespace {

template <class T>
bool bitwise_equal(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

std::vector<cd> random_points(testgen::Gen& g, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<cd> out(n);
  for (auto& z : out) z = {u(g.engine()), u(g.engine())};
  return out;
}

}  // namespace

TEST_CASE("escape kernel: serial and parallel are bit-identical") {
  auto f = testgen::lattes();
  MarkedLift lift{Poly(2), Poly(1)};
  auto seq = order_sequence(f, lift, 6);
  NumericFamily nf(f);
  NumericPoint np(lift.a1(), lift.a2());
  EscapeJob job{&nf, &np, order_ratios(seq), 6};
  auto ts = annulus_cells({0.1, 0.5, 32, 32});
  std::vector<double> a(ts.size() * 7), b(a.size());
  escape_cells_serial(job, ts, a);
  escape_cells_parallel(job, ts, b, 4);
  CHECK(bitwise_equal(a, b));
}

TEST_CASE("activity kernel: serial and parallel are bit-identical") {
  auto f = testgen::quadratic();
  NumericFamily nf(f);
  NumericPoint np(ProjPointK::constant(0));
  testgen::Gen g(61);
  auto ts = random_points(g, 3000, 2.0);
  for (auto metric : {ActivityMetric::Affine, ActivityMetric::Spherical}) {
    ActivityJob job{&nf, &np, 200, 1e12, metric};
    std::vector<std::int32_t> a(ts.size()), b(ts.size());
    std::vector<std::uint8_t> na(ts.size()), nb(ts.size());
    activity_cells_serial(job, ts, a, na);
    activity_cells_parallel(job, ts, b, nb, 3);
    CHECK(a == b);
    CHECK(na == nb);
  }
}

TEST_CASE("aberth and distance kernels: serial and parallel are bit-identical") {
  testgen::Gen g(62);
  auto z = random_points(g, 500, 3.0);
  auto ratio = random_points(g, 500, 0.1);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < z.size(); i += 2) active.push_back(i);
  std::vector<cd> a(z.size()), b(z.size());
  aberth_corrections_serial(z, active, ratio, a);
  aberth_corrections_parallel(z, active, ratio, b, 4);
  CHECK(bitwise_equal(a, b));

  auto pts = random_points(g, 2000, 2.0);
  std::vector<double> da(pts.size()), db(pts.size());
  nearest_distances_serial(pts, z, da);
  nearest_distances_parallel(pts, z, db, 4);
  CHECK(bitwise_equal(da, db));
  for (std::size_t i = 0; i < 50; ++i) {
    double best = 1e300;
    for (cd r : z) best = std::min(best, std::abs(pts[i] - r));
    CHECK(da[i] == doctest::Approx(best).epsilon(1e-15));
  }
}

TEST_CASE("aberth finds roots of a product of linear factors") {
  std::vector<cd> roots{{1, 0}, {-2, 0.5}, {0, 3}, {0.25, -0.25}};
  NewtonRatioFn ratio = [&](std::span<const cd> z, std::span<cd> out) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      cd s = 0.0;
      for (cd r : roots) s += 1.0 / (z[i] - r);
      out[i] = 1.0 / s;
    }
  };
  auto res = aberth(initial_guesses(0.0, 2.0, 4), ratio, {});
  CHECK(res.converged);
  for (cd r : roots) {
    double best = 1e300;
    for (cd z : res.roots) best = std::min(best, std::abs(z - r));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("property: complex roots reproduce the polynomial") {
  testgen::Gen g(63);
  for (int trial = 0; trial < 40; ++trial) {
    Poly p = g.nonzero_poly(8, 20) * g.nonzero_poly(3, 5).pow(2);
    if (p.is_constant()) continue;
    auto rl = complex_roots(p);
    int total = 0;
    for (const auto& r : rl.roots) total += r.multiplicity;
    CHECK(total == p.degree());
    CAPTURE(p.to_string());
    CAPTURE(rl.residual);
    CHECK(rl.within_tolerance);
    // Vieta: the sum of roots with multiplicity is -c_{n-1}/c_n.
    cd sum = 0.0;
    for (const auto& r : rl.roots) sum += static_cast<double>(r.multiplicity) * r.value;
    double expect = Rational(-p.coeff(static_cast<std::size_t>(p.degree() - 1)) / p.leading()).get_d();
    CHECK(std::abs(sum - expect) < 1e-6 * (1 + std::abs(expect)));
  }
}
