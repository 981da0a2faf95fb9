#include "heightlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heightlab/algebra.hpp"

namespace heightlab {

namespace {

using cld = std::complex<long double>;

double log_abs_z(const Integer& x) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(std::abs(m)) + static_cast<double>(e) * std::numbers::ln2;
}

/// Integer numerators scaled by a common power of two into double range.
std::vector<double> scaled_doubles(const Poly& p) {
  const auto& num = p.numerators();
  long top = 0;
  for (const auto& c : num) {
    if (c != 0) top = std::max(top, static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)));
  }
  const long shift = top > 900 ? top - 900 : 0;
  std::vector<double> out;
  out.reserve(num.size());
  for (const auto& c : num) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, c.get_mpz_t());
    out.push_back(c == 0 ? 0.0 : std::ldexp(m, static_cast<int>(e - shift)));
  }
  return out;
}

/// p(z)/p'(z), through the reversed polynomial outside the unit disk.
cd newton_ratio(const std::vector<double>& c, cd z) {
  const std::size_t n = c.size() - 1;
  if (std::abs(z) <= 1.0) {
    cd v = c[n], dv = 0.0;
    for (std::size_t i = n; i-- > 0;) {
      dv = dv * z + v;
      v = v * z + c[i];
    }
    return v / dv;
  }
  // p(z) = z^n r(w), p'(z) = z^(n-1) (n r(w) - w r'(w)) with w = 1/z.
  const cd w = 1.0 / z;
  cd r = c[0], dr = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    dr = dr * w + r;
    r = r * w + c[i];
  }
  return z * r / (static_cast<double>(n) * r - w * dr);
}

// |p(z)| / sum |c_i| max(1, |z|)^i
double backward_error(const std::vector<long double>& c, cd z) {
  cld acc = 0.0L;
  long double scale = 0.0L;
  const cld x(z.real(), z.imag());
  const long double r = std::max(1.0L, std::abs(x));
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * x + c[i];
    scale = scale * r + std::abs(c[i]);
  }
  if (!(scale > 0.0L) || !std::isfinite(static_cast<double>(scale))) return 0.0;
  return static_cast<double>(std::abs(acc) / scale);
}

}  // namespace

double log_abs(const Rational& x) { return log_abs_z(x.get_num()) - log_abs_z(x.get_den()); }

std::vector<cd> initial_guesses(cd center, double radius, std::size_t n) {
  std::vector<cd> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = center + std::polar(radius, theta);
  }
  return z;
}

std::pair<cd, double> starting_circle(const Poly& p) {
  const int n = p.degree();
  if (n < 1) throw DomainError("starting circle of a constant polynomial");
  const Rational lc = p.leading();
  Rational centroid = -p.coeff(static_cast<std::size_t>(n - 1)) / (lc * n);
  const Rational v = p(centroid);
  double radius = 0.0;
  if (v != 0) {
    radius = std::exp((log_abs(v) - log_abs(lc)) / n);
  } else {
    Poly shifted = p.taylor_shift(centroid);
    for (int i = 1; i <= n; ++i) {
      Rational c = shifted.coeff(static_cast<std::size_t>(n - i));
      if (c != 0) radius = std::max(radius, std::exp((log_abs(c) - log_abs(lc)) / i));
    }
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
  return {cd(centroid.get_d(), 0.0), radius};
}

AberthResult aberth(std::vector<cd> initial, const NewtonRatioFn& ratio,
                    const AberthOptions& options) {
  AberthResult res;
  res.roots = std::move(initial);
  auto& z = res.roots;
  const std::size_t n = z.size();
  std::vector<char> done(n, 0);
  std::vector<double> previous(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> active;
  std::vector<cd> za, r, w;
  for (int it = 1; it <= options.max_iterations; ++it) {
    active.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i]) active.push_back(i);
    }
    if (active.empty()) {
      res.converged = true;
      return res;
    }
    res.iterations = it;
    za.resize(active.size());
    r.resize(active.size());
    w.resize(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) za[k] = z[active[k]];
    ratio(za, r);
    aberth_corrections(z, active, r, w, options.exec);
    for (std::size_t k = 0; k < active.size(); ++k) {
      const std::size_t i = active[k];
      cd step = w[k];
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        z[i] += cd(1e-7, 1e-7) * std::max(1.0, std::abs(z[i]));
        continue;
      }
      z[i] -= step;
      const double scale = std::max(1.0, std::abs(z[i]));
      const double size = std::abs(step);
      // Converged, or stalled at the rounding floor.
      if (size <= options.tolerance * scale || (size <= 1e-9 * scale && size >= 0.5 * previous[i])) {
        done[i] = 1;
      }
      previous[i] = size;
    }
  }
  res.converged = std::all_of(done.begin(), done.end(), [](char c) { return c != 0; });
  return res;
}

RootList complex_roots(const Poly& p, double tol, const ExecPolicy& exec) {
  if (p.degree() < 1) throw DomainError("complex_roots needs a nonconstant polynomial");
  RootList out;
  bool failed = false;
  for (const auto& [factor, mult] : squarefree_factorization(p)) {
    if (factor.degree() == 1) {
      Rational r = -factor.coeff(0) / factor.coeff(1);
      out.roots.push_back({cd(r.get_d(), 0.0), mult});
      continue;
    }
    const std::vector<double> c = scaled_doubles(factor);
    auto [center, radius] = starting_circle(factor);
    AberthOptions options;
    options.exec = exec;
    AberthResult ar = aberth(initial_guesses(center, radius, static_cast<std::size_t>(factor.degree())),
                             [&c](std::span<const cd> z, std::span<cd> ratio) {
                               for (std::size_t i = 0; i < z.size(); ++i) ratio[i] = newton_ratio(c, z[i]);
                             },
                             options);
    out.iterations = std::max(out.iterations, ar.iterations);
    failed = failed || !ar.converged;
    for (cd z : ar.roots) out.roots.push_back({z, mult});
  }
  std::vector<long double> pc;
  for (const Rational& c : p.coeffs()) pc.push_back(static_cast<long double>(c.get_d()));
  for (const Root& r : out.roots) out.residual = std::max(out.residual, backward_error(pc, r.value));
  out.within_tolerance = out.residual <= tol;
  if (failed) throw RootFindingError("root finder did not converge", out);
  return out;
}

}  // namespace heightlab
