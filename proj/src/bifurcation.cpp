#include "heightlab/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heightlab/algebra.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/numeric_family.hpp"

namespace heightlab {

namespace {

const ProjPointK& point_at(const Orbit& orb, std::size_t i) {
  if (i < orb.points.size()) return orb.points[i];
  const auto m = static_cast<std::size_t>(orb.cycle->preperiod);
  const auto p = static_cast<std::size_t>(orb.cycle->period);
  return orb.points[m + (i - m) % p];
}

const Poly& cancelled_at(const Orbit& orb, std::size_t i) {
  if (i < orb.cancelled.size()) return orb.cancelled[i];
  const auto m = static_cast<std::size_t>(orb.cycle->preperiod);
  const auto p = static_cast<std::size_t>(orb.cycle->period);
  return orb.cancelled[m + (i - m) % p];
}

/// Evaluates f^i(a(t)) numerically along the normalized exact orbit.
///
/// g_{i+1} = F(g_i) / (lambda_i kappa_i) with kappa_i the cancelled factor,
/// so g_i = F^i(g_0) / C_i and C'_{i+1}/C_{i+1} = d C'_i/C_i + kappa'_i/kappa_i.
class CollisionEvaluator {
 public:
  CollisionEvaluator(const RationalMapFamily& f, const Orbit& orb, int n, int m)
      : nf_(f), start_(orb.points.front()), n_(n), m_(m) {
    for (int i = 0; i < n; ++i) {
      const Poly& k = cancelled_at(orb, static_cast<std::size_t>(i));
      kappa_.push_back(k.to_doubles());
      dkappa_.push_back(k.derivative().to_doubles());
    }
  }

  /// E(t) / E'(t).
  cd newton_ratio(cd t) const {
    NumericFamily::Specialized s;
    nf_.specialize(t, s);
    cd z1, z2, w1, w2;
    start_.eval_with_derivative(t, z1, z2, w1, w2);
    cd log_c = 0.0;
    cd zm1, zm2, wm1, wm2, log_cm;
    const double d = nf_.degree();
    for (int i = 0;; ++i) {
      if (i == m_) {
        zm1 = z1, zm2 = z2, wm1 = w1, wm2 = w2, log_cm = log_c;
      }
      if (i == n_) break;
      const auto iu = static_cast<std::size_t>(i);
      if (kappa_[iu].size() > 1) log_c = d * log_c + horner(dkappa_[iu], t) / horner(kappa_[iu], t);
      else log_c = d * log_c;
      cd a1, a2, b1, b2;
      NumericFamily::apply_with_tangent(s, z1, z2, w1, w2, a1, a2, b1, b2);
      double norm = std::max(std::abs(a1), std::abs(a2));
      if (!(norm > 0.0) || !std::isfinite(norm)) return std::numeric_limits<double>::quiet_NaN();
      z1 = a1 / norm, z2 = a2 / norm, w1 = b1 / norm, w2 = b2 / norm;
    }
    cd e = z1 * zm2 - zm1 * z2;
    if (e == 0.0) return 0.0;
    cd de = w1 * zm2 + z1 * wm2 - wm1 * z2 - zm1 * w2;
    return 1.0 / (de / e - log_c - log_cm);
  }

  double collision(cd t) const {
    NumericFamily::Specialized s;
    nf_.specialize(t, s);
    cd z1, z2;
    start_.eval(t, z1, z2);
    cd zm1 = z1, zm2 = z2;
    for (int i = 0; i < n_; ++i) {
      cd a1, a2;
      NumericFamily::apply(s, z1, z2, a1, a2);
      double norm = std::max(std::abs(a1), std::abs(a2));
      if (!(norm > 0.0) || !std::isfinite(norm)) return std::numeric_limits<double>::infinity();
      z1 = a1 / norm, z2 = a2 / norm;
      if (i + 1 == m_) zm1 = z1, zm2 = z2;
    }
    return chordal_distance(z1, z2, zm1, zm2);
  }

 private:
  NumericFamily nf_;
  NumericPoint start_;
  int n_, m_;
  std::vector<std::vector<double>> kappa_, dkappa_;
};

double log_abs_mpz(const mpz_class& x) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(std::abs(m)) + static_cast<double>(e) * std::numbers::ln2;
}

/// Homogenized Horner at (u + iv) / 2^k over the Gaussian integers.
/// Returns log |sum c_j (u+iv)^j 2^(k(n-j))|, or -inf when it vanishes.
double gaussian_log_value(const zpoly::Coeffs& c, const mpz_class& u, const mpz_class& v, long k) {
  if (c.empty()) return -std::numeric_limits<double>::infinity();
  mpz_class re = c.back(), im = 0, tr, ti, term;
  const std::size_t n = c.size() - 1;
  for (std::size_t j = n; j-- > 0;) {
    tr = re * u - im * v;
    ti = re * v + im * u;
    mpz_mul_2exp(term.get_mpz_t(), c[j].get_mpz_t(), static_cast<mp_bitcnt_t>(k * static_cast<long>(n - j)));
    re = tr + term;
    im = ti;
  }
  mpz_class norm = re * re + im * im;
  if (norm == 0) return -std::numeric_limits<double>::infinity();
  return 0.5 * log_abs_mpz(norm);
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

void ParamGrid::validate() const {
  if (!(x1 > x0) || !(y1 > y0)) throw DomainError("grid rectangle is empty");
  if (width < 1 || height < 1) throw DomainError("grid resolution must be positive");
}

cd ParamGrid::pixel(int col, int row) const {
  return {x0 + (col + 0.5) * (x1 - x0) / width, y1 - (row + 0.5) * (y1 - y0) / height};
}

std::vector<cd> ParamGrid::points() const {
  std::vector<cd> out;
  out.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) out.push_back(pixel(c, r));
  }
  return out;
}

std::size_t ActivityMap::active_count() const {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](std::int32_t v) { return v > 0; }));
}

std::size_t ActivityMap::nan_count() const {
  return static_cast<std::size_t>(std::count(nan_flags.begin(), nan_flags.end(), std::uint8_t{1}));
}

ActivityMap activity_map(const RationalMapFamily& f, const ProjPointK& a, const ParamGrid& grid,
                         int cap, double threshold, ActivityMetric metric, const ExecPolicy& exec) {
  grid.validate();
  if (cap < 1) throw DomainError("activity cap must be positive");
  if (!(threshold > 0.0)) throw DomainError("activity threshold must be positive");
  NumericFamily nf(f);
  NumericPoint np(a);
  ActivityJob job{&nf, &np, cap, threshold, metric};
  ActivityMap map;
  map.grid = grid;
  map.cap = cap;
  map.threshold = threshold;
  map.metric = metric;
  const std::vector<cd> ts = grid.points();
  map.values.assign(ts.size(), 0);
  map.nan_flags.assign(ts.size(), 0);
  activity_cells(job, ts, map.values, map.nan_flags, exec);
  return map;
}

PreperiodicEquation preperiodic_equation(const RationalMapFamily& f, const ProjPointK& a, int n,
                                         int m, OrbitLimits limits) {
  if (!(n > m && m >= 0)) throw DomainError("preperiodic equation needs n > m >= 0");
  Orbit orb = orbit(f, a, n, limits);
  const ProjPointK& gn = point_at(orb, static_cast<std::size_t>(n));
  const ProjPointK& gm = point_at(orb, static_cast<std::size_t>(m));
  PreperiodicEquation eq;
  eq.n = n;
  eq.m = m;
  eq.E = (gn.a1() * gm.a2() - gm.a1() * gn.a2()).primitive();
  eq.identically_zero = eq.E.is_zero();
  eq.provenance = "g_" + std::to_string(n) + " and g_" + std::to_string(m) + " of the exact orbit of " +
                  a.to_string();
  return eq;
}

int RootSet::multiplicity_sum() const {
  int s = 0;
  for (const auto& r : verified) s += r.multiplicity;
  for (const auto& r : unverified) s += r.multiplicity;
  return s;
}

double exact_root_radius(const Poly& p, cd z) {
  const int n = p.degree();
  if (n < 1) throw DomainError("exact_root_radius needs a nonconstant polynomial");
  const double big = std::max({std::abs(z.real()), std::abs(z.imag()), 1.0});
  int e = 0;
  std::frexp(big, &e);
  const long k = 52 - e;
  mpz_class u(std::nearbyint(std::ldexp(z.real(), static_cast<int>(k))));
  mpz_class v(std::nearbyint(std::ldexp(z.imag(), static_cast<int>(k))));
  const zpoly::Coeffs& c = p.numerators();
  zpoly::Coeffs dc;
  for (std::size_t j = 1; j < c.size(); ++j) dc.push_back(c[j] * static_cast<unsigned long>(j));
  const double log_e = gaussian_log_value(c, u, v, k);
  const double log_de = gaussian_log_value(dc, u, v, k);
  if (log_e == -std::numeric_limits<double>::infinity()) return 0.0;
  if (log_de == -std::numeric_limits<double>::infinity()) return std::numeric_limits<double>::infinity();
  // |E/E'| = |num E| / (|num E'| 2^k).
  return n * std::exp(log_e - log_de - static_cast<double>(k) * std::numbers::ln2);
}

RootSet preperiodic_parameters(const RationalMapFamily& f, const ProjPointK& a, int n, int m,
                               const RootOptions& options, OrbitLimits limits) {
  PreperiodicEquation eq = preperiodic_equation(f, a, n, m, limits);
  if (eq.identically_zero) {
    throw DomainError("E is identically zero: the marked point satisfies this relation for all t");
  }
  RootSet rs;
  rs.n = n;
  rs.m = m;
  rs.degree = eq.E.degree();
  if (rs.degree < 1) return rs;

  Orbit orb = orbit(f, a, n, limits);
  CollisionEvaluator eval(f, orb, n, m);
  std::vector<std::pair<cd, int>> approx;
  Poly bridge_poly = eq.E;
  rs.squarefree_certified = certify_squarefree(eq.E);
  if (rs.squarefree_certified) {
    auto [center, radius] = starting_circle(eq.E);
    AberthOptions opt;
    opt.max_iterations = options.max_iterations;
    opt.exec = options.exec;
    const bool parallel = options.exec.parallel;
    const int workers = std::max(1, options.exec.workers);
    AberthResult ar = aberth(
        initial_guesses(center, radius, static_cast<std::size_t>(rs.degree)),
        [&eval, parallel, workers](std::span<const cd> z, std::span<cd> ratio) {
          const auto count = static_cast<std::int64_t>(z.size());
#pragma omp parallel for schedule(static) num_threads(workers) if (parallel && count >= 64)
          for (std::int64_t i = 0; i < count; ++i) {
            ratio[static_cast<std::size_t>(i)] = eval.newton_ratio(z[static_cast<std::size_t>(i)]);
          }
        },
        opt);
    rs.iterations = ar.iterations;
    if (!ar.converged) {
      RootList best;
      for (cd z : ar.roots) best.roots.push_back({z, 1});
      best.within_tolerance = false;
      best.iterations = ar.iterations;
      throw RootFindingError("root finder did not converge for E(" + std::to_string(n) + "," +
                                 std::to_string(m) + ")",
                             best);
    }
    for (cd z : ar.roots) approx.emplace_back(z, 1);
  } else {
    RootList rl = complex_roots(eq.E, 1e-12, options.exec);
    rs.iterations = rl.iterations;
    for (const Root& r : rl.roots) approx.emplace_back(r.value, r.multiplicity);
    Poly g = poly_gcd(eq.E, eq.E.derivative());
    bridge_poly = exact_div(eq.E, g).primitive();
  }

  const bool bridge = rs.degree <= options.bridge_max_degree;
  for (const auto& [z, mult] : approx) {
    ParameterRoot r;
    r.value = z;
    r.multiplicity = mult;
    r.collision = eval.collision(z);
    r.bridge_radius = std::numeric_limits<double>::quiet_NaN();
    if (r.collision <= options.collision_tol) {
      if (bridge) {
        r.bridge_radius = exact_root_radius(bridge_poly, z);
        ++rs.bridged;
      }
      rs.verified.push_back(r);
    } else {
      rs.unverified.push_back(r);
    }
  }
  return rs;
}

DensityReport density_experiment(const RationalMapFamily& f, const ProjPointK& a,
                                 const ActivityMap& activity,
                                 const std::vector<std::pair<int, int>>& pairs,
                                 const RootOptions& options, OrbitLimits limits) {
  DensityReport rep;
  std::vector<cd> active;
  const ParamGrid& g = activity.grid;
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (activity.values[static_cast<std::size_t>(r) * static_cast<std::size_t>(g.width) + static_cast<std::size_t>(c)] > 0) {
        active.push_back(g.pixel(c, r));
      }
    }
  }
  rep.active_pixels = active.size();
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& [n, m] : pairs) {
    DensityEntry e;
    e.n = n;
    e.m = m;
    PreperiodicEquation eq = preperiodic_equation(f, a, n, m, limits);
    if (eq.identically_zero) {
      e.identically_preperiodic = true;
      e.median_distance = std::numeric_limits<double>::quiet_NaN();
      rep.entries.push_back(e);
      continue;
    }
    RootSet rs = preperiodic_parameters(f, a, n, m, options, limits);
    std::vector<cd> roots;
    for (const auto& r : rs.verified) roots.push_back(r.value);
    e.roots = roots.size();
    e.roots_in_grid = static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(), [&g](cd t) { return g.contains(t); }));
    e.fraction_in_grid = roots.empty() ? 0.0 : static_cast<double>(e.roots_in_grid) / static_cast<double>(roots.size());
    std::vector<double> dist(active.size());
    nearest_distances(active, roots, dist, options.exec);
    e.median_distance = median_of(std::move(dist));
    if (!(e.median_distance <= previous)) rep.nonincreasing = false;
    previous = e.median_distance;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace heightlab
