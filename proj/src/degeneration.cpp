#include "heightlab/degeneration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "heightlab/errors.hpp"
#include "heightlab/numeric_family.hpp"

namespace heightlab {

namespace {

using zpoly::Coeffs;

struct IntForms {
  int d = 0;
  std::vector<Coeffs> p, q;
};

IntForms integer_forms(const RationalMapFamily& f) {
  IntForms out;
  out.d = f.degree();
  for (const Poly& c : f.P().coeffs()) out.p.push_back(c.numerators());
  for (const Poly& c : f.Q().coeffs()) out.q.push_back(c.numerators());
  // Families are stored with integral coefficients.
  for (const Poly& c : f.P().coeffs()) {
    if (c.denominator() != 1) throw InternalError("family coefficients are not integral");
  }
  for (const Poly& c : f.Q().coeffs()) {
    if (c.denominator() != 1) throw InternalError("family coefficients are not integral");
  }
  return out;
}

Coeffs product(const Coeffs& a, const Coeffs& b, std::size_t len) {
  if (a.empty() || b.empty()) return {};
  Coeffs r = len == 0 ? zpoly::mul(a, b) : zpoly::mul_truncated(a, b, len);
  zpoly::trim(r);
  return r;
}

void add_into(Coeffs& acc, const Coeffs& term) {
  if (acc.size() < term.size()) acc.resize(term.size());
  for (std::size_t i = 0; i < term.size(); ++i) acc[i] += term[i];
}

/// (P(x, y), Q(x, y)), truncated modulo t^len when len > 0.
std::pair<Coeffs, Coeffs> apply_forms(const IntForms& f, const Coeffs& x, const Coeffs& y,
                                      std::size_t len) {
  const int d = f.d;
  std::vector<Coeffs> px(static_cast<std::size_t>(d) + 1), py(static_cast<std::size_t>(d) + 1);
  px[0] = py[0] = Coeffs{1};
  for (std::size_t k = 1; k <= static_cast<std::size_t>(d); ++k) {
    px[k] = product(px[k - 1], x, len);
    py[k] = product(py[k - 1], y, len);
  }
  Coeffs rp, rq;
  for (int j = 0; j <= d; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    if (f.p[ju].empty() && f.q[ju].empty()) continue;
    Coeffs mono = product(px[static_cast<std::size_t>(d - j)], py[ju], len);
    if (mono.empty()) continue;
    if (!f.p[ju].empty()) add_into(rp, product(f.p[ju], mono, len));
    if (!f.q[ju].empty()) add_into(rq, product(f.q[ju], mono, len));
  }
  zpoly::trim(rp);
  zpoly::trim(rq);
  return {std::move(rp), std::move(rq)};
}

std::size_t lowest_term(const Coeffs& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) return i;
  }
  return std::numeric_limits<std::size_t>::max();
}

void strip(Coeffs& a, std::size_t v) {
  if (a.empty()) return;
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(std::min(v, a.size())));
  zpoly::trim(a);
}

void remove_content(Coeffs& x, Coeffs& y) {
  mpz_class g = zpoly::content(x);
  mpz_class gy = zpoly::content(y);
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gy.get_mpz_t());
  if (g <= 1) return;
  for (auto& c : x) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  for (auto& c : y) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

std::pair<Coeffs, Coeffs> integer_lift(const MarkedLift& lift) {
  Integer lcm;
  mpz_lcm(lcm.get_mpz_t(), lift.a1().denominator().get_mpz_t(), lift.a2().denominator().get_mpz_t());
  auto scaled = [&lcm](const Poly& p) {
    Coeffs c = p.numerators();
    Integer s = lcm / p.denominator();
    for (auto& x : c) x *= s;
    return c;
  };
  Coeffs x = scaled(lift.a1());
  Coeffs y = scaled(lift.a2());
  remove_content(x, y);
  return {std::move(x), std::move(y)};
}

struct OrderState {
  Coeffs x, y;
  std::size_t len = 0;  // 0 = exact
};

/// One step: apply F, strip the t-power, return the increment.
int order_step(const IntForms& f, OrderState& s, int q, int n, std::size_t max_bits) {
  auto [x, y] = apply_forms(f, s.x, s.y, s.len);
  const std::size_t v = std::min(lowest_term(x), lowest_term(y));
  if (v == std::numeric_limits<std::size_t>::max()) {
    throw InternalError("bound violated: order increment exceeds q",
                        "step " + std::to_string(n + 1) + ": image vanishes to the working precision " +
                            std::to_string(s.len) + ", q=" + std::to_string(q));
  }
  if (v > static_cast<std::size_t>(q)) {
    throw InternalError("bound violated: order increment exceeds q",
                        "k_" + std::to_string(n + 1) + "=" + std::to_string(v) + " q=" + std::to_string(q));
  }
  strip(x, v);
  strip(y, v);
  remove_content(x, y);
  if (s.len > 0) s.len -= v;
  if (zpoly::max_bits(x) * std::max(x.size(), y.size()) > max_bits) {
    throw ResourceError("order sequence coefficient budget exceeded at n=" + std::to_string(n + 1));
  }
  s.x = std::move(x);
  s.y = std::move(y);
  return static_cast<int>(v);
}

std::uint64_t saturating_power(int d, int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(d)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= static_cast<std::uint64_t>(d);
  }
  return r;
}

void truncate(Coeffs& a, std::size_t len) {
  if (a.size() > len) a.resize(len);
  zpoly::trim(a);
}

}  // namespace

MarkedLift::MarkedLift(Poly a1, Poly a2) : a1_(std::move(a1)), a2_(std::move(a2)) {
  if (a1_(0) == 0 && a2_(0) == 0) throw DomainError("marked lift vanishes at t = 0");
}

OrderSequence order_sequence(const RationalMapFamily& f, const MarkedLift& lift, int n,
                             const OrderOptions& options) {
  if (n < 0) throw DomainError("negative iterate count");
  OrderSequence seq;
  seq.d = f.degree();
  seq.q = static_cast<int>(f.resultant().trailing_zeros());
  if (seq.q == 0 && !options.lenient) {
    throw DomainError("family is not degenerate at t = 0 (ord res = 0); use lenient mode");
  }
  OrderMode mode = options.mode;
  if (mode == OrderMode::Auto) {
    mode = saturating_power(seq.d, n) <= options.exact_limit ? OrderMode::Exact : OrderMode::Series;
  }
  seq.mode_used = mode;
  const IntForms forms = integer_forms(f);
  OrderState state;
  std::tie(state.x, state.y) = integer_lift(lift);
  if (mode == OrderMode::Series) {
    state.len = static_cast<std::size_t>(n) * static_cast<std::size_t>(seq.q) + 1;
    seq.precision = state.len;
    truncate(state.x, state.len);
    truncate(state.y, state.len);
  }
  if (options.restart && (*options.restart < 0 || *options.restart > n)) {
    throw DomainError("restart index outside 0..N");
  }

  seq.a.push_back(0);
  std::optional<OrderState> restart_state;
  for (int i = 0; i < n; ++i) {
    if (options.restart && *options.restart == i) restart_state = state;
    int k = order_step(forms, state, seq.q, i, options.max_bits);
    seq.k.push_back(k);
    seq.a.push_back(seq.a.back() * seq.d + k);
  }
  if (options.restart) {
    seq.restart_index = *options.restart;
    OrderState s = restart_state ? *restart_state : state;
    for (int i = *options.restart; i < n; ++i) {
      int l = order_step(forms, s, seq.q, i, options.max_bits);
      seq.restart_increments.push_back(l);
    }
  }

  // a_n / d^n nondecreasing with increments k_n / d^n bounded by q / d^n.
  Integer power = 1;
  for (std::size_t i = 0; i + 1 < seq.a.size(); ++i) {
    power *= seq.d;
    Rational step(seq.a[i + 1] - seq.a[i] * seq.d, power);
    step.canonicalize();
    Rational cap(seq.q, power);
    cap.canonicalize();
    if (step < 0 || step > cap) {
      throw InternalError("bound violated: a_n/d^n increment out of range", "n=" + std::to_string(i + 1));
    }
  }
  return seq;
}

MarkedLift stripped_lift(const RationalMapFamily& f, const MarkedLift& lift, int n) {
  const IntForms forms = integer_forms(f);
  OrderState state;
  std::tie(state.x, state.y) = integer_lift(lift);
  const int q = static_cast<int>(f.resultant().trailing_zeros());
  for (int i = 0; i < n; ++i) order_step(forms, state, q, i, std::numeric_limits<std::size_t>::max());
  return MarkedLift(Poly::from_integers(state.x), Poly::from_integers(state.y));
}

std::vector<double> EscapeGrid::sup_differences() const {
  std::vector<double> out(static_cast<std::size_t>(iterations), 0.0);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int n = 0; n < iterations; ++n) {
      double diff = std::abs(value(c, n + 1) - value(c, n));
      if (std::isfinite(diff)) out[static_cast<std::size_t>(n)] = std::max(out[static_cast<std::size_t>(n)], diff);
    }
  }
  return out;
}

std::vector<cd> annulus_cells(const AnnulusSpec& spec) {
  if (!(spec.r_in > 0.0) || !(spec.r_out > spec.r_in) || spec.angular < 1 || spec.radial < 1) {
    throw DomainError("annulus needs 0 < r_in < r_out and positive resolution");
  }
  std::vector<cd> cells;
  cells.reserve(static_cast<std::size_t>(spec.angular) * static_cast<std::size_t>(spec.radial));
  for (int i = 0; i < spec.radial; ++i) {
    double r = spec.r_in + (spec.r_out - spec.r_in) * (i + 0.5) / spec.radial;
    for (int j = 0; j < spec.angular; ++j) {
      double theta = 2.0 * std::numbers::pi * (j + 0.5) / spec.angular;
      cells.push_back(std::polar(r, theta));
    }
  }
  return cells;
}

std::vector<double> order_ratios(const OrderSequence& seq) {
  std::vector<double> out;
  Integer power = 1;
  for (const Integer& a : seq.a) {
    Rational r(a, power);
    r.canonicalize();
    out.push_back(r.get_d());
    power *= seq.d;
  }
  return out;
}

EscapeGrid escape_values(const RationalMapFamily& f, const MarkedLift& lift,
                         const OrderSequence& seq, std::vector<cd> cells, const ExecPolicy& exec) {
  NumericFamily nf(f);
  NumericPoint np(lift.a1(), lift.a2());
  EscapeJob job;
  job.family = &nf;
  job.lift = &np;
  job.order_ratio = order_ratios(seq);
  job.iterations = static_cast<int>(seq.a.size()) - 1;
  EscapeGrid grid;
  grid.iterations = job.iterations;
  grid.cells = std::move(cells);
  for (cd t : grid.cells) {
    if (t == 0.0) throw DomainError("escape grid contains t = 0");
  }
  grid.values.assign(grid.cells.size() * static_cast<std::size_t>(job.iterations + 1), 0.0);
  escape_cells(job, grid.cells, grid.values, exec);
  for (std::size_t c = 0; c < grid.cells.size(); ++c) {
    if (std::isnan(grid.value(c, grid.iterations))) ++grid.nan_cells;
  }
  return grid;
}

EscapeGrid escape_grid(const RationalMapFamily& f, const MarkedLift& lift, const AnnulusSpec& spec,
                       int n, const ExecPolicy& exec) {
  OrderOptions opt;
  opt.lenient = true;
  OrderSequence seq = order_sequence(f, lift, n, opt);
  EscapeGrid grid = escape_values(f, lift, seq, annulus_cells(spec), exec);
  grid.spec = spec;
  return grid;
}

SlowGrowthReport slow_growth_diagnostic(const RationalMapFamily& f, const MarkedLift& lift,
                                        const std::vector<double>& radii, int n,
                                        int samples_per_circle, const ExecPolicy& exec) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0)) throw DomainError("radii must lie in (0, 1)");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw DomainError("radii must be decreasing");
  }
  OrderOptions opt;
  opt.lenient = true;
  OrderSequence seq = order_sequence(f, lift, n, opt);
  SlowGrowthReport rep;
  rep.radii = radii;
  for (double r : radii) {
    std::vector<cd> cells;
    for (int j = 0; j < samples_per_circle; ++j) {
      cells.push_back(std::polar(r, 2.0 * std::numbers::pi * (j + 0.5) / samples_per_circle));
    }
    EscapeGrid g = escape_values(f, lift, seq, std::move(cells), exec);
    double m = 0.0;
    for (std::size_t c = 0; c < g.cells.size(); ++c) {
      double v = g.value(c, n);
      if (std::isfinite(v)) m = std::max(m, std::abs(v));
    }
    rep.m.push_back(m / std::abs(std::log(r)));
  }
  for (std::size_t i = 1; i < rep.m.size(); ++i) {
    if (rep.m[i] > (1.0 + rep.slack) * rep.m[i - 1] + 1e-12) rep.nonincreasing = false;
  }
  return rep;
}

std::vector<LemmaSample> random_lemma_samples(std::size_t count, double t_min, double t_max,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_r(std::log(t_min), std::log(t_max));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> gauss;
  std::vector<LemmaSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    LemmaSample s;
    s.t = std::polar(std::exp(log_r(rng)), angle(rng));
    s.z1 = cd(gauss(rng), gauss(rng));
    s.z2 = cd(gauss(rng), gauss(rng));
    double m = max_norm(s.z1, s.z2);
    s.z1 /= m;
    s.z2 /= m;
    out.push_back(s);
  }
  return out;
}

LemmaBoundReport lemma_bound_check(const RationalMapFamily& f, std::span<const LemmaSample> samples) {
  NumericFamily nf(f);
  LemmaBoundReport rep;
  rep.q = static_cast<int>(f.resultant().trailing_zeros());
  rep.samples = samples.size();
  rep.alpha_hat = std::numeric_limits<double>::infinity();
  NumericFamily::Specialized s;
  for (const LemmaSample& x : samples) {
    nf.specialize(x.t, s);
    cd w1, w2;
    NumericFamily::apply(s, x.z1, x.z2, w1, w2);
    double ratio = max_norm(w1, w2) / std::pow(max_norm(x.z1, x.z2), f.degree());
    double scaled = ratio / std::pow(std::abs(x.t), rep.q);
    if (!std::isfinite(ratio) || !std::isfinite(scaled)) {
      ++rep.violations;
      continue;
    }
    rep.beta_hat = std::max(rep.beta_hat, ratio);
    rep.alpha_hat = std::min(rep.alpha_hat, scaled);
  }
  return rep;
}

double homogeneous_escape_rate(const RationalMapFamily& f, cd t, cd z1, cd z2, int n) {
  NumericFamily nf(f);
  double scale = 0.0;
  const auto res = f.resultant().to_doubles();
  for (std::size_t i = 0; i < res.size(); ++i) scale += std::abs(res[i]) * std::pow(std::abs(t), i);
  if (std::abs(nf.resultant(t)) <= 1e-12 * scale) {
    throw DomainError("parameter is degenerate: res(t) vanishes numerically");
  }
  NumericFamily::Specialized s;
  nf.specialize(t, s);
  double m = max_norm(z1, z2);
  if (!(m > 0.0)) throw DomainError("escape rate of the zero vector");
  double log_norm = std::log(m);
  z1 /= m;
  z2 /= m;
  const double d = f.degree();
  double power = 1.0;
  for (int i = 0; i < n; ++i) {
    cd w1, w2;
    NumericFamily::apply(s, z1, z2, w1, w2);
    m = max_norm(w1, w2);
    log_norm = d * log_norm + std::log(m);
    z1 = w1 / m;
    z2 = w2 / m;
    power *= d;
  }
  return log_norm / power;
}

}  // namespace heightlab
