#include "heightlab/dynamics.hpp"

#include <algorithm>
#include <cstdlib>

#include "heightlab/errors.hpp"

namespace heightlab {

int Orbit::degree_at(std::size_t i) const {
  if (i < points.size()) return points[i].degree();
  if (!cycle) throw DomainError("orbit index beyond computed range");
  const auto m = static_cast<std::size_t>(cycle->preperiod);
  const auto p = static_cast<std::size_t>(cycle->period);
  return points[m + (i - m) % p].degree();
}

OrbitWalker::OrbitWalker(const RationalMapFamily& f, const ProjPointK& a, OrbitLimits limits)
    : f_(f), limits_(limits) {
  orbit_.points.push_back(a);
  seen_.emplace(a, 0);
}

bool OrbitWalker::step() {
  if (orbit_.cycle) return false;
  const ProjPointK& g = orbit_.points.back();
  const int n = this->n();
  const int d = f_.degree();
  const std::size_t bound_degree =
      static_cast<std::size_t>(d) * static_cast<std::size_t>(std::max(g.degree(), 0)) +
      static_cast<std::size_t>(f_.coeff_degree());
  if (2 * (bound_degree + 1) > limits_.max_coefficients) {
    throw ResourceError("degree budget exceeded computing g_" + std::to_string(n + 1) +
                        " (degree up to " + std::to_string(bound_degree) + ")");
  }
  const std::size_t bits = g.a1().bit_size() + g.a2().bit_size();
  if (bits * static_cast<std::size_t>(d) > limits_.max_bits) {
    throw ResourceError("coefficient size budget exceeded computing g_" + std::to_string(n + 1));
  }

  ApplyResult r = apply(f_, g);
  const int deviation = r.image.degree() - d * g.degree();
  if (std::abs(deviation) > f_.d_total()) {
    throw InternalError("bound violated: per-step degree change exceeds D_total",
                        "n=" + std::to_string(n) + " deg g_n=" + std::to_string(g.degree()) +
                            " deg g_n+1=" + std::to_string(r.image.degree()) +
                            " D_total=" + std::to_string(f_.d_total()) +
                            " point=" + g.to_string());
  }
  orbit_.max_deviation = std::max(orbit_.max_deviation, std::abs(deviation));
  orbit_.drops.push_back(r.cancelled.degree());
  orbit_.cancelled.push_back(std::move(r.cancelled));
  auto [it, inserted] = seen_.emplace(r.image, n + 1);
  orbit_.points.push_back(std::move(r.image));
  if (!inserted) {
    orbit_.cycle = Cycle{it->second, n + 1 - it->second};
    return false;
  }
  return true;
}

Orbit orbit(const RationalMapFamily& f, const ProjPointK& a, int nmax, OrbitLimits limits) {
  if (nmax < 1) throw DomainError("nmax must be at least 1");
  OrbitWalker w(f, a, limits);
  while (w.n() < nmax && w.step()) {
  }
  return w.take();
}

std::vector<int> degree_sequence(const RationalMapFamily& f, const ProjPointK& a, int n,
                                 OrbitLimits limits) {
  if (n < 0) throw DomainError("negative iterate count");
  std::vector<int> out;
  if (n == 0) return {a.degree()};
  Orbit orb = orbit(f, a, n, limits);
  for (int i = 0; i <= n; ++i) out.push_back(orb.degree_at(static_cast<std::size_t>(i)));
  return out;
}

void EnclosureAccumulator::add(int degree) {
  const Rational center(Integer(degree), power_);
  const Rational radius(Integer(d_total_), power_ * (d_ - 1));
  Rational lo = center - radius;
  Rational hi = center + radius;
  if (lo < 0) lo = 0;
  if (count_ > 0) {
    lo = std::max(lo, lo_);
    hi = std::min(hi, hi_);
  }
  if (lo > hi) {
    throw InternalError("bound violated: empty height enclosure",
                        "i=" + std::to_string(count_) + " deg=" + std::to_string(degree) +
                            " previous=[" + lo_.get_str() + ", " + hi_.get_str() + "]");
  }
  lo_ = lo;
  hi_ = hi;
  power_ *= d_;
  ++count_;
}

HeightEnclosure canonical_height(const RationalMapFamily& f, const ProjPointK& a, int n,
                                 OrbitLimits limits) {
  if (n < 1) throw DomainError("canonical_height needs n >= 1");
  Orbit orb = orbit(f, a, n, limits);
  HeightEnclosure h;
  h.max_deviation = orb.max_deviation;
  for (const auto& p : orb.points) h.degree_sequence.push_back(p.degree());
  if (orb.cycle) {
    h.preperiodic = true;
    h.n_used = static_cast<int>(orb.points.size()) - 1;
    return h;
  }
  EnclosureAccumulator acc(f.degree(), f.d_total());
  for (int deg : h.degree_sequence) acc.add(deg);
  h.lo = acc.lo();
  h.hi = acc.hi();
  h.n_used = n;
  return h;
}

Classification classify(const RationalMapFamily& f, const ProjPointK& a, int nmax,
                        OrbitLimits limits) {
  if (nmax < 1) throw DomainError("nmax must be at least 1");
  OrbitWalker w(f, a, limits);
  EnclosureAccumulator acc(f.degree(), f.d_total());
  acc.add(a.degree());
  auto snapshot = [&](const Orbit& orb) {
    HeightEnclosure h;
    h.lo = acc.lo();
    h.hi = acc.hi();
    h.n_used = acc.count() - 1;
    h.max_deviation = orb.max_deviation;
    for (int i = 0; i < acc.count(); ++i) h.degree_sequence.push_back(orb.points[static_cast<std::size_t>(i)].degree());
    return h;
  };
  while (w.n() < nmax) {
    try {
      if (!w.step()) return Preperiodic{*w.orbit().cycle};
    } catch (const ResourceError& e) {
      return Undetermined{snapshot(w.orbit()), e.what()};
    }
    acc.add(w.orbit().points.back().degree());
    if (acc.lo() > 0) return PositiveHeight{snapshot(w.orbit())};
  }
  return Undetermined{snapshot(w.orbit()), "nmax"};
}

std::optional<IsotrivialityCertificate> constant_tail_certificate(const Orbit& orb, int d) {
  const std::size_t need = 2 * static_cast<std::size_t>(d) + 1;
  std::size_t run_start = 0;
  for (std::size_t i = 0; i < orb.points.size(); ++i) {
    const ProjPointK& p = orb.points[i];
    if (!p.is_constant()) {
      run_start = i + 1;
      continue;
    }
    for (std::size_t k = run_start; k < i; ++k) {
      if (orb.points[k] == p) run_start = k + 1;
    }
    if (i + 1 - run_start == need) {
      IsotrivialityCertificate cert;
      cert.start = static_cast<int>(run_start);
      cert.points.assign(orb.points.begin() + static_cast<std::ptrdiff_t>(run_start),
                         orb.points.begin() + static_cast<std::ptrdiff_t>(i + 1));
      return cert;
    }
  }
  return std::nullopt;
}

}  // namespace heightlab
