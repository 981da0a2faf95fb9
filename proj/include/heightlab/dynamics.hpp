#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "heightlab/family.hpp"
#include "heightlab/proj_point.hpp"

namespace heightlab {

struct OrbitLimits {
  /// Largest coefficient count (both coordinates) of a single orbit point.
  std::size_t max_coefficients = 100000;
  /// Largest bit size of a single orbit point.
  std::size_t max_bits = std::size_t{1} << 30;
};

struct Cycle {
  int preperiod = 0;
  int period = 0;
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

struct Orbit {
  std::vector<ProjPointK> points;
  /// drops[i] = degree of the factor cancelled computing points[i+1].
  std::vector<int> drops;
  std::vector<Poly> cancelled;
  /// When set, points[preperiod] == points.back() and all earlier points
  /// are distinct.
  std::optional<Cycle> cycle;
  /// max over steps of |deg g_{i+1} - d deg g_i|.
  int max_deviation = 0;

  /// deg g_i, continuing periodically past a detected cycle.
  int degree_at(std::size_t i) const;
};

/// Step-by-step orbit construction with exact repeat detection, budget
/// enforcement and the per-step degree tripwire.
class OrbitWalker {
 public:
  OrbitWalker(const RationalMapFamily& f, const ProjPointK& a, OrbitLimits limits = {});

  /// Computes the next point. Returns false once a cycle has closed.
  /// Throws ResourceError when the next point would exceed the budget and
  /// InternalError when the degree tripwire fires.
  bool step();

  const Orbit& orbit() const { return orbit_; }
  Orbit take() { return std::move(orbit_); }
  /// Index of the last computed point.
  int n() const { return static_cast<int>(orbit_.points.size()) - 1; }

 private:
  const RationalMapFamily& f_;
  OrbitLimits limits_;
  Orbit orbit_;
  std::unordered_map<ProjPointK, int, ProjPointHash> seen_;
};

/// Iterates until an exact repeat or nmax steps.
Orbit orbit(const RationalMapFamily& f, const ProjPointK& a, int nmax, OrbitLimits limits = {});

/// deg g_i for i = 0..n.
std::vector<int> degree_sequence(const RationalMapFamily& f, const ProjPointK& a, int n,
                                 OrbitLimits limits = {});

struct HeightEnclosure {
  Rational lo = 0;
  Rational hi = 0;
  int n_used = 0;
  std::vector<int> degree_sequence;
  /// Largest observed |deg g_{i+1} - d deg g_i|, for comparison with D_total.
  int max_deviation = 0;
  bool preperiodic = false;
};

/// Intersection of [deg g_i/d^i -+ D_total/(d^i (d-1))] over i <= n, and
/// [0, 0] once a cycle is found. An empty intersection is an InternalError.
HeightEnclosure canonical_height(const RationalMapFamily& f, const ProjPointK& a, int n,
                                 OrbitLimits limits = {});

struct Preperiodic {
  Cycle cycle;
};
struct PositiveHeight {
  HeightEnclosure enclosure;
};
struct Undetermined {
  HeightEnclosure enclosure;
  /// Which cap stopped the search: "nmax" or the budget message.
  std::string cap;
};
using Classification = std::variant<Preperiodic, PositiveHeight, Undetermined>;

/// Stops at the first exact cycle or the first step with lo > 0.
Classification classify(const RationalMapFamily& f, const ProjPointK& a, int nmax = 64,
                        OrbitLimits limits = {});

struct IsotrivialityCertificate {
  int start = 0;
  std::vector<ProjPointK> points;
};

/// 2d+1 consecutive, pairwise distinct constant orbit points, if present.
std::optional<IsotrivialityCertificate> constant_tail_certificate(const Orbit& orb, int d);

/// Incremental enclosure: folds in one more degree.
class EnclosureAccumulator {
 public:
  EnclosureAccumulator(int d, int d_total) : d_(d), d_total_(d_total) {}
  /// Adds deg g_i for the next i. Throws InternalError on an empty result.
  void add(int degree);
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  int count() const { return count_; }

 private:
  int d_, d_total_;
  Integer power_ = 1;
  Rational lo_ = 0, hi_ = 0;
  int count_ = 0;
};

}  // namespace heightlab
