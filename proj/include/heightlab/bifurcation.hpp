#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "heightlab/dynamics.hpp"
#include "heightlab/family.hpp"
#include "heightlab/kernels.hpp"
#include "heightlab/roots.hpp"

namespace heightlab {

/// Rectangle [x0, x1] x [y0, y1] sampled at pixel centers, row 0 at the top.
struct ParamGrid {
  double x0 = -2.5, y0 = -1.5, x1 = 1.0, y1 = 1.5;
  int width = 512, height = 512;

  /// Throws DomainError for an empty rectangle or resolution.
  void validate() const;
  cd pixel(int col, int row) const;
  std::vector<cd> points() const;
  bool contains(cd t) const { return t.real() >= x0 && t.real() <= x1 && t.imag() >= y0 && t.imag() <= y1; }
};

struct ActivityMap {
  ParamGrid grid;
  int cap = 256;
  double threshold = 1e12;
  ActivityMetric metric = ActivityMetric::Affine;
  /// Row-major first-activity iterate, 0 = inactive at cap.
  std::vector<std::int32_t> values;
  std::vector<std::uint8_t> nan_flags;

  std::size_t active_count() const;
  std::size_t nan_count() const;
};

ActivityMap activity_map(const RationalMapFamily& f, const ProjPointK& a, const ParamGrid& grid,
                         int cap = 256, double threshold = 1e12,
                         ActivityMetric metric = ActivityMetric::Affine, const ExecPolicy& exec = {});

struct PreperiodicEquation {
  int n = 0;
  int m = 0;
  /// a1^(n) a2^(m) - a1^(m) a2^(n), primitive over Z.
  Poly E;
  bool identically_zero = false;
  std::string provenance;
};

/// Builds E from the exact normalized orbit points g_n and g_m.
PreperiodicEquation preperiodic_equation(const RationalMapFamily& f, const ProjPointK& a, int n,
                                         int m, OrbitLimits limits = {});

struct ParameterRoot {
  cd value;
  int multiplicity = 1;
  /// Chordal distance between the numeric f^n(a) and f^m(a) at the root.
  double collision = 0.0;
  /// A root of E lies within this distance of a Gaussian-rational point
  /// next to value (exact evaluation); NaN when not computed.
  double bridge_radius = 0.0;
};

struct RootSet {
  int n = 0;
  int m = 0;
  int degree = 0;
  std::vector<ParameterRoot> verified;
  std::vector<ParameterRoot> unverified;
  bool squarefree_certified = false;
  int iterations = 0;
  std::size_t bridged = 0;

  int multiplicity_sum() const;
};

struct RootOptions {
  double collision_tol = 1e-6;
  /// Run the exact bridge when deg E is at most this.
  int bridge_max_degree = 256;
  int max_iterations = 3000;
  ExecPolicy exec{false, 1};
};

/// Roots of E, each verified by forward iteration at the root.
RootSet preperiodic_parameters(const RationalMapFamily& f, const ProjPointK& a, int n, int m,
                               const RootOptions& options = {}, OrbitLimits limits = {});

/// Radius r such that a root of p lies within r of z, from an exact
/// evaluation at a Gaussian-rational neighbour of z. Infinity when p'
/// vanishes there.
double exact_root_radius(const Poly& p, cd z);

struct DensityEntry {
  int n = 0;
  int m = 0;
  bool identically_preperiodic = false;
  std::size_t roots = 0;
  std::size_t roots_in_grid = 0;
  double fraction_in_grid = 0.0;
  double median_distance = 0.0;
};

struct DensityReport {
  std::size_t active_pixels = 0;
  std::vector<DensityEntry> entries;
  /// Median distances are nonincreasing along the pair list (trivial
  /// entries skipped).
  bool nonincreasing = true;
};

DensityReport density_experiment(const RationalMapFamily& f, const ProjPointK& a,
                                 const ActivityMap& activity,
                                 const std::vector<std::pair<int, int>>& pairs,
                                 const RootOptions& options = {}, OrbitLimits limits = {});

}  // namespace heightlab
