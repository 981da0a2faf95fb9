#pragma once

// Data-parallel floating-point kernels. Every kernel has a serial
// reference and an OpenMP variant; both produce bit-identical results
// because work items are independent and written to fixed slots.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "heightlab/numeric_family.hpp"

namespace heightlab {

struct ExecPolicy {
  bool parallel = true;
  int workers = 1;
};

enum class ActivityMetric { Affine, Spherical };

/// Escape-rate inputs shared by all cells: exact orders a_n / d^n as
/// doubles for n = 0..N.
struct EscapeJob {
  const NumericFamily* family = nullptr;
  const NumericPoint* lift = nullptr;
  std::vector<double> order_ratio;
  int iterations = 0;
};

/// out[c * (N+1) + n] = G_n(ts[c]); cells that overflow or hit zero are
/// NaN.
void escape_cells_serial(const EscapeJob& job, std::span<const cd> ts, std::span<double> out);
void escape_cells_parallel(const EscapeJob& job, std::span<const cd> ts, std::span<double> out,
                           int workers);
void escape_cells(const EscapeJob& job, std::span<const cd> ts, std::span<double> out,
                  const ExecPolicy& exec);

struct ActivityJob {
  const NumericFamily* family = nullptr;
  const NumericPoint* point = nullptr;
  int cap = 256;
  double threshold = 1e12;
  ActivityMetric metric = ActivityMetric::Affine;
};

/// First iterate i in 1..cap at which the parameter derivative of the
/// orbit exceeds the threshold, else 0. nan_flag[c] = 1 when the orbit
/// left the representable range before a verdict.
void activity_cells_serial(const ActivityJob& job, std::span<const cd> ts,
                           std::span<std::int32_t> out, std::span<std::uint8_t> nan_flag);
void activity_cells_parallel(const ActivityJob& job, std::span<const cd> ts,
                             std::span<std::int32_t> out, std::span<std::uint8_t> nan_flag,
                             int workers);
void activity_cells(const ActivityJob& job, std::span<const cd> ts, std::span<std::int32_t> out,
                    std::span<std::uint8_t> nan_flag, const ExecPolicy& exec);

/// Aberth corrections w_i = r_i / (1 - r_i * sum_{j != i} 1/(z_i - z_j))
/// for the active indices, where r_i is the Newton ratio at z_i.
void aberth_corrections_serial(std::span<const cd> z, std::span<const std::size_t> active,
                               std::span<const cd> ratio, std::span<cd> out);
void aberth_corrections_parallel(std::span<const cd> z, std::span<const std::size_t> active,
                                 std::span<const cd> ratio, std::span<cd> out, int workers);
void aberth_corrections(std::span<const cd> z, std::span<const std::size_t> active,
                        std::span<const cd> ratio, std::span<cd> out, const ExecPolicy& exec);

/// out[i] = min_j |points[i] - roots[j]| (infinity when roots is empty).
void nearest_distances_serial(std::span<const cd> points, std::span<const cd> roots,
                              std::span<double> out);
void nearest_distances_parallel(std::span<const cd> points, std::span<const cd> roots,
                                std::span<double> out, int workers);
void nearest_distances(std::span<const cd> points, std::span<const cd> roots,
                       std::span<double> out, const ExecPolicy& exec);

}  // namespace heightlab
