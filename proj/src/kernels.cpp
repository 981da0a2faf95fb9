#include "heightlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <omp.h>

namespace heightlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_modulus(cd a, cd b) { return std::max(std::abs(a), std::abs(b)); }

void escape_one(const EscapeJob& job, cd t, double* out) {
  const int n_max = job.iterations;
  const double d = job.family->degree();
  NumericFamily::Specialized s;
  job.family->specialize(t, s);
  cd z1, z2;
  job.lift->eval(t, z1, z2);
  const double log_t = std::log(std::abs(t));
  double log_norm = 0.0;
  double scale = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    double m = max_modulus(z1, z2);
    if (!(m > 0.0) || !std::isfinite(m)) {
      std::fill(out + n, out + n_max + 1, kNaN);
      return;
    }
    log_norm += std::log(m);
    z1 /= m;
    z2 /= m;
    out[n] = log_norm / scale - job.order_ratio[static_cast<std::size_t>(n)] * log_t;
    if (n == n_max) break;
    cd w1, w2;
    NumericFamily::apply(s, z1, z2, w1, w2);
    z1 = w1;
    z2 = w2;
    log_norm *= d;
    scale *= d;
  }
}

double activity_measure(ActivityMetric metric, cd z1, cd z2, cd dz1, cd dz2) {
  double cross = std::abs(dz1 * z2 - z1 * dz2);
  if (metric == ActivityMetric::Affine) return cross / std::norm(z2);
  return cross / (std::norm(z1) + std::norm(z2));
}

std::int32_t activity_one(const ActivityJob& job, cd t, std::uint8_t& nan_flag) {
  NumericFamily::Specialized s;
  job.family->specialize(t, s);
  cd z1, z2, dz1, dz2;
  job.point->eval_with_derivative(t, z1, z2, dz1, dz2);
  for (int i = 1; i <= job.cap; ++i) {
    double m = max_modulus(z1, z2);
    if (!(m > 0.0) || !std::isfinite(m)) {
      nan_flag = 1;
      return 0;
    }
    z1 /= m;
    z2 /= m;
    dz1 /= m;
    dz2 /= m;
    cd w1, w2, dw1, dw2;
    NumericFamily::apply_with_tangent(s, z1, z2, dz1, dz2, w1, w2, dw1, dw2);
    z1 = w1;
    z2 = w2;
    dz1 = dw1;
    dz2 = dw2;
    double u = activity_measure(job.metric, z1, z2, dz1, dz2);
    if (std::isnan(u)) {
      nan_flag = 1;
      return 0;
    }
    if (u > job.threshold) return i;
  }
  return 0;
}

cd aberth_one(std::span<const cd> z, std::size_t i, cd r) {
  cd sum = 0.0;
  const cd zi = z[i];
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j != i) sum += 1.0 / (zi - z[j]);
  }
  return r / (1.0 - r * sum);
}

double nearest_one(cd p, std::span<const cd> roots) {
  double best = std::numeric_limits<double>::infinity();
  for (cd r : roots) best = std::min(best, std::norm(p - r));
  return std::sqrt(best);
}

}  // namespace

void escape_cells_serial(const EscapeJob& job, std::span<const cd> ts, std::span<double> out) {
  const std::size_t stride = static_cast<std::size_t>(job.iterations) + 1;
  for (std::size_t c = 0; c < ts.size(); ++c) escape_one(job, ts[c], out.data() + c * stride);
}

void escape_cells_parallel(const EscapeJob& job, std::span<const cd> ts, std::span<double> out,
                           int workers) {
  const std::size_t stride = static_cast<std::size_t>(job.iterations) + 1;
  const auto n = static_cast<std::int64_t>(ts.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(std::max(1, workers))
  for (std::int64_t c = 0; c < n; ++c) {
    escape_one(job, ts[static_cast<std::size_t>(c)], out.data() + static_cast<std::size_t>(c) * stride);
  }
}

void escape_cells(const EscapeJob& job, std::span<const cd> ts, std::span<double> out,
                  const ExecPolicy& exec) {
  if (exec.parallel) {
    escape_cells_parallel(job, ts, out, exec.workers);
  } else {
    escape_cells_serial(job, ts, out);
  }
}

void activity_cells_serial(const ActivityJob& job, std::span<const cd> ts,
                           std::span<std::int32_t> out, std::span<std::uint8_t> nan_flag) {
  for (std::size_t c = 0; c < ts.size(); ++c) {
    nan_flag[c] = 0;
    out[c] = activity_one(job, ts[c], nan_flag[c]);
  }
}

void activity_cells_parallel(const ActivityJob& job, std::span<const cd> ts,
                             std::span<std::int32_t> out, std::span<std::uint8_t> nan_flag,
                             int workers) {
  const auto n = static_cast<std::int64_t>(ts.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(std::max(1, workers))
  for (std::int64_t c = 0; c < n; ++c) {
    const auto k = static_cast<std::size_t>(c);
    nan_flag[k] = 0;
    out[k] = activity_one(job, ts[k], nan_flag[k]);
  }
}

void activity_cells(const ActivityJob& job, std::span<const cd> ts, std::span<std::int32_t> out,
                    std::span<std::uint8_t> nan_flag, const ExecPolicy& exec) {
  if (exec.parallel) {
    activity_cells_parallel(job, ts, out, nan_flag, exec.workers);
  } else {
    activity_cells_serial(job, ts, out, nan_flag);
  }
}

void aberth_corrections_serial(std::span<const cd> z, std::span<const std::size_t> active,
                               std::span<const cd> ratio, std::span<cd> out) {
  for (std::size_t k = 0; k < active.size(); ++k) out[k] = aberth_one(z, active[k], ratio[k]);
}

void aberth_corrections_parallel(std::span<const cd> z, std::span<const std::size_t> active,
                                 std::span<const cd> ratio, std::span<cd> out, int workers) {
  const auto n = static_cast<std::int64_t>(active.size());
#pragma omp parallel for schedule(static) num_threads(std::max(1, workers))
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    out[i] = aberth_one(z, active[i], ratio[i]);
  }
}

void aberth_corrections(std::span<const cd> z, std::span<const std::size_t> active,
                        std::span<const cd> ratio, std::span<cd> out, const ExecPolicy& exec) {
  if (exec.parallel && active.size() >= 64) {
    aberth_corrections_parallel(z, active, ratio, out, exec.workers);
  } else {
    aberth_corrections_serial(z, active, ratio, out);
  }
}

void nearest_distances_serial(std::span<const cd> points, std::span<const cd> roots,
                              std::span<double> out) {
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = nearest_one(points[i], roots);
}

void nearest_distances_parallel(std::span<const cd> points, std::span<const cd> roots,
                                std::span<double> out, int workers) {
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static) num_threads(std::max(1, workers))
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = nearest_one(points[k], roots);
  }
}

void nearest_distances(std::span<const cd> points, std::span<const cd> roots,
                       std::span<double> out, const ExecPolicy& exec) {
  if (exec.parallel) {
    nearest_distances_parallel(points, roots, out, exec.workers);
  } else {
    nearest_distances_serial(points, roots, out);
  }
}

}  // namespace heightlab
