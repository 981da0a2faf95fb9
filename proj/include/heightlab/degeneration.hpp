#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heightlab/family.hpp"
#include "heightlab/kernels.hpp"
#include "heightlab/poly.hpp"

namespace heightlab {

/// A holomorphic lift A(t) = (A1, A2) of a marked point near t = 0.
class MarkedLift {
 public:
  /// Throws DomainError if A1(0) = A2(0) = 0.
  MarkedLift(Poly a1, Poly a2);
  const Poly& a1() const { return a1_; }
  const Poly& a2() const { return a2_; }

 private:
  Poly a1_, a2_;
};

enum class OrderMode { Auto, Exact, Series };

struct OrderOptions {
  OrderMode mode = OrderMode::Auto;
  /// Allow q = 0, where every increment must vanish.
  bool lenient = false;
  /// Also recompute the increments restarted from F_restart.
  std::optional<int> restart;
  /// Exact mode is chosen by Auto while d^N stays at or below this.
  std::uint64_t exact_limit = 4096;
  std::size_t max_bits = std::size_t{1} << 28;
};

struct OrderSequence {
  int q = 0;
  int d = 0;
  /// a_0..a_N: order of vanishing of F^n(A) at t = 0.
  std::vector<Integer> a;
  /// k_1..k_N with k_{n+1} = a_{n+1} - d a_n.
  std::vector<int> k;
  std::optional<int> restart_index;
  /// Increments of the sequence restarted from F_restart.
  std::vector<int> restart_increments;
  OrderMode mode_used = OrderMode::Exact;
  /// Truncation length used in series mode.
  std::size_t precision = 0;
};

/// Orders a_n of F^n(A) at t = 0, stripping t^(a_n) each step. Every
/// bound (a_0 = 0, 0 <= k_n <= q) is asserted; a failure is an
/// InternalError.
OrderSequence order_sequence(const RationalMapFamily& f, const MarkedLift& lift, int n,
                             const OrderOptions& options = {});

/// F_n = t^(-a_n) F^n(A) as exact polynomials, content removed.
MarkedLift stripped_lift(const RationalMapFamily& f, const MarkedLift& lift, int n);

struct AnnulusSpec {
  double r_in = 0.1;
  double r_out = 0.5;
  int angular = 64;
  int radial = 64;
};

struct EscapeGrid {
  AnnulusSpec spec;
  int iterations = 0;
  std::vector<cd> cells;
  /// values[c * (iterations+1) + n] = G_n(cells[c]).
  std::vector<double> values;
  std::size_t nan_cells = 0;

  double value(std::size_t cell, int n) const {
    return values[cell * static_cast<std::size_t>(iterations + 1) + static_cast<std::size_t>(n)];
  }
  /// sup over finite cells of |G_{n+1} - G_n| for n = 0..iterations-1.
  std::vector<double> sup_differences() const;
};

/// Sample points of the annulus, radius-major.
std::vector<cd> annulus_cells(const AnnulusSpec& spec);

/// a_n / d^n for n = 0..N as doubles.
std::vector<double> order_ratios(const OrderSequence& seq);

/// G_n = d^-n log ||F_n(t)|| on the given cells, with the orders taken
/// from an exact order sequence.
EscapeGrid escape_values(const RationalMapFamily& f, const MarkedLift& lift,
                         const OrderSequence& seq, std::vector<cd> cells,
                         const ExecPolicy& exec = {});

EscapeGrid escape_grid(const RationalMapFamily& f, const MarkedLift& lift, const AnnulusSpec& spec,
                       int n, const ExecPolicy& exec = {});

struct SlowGrowthReport {
  std::vector<double> radii;
  /// m(r) = max over |t| = r of |G_N(t)| / |log r|.
  std::vector<double> m;
  bool nonincreasing = true;
  double slack = 0.10;
};

SlowGrowthReport slow_growth_diagnostic(const RationalMapFamily& f, const MarkedLift& lift,
                                        const std::vector<double>& radii, int n,
                                        int samples_per_circle = 256, const ExecPolicy& exec = {});

struct LemmaSample {
  cd t;
  cd z1, z2;
};

struct LemmaBoundReport {
  int q = 0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  std::size_t violations = 0;
  std::size_t samples = 0;
};

/// Random samples with |t| log-uniform in (t_min, t_max) and ||z|| = 1.
std::vector<LemmaSample> random_lemma_samples(std::size_t count, double t_min, double t_max,
                                              std::uint64_t seed);

/// Empirical constants in alpha |t|^q <= ||F_t(z)|| / ||z||^d <= beta.
LemmaBoundReport lemma_bound_check(const RationalMapFamily& f, std::span<const LemmaSample> samples);

/// d^-N log ||F_t^N(z)|| with renormalization. DomainError when res(t)
/// vanishes numerically.
double homogeneous_escape_rate(const RationalMapFamily& f, cd t, cd z1, cd z2, int n);

/// Max-modulus norm used throughout.
inline double max_norm(cd z1, cd z2) { return std::max(std::abs(z1), std::abs(z2)); }

}  // namespace heightlab
