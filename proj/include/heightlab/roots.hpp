#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "heightlab/errors.hpp"
#include "heightlab/kernels.hpp"
#include "heightlab/poly.hpp"

namespace heightlab {

struct Root {
  cd value;
  int multiplicity = 1;
};

struct RootList {
  std::vector<Root> roots;
  /// max over roots of |p(z)| / sum |c_i| max(1, |z|)^i.
  double residual = 0.0;
  /// residual <= tol.
  bool within_tolerance = true;
  int iterations = 0;
};

/// Simultaneous iteration hit its cap. Carries the last iterate.
class RootFindingError : public ResourceError {
 public:
  RootFindingError(const std::string& what, RootList best_effort)
      : ResourceError(what), best_effort_(std::move(best_effort)) {}
  const RootList& best_effort() const { return best_effort_; }

 private:
  RootList best_effort_;
};

/// Computes Newton ratios p(z)/p'(z) for a batch of points.
using NewtonRatioFn = std::function<void(std::span<const cd> z, std::span<cd> ratio)>;

struct AberthOptions {
  int max_iterations = 1000;
  /// Stop once every correction is below tolerance * max(1, |z|).
  double tolerance = 1e-14;
  ExecPolicy exec{false, 1};
};

struct AberthResult {
  std::vector<cd> roots;
  int iterations = 0;
  bool converged = false;
};

/// Aberth-Ehrlich iteration in Jacobi form from the given starting points.
AberthResult aberth(std::vector<cd> initial, const NewtonRatioFn& ratio,
                    const AberthOptions& options);

/// n points on a circle, rotated off the real axis.
std::vector<cd> initial_guesses(cd center, double radius, std::size_t n);

/// Starting circle for a nonconstant p: centered at the root centroid,
/// radius the geometric mean of root distances from it (exact evaluation).
std::pair<cd, double> starting_circle(const Poly& p);

/// All complex roots of p with multiplicities from the squarefree
/// decomposition. Throws RootFindingError on nonconvergence.
RootList complex_roots(const Poly& p, double tol = 1e-12, const ExecPolicy& exec = {false, 1});

/// Natural log of |x| for a nonzero rational of any size.
double log_abs(const Rational& x);

}  // namespace heightlab
