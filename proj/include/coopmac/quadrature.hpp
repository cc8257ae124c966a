#pragma once

#include <functional>
#include <span>

namespace coopmac {

struct QuadratureOptions {
  double abs_tol = 1e-8;
  int max_bisections = 1000;
  int initial_panels = 8;  // per segment between breakpoints
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int bisections = 0;
  bool converged = true;
};

/// Adaptive Simpson over [a, b]. The tolerance is shared across panels in
/// proportion to their width; once `max_bisections` is spent the remaining
/// panels are accepted as-is and `converged` is cleared.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options = {});

/// As above, with the interval first split at the given interior points
/// (points outside (a, b) are ignored).
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  std::span<const double> breakpoints,
                                  const QuadratureOptions& options = {});

}  // namespace coopmac
