#include "coopmac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "coopmac/errors.hpp"

namespace coopmac {
namespace {

struct Panel {
  double a, b;
  double fa, fm, fb;
  double whole;
  double tol;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  std::span<const double> breakpoints,
                                  const QuadratureOptions& options) {
  if (!std::isfinite(a) || !std::isfinite(b) || b < a) {
    throw InvalidParameter("quadrature interval must be finite with a <= b");
  }
  QuadratureResult result;
  if (b == a) return result;

  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double span = b - a;
  const int panels = std::max(1, options.initial_panels);
  std::vector<Panel> stack;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double h = (cuts[s + 1] - cuts[s]) / panels;
    for (int i = 0; i < panels; ++i) {
      const double pa = cuts[s] + i * h;
      const double pb = (i + 1 == panels) ? cuts[s + 1] : pa + h;
      const double fa = f(pa), fm = f(0.5 * (pa + pb)), fb = f(pb);
      stack.push_back({pa, pb, fa, fm, fb, simpson(pa, pb, fa, fm, fb),
                       options.abs_tol * (pb - pa) / span});
    }
  }

  // Depth-first; Kahan sum keeps the accumulation order-stable.
  double sum = 0.0, comp = 0.0;
  const auto accumulate = [&](double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  std::reverse(stack.begin(), stack.end());
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m), rm = 0.5 * (m + p.b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double delta = left + right - p.whole;
    const bool budget_left = result.bisections < options.max_bisections;
    if (std::abs(delta) <= 15.0 * p.tol || !budget_left || (p.b - p.a) < 1e-12 * span) {
      if (std::abs(delta) > 15.0 * p.tol) result.converged = false;
      accumulate(left + right + delta / 15.0);
      result.error_estimate += std::abs(delta) / 15.0;
      continue;
    }
    ++result.bisections;
    stack.push_back({m, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol});
    stack.push_back({p.a, m, p.fa, flm, p.fm, left, 0.5 * p.tol});
  }
  result.value = sum;
  return result;
}

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options) {
  return adaptive_simpson(f, a, b, std::span<const double>{}, options);
}

}  // namespace coopmac
