#pragma once

// Reference computations that share no code with the library. Each one is
// deliberately naive: direct integration, literal table transcription or
// plain counting.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// Composite Simpson on n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

template <class F>
double trapezoid(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

// Gaussian upper tail by integrating the density. Accurate to ~1e-13 for
// |x| < 8.
inline double q_tail(double x) {
  const auto phi = [](double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * kPi); };
  if (x >= 0.0) return simpson(phi, x, x + 40.0, 400000);
  return simpson(phi, x, -x, 400000) + q_tail(-x);
}

// Default link budget (1 mW, -98 dBm, K = -40 dB, alpha 3, 6 dB), written out.
inline double ps_default(double d) {
  const double nu = (-98.0 - 0.0 - (-40.0)) / 6.0;
  const double mu = 10.0 * 3.0 / 6.0;
  return 0.5 * std::erfc((nu + mu * std::log10(d)) / std::sqrt(2.0));
}

// Lens area by integrating the vertical overlap of the two discs along the
// centre line. Disc 1 at x = 0, disc 2 at x = l.
inline double lens_by_chords(double r1, double r2, double l, int n = 200000) {
  const double a = std::max(-r1, l - r2);
  const double b = std::min(r1, l + r2);
  if (b <= a) return 0.0;
  const auto overlap = [&](double x) {
    const double h1 = r1 * r1 - x * x;
    const double h2 = r2 * r2 - (x - l) * (x - l);
    if (h1 <= 0.0 || h2 <= 0.0) return 0.0;
    return 2.0 * std::sqrt(std::min(h1, h2));
  };
  return simpson(overlap, a, b, n);
}

// Lens area by uniform sampling of disc 1's bounding box.
inline double lens_by_counting(double r1, double r2, double l, long samples, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-r1, r1);
  long hits = 0;
  for (long i = 0; i < samples; ++i) {
    const double x = u(g), y = u(g);
    if (x * x + y * y < r1 * r1 && (x - l) * (x - l) + y * y < r2 * r2) ++hits;
  }
  return 4.0 * r1 * r1 * static_cast<double>(hits) / static_cast<double>(samples);
}

// Helper tier tables transcribed row by row. Returns 0 when no row matches.
inline int table_tier(double sh, double hd, char link_class) {
  const auto in = [](double d, double lo, double hi) { return d >= lo && d < hi; };
  const bool sh11 = in(sh, 0, 48.2), hd11 = in(hd, 0, 48.2);
  const bool sh55 = in(sh, 48.2, 67.1), hd55 = in(hd, 48.2, 67.1);
  const bool sh2 = in(sh, 67.1, 74.7), hd2 = in(hd, 67.1, 74.7);
  if (sh11 && hd11) return 1;
  if ((sh11 && hd55) || (sh55 && hd11)) return 2;
  if (sh55 && hd55) return 3;
  if (link_class == 'D') {
    if ((sh11 && hd2) || (sh2 && hd11)) return 4;
    if ((sh55 && hd2) || (sh2 && hd55)) return 5;
  }
  return 0;
}

// k-th nearest neighbour density written with tgamma.
inline double nn_pdf(int k, double lambda, double r) {
  if (r <= 0.0) return 0.0;
  const double m = lambda * kPi * r * r;
  return 2.0 * std::exp(-m) * std::pow(m, k) / (r * std::tgamma(k));
}

// CDF of the k-th nearest neighbour distance: P(Poisson(m) >= k).
inline double nn_cdf(int k, double lambda, double r) {
  const double m = lambda * kPi * r * r;
  double term = std::exp(-m), below = 0.0;
  for (int j = 0; j < k; ++j) {
    below += term;
    term *= m / (j + 1);
  }
  return 1.0 - below;
}

inline double h_trapezoid(double rmin, double rmax, int k, double lambda, int n = 100000) {
  return trapezoid([&](double r) { return r > 0.0 ? ps_default(r) * nn_pdf(k, lambda, r) : 0.0; },
                   rmin, rmax, n);
}

}  // namespace oracle
