#include "coopmac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "coopmac/errors.hpp"

namespace coopmac {

double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

Window Window::centered(Point2D center, double half_width) {
  return {center.x - half_width, center.x + half_width, center.y - half_width,
          center.y + half_width};
}

Window default_window(Point2D dest) { return Window::centered(dest, kDefaultWindowHalfWidth); }

NetworkRealization::NetworkRealization(double density, Window window, std::vector<Point2D> nodes)
    : density_(density), window_(window), nodes_(std::move(nodes)) {
  if (!(density > 0.0) || !std::isfinite(density)) {
    throw InvalidParameter("PPP density must be positive and finite");
  }
  if (!(window.x_max > window.x_min) || !(window.y_max > window.y_min)) {
    throw InvalidParameter("PPP window must have positive width and height");
  }
  for (const auto& p : nodes_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !window_.contains(p)) {
      throw InvalidParameter("realization node lies outside its window");
    }
  }
}

NetworkRealization sample_ppp(double density, const Window& window, Rng& rng) {
  if (!(density > 0.0) || !std::isfinite(density)) {
    throw InvalidParameter("PPP density must be positive and finite");
  }
  if (!(window.x_max > window.x_min) || !(window.y_max > window.y_min)) {
    throw InvalidParameter("PPP window must have positive width and height");
  }
  std::poisson_distribution<long> count_dist(density * window.area());
  const long n = count_dist(rng);
  const double w = window.x_max - window.x_min;
  const double h = window.y_max - window.y_min;
  std::vector<Point2D> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double x = window.x_min + w * uniform01(rng);
    const double y = window.y_min + h * uniform01(rng);
    nodes.push_back({x, y});
  }
  return NetworkRealization(density, window, std::move(nodes));
}

NetworkRealization sample_ppp(double density, const Window& window, std::uint64_t seed) {
  Rng rng{derive_seed(seed, {})};
  return sample_ppp(density, window, rng);
}

double lens_area(double r1, double r2, double separation) {
  if (!(r1 > 0.0) || !(r2 > 0.0) || !(separation >= 0.0)) {
    throw InvalidParameter("lens_area requires positive radii and non-negative separation");
  }
  const double l = separation;
  if (l >= r1 + r2) return 0.0;
  if (l <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return std::numbers::pi * r * r;
  }
  const double c1 = std::clamp((l * l + r1 * r1 - r2 * r2) / (2.0 * l * r1), -1.0, 1.0);
  const double c2 = std::clamp((l * l + r2 * r2 - r1 * r1) / (2.0 * l * r2), -1.0, 1.0);
  const double kite = (-l + r1 + r2) * (l + r1 - r2) * (l - r1 + r2) * (l + r1 + r2);
  return r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) - 0.5 * std::sqrt(std::max(kite, 0.0));
}

double RegionAreas::total() const { return std::accumulate(areas.begin(), areas.end(), 0.0); }

RegionAreas tier_region_areas(LinkClass link_class, double r_k) {
  constexpr double a = kBand11Edge;
  constexpr double b = kBand5p5Edge;
  constexpr double c = kBand2Edge;
  const auto nonneg = [](double v) { return std::max(v, 0.0); };

  if (link_class == LinkClass::C) {
    if (!(r_k >= kBand5p5Edge && r_k <= kBand2Edge)) {
      throw InvalidParameter("class C link length must lie in [67.1, 74.7] m");
    }
    const double u1 = lens_area(a, a, r_k);
    const double u2 = nonneg(2.0 * (lens_area(b, a, r_k) - u1));
    const double u3 = nonneg(lens_area(b, b, r_k) - 2.0 * lens_area(b, a, r_k) + u1);
    return {link_class, r_k, {u1, u2, u3}};
  }
  if (link_class == LinkClass::D) {
    if (!(r_k >= kBand2Edge && r_k <= kMaxRange)) {
      throw InvalidParameter("class D link length must lie in [74.7, 100] m");
    }
    const double v1 = r_k > kTier1Limit ? 0.0 : lens_area(a, a, r_k);
    const double v2 = nonneg(2.0 * (lens_area(a, b, r_k) - v1));
    const double v3 = nonneg(lens_area(b, b, r_k) - v2 - v1);
    const double v4 = nonneg(2.0 * (lens_area(a, c, r_k) - v1) - v2);
    const double v5 = nonneg(2.0 * (lens_area(b, c, r_k) - lens_area(b, b, r_k)) - v4);
    return {link_class, r_k, {v1, v2, v3, v4, v5}};
  }
  throw InvalidParameter("tier regions exist only for class C and D links");
}

std::optional<int> classify_helper_tier(double d_sh, double d_hd, LinkClass link_class) {
  if (!(d_sh >= 0.0) || !(d_hd >= 0.0)) return std::nullopt;
  for (const auto& spec : tier_table(link_class)) {
    for (const auto& r : spec.active_rows()) {
      if (r.sh.contains(d_sh) && r.hd.contains(d_hd)) return spec.tier;
    }
  }
  return std::nullopt;
}

double nn_distance_pdf(int k, double density, double r) {
  if (k < 1) throw InvalidParameter("neighbour order k must be >= 1");
  if (!(density > 0.0)) throw InvalidParameter("density must be positive");
  if (!(r > 0.0)) return 0.0;
  const double m = density * std::numbers::pi * r * r;
  const double log_f = std::log(2.0) - m + k * std::log(m) - std::log(r) - std::lgamma(k);
  return std::exp(log_f);
}

}  // namespace coopmac
