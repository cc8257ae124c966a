#pragma once

// Point-process sampling and the planar geometry of helper tier regions.

#include <cstdint>
#include <optional>
#include <vector>

#include "coopmac/link_table.hpp"
#include "coopmac/rng.hpp"

namespace coopmac {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2D&, const Point2D&) = default;
};

double distance(Point2D a, Point2D b);

/// Axis-aligned observation window.
struct Window {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  static Window centered(Point2D center, double half_width);
  double area() const { return (x_max - x_min) * (y_max - y_min); }
  bool contains(Point2D p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Half-width that keeps a destination's 100 m neighbourhood edge-free for
/// every S-D distance up to 100 m.
inline constexpr double kDefaultWindowHalfWidth = 200.0;

/// Square window centred on `dest` with kDefaultWindowHalfWidth.
Window default_window(Point2D dest = {});

/// One sampled homogeneous Poisson point process. Immutable.
class NetworkRealization {
 public:
  NetworkRealization(double density, Window window, std::vector<Point2D> nodes);

  double density() const { return density_; }
  const Window& window() const { return window_; }
  const std::vector<Point2D>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

 private:
  double density_;
  Window window_;
  std::vector<Point2D> nodes_;
};

/// Poisson(density * area) points, i.i.d. uniform in `window`.
NetworkRealization sample_ppp(double density, const Window& window, std::uint64_t seed);
NetworkRealization sample_ppp(double density, const Window& window, Rng& rng);

/// Area of the intersection of two discs of radii r1, r2 whose centres are
/// `separation` apart.
double lens_area(double r1, double r2, double separation);

/// Areas of the tier regions of an S-D link of length r_k: U1..U3 for class
/// C, V1..V5 for class D (index 0 is tier 1).
struct RegionAreas {
  LinkClass link_class;
  double r_k;
  std::vector<double> areas;

  double total() const;
};

RegionAreas tier_region_areas(LinkClass link_class, double r_k);

/// Tier whose (d_SH, d_HD) row matches, or nullopt if the helper does not
/// raise the rate above the direct link.
std::optional<int> classify_helper_tier(double d_sh, double d_hd, LinkClass link_class);

/// Density of the distance to the k-th nearest neighbour in a planar PPP.
/// Returns 0 for r <= 0.
double nn_distance_pdf(int k, double density, double r);

}  // namespace coopmac
