#pragma once

// Seeded, parallel Monte-Carlo estimates of average throughput and the
// figure-reproduction drivers built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coopmac/bounds.hpp"
#include "coopmac/channel.hpp"
#include "coopmac/dataset.hpp"
#include "coopmac/link_table.hpp"
#include "coopmac/protocol.hpp"

namespace coopmac {

enum class Scheme { proposed, conventional };

std::string to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

/// 0.0005, 0.0010, ..., 0.0050.
std::vector<double> default_density_grid();

struct ExperimentConfig {
  std::vector<double> densities = default_density_grid();
  std::vector<Scheme> schemes{Scheme::proposed, Scheme::conventional};
  std::vector<Regime> regimes{Regime::C};
  bool include_total = false;  // extra row summing the regimes (needs all five)
  std::uint64_t trials = 200000;
  EstimatorMode mode = EstimatorMode::analytic;
  std::uint64_t seed = 1;
  ChannelParams channel = ChannelParams::defaults();
  // ppp: r drawn from the regime annulus with density proportional to r,
  // helpers from the full process. k_nearest: S is D's k-th neighbour, r from
  // its full law; trials whose r misses the regime score 0.
  Conditioning::Kind conditioning = Conditioning::Kind::ppp;
  int k = 1;
  double window_half_width = kDefaultWindowHalfWidth;
  unsigned workers = 0;  // 0: hardware concurrency
  bool suppress_helpers = false;
  int max_backoffs = 3;

  void validate() const;
  Conditioning conditioning_for(double density) const;
};

/// Handshake statistics from the sampled exchange walk.
struct ProtocolStats {
  double mean_attempts = 0.0;
  double mean_backoffs = 0.0;
  double cooperative_fraction = 0.0;
  double delivered_fraction = 0.0;
};

struct SimEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(trials)
  std::uint64_t trials = 0;
  double density = 0.0;
  Scheme scheme = Scheme::proposed;
  std::string regime;  // "C", "D1", ..., or "total"
  std::uint64_t seed = 0;
  std::optional<ProtocolStats> protocol;
};

/// One estimate per (regime, density, scheme), in that nesting order, plus a
/// "total" estimate per (density, scheme) when requested. Bit-identical for a
/// fixed config whatever the worker count.
std::vector<SimEstimate> estimate_throughput(const ExperimentConfig& config);

struct ContourCell {
  double x = 0.0;  // metres; S at (-r_k/2, 0), D at (r_k/2, 0)
  double y = 0.0;
  std::optional<int> tier;
  std::optional<double> throughput_mbps;  // R_Coop x G, absent outside all tiers
};

struct ContourGrid {
  Regime regime = Regime::C;
  double r_k = 0.0;
  double resolution = 0.0;
  std::vector<ContourCell> cells;  // row-major, y outer
};

/// Grid over the bounding box of the tier regions, aligned so the S-D
/// midpoint is a grid node.
ContourGrid contour_grid(Regime regime, double r_k, double resolution, const ChannelParams& params);

/// Class-range midpoint: C 70.9, D1 85.55, D2 98.2.
double default_contour_distance(Regime regime);

struct FigureOverrides {
  ExperimentConfig experiment;
  std::optional<double> contour_r_k;
  double contour_resolution = 0.5;
};

inline constexpr std::string_view kFigureIds[] = {"fig7",      "fig9",       "fig10",
                                                  "contour_c", "contour_d1", "contour_d2"};

/// Curves of one figure as a table: lambda, upper, proposed, conventional,
/// lower (plus a regime column for fig9), or x, y, tier, throughput for the
/// contour ids. Throws InvalidParameter listing the valid ids otherwise.
Dataset reproduce_figure(std::string_view id, const FigureOverrides& overrides = {});

}  // namespace coopmac
