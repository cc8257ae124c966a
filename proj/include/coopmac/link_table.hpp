#pragma once

// 802.11b rate-vs-distance map and the helper tier tables built on it.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace coopmac {

// Upper edges (m) of the 11, 5.5 and 2 Mbps bands, and the maximum range.
inline constexpr double kBand11Edge = 48.2;
inline constexpr double kBand5p5Edge = 67.1;
inline constexpr double kBand2Edge = 74.7;
inline constexpr double kMaxRange = 100.0;
// Beyond this S-D distance no point is within 48.2 m of both ends.
inline constexpr double kTier1Limit = 2.0 * kBand11Edge;

enum class LinkClass { A, B, C, D };

struct LinkClassSpec {
  LinkClass label;
  double min_distance;  // inclusive
  double max_distance;  // exclusive, except class D which includes 100 m
  double rate_mbps;
};

inline constexpr std::array<LinkClassSpec, 4> kLinkClasses{{
    {LinkClass::A, 0.0, kBand11Edge, 11.0},
    {LinkClass::B, kBand11Edge, kBand5p5Edge, 5.5},
    {LinkClass::C, kBand5p5Edge, kBand2Edge, 2.0},
    {LinkClass::D, kBand2Edge, kMaxRange, 1.0},
}};

const LinkClassSpec& link_class_spec(LinkClass c);

/// Rate-band lookup. Throws OutOfRange beyond 100 m, InvalidParameter for
/// negative or non-finite distances.
LinkClass classify_link(double distance);

double direct_rate(LinkClass c);

/// Rate of a single hop of the given length, or nullopt when out of range.
std::optional<double> hop_rate(double distance);

/// Effective rate of a two-hop relay, L / (L/r_sh + L/r_hd).
constexpr double coop_rate(double r_sh, double r_hd) {
  return r_sh * r_hd / (r_sh + r_hd);
}

struct DistanceBand {
  double lo;  // inclusive
  double hi;  // exclusive
  constexpr bool contains(double d) const { return d >= lo && d < hi; }
};

struct TierRow {
  DistanceBand sh;
  DistanceBand hd;
  double r_sh;
  double r_hd;
};

/// One helper tier: the (d_SH, d_HD) rows that qualify and the relay rate.
struct TierSpec {
  LinkClass link_class;
  int tier;
  std::array<TierRow, 2> rows;
  int row_count;
  double printed_rate;  // display value from the tier table

  double rate_mbps() const { return coop_rate(rows[0].r_sh, rows[0].r_hd); }
  std::span<const TierRow> active_rows() const {
    return {rows.data(), static_cast<std::size_t>(row_count)};
  }
};

/// Tiers for a link class, ordered by tier index; empty for A and B.
std::span<const TierSpec> tier_table(LinkClass c);
const TierSpec& tier_spec(LinkClass c, int tier);
int tier_count(LinkClass c);

/// Distance regimes used by the throughput analysis. D is split at 96.4 m
/// because tier 1 vanishes beyond it.
enum class Regime { A, B, C, D1, D2 };

struct RegimeRange {
  double lo;
  double hi;
};

RegimeRange regime_range(Regime r);
LinkClass regime_class(Regime r);
double regime_direct_rate(Regime r);

std::string to_string(LinkClass c);
std::string to_string(Regime r);
LinkClass parse_link_class(std::string_view s);
Regime parse_regime(std::string_view s);

}  // namespace coopmac
