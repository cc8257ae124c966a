#include "coopmac/link_table.hpp"

#include <cmath>

#include "coopmac/errors.hpp"

namespace coopmac {
namespace {

constexpr DistanceBand kBand11{0.0, kBand11Edge};
constexpr DistanceBand kBand5p5{kBand11Edge, kBand5p5Edge};
constexpr DistanceBand kBand2{kBand5p5Edge, kBand2Edge};

constexpr TierRow row(DistanceBand sh, double r_sh, DistanceBand hd, double r_hd) {
  return {sh, hd, r_sh, r_hd};
}

constexpr TierRow kNoRow{{0, 0}, {0, 0}, 0, 0};

constexpr std::array<TierSpec, 3> kTiersC{{
    {LinkClass::C, 1, {row(kBand11, 11, kBand11, 11), kNoRow}, 1, 5.5},
    {LinkClass::C, 2,
     {row(kBand11, 11, kBand5p5, 5.5), row(kBand5p5, 5.5, kBand11, 11)}, 2, 3.67},
    {LinkClass::C, 3, {row(kBand5p5, 5.5, kBand5p5, 5.5), kNoRow}, 1, 2.75},
}};

constexpr std::array<TierSpec, 5> kTiersD{{
    {LinkClass::D, 1, {row(kBand11, 11, kBand11, 11), kNoRow}, 1, 5.5},
    {LinkClass::D, 2,
     {row(kBand11, 11, kBand5p5, 5.5), row(kBand5p5, 5.5, kBand11, 11)}, 2, 3.67},
    {LinkClass::D, 3, {row(kBand5p5, 5.5, kBand5p5, 5.5), kNoRow}, 1, 2.75},
    {LinkClass::D, 4,
     {row(kBand11, 11, kBand2, 2), row(kBand2, 2, kBand11, 11)}, 2, 1.69},
    {LinkClass::D, 5,
     {row(kBand5p5, 5.5, kBand2, 2), row(kBand2, 2, kBand5p5, 5.5)}, 2, 1.47},
}};

}  // namespace

const LinkClassSpec& link_class_spec(LinkClass c) {
  return kLinkClasses[static_cast<std::size_t>(c)];
}

LinkClass classify_link(double distance) {
  if (!std::isfinite(distance) || distance < 0.0) {
    throw InvalidParameter("link distance must be finite and non-negative");
  }
  if (distance > kMaxRange) {
    throw OutOfRange("link distance " + std::to_string(distance) +
                     " m exceeds the 100 m maximum range");
  }
  for (const auto& spec : kLinkClasses) {
    if (distance >= spec.min_distance && distance < spec.max_distance) return spec.label;
  }
  return LinkClass::D;  // distance == 100
}

double direct_rate(LinkClass c) { return link_class_spec(c).rate_mbps; }

std::optional<double> hop_rate(double distance) {
  if (!std::isfinite(distance) || distance < 0.0 || distance > kMaxRange) return std::nullopt;
  return direct_rate(classify_link(distance));
}

std::span<const TierSpec> tier_table(LinkClass c) {
  switch (c) {
    case LinkClass::C: return kTiersC;
    case LinkClass::D: return kTiersD;
    default: return {};
  }
}

int tier_count(LinkClass c) { return static_cast<int>(tier_table(c).size()); }

const TierSpec& tier_spec(LinkClass c, int tier) {
  auto table = tier_table(c);
  if (tier < 1 || tier > static_cast<int>(table.size())) {
    throw InvalidParameter("tier " + std::to_string(tier) + " does not exist for class " +
                           to_string(c));
  }
  return table[static_cast<std::size_t>(tier - 1)];
}

RegimeRange regime_range(Regime r) {
  switch (r) {
    case Regime::A: return {0.0, kBand11Edge};
    case Regime::B: return {kBand11Edge, kBand5p5Edge};
    case Regime::C: return {kBand5p5Edge, kBand2Edge};
    case Regime::D1: return {kBand2Edge, kTier1Limit};
    case Regime::D2: return {kTier1Limit, kMaxRange};
  }
  throw InvalidParameter("unknown regime");
}

LinkClass regime_class(Regime r) {
  switch (r) {
    case Regime::A: return LinkClass::A;
    case Regime::B: return LinkClass::B;
    case Regime::C: return LinkClass::C;
    case Regime::D1:
    case Regime::D2: return LinkClass::D;
  }
  throw InvalidParameter("unknown regime");
}

double regime_direct_rate(Regime r) { return direct_rate(regime_class(r)); }

std::string to_string(LinkClass c) {
  switch (c) {
    case LinkClass::A: return "A";
    case LinkClass::B: return "B";
    case LinkClass::C: return "C";
    case LinkClass::D: return "D";
  }
  return "?";
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::A: return "A";
    case Regime::B: return "B";
    case Regime::C: return "C";
    case Regime::D1: return "D1";
    case Regime::D2: return "D2";
  }
  return "?";
}

LinkClass parse_link_class(std::string_view s) {
  if (s == "A") return LinkClass::A;
  if (s == "B") return LinkClass::B;
  if (s == "C") return LinkClass::C;
  if (s == "D") return LinkClass::D;
  throw InvalidParameter("unknown link class '" + std::string(s) + "'");
}

Regime parse_regime(std::string_view s) {
  if (s == "A") return Regime::A;
  if (s == "B") return Regime::B;
  if (s == "C") return Regime::C;
  if (s == "D1") return Regime::D1;
  if (s == "D2") return Regime::D2;
  throw InvalidParameter("unknown regime '" + std::string(s) + "'");
}

}  // namespace coopmac
