#include "coopmac/bounds.hpp"

#include <cmath>
#include <numbers>

#include "coopmac/errors.hpp"
#include "coopmac/geometry.hpp"

namespace coopmac {
namespace {

using std::numbers::pi;

void require_conditioning(const Conditioning& c) {
  if (!(c.density > 0.0) || !std::isfinite(c.density)) {
    throw InvalidParameter("density must be positive");
  }
  if (c.kind == Conditioning::Kind::k_nearest && c.k < 1) {
    throw InvalidParameter("neighbour order k must be >= 1");
  }
}

void require_in_regime(Regime regime, double r_k) {
  const auto range = regime_range(regime);
  if (!(r_k >= range.lo && r_k <= range.hi)) {
    throw InvalidParameter("r_k = " + std::to_string(r_k) + " m is outside regime " +
                           to_string(regime));
  }
}

// Mode of f_{r_k} and a few widths either side; f is sharply peaked for
// large k and the panels should straddle the peak.
std::vector<double> nn_pdf_breakpoints(int k, double density) {
  const double mode = std::sqrt((2.0 * k - 1.0) / (2.0 * density * pi));
  const double width = mode / std::sqrt(2.0 * k);
  std::vector<double> pts{mode};
  for (double m : {3.0, 6.0}) {
    pts.push_back(mode - m * width);
    pts.push_back(mode + m * width);
  }
  return pts;
}

double annulus_weight(double r, RegimeRange range) {
  return 2.0 * r / (range.hi * range.hi - range.lo * range.lo);
}

}  // namespace

Conditioning Conditioning::k_nearest(int k, double density) {
  Conditioning c{Kind::k_nearest, k, density};
  require_conditioning(c);
  return c;
}

Conditioning Conditioning::ppp(double density) {
  Conditioning c{Kind::ppp, 1, density};
  require_conditioning(c);
  return c;
}

std::string Conditioning::label() const {
  return kind == Kind::ppp ? std::string("ppp") : "k=" + std::to_string(k);
}

double integrate_against_nn_pdf(const std::function<double(double)>& g, double r_min,
                                double r_max, int k, double density,
                                const QuadratureOptions& options) {
  if (!(r_min >= 0.0) || !(r_max >= r_min) || !std::isfinite(r_max)) {
    throw InvalidParameter("integration range must satisfy 0 <= r_min <= r_max < inf");
  }
  if (k < 1) throw InvalidParameter("neighbour order k must be >= 1");
  if (!(density > 0.0)) throw InvalidParameter("density must be positive");
  if (r_min == r_max) return 0.0;
  const auto integrand = [&](double r) {
    return r > 0.0 ? g(r) * nn_distance_pdf(k, density, r) : 0.0;
  };
  const auto pts = nn_pdf_breakpoints(k, density);
  return adaptive_simpson(integrand, r_min, r_max, pts, options).value;
}

double h_integral(double r_min, double r_max, int k, double density, const ChannelParams& params,
                  const QuadratureOptions& options) {
  return integrate_against_nn_pdf([&](double r) { return p_success_direct(r, params); }, r_min,
                                  r_max, k, density, options);
}

double direct_link_throughput(LinkClass link_class, const Conditioning& conditioning,
                              const ChannelParams& params, const QuadratureOptions& options) {
  require_conditioning(conditioning);
  const auto& spec = link_class_spec(link_class);
  const double lo = spec.min_distance;
  const double hi = spec.max_distance;
  if (conditioning.kind == Conditioning::Kind::k_nearest) {
    return h_integral(lo, hi, conditioning.k, conditioning.density, params, options) *
           spec.rate_mbps;
  }
  const RegimeRange range{lo, hi};
  const auto integrand = [&](double r) {
    return r > 0.0 ? p_success_direct(r, params) * annulus_weight(r, range) : 0.0;
  };
  return adaptive_simpson(integrand, lo, hi, options).value * spec.rate_mbps;
}

double type_ab_throughput(LinkClass link_class, const Conditioning& conditioning,
                          const ChannelParams& params, const QuadratureOptions& options) {
  if (link_class != LinkClass::A && link_class != LinkClass::B) {
    throw InvalidParameter("type_ab_throughput takes class A or B");
  }
  return direct_link_throughput(link_class, conditioning, params, options);
}

TierProbabilityVector tier_probabilities(LinkClass link_class, double r_k,
                                         const Conditioning& conditioning) {
  require_conditioning(conditioning);
  const RegionAreas regions = tier_region_areas(link_class, r_k);
  TierProbabilityVector out;
  out.conditioning = conditioning;
  out.r_k = r_k;

  // Probability that no helper lies in the union of the first i regions.
  std::function<double(double)> void_prob;
  if (conditioning.kind == Conditioning::Kind::k_nearest) {
    const double disc = pi * r_k * r_k;
    const int others = conditioning.k - 1;
    void_prob = [disc, others](double area) {
      const double base = std::max(0.0, 1.0 - area / disc);
      return others == 0 ? 1.0 : std::pow(base, others);
    };
  } else {
    const double density = conditioning.density;
    void_prob = [density](double area) { return std::exp(-density * area); };
  }

  double cum = 0.0;
  double prev = 1.0;
  for (double a : regions.areas) {
    cum += a;
    const double next = void_prob(cum);
    out.tiers.push_back(std::max(0.0, prev - next));
    prev = next;
  }
  out.residual = prev;
  return out;
}

BoundPair tier_bound_pair(Regime regime, int tier, double r_k, const ChannelParams& params) {
  if (regime == Regime::A || regime == Regime::B) {
    throw InvalidParameter("no helper tiers for regime " + to_string(regime));
  }
  require_in_regime(regime, r_k);
  if (regime == Regime::D2 && tier == 1) {
    throw InvalidParameter("tier 1 does not exist beyond 96.4 m (regime D2)");
  }
  const LinkClass link = regime_class(regime);
  const double rate = tier_spec(link, tier).rate_mbps();  // validates the index

  const double e11 = kBand11Edge, e55 = kBand5p5Edge, e2 = kBand2Edge;
  double lo = 0.0, hi = 0.0;
  switch (tier) {
    case 1:
      lo = g_joint(e11, e11, params);
      hi = g_joint(r_k / 2.0, r_k / 2.0, params);
      break;
    case 2:
      lo = g_joint(e11, e55, params);
      hi = g_joint(e11, r_k - e11, params);
      break;
    case 3:
      lo = g_joint(e55, e55, params);
      hi = regime == Regime::D2 ? g_joint(r_k / 2.0, r_k / 2.0, params) : g_joint(e11, e11, params);
      break;
    case 4:
      lo = g_joint(e11, e2, params);
      hi = g_joint(e55, r_k - e55, params);
      break;
    case 5:
      lo = g_joint(e55, e2, params);
      hi = g_joint(e11, e55, params);
      break;
    default:
      break;
  }
  return {lo * rate, hi * rate, to_string(regime), tier, r_k};
}

BoundPair link_bounds_at_distance(Regime regime, double r_k, const Conditioning& conditioning,
                                  const ChannelParams& params) {
  require_in_regime(regime, r_k);
  require_conditioning(conditioning);
  const double direct = r_k > 0.0 ? p_success_direct(r_k, params) * regime_direct_rate(regime)
                                  : regime_direct_rate(regime);
  BoundPair out{direct, direct, to_string(regime), std::nullopt, r_k};
  if (regime == Regime::A || regime == Regime::B) return out;

  const auto probs = tier_probabilities(regime_class(regime), r_k, conditioning);
  double lo = probs.residual * direct;
  double hi = lo;
  for (std::size_t i = 0; i < probs.tiers.size(); ++i) {
    const int tier = static_cast<int>(i) + 1;
    if (probs.tiers[i] == 0.0) continue;  // also skips tier 1 of D2
    const auto pair = tier_bound_pair(regime, tier, r_k, params);
    lo += probs.tiers[i] * pair.lower;
    hi += probs.tiers[i] * pair.upper;
  }
  out.lower = lo;
  out.upper = hi;
  return out;
}

BoundPair averaged_bounds(Regime regime, const Conditioning& conditioning,
                          const ChannelParams& params, const QuadratureOptions& options) {
  require_conditioning(conditioning);
  if (regime == Regime::A || regime == Regime::B) {
    const double t = direct_link_throughput(regime_class(regime), conditioning, params, options);
    return {t, t, to_string(regime), std::nullopt, std::nullopt};
  }
  const auto range = regime_range(regime);
  BoundPair out{0.0, 0.0, to_string(regime), std::nullopt, std::nullopt};
  if (conditioning.kind == Conditioning::Kind::k_nearest) {
    const auto at = [&](double r) { return link_bounds_at_distance(regime, r, conditioning, params); };
    out.lower = integrate_against_nn_pdf([&](double r) { return at(r).lower; }, range.lo,
                                         range.hi, conditioning.k, conditioning.density, options);
    out.upper = integrate_against_nn_pdf([&](double r) { return at(r).upper; }, range.lo,
                                         range.hi, conditioning.k, conditioning.density, options);
  } else {
    const auto weighted = [&](bool upper) {
      return [&, upper](double r) {
        const auto b = link_bounds_at_distance(regime, r, conditioning, params);
        return (upper ? b.upper : b.lower) * annulus_weight(r, range);
      };
    };
    out.lower = adaptive_simpson(weighted(false), range.lo, range.hi, options).value;
    out.upper = adaptive_simpson(weighted(true), range.lo, range.hi, options).value;
  }
  return out;
}

BoundPair total_bounds(const Conditioning& conditioning, const ChannelParams& params,
                       const QuadratureOptions& options) {
  BoundPair out{0.0, 0.0, "total", std::nullopt, std::nullopt};
  for (Regime r : {Regime::D2, Regime::D1, Regime::C, Regime::A, Regime::B}) {
    const auto b = averaged_bounds(r, conditioning, params, options);
    out.lower += b.lower;
    out.upper += b.upper;
  }
  return out;
}

}  // namespace coopmac
