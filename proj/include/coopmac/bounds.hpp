#pragma once

// Closed-form throughput expressions: the H integral, tier probabilities,
// per-tier bound pairs and their averages over the S-D distance.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coopmac/channel.hpp"
#include "coopmac/link_table.hpp"
#include "coopmac/quadrature.hpp"

namespace coopmac {

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
  std::string regime;         // "A", "B", "C", "D1", "D2" or "total"
  std::optional<int> tier;    // empty for a mixture
  std::optional<double> r_k;  // empty when averaged
};

/// How the helper population around D is conditioned.
/// k_nearest: S is D's k-th nearest neighbour, so k-1 nodes fall uniformly
/// in the disc of radius r_k. ppp: helpers form the unconditioned process.
struct Conditioning {
  enum class Kind { k_nearest, ppp };
  Kind kind = Kind::ppp;
  int k = 1;
  double density = 0.0;

  static Conditioning k_nearest(int k, double density);
  static Conditioning ppp(double density);
  std::string label() const;  // "k=<k>" or "ppp"
};

struct TierProbabilityVector {
  std::vector<double> tiers;  // index 0 is tier 1
  double residual = 1.0;      // no helper in any tier region
  Conditioning conditioning;
  double r_k = 0.0;
};

/// Integral of g(r) f_{r_k}(r) over [r_min, r_max].
double integrate_against_nn_pdf(const std::function<double(double)>& g, double r_min,
                                double r_max, int k, double density,
                                const QuadratureOptions& options = {});

/// Integral of Ps(r) f_{r_k}(r) over [r_min, r_max]; 0 when r_min == r_max.
double h_integral(double r_min, double r_max, int k, double density, const ChannelParams& params,
                  const QuadratureOptions& options = {});

/// Direct-link throughput of a class averaged over its distance range:
/// H(range) x rate under k-nearest conditioning, the annulus-weighted mean of
/// Ps x rate under ppp conditioning. Any class is accepted.
double direct_link_throughput(LinkClass link_class, const Conditioning& conditioning,
                              const ChannelParams& params, const QuadratureOptions& options = {});

/// Same as direct_link_throughput, restricted to classes A and B.
double type_ab_throughput(LinkClass link_class, const Conditioning& conditioning,
                          const ChannelParams& params, const QuadratureOptions& options = {});

/// Probability that the best available helper lies in each tier region.
TierProbabilityVector tier_probabilities(LinkClass link_class, double r_k,
                                         const Conditioning& conditioning);

/// Extremes of R_Coop x G over the tier-`tier` region of a link of length r_k.
BoundPair tier_bound_pair(Regime regime, int tier, double r_k, const ChannelParams& params);

/// Tier probabilities mixed with the tier bound pairs, plus the
/// residual direct transmission. Classes A and B give Ps(r_k) x rate.
BoundPair link_bounds_at_distance(Regime regime, double r_k, const Conditioning& conditioning,
                                  const ChannelParams& params);

/// link_bounds_at_distance averaged over the regime's distance range:
/// weighted by f_{r_k} (k-nearest, unnormalised) or by 2r/(hi^2-lo^2) (ppp).
BoundPair averaged_bounds(Regime regime, const Conditioning& conditioning,
                          const ChannelParams& params, const QuadratureOptions& options = {});

/// D2 + D1 + C + A + B.
BoundPair total_bounds(const Conditioning& conditioning, const ChannelParams& params,
                       const QuadratureOptions& options = {});

}  // namespace coopmac
