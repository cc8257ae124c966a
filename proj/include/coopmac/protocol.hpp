#pragma once

// Helper enumeration, the tier-priority selector, the random-selection
// baseline and the CoopRTS/HTS/CTS/data/ACK exchange.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "coopmac/channel.hpp"
#include "coopmac/geometry.hpp"
#include "coopmac/link_table.hpp"
#include "coopmac/rng.hpp"

namespace coopmac {

struct HelperCandidate {
  std::size_t node_index = 0;
  Point2D position;
  double d_sh = 0.0;
  double d_hd = 0.0;
  int tier = 0;
  double rate_mbps = 0.0;  // exact relay rate of the tier
  double g_score = 0.0;    // two-hop success probability
};

/// Every node of `realization` (other than nodes sitting exactly on S or D)
/// that falls in a tier region of the S-D link. Empty for class A/B links.
std::vector<HelperCandidate> enumerate_candidates(const NetworkRealization& realization,
                                                  Point2D source, Point2D dest,
                                                  const ChannelParams& params);

/// Same scan over a bare point list; the realization overload forwards here.
std::vector<HelperCandidate> enumerate_candidates(std::span<const Point2D> nodes,
                                                  Point2D source, Point2D dest,
                                                  const ChannelParams& params);

/// Trial order of the tier-priority scheme: ascending tier, then descending
/// g_score; ties go to the smaller d_SH, then the smaller node index.
std::vector<HelperCandidate> select_helper_proposed(std::vector<HelperCandidate> candidates);

/// Uniformly random permutation, ignoring tier and g_score.
std::vector<HelperCandidate> select_helper_conventional(std::vector<HelperCandidate> candidates,
                                                        Rng& rng);

enum class EstimatorMode { analytic, sampled };
enum class ExchangeMode { cooperative, direct, failed };

struct ExchangeOptions {
  int max_backoffs = 3;
};

struct SelectionOutcome {
  ExchangeMode mode = ExchangeMode::direct;
  std::optional<HelperCandidate> helper;
  double rate_mbps = 0.0;
  double success_probability = 0.0;  // of the data hops on the chosen link
  bool delivered = false;            // sampled mode only
  double throughput_mbps = 0.0;      // rate * probability (analytic) or rate * delivered
  int attempts = 0;                  // CoopRTS + RTS frames sent
  int backoffs = 0;
};

/// Analytic mode: the first entry of `order` (or the direct link when empty)
/// defines the link; throughput is rate times its success probability.
/// Sampled mode: the handshake/data/ACK sequence with per-frame shadowing
/// draws and a bounded backoff counter.
SelectionOutcome run_exchange(std::span<const HelperCandidate> order, double d_sd,
                              const ChannelParams& params, EstimatorMode mode, Rng& rng,
                              const ExchangeOptions& options = {});

/// One Bernoulli draw of data delivery over the link that the analytic rule
/// picks (first of `order`, else direct). Mean equals the analytic throughput.
double sample_link_throughput(std::span<const HelperCandidate> order, double d_sd,
                              const ChannelParams& params, Rng& rng);

}  // namespace coopmac
