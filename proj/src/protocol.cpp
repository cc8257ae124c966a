#include "coopmac/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace coopmac {
namespace {

// Longest hop that any tier of the class admits.
double max_helper_hop(LinkClass c) {
  return c == LinkClass::C ? kBand5p5Edge : kBand2Edge;
}

}  // namespace

std::vector<HelperCandidate> enumerate_candidates(std::span<const Point2D> nodes,
                                                  Point2D source, Point2D dest,
                                                  const ChannelParams& params) {
  std::vector<HelperCandidate> out;
  const LinkClass link = classify_link(distance(source, dest));
  if (link == LinkClass::A || link == LinkClass::B) return out;

  const double reach = max_helper_hop(link);
  const double reach2 = reach * reach;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Point2D p = nodes[i];
    if (p == source || p == dest) continue;
    const double dx = p.x - dest.x;
    const double dy = p.y - dest.y;
    if (dx * dx + dy * dy >= reach2) continue;
    const double d_hd = std::hypot(dx, dy);
    const double d_sh = distance(p, source);
    const auto tier = classify_helper_tier(d_sh, d_hd, link);
    if (!tier) continue;
    out.push_back({i, p, d_sh, d_hd, *tier, tier_spec(link, *tier).rate_mbps(),
                   g_joint(d_sh, d_hd, params)});
  }
  return out;
}

std::vector<HelperCandidate> enumerate_candidates(const NetworkRealization& realization,
                                                  Point2D source, Point2D dest,
                                                  const ChannelParams& params) {
  return enumerate_candidates(std::span<const Point2D>(realization.nodes()), source, dest,
                              params);
}

std::vector<HelperCandidate> select_helper_proposed(std::vector<HelperCandidate> candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](const HelperCandidate& a, const HelperCandidate& b) {
              if (a.tier != b.tier) return a.tier < b.tier;
              if (a.g_score != b.g_score) return a.g_score > b.g_score;
              if (a.d_sh != b.d_sh) return a.d_sh < b.d_sh;
              return a.node_index < b.node_index;
            });
  return candidates;
}

std::vector<HelperCandidate> select_helper_conventional(std::vector<HelperCandidate> candidates,
                                                        Rng& rng) {
  // Fisher-Yates with an explicit distribution so the permutation is
  // reproducible for a given rng state.
  for (std::size_t i = candidates.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(candidates[i - 1], candidates[pick(rng)]);
  }
  return candidates;
}

SelectionOutcome run_exchange(std::span<const HelperCandidate> order, double d_sd,
                              const ChannelParams& params, EstimatorMode mode, Rng& rng,
                              const ExchangeOptions& options) {
  const double direct = direct_rate(classify_link(d_sd));
  SelectionOutcome out;

  if (mode == EstimatorMode::analytic) {
    if (order.empty()) {
      out.mode = ExchangeMode::direct;
      out.rate_mbps = direct;
      out.success_probability = p_success_direct(d_sd, params);
    } else {
      out.mode = ExchangeMode::cooperative;
      out.helper = order.front();
      out.rate_mbps = order.front().rate_mbps;
      out.success_probability = order.front().g_score;
    }
    out.attempts = 1;
    out.throughput_mbps = out.rate_mbps * out.success_probability;
    return out;
  }

  const auto hop = [&](double d) { return sample_hop_success(d, params, rng); };
  for (;;) {
    const HelperCandidate* chosen = nullptr;
    for (const auto& c : order) {
      ++out.attempts;  // CoopRTS
      if (hop(c.d_sh)) {
        chosen = &c;  // HTS received
        break;
      }
    }
    if (chosen == nullptr) ++out.attempts;  // RTS

    bool acked = false;
    if (hop(d_sd)) {  // CTS
      const bool data = chosen ? (hop(chosen->d_sh) && hop(chosen->d_hd)) : hop(d_sd);
      acked = data && hop(d_sd);
    }
    if (acked) {
      out.delivered = true;
      if (chosen) {
        out.mode = ExchangeMode::cooperative;
        out.helper = *chosen;
        out.rate_mbps = chosen->rate_mbps;
        out.success_probability = chosen->g_score;
      } else {
        out.mode = ExchangeMode::direct;
        out.rate_mbps = direct;
        out.success_probability = p_success_direct(d_sd, params);
      }
      out.throughput_mbps = out.rate_mbps;
      return out;
    }
    if (out.backoffs >= options.max_backoffs) break;
    ++out.backoffs;
  }
  out.mode = ExchangeMode::failed;
  out.throughput_mbps = 0.0;
  return out;
}

double sample_link_throughput(std::span<const HelperCandidate> order, double d_sd,
                              const ChannelParams& params, Rng& rng) {
  if (order.empty()) {
    return sample_hop_success(d_sd, params, rng) ? direct_rate(classify_link(d_sd)) : 0.0;
  }
  const auto& h = order.front();
  const bool sh = sample_hop_success(h.d_sh, params, rng);
  const bool hd = sample_hop_success(h.d_hd, params, rng);
  return sh && hd ? h.rate_mbps : 0.0;
}

}  // namespace coopmac
