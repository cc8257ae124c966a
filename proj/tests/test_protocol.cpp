#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "coopmac/bounds.hpp"
#include "coopmac/errors.hpp"
#include "coopmac/protocol.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coopmac;

namespace {

HelperCandidate cand(std::size_t idx, int tier, double g, double d_sh = 40.0) {
  HelperCandidate c;
  c.node_index = idx;
  c.tier = tier;
  c.g_score = g;
  c.d_sh = d_sh;
  c.d_hd = 40.0;
  c.rate_mbps = tier_spec(LinkClass::D, tier).rate_mbps();
  return c;
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("link classes") {
  CHECK(classify_link(30) == LinkClass::A);
  CHECK(direct_rate(classify_link(30)) == 11.0);
  CHECK(classify_link(70) == LinkClass::C);
  CHECK(direct_rate(LinkClass::C) == 2.0);
  CHECK(classify_link(100) == LinkClass::D);
  CHECK(classify_link(48.2) == LinkClass::B);
  CHECK(classify_link(74.7) == LinkClass::D);
  CHECK_THROWS_AS(classify_link(100.01), OutOfRange);
  CHECK_THROWS_AS(classify_link(-1), InvalidParameter);
}

TEST_CASE("cooperative rates") {
  CHECK(coop_rate(11, 11) == 5.5);
  CHECK(coop_rate(11, 5.5) == doctest::Approx(11.0 / 3.0).epsilon(1e-15));
  CHECK(coop_rate(5.5, 2) == doctest::Approx(22.0 / 15.0).epsilon(1e-15));
  for (LinkClass c : {LinkClass::C, LinkClass::D}) {
    double prev = 1e9;
    for (const auto& t : tier_table(c)) {
      CHECK(t.rate_mbps() <= prev);
      CHECK(std::abs(t.rate_mbps() - t.printed_rate) < 0.005);
      prev = t.rate_mbps();
    }
  }
  CHECK(tier_count(LinkClass::A) == 0);
  CHECK_THROWS_AS(tier_spec(LinkClass::C, 4), InvalidParameter);
}

TEST_CASE("enumerate_candidates") {
  const auto p = ChannelParams::defaults();
  const Point2D s{-35, 0}, d{35, 0};
  SUBCASE("no nodes in any region") {
    std::vector<Point2D> nodes{{200, 200}, {-150, 0}};
    CHECK(enumerate_candidates(nodes, s, d, p).empty());
  }
  SUBCASE("single node at the midpoint") {
    std::vector<Point2D> nodes{{0, 0}};
    const auto c = enumerate_candidates(nodes, s, d, p);
    REQUIRE(c.size() == 1);
    CHECK(c[0].tier == 1);
    CHECK(c[0].rate_mbps == 5.5);
    CHECK(std::abs(c[0].g_score - 0.949050502038676) < 1e-12);
  }
  SUBCASE("S and D themselves are skipped") {
    std::vector<Point2D> nodes{s, d, {0, 10}};
    CHECK(enumerate_candidates(nodes, s, d, p).size() == 1);
  }
  SUBCASE("class A and B links have no candidates") {
    std::vector<Point2D> nodes{{0, 0}};
    CHECK(enumerate_candidates(nodes, {-20, 0}, {20, 0}, p).empty());
    CHECK(enumerate_candidates(nodes, {-30, 0}, {30, 0}, p).empty());
  }
  SUBCASE("no tier 1 beyond 96.4 m") {
    const auto real = sample_ppp(0.01, default_window(), 3);
    const auto c = enumerate_candidates(real, {97, 0}, {0, 0}, p);
    CHECK_FALSE(c.empty());
    for (const auto& h : c) CHECK(h.tier != 1);
  }
  SUBCASE("annotations agree with the table and the channel") {
    const auto real = sample_ppp(0.005, default_window(), 4);
    const Point2D src{85, 0};
    const auto c = enumerate_candidates(real, src, {0, 0}, p);
    std::size_t expected = 0;
    for (const auto& n : real.nodes()) {
      if (oracle::table_tier(distance(n, src), std::hypot(n.x, n.y), 'D') > 0) ++expected;
    }
    CHECK(c.size() == expected);
    for (const auto& h : c) {
      CHECK(h.tier == oracle::table_tier(h.d_sh, h.d_hd, 'D'));
      CHECK(h.g_score > 0.0);
      CHECK(h.g_score < 1.0);
      CHECK(h.g_score == g_joint(h.d_sh, h.d_hd, p));
    }
  }
}

TEST_CASE("proposed order") {
  SUBCASE("tier beats g") {
    const auto o = select_helper_proposed({cand(0, 2, 0.9), cand(1, 1, 0.7)});
    CHECK(o[0].node_index == 1);
  }
  SUBCASE("g descending within a tier") {
    const auto o = select_helper_proposed({cand(0, 1, 0.80), cand(1, 1, 0.85)});
    CHECK(o[0].g_score == 0.85);
  }
  SUBCASE("ties go to smaller d_sh, then node index") {
    auto o = select_helper_proposed({cand(0, 1, 0.8, 45), cand(1, 1, 0.8, 30)});
    CHECK(o[0].node_index == 1);
    o = select_helper_proposed({cand(5, 1, 0.8, 30), cand(2, 1, 0.8, 30)});
    CHECK(o[0].node_index == 2);
  }
  SUBCASE("order is invariant under a monotone transform of g") {
    std::mt19937_64 g(9);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    std::uniform_int_distribution<int> t(1, 5);
    std::vector<HelperCandidate> a;
    for (std::size_t i = 0; i < 40; ++i) a.push_back(cand(i, t(g), u(g), u(g) * 50));
    auto b = a;
    for (auto& c : b) c.g_score = std::log(c.g_score) * 3 + 7;
    const auto oa = select_helper_proposed(a), ob = select_helper_proposed(b);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(oa[i].node_index == ob[i].node_index);
    for (std::size_t i = 1; i < oa.size(); ++i) CHECK(oa[i - 1].tier <= oa[i].tier);
  }
  CHECK(select_helper_proposed({}).empty());
}

TEST_CASE("conventional order is a uniform permutation") {
  Rng rng(8);
  CHECK(select_helper_conventional({cand(4, 2, 0.5)}, rng)[0].node_index == 4);
  CHECK(select_helper_conventional({}, rng).empty());
  const std::vector<HelperCandidate> three{cand(0, 1, 0.9), cand(1, 2, 0.5), cand(2, 3, 0.1)};
  const int n = 100000;
  std::map<std::size_t, int> first;
  for (int i = 0; i < n; ++i) ++first[select_helper_conventional(three, rng)[0].node_index];
  const double se = std::sqrt((1.0 / 3) * (2.0 / 3) / n);
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(first[k] / double(n) - 1.0 / 3) < 4 * se);
  const auto perm = select_helper_conventional(three, rng);
  std::set<std::size_t> ids;
  for (const auto& c : perm) ids.insert(c.node_index);
  CHECK(ids.size() == 3);
}

TEST_CASE("analytic exchange") {
  const auto p = ChannelParams::defaults();
  Rng rng(1);
  SUBCASE("empty order falls back to the direct link") {
    const auto o = run_exchange({}, 70.0, p, EstimatorMode::analytic, rng);
    CHECK(o.mode == ExchangeMode::direct);
    CHECK(o.rate_mbps == 2.0);
    CHECK(std::abs(o.success_probability - 0.670457375583675) < 1e-12);
    CHECK_FALSE(o.helper.has_value());
  }
  SUBCASE("midpoint tier-1 helper") {
    std::vector<Point2D> nodes{{0, 0}};
    const auto c = enumerate_candidates(nodes, {-35, 0}, {35, 0}, p);
    const auto o = run_exchange(c, 70.0, p, EstimatorMode::analytic, rng);
    CHECK(o.mode == ExchangeMode::cooperative);
    CHECK(o.rate_mbps == 5.5);
    CHECK(std::abs(o.success_probability - 0.949050502038676) < 1e-12);
    CHECK(o.throughput_mbps == doctest::Approx(5.5 * 0.949050502038676));
  }
}

TEST_CASE("sampled exchange") {
  SUBCASE("near-deterministic channel succeeds on the first handshake") {
    const ChannelParams tight(0, -98, -40, 3, 1e-9);
    std::vector<Point2D> nodes{{0, 5}};
    const auto c = select_helper_proposed(enumerate_candidates(nodes, {-35, 0}, {35, 0}, tight));
    Rng rng(2);
    const auto o = run_exchange(c, 70.0, tight, EstimatorMode::sampled, rng);
    CHECK(o.mode == ExchangeMode::cooperative);
    CHECK(o.delivered);
    CHECK(o.attempts == 1);
    CHECK(o.backoffs == 0);
    CHECK(o.rate_mbps == 5.5);
  }
  SUBCASE("hopeless links exhaust the backoff budget") {
    const ChannelParams deaf(0, -40, -40, 3, 1e-9);
    Rng rng(3);
    const auto o = run_exchange({}, 70.0, deaf, EstimatorMode::sampled, rng, {2});
    CHECK(o.mode == ExchangeMode::failed);
    CHECK(o.backoffs == 2);
    CHECK(o.attempts == 3);
    CHECK(o.throughput_mbps == 0.0);
  }
  SUBCASE("direct delivery frequency matches Ps") {
    const auto p = ChannelParams::defaults();
    Rng rng(4);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_link_throughput({}, 70.0, p, rng);
    const double ps = p_success_direct(70.0, p);
    const double freq = sum / 2.0 / n;
    CHECK(std::abs(freq - ps) < 3 * std::sqrt(ps * (1 - ps) / n));
  }
}

TEST_CASE("selected throughput lies within its tier bounds") {
  const auto p = ChannelParams::defaults();
  Rng rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::set<double> c_rates{5.5, 11.0 / 3.0, 2.75};
  for (int i = 0; i < 300; ++i) {
    const Regime regime = i % 3 == 0 ? Regime::C : (i % 3 == 1 ? Regime::D1 : Regime::D2);
    const auto range = regime_range(regime);
    const double r = range.lo + (range.hi - range.lo) * (0.001 + 0.998 * u(rng));
    const auto real = sample_ppp(0.003, default_window(), rng);
    const auto order = select_helper_proposed(enumerate_candidates(real, {r, 0}, {0, 0}, p));
    const auto o = run_exchange(order, r, p, EstimatorMode::analytic, rng);
    if (o.mode != ExchangeMode::cooperative) continue;
    const auto b = tier_bound_pair(regime, o.helper->tier, r, p);
    CHECK(o.throughput_mbps >= b.lower - 1e-12);
    CHECK(o.throughput_mbps <= b.upper + 1e-12);
    if (regime == Regime::C) CHECK(c_rates.count(o.rate_mbps) == 1);
  }
}

}
