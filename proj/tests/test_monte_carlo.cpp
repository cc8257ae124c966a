#include <cmath>
#include <string>

#include "coopmac/bounds.hpp"
#include "coopmac/errors.hpp"
#include "coopmac/monte_carlo.hpp"
#include "doctest.h"

using namespace coopmac;

namespace {

ExperimentConfig small(std::uint64_t trials, std::vector<double> densities = {0.002}) {
  ExperimentConfig cfg;
  cfg.densities = std::move(densities);
  cfg.trials = trials;
  cfg.workers = 1;
  return cfg;
}

}  // namespace

TEST_SUITE("monte_carlo") {

TEST_CASE("density grid") {
  const auto g = default_density_grid();
  REQUIRE(g.size() == 10);
  CHECK(g.front() == 0.0005);
  CHECK(std::abs(g.back() - 0.005) < 1e-15);
}

TEST_CASE("results do not depend on the worker count") {
  auto cfg = small(3000);
  cfg.regimes = {Regime::C, Regime::D1};
  const auto one = estimate_throughput(cfg);
  for (unsigned w : {2u, 3u, 8u}) {
    cfg.workers = w;
    const auto many = estimate_throughput(cfg);
    REQUIRE(many.size() == one.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      CHECK(many[i].mean == one[i].mean);
      CHECK(many[i].std_error == one[i].std_error);
    }
  }
  cfg.seed = 2;
  CHECK(estimate_throughput(cfg)[0].mean != one[0].mean);
}

TEST_CASE("output layout") {
  auto cfg = small(500, {0.001, 0.003});
  cfg.regimes = {Regime::A, Regime::B, Regime::C, Regime::D1, Regime::D2};
  cfg.include_total = true;
  const auto est = estimate_throughput(cfg);
  CHECK(est.size() == 6 * 2 * 2);
  double sum = 0.0, var = 0.0;
  for (const auto& e : est) {
    if (e.density == 0.001 && e.scheme == Scheme::proposed && e.regime != "total") {
      sum += e.mean;
      var += e.std_error * e.std_error;
    }
  }
  bool found = false;
  for (const auto& e : est) {
    if (e.regime == "total" && e.density == 0.001 && e.scheme == Scheme::proposed) {
      found = true;
      CHECK(std::abs(e.mean - sum) < 1e-12);
      CHECK(std::abs(e.std_error - std::sqrt(var)) < 1e-12);
    }
  }
  CHECK(found);
  cfg.regimes = {Regime::C};
  CHECK_THROWS_AS(estimate_throughput(cfg), InvalidParameter);
}

TEST_CASE("standard error shrinks as one over root n") {
  auto cfg = small(4000);
  cfg.schemes = {Scheme::conventional};
  const double a = estimate_throughput(cfg)[0].std_error;
  cfg.trials = 64000;
  const double b = estimate_throughput(cfg)[0].std_error;
  CHECK(a / b == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("without helpers both schemes reduce to the direct link") {
  auto cfg = small(40000, {0.004});
  cfg.suppress_helpers = true;
  const auto est = estimate_throughput(cfg);
  const double direct =
      direct_link_throughput(LinkClass::C, Conditioning::ppp(0.004), cfg.channel);
  for (const auto& e : est) CHECK(std::abs(e.mean - direct) < 3 * e.std_error + 1e-3);
  CHECK(est[0].mean == est[1].mean);
}

TEST_CASE("sampled and analytic estimators agree") {
  auto cfg = small(20000, {0.002});
  const auto a = estimate_throughput(cfg);
  cfg.mode = EstimatorMode::sampled;
  const auto s = estimate_throughput(cfg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double se = std::hypot(a[i].std_error, s[i].std_error);
    CHECK(std::abs(a[i].mean - s[i].mean) < 4 * se);
    REQUIRE(s[i].protocol.has_value());
    CHECK(s[i].protocol->mean_attempts >= 1.0);
    CHECK(s[i].protocol->delivered_fraction > 0.5);
    CHECK(s[i].protocol->delivered_fraction <= 1.0);
  }
  CHECK_FALSE(a[0].protocol.has_value());
}

TEST_CASE("estimates fall inside the averaged bounds") {
  SUBCASE("ppp") {
    auto cfg = small(20000, {0.001, 0.004});
    cfg.schemes = {Scheme::proposed};
    cfg.regimes = {Regime::C, Regime::D1, Regime::D2};
    for (const auto& e : estimate_throughput(cfg)) {
      const auto b = averaged_bounds(parse_regime(e.regime), Conditioning::ppp(e.density),
                                     cfg.channel);
      CHECK(e.mean >= b.lower - 3 * e.std_error);
      CHECK(e.mean <= b.upper + 3 * e.std_error);
    }
  }
  SUBCASE("k-nearest") {
    auto cfg = small(40000, {0.0005});
    cfg.schemes = {Scheme::proposed};
    cfg.conditioning = Conditioning::Kind::k_nearest;
    cfg.k = 5;
    cfg.regimes = {Regime::C, Regime::D1};
    for (const auto& e : estimate_throughput(cfg)) {
      const auto b = averaged_bounds(parse_regime(e.regime),
                                     Conditioning::k_nearest(5, e.density), cfg.channel);
      CHECK(e.mean >= b.lower - 3 * e.std_error);
      CHECK(e.mean <= b.upper + 3 * e.std_error);
    }
  }
}

TEST_CASE("tier-priority selection never loses to random selection") {
  auto cfg = small(5000, {0.001, 0.005});
  const auto est = estimate_throughput(cfg);
  for (std::size_t i = 0; i + 1 < est.size(); i += 2) {
    REQUIRE(est[i].scheme == Scheme::proposed);
    CHECK(est[i].mean >= est[i + 1].mean);
  }
}

TEST_CASE("contour grid") {
  const auto p = ChannelParams::defaults();
  const auto g = contour_grid(Regime::C, 70, 0.5, p);
  CHECK(g.cells.size() > 1000);
  bool midpoint = false;
  for (const auto& c : g.cells) {
    if (c.x == 0.0 && c.y == 0.0) {
      midpoint = true;
      CHECK(c.tier == 1);
      CHECK(std::abs(*c.throughput_mbps - 5.21977776121272) < 1e-11);
    }
    CHECK(c.tier.has_value() == c.throughput_mbps.has_value());
    if (c.tier) {
      const auto b = tier_bound_pair(Regime::C, *c.tier, 70, p);
      CHECK(*c.throughput_mbps >= b.lower - 1e-12);
      CHECK(*c.throughput_mbps <= b.upper + 1e-12);
    }
  }
  CHECK(midpoint);
  for (const auto& c : contour_grid(Regime::D2, 98, 1.0, p).cells) CHECK(c.tier != 1);
  CHECK_THROWS_AS(contour_grid(Regime::A, 30, 0.5, p), InvalidParameter);
  CHECK_THROWS_AS(contour_grid(Regime::C, 80, 0.5, p), InvalidParameter);
  CHECK_THROWS_AS(contour_grid(Regime::C, 70, 0.0, p), InvalidParameter);
  CHECK(default_contour_distance(Regime::D1) == doctest::Approx(85.55));
}

TEST_CASE("figure ids") {
  FigureOverrides fo;
  fo.experiment.trials = 200;
  fo.experiment.workers = 1;
  fo.experiment.densities = {0.001, 0.002};
  const auto f7 = reproduce_figure("fig7", fo);
  REQUIRE(f7.rows.size() == 2);
  CHECK(f7.columns[0].name == "lambda");
  CHECK(f7.number(0, "lower") <= f7.number(0, "upper"));
  const auto f9 = reproduce_figure("fig9", fo);
  CHECK(f9.rows.size() == 4);
  CHECK(f9.columns[1].name == "regime");
  fo.contour_resolution = 2.0;
  const auto c = reproduce_figure("contour_d1", fo);
  CHECK(c.columns.size() == 4);
  try {
    reproduce_figure("fig8", fo);
    FAIL("expected an exception");
  } catch (const InvalidParameter& e) {
    CHECK(std::string(e.what()).find("contour_d2") != std::string::npos);
  }
}

}
