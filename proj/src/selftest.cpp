#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "coopmac/bounds.hpp"
#include "coopmac/channel.hpp"
#include "coopmac/cli.hpp"
#include "coopmac/geometry.hpp"
#include "coopmac/monte_carlo.hpp"
#include "coopmac/protocol.hpp"

namespace coopmac {
namespace {

struct Check {
  std::string name;
  std::function<bool()> run;
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::vector<Check> checks() {
  const auto p = ChannelParams::defaults();
  return {
      {"q_function symmetry",
       [] { return near(q_function(0.0), 0.5, 1e-15) && near(q_function(1.25) + q_function(-1.25), 1.0, 1e-15); }},
      {"Ps at band edges",
       [p] {
         return near(p_success_direct(48.2, p), 0.894611450150308, 1e-12) &&
                near(p_success_direct(67.1, p), 0.703001922590382, 1e-12) &&
                near(p_success_direct(100.0, p), 0.369441340181764, 1e-12);
       }},
      {"lens area limits",
       [] {
         return near(lens_area(48.2, 48.2, 0.0), std::numbers::pi * 48.2 * 48.2, 1e-9) &&
                lens_area(48.2, 48.2, 96.4) == 0.0 &&
                near(lens_area(48.2, 48.2, 70.0), 1202.73458029022, 1e-8);
       }},
      {"class C regions partition the 67.1 lens",
       [] {
         const auto r = tier_region_areas(LinkClass::C, 70.0);
         return near(r.total(), lens_area(67.1, 67.1, 70.0), 1e-8);
       }},
      {"tier 1 absent beyond 96.4 m",
       [] { return tier_region_areas(LinkClass::D, 97.0).areas[0] == 0.0; }},
      {"tier probabilities sum to one",
       [] {
         const auto v = tier_probabilities(LinkClass::D, 85.0, Conditioning::ppp(0.002));
         double s = v.residual;
         for (double t : v.tiers) s += t;
         return near(s, 1.0, 1e-12);
       }},
      {"nearest-neighbour pdf integrates to one",
       [] {
         const double m = integrate_against_nn_pdf([](double) { return 1.0; }, 0.0, 400.0, 5,
                                                   0.0005);
         return near(m, 1.0, 1e-6);
       }},
      {"bounds ordered and monotone in density",
       [p] {
         const auto a = averaged_bounds(Regime::C, Conditioning::ppp(0.0005), p);
         const auto b = averaged_bounds(Regime::C, Conditioning::ppp(0.005), p);
         return a.lower <= a.upper && b.lower <= b.upper && a.upper <= b.upper &&
                a.lower <= b.lower;
       }},
      {"Monte-Carlo bracketed by bounds",
       [p] {
         ExperimentConfig cfg;
         cfg.densities = {0.002};
         cfg.schemes = {Scheme::proposed};
         cfg.trials = 4000;
         cfg.seed = 11;
         cfg.workers = 1;
         const auto est = estimate_throughput(cfg).front();
         const auto b = averaged_bounds(Regime::C, Conditioning::ppp(0.002), p);
         return est.mean >= b.lower - 3 * est.std_error && est.mean <= b.upper + 3 * est.std_error;
       }},
      {"Monte-Carlo deterministic across worker counts",
       [] {
         ExperimentConfig cfg;
         cfg.densities = {0.001};
         cfg.trials = 3000;
         cfg.seed = 5;
         cfg.workers = 1;
         const auto a = estimate_throughput(cfg);
         cfg.workers = 3;
         const auto b = estimate_throughput(cfg);
         for (std::size_t i = 0; i < a.size(); ++i) {
           if (a[i].mean != b[i].mean || a[i].std_error != b[i].std_error) return false;
         }
         return true;
       }},
  };
}

}  // namespace

bool run_selftest(std::ostream& out) {
  bool all = true;
  for (const auto& c : checks()) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      out << "  exception: " << e.what() << "\n";
    }
    out << (ok ? "PASS " : "FAIL ") << c.name << "\n";
    all = all && ok;
  }
  out << (all ? "selftest passed\n" : "selftest FAILED\n");
  return all;
}

}  // namespace coopmac
