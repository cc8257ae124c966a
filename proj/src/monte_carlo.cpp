#include "coopmac/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "coopmac/errors.hpp"
#include "coopmac/geometry.hpp"

namespace coopmac {
namespace {

using std::numbers::pi;

constexpr std::uint64_t kChunk = 1024;
constexpr std::size_t kSchemes = 2;

// Stream tags under (regime, density, trial).
enum Stream : std::uint64_t {
  kRealization = 0,
  kShuffle = 1,
  kDelivery = 2,   // + scheme
  kHandshake = 4,  // + scheme
};

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

struct SchemeAccumulator {
  Kahan x, x2;
  Kahan attempts, backoffs, cooperative, delivered;

  void merge(const SchemeAccumulator& o) {
    x.add(o.x.sum);
    x2.add(o.x2.sum);
    attempts.add(o.attempts.sum);
    backoffs.add(o.backoffs.sum);
    cooperative.add(o.cooperative.sum);
    delivered.add(o.delivered.sum);
  }
};

using CellAccumulator = std::array<SchemeAccumulator, kSchemes>;

struct Placement {
  double r = 0.0;
  Point2D source;
  std::vector<Point2D> helpers;
  bool in_regime = true;
};

Point2D polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

bool regime_contains(Regime regime, double r) {
  const auto range = regime_range(regime);
  if (regime == Regime::D2) return r > range.lo && r <= range.hi;
  return r >= range.lo && r < range.hi;
}

// D sits at the origin.
Placement place_pair(const ExperimentConfig& cfg, Regime regime, double density, Rng& rng) {
  const auto range = regime_range(regime);
  Placement p;
  if (cfg.conditioning == Conditioning::Kind::ppp) {
    const double lo2 = range.lo * range.lo;
    const double hi2 = range.hi * range.hi;
    do {
      p.r = std::sqrt(lo2 + uniform01(rng) * (hi2 - lo2));
    } while (p.r <= 0.0);
    p.source = polar(p.r, 2.0 * pi * uniform01(rng));
    const auto nodes = sample_ppp(density, Window::centered({}, cfg.window_half_width), rng);
    p.helpers = nodes.nodes();
    return p;
  }
  // lambda pi r_k^2 is Gamma(k, 1) distributed.
  std::gamma_distribution<double> mass(static_cast<double>(cfg.k), 1.0);
  p.r = std::sqrt(mass(rng) / (density * pi));
  p.in_regime = p.r > 0.0 && regime_contains(regime, p.r);
  if (!p.in_regime) return p;
  p.source = polar(p.r, 2.0 * pi * uniform01(rng));
  p.helpers.reserve(static_cast<std::size_t>(cfg.k - 1));
  for (int i = 0; i + 1 < cfg.k; ++i) {
    const double rr = p.r * std::sqrt(uniform01(rng));
    p.helpers.push_back(polar(rr, 2.0 * pi * uniform01(rng)));
  }
  return p;
}

void run_trial(const ExperimentConfig& cfg, Regime regime, double density, std::uint64_t trial,
               CellAccumulator& acc) {
  const auto regime_key = static_cast<std::uint64_t>(regime);
  const auto density_key = std::bit_cast<std::uint64_t>(density);
  const auto stream = [&](std::uint64_t tag) {
    return make_rng(cfg.seed, {regime_key, density_key, trial, tag});
  };

  Rng rng = stream(kRealization);
  const Placement p = place_pair(cfg, regime, density, rng);
  if (!p.in_regime) {
    for (Scheme s : cfg.schemes) {
      auto& a = acc[static_cast<std::size_t>(s)];
      a.x.add(0.0);
      a.x2.add(0.0);
    }
    return;
  }

  const Point2D dest{};
  std::vector<HelperCandidate> candidates;
  if (!cfg.suppress_helpers) {
    candidates = enumerate_candidates(std::span<const Point2D>(p.helpers), p.source, dest,
                                      cfg.channel);
  }

  for (Scheme s : cfg.schemes) {
    const auto si = static_cast<std::uint64_t>(s);
    std::vector<HelperCandidate> order;
    if (s == Scheme::proposed) {
      order = select_helper_proposed(candidates);
    } else {
      Rng shuffle = stream(kShuffle);
      order = select_helper_conventional(candidates, shuffle);
    }
    auto& a = acc[si];
    double value = 0.0;
    if (cfg.mode == EstimatorMode::analytic) {
      thread_local Rng unused;  // the analytic path draws nothing
      value = run_exchange(order, p.r, cfg.channel, EstimatorMode::analytic, unused).throughput_mbps;
    } else {
      Rng delivery = stream(kDelivery + si);
      value = sample_link_throughput(order, p.r, cfg.channel, delivery);
      Rng handshake = stream(kHandshake + si);
      const auto walk = run_exchange(order, p.r, cfg.channel, EstimatorMode::sampled, handshake,
                                     ExchangeOptions{cfg.max_backoffs});
      a.attempts.add(walk.attempts);
      a.backoffs.add(walk.backoffs);
      a.cooperative.add(walk.mode == ExchangeMode::cooperative ? 1.0 : 0.0);
      a.delivered.add(walk.delivered ? 1.0 : 0.0);
    }
    a.x.add(value);
    a.x2.add(value * value);
  }
}

CellAccumulator run_cell(const ExperimentConfig& cfg, Regime regime, double density) {
  const std::uint64_t chunks = (cfg.trials + kChunk - 1) / kChunk;
  std::vector<CellAccumulator> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto work = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const std::uint64_t end = std::min(cfg.trials, (c + 1) * kChunk);
        for (std::uint64_t t = c * kChunk; t < end; ++t) run_trial(cfg, regime, density, t, partial[c]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };

  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  CellAccumulator total{};
  for (const auto& part : partial) {
    for (std::size_t s = 0; s < kSchemes; ++s) total[s].merge(part[s]);
  }
  return total;
}

SimEstimate summarise(const SchemeAccumulator& a, const ExperimentConfig& cfg, Scheme scheme,
                      Regime regime, double density) {
  const auto n = static_cast<double>(cfg.trials);
  SimEstimate e;
  e.mean = a.x.sum / n;
  const double var = cfg.trials > 1 ? std::max(0.0, (a.x2.sum - n * e.mean * e.mean) / (n - 1.0))
                                    : 0.0;
  e.std_error = std::sqrt(var / n);
  e.trials = cfg.trials;
  e.density = density;
  e.scheme = scheme;
  e.regime = to_string(regime);
  e.seed = cfg.seed;
  if (cfg.mode == EstimatorMode::sampled) {
    // Out-of-regime trials count as no exchange.
    e.protocol = ProtocolStats{a.attempts.sum / n, a.backoffs.sum / n, a.cooperative.sum / n,
                               a.delivered.sum / n};
  }
  return e;
}

const std::vector<Regime>& all_regimes() {
  static const std::vector<Regime> r{Regime::A, Regime::B, Regime::C, Regime::D1, Regime::D2};
  return r;
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::proposed ? "proposed" : "conventional"; }

Scheme parse_scheme(std::string_view s) {
  if (s == "proposed") return Scheme::proposed;
  if (s == "conventional") return Scheme::conventional;
  throw InvalidParameter("unknown scheme '" + std::string(s) + "'");
}

std::vector<double> default_density_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.0005 * i);
  return grid;
}

void ExperimentConfig::validate() const {
  if (densities.empty()) throw InvalidParameter("densities: at least one value required");
  for (double d : densities) {
    if (!(d > 0.0) || !std::isfinite(d)) throw InvalidParameter("densities: values must be > 0");
  }
  if (schemes.empty()) throw InvalidParameter("schemes: at least one scheme required");
  if (regimes.empty()) throw InvalidParameter("regimes: at least one regime required");
  if (trials < 1) throw InvalidParameter("trials: must be >= 1");
  if (k < 1) throw InvalidParameter("k: neighbour order must be >= 1");
  if (!(window_half_width >= kMaxRange)) {
    throw InvalidParameter("window_half_width: must be >= 100 m so the source lies inside");
  }
  if (max_backoffs < 0) throw InvalidParameter("max_backoffs: must be >= 0");
  if (include_total) {
    for (Regime r : all_regimes()) {
      if (std::find(regimes.begin(), regimes.end(), r) == regimes.end()) {
        throw InvalidParameter("include_total: requires regimes A, B, C, D1 and D2");
      }
    }
  }
}

Conditioning ExperimentConfig::conditioning_for(double density) const {
  return conditioning == Conditioning::Kind::ppp ? Conditioning::ppp(density)
                                                 : Conditioning::k_nearest(k, density);
}

std::vector<SimEstimate> estimate_throughput(const ExperimentConfig& config) {
  config.validate();
  std::vector<SimEstimate> out;
  for (Regime regime : config.regimes) {
    for (double density : config.densities) {
      const auto acc = run_cell(config, regime, density);
      for (Scheme s : config.schemes) {
        out.push_back(summarise(acc[static_cast<std::size_t>(s)], config, s, regime, density));
      }
    }
  }
  if (config.include_total) {
    const std::size_t cells = out.size();
    for (double density : config.densities) {
      for (Scheme s : config.schemes) {
        SimEstimate t;
        t.trials = config.trials;
        t.density = density;
        t.scheme = s;
        t.regime = "total";
        t.seed = config.seed;
        Kahan mean, var;
        for (std::size_t i = 0; i < cells; ++i) {
          const auto& e = out[i];
          if (e.density != density || e.scheme != s) continue;
          mean.add(e.mean);
          var.add(e.std_error * e.std_error);
        }
        t.mean = mean.sum;
        t.std_error = std::sqrt(var.sum);
        out.push_back(t);
      }
    }
  }
  return out;
}

double default_contour_distance(Regime regime) {
  switch (regime) {
    case Regime::C: return 70.9;
    case Regime::D1: return 85.55;
    case Regime::D2: return 98.2;
    default: break;
  }
  throw InvalidParameter("contours exist only for regimes C, D1 and D2");
}

ContourGrid contour_grid(Regime regime, double r_k, double resolution, const ChannelParams& params) {
  if (regime == Regime::A || regime == Regime::B) {
    throw InvalidParameter("contours exist only for regimes C, D1 and D2");
  }
  const auto range = regime_range(regime);
  if (!(r_k >= range.lo && r_k <= range.hi)) {
    throw InvalidParameter("r_k outside regime " + to_string(regime));
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw InvalidParameter("grid resolution must be > 0");
  }
  const LinkClass link = regime_class(regime);
  const double reach = link == LinkClass::C ? kBand5p5Edge : kBand2Edge;
  const double half_x = std::max(0.0, reach - r_k / 2.0);
  const double half_y = std::sqrt(std::max(0.0, reach * reach - r_k * r_k / 4.0));
  const auto nx = static_cast<long>(std::floor(half_x / resolution));
  const auto ny = static_cast<long>(std::floor(half_y / resolution));

  ContourGrid grid{regime, r_k, resolution, {}};
  const Point2D s{-r_k / 2.0, 0.0};
  const Point2D d{r_k / 2.0, 0.0};
  for (long j = -ny; j <= ny; ++j) {
    for (long i = -nx; i <= nx; ++i) {
      ContourCell cell{static_cast<double>(i) * resolution, static_cast<double>(j) * resolution,
                       std::nullopt, std::nullopt};
      const Point2D h{cell.x, cell.y};
      const double d_sh = distance(h, s);
      const double d_hd = distance(h, d);
      if (const auto tier = classify_helper_tier(d_sh, d_hd, link)) {
        cell.tier = *tier;
        cell.throughput_mbps = tier_spec(link, *tier).rate_mbps() * g_joint(d_sh, d_hd, params);
      }
      grid.cells.push_back(cell);
    }
  }
  return grid;
}

Dataset reproduce_figure(std::string_view id, const FigureOverrides& overrides) {
  const auto contour = [&](Regime regime) {
    const double r_k = overrides.contour_r_k.value_or(default_contour_distance(regime));
    const auto grid =
        contour_grid(regime, r_k, overrides.contour_resolution, overrides.experiment.channel);
    Dataset data;
    data.columns = {{"x", ColumnKind::real},
                    {"y", ColumnKind::real},
                    {"tier", ColumnKind::integer},
                    {"throughput", ColumnKind::mbps}};
    for (const auto& c : grid.cells) {
      std::vector<Cell> row{c.x, c.y, std::monostate{}, std::monostate{}};
      if (c.tier) row[2] = static_cast<std::uint64_t>(*c.tier);
      if (c.throughput_mbps) row[3] = *c.throughput_mbps;
      data.rows.push_back(std::move(row));
    }
    return data;
  };
  if (id == "contour_c") return contour(Regime::C);
  if (id == "contour_d1") return contour(Regime::D1);
  if (id == "contour_d2") return contour(Regime::D2);

  ExperimentConfig cfg = overrides.experiment;
  bool by_regime = false;
  if (id == "fig7") {
    cfg.regimes = {Regime::C};
    cfg.include_total = false;
  } else if (id == "fig9") {
    cfg.regimes = {Regime::D1, Regime::D2};
    cfg.include_total = false;
    by_regime = true;
  } else if (id == "fig10") {
    cfg.regimes = all_regimes();
    cfg.include_total = true;
  } else {
    std::string valid;
    for (auto v : kFigureIds) valid += (valid.empty() ? "" : ", ") + std::string(v);
    throw InvalidParameter("unknown figure id '" + std::string(id) + "'; valid ids: " + valid);
  }

  const auto estimates = estimate_throughput(cfg);
  Dataset data;
  data.columns.push_back({"lambda", ColumnKind::real});
  if (by_regime) data.columns.push_back({"regime", ColumnKind::text});
  for (const char* name : {"upper", "proposed", "conventional", "lower"}) {
    data.columns.push_back({name, ColumnKind::mbps});
  }
  data.columns.push_back({"proposed_stderr", ColumnKind::mbps});
  data.columns.push_back({"conventional_stderr", ColumnKind::mbps});

  std::vector<std::string> groups;
  if (by_regime) {
    for (Regime r : cfg.regimes) groups.push_back(to_string(r));
  } else {
    groups.push_back(id == "fig10" ? "total" : "C");
  }
  for (const auto& group : groups) {
    for (double density : cfg.densities) {
      const auto cond = cfg.conditioning_for(density);
      const BoundPair b = group == "total"
                              ? total_bounds(cond, cfg.channel)
                              : averaged_bounds(parse_regime(group), cond, cfg.channel);
      std::vector<Cell> row{density};
      if (by_regime) row.emplace_back(group);
      Cell proposed, conventional, p_se, c_se;
      for (const auto& e : estimates) {
        if (e.regime != group || e.density != density) continue;
        if (e.scheme == Scheme::proposed) {
          proposed = e.mean;
          p_se = e.std_error;
        } else {
          conventional = e.mean;
          c_se = e.std_error;
        }
      }
      row.insert(row.end(), {b.upper, proposed, conventional, b.lower, p_se, c_se});
      data.rows.push_back(std::move(row));
    }
  }
  return data;
}

}  // namespace coopmac
