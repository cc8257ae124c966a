#include "coopmac/cli.hpp"

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coopmac/bounds.hpp"
#include "coopmac/config.hpp"
#include "coopmac/dataset.hpp"
#include "coopmac/errors.hpp"
#include "coopmac/monte_carlo.hpp"

namespace coopmac {
namespace {

// Flag values as given, keyed by config key; applied after the config file.
struct FlagSet {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> flags;  // (config key, value)
  std::map<std::string, std::string> values;

  void add(CLI::App* app, const std::string& flag, const std::string& key,
           const std::string& help) {
    app->add_option(flag, values[key], help);
    flags.emplace_back(key, flag);
  }

  ConfigOverrides overrides(const CLI::App* app) const {
    ConfigOverrides out;
    for (const auto& [key, flag] : flags) {
      if (app->count(flag) > 0) out.emplace_back(key, values.at(key));
    }
    return out;
  }
};

void add_common(CLI::App* app, FlagSet& fs, bool experiment) {
  app->add_option("--config", fs.config_path, "key=value configuration file");
  fs.add(app, "--class", "class", "link class: A, B, C, D, D1, D2 or all");
  fs.add(app, "--lambda", "lambda", "comma-separated node densities (nodes/m^2)");
  fs.add(app, "--conditioning", "conditioning", "k=<int> or ppp");
  fs.add(app, "--out", "out", "output path (default: standard output)");
  fs.add(app, "--format", "format", "csv or json");
  if (experiment) {
    fs.add(app, "--scheme", "scheme", "proposed, conventional or both");
    fs.add(app, "--trials", "trials", "Monte-Carlo trials per point");
    fs.add(app, "--seed", "seed", "base seed");
    fs.add(app, "--mode", "mode", "analytic or sampled");
    fs.add(app, "--workers", "workers", "worker threads (0: all cores)");
  }
}

RunConfig build_config(const CLI::App* app, const FlagSet& fs) {
  const auto overrides = fs.overrides(app);
  return fs.config_path.empty() ? parse_config("", overrides)
                                : load_config(fs.config_path, overrides);
}

void emit(const Dataset& data, const RunConfig& cfg, std::ostream& out) {
  Dataset stamped = data;
  stamp_provenance(stamped, cfg.experiment.seed, config_hash(cfg));
  const std::string text = cfg.format == OutputFormat::csv ? to_csv(stamped) : to_json(stamped);
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + cfg.out + "'");
  file << text;
  if (!file) throw std::runtime_error("failed writing '" + cfg.out + "'");
}

Dataset bounds_table(const RunConfig& cfg) {
  const auto& e = cfg.experiment;
  Dataset data;
  data.columns = {{"lambda", ColumnKind::real},
                  {"regime", ColumnKind::text},
                  {"conditioning", ColumnKind::text},
                  {"lower", ColumnKind::mbps},
                  {"upper", ColumnKind::mbps}};
  for (double density : e.densities) {
    const auto cond = e.conditioning_for(density);
    for (Regime r : e.regimes) {
      const auto b = averaged_bounds(r, cond, e.channel);
      data.rows.push_back({density, to_string(r), cond.label(), b.lower, b.upper});
    }
    if (e.include_total) {
      const auto b = total_bounds(cond, e.channel);
      data.rows.push_back({density, std::string("total"), cond.label(), b.lower, b.upper});
    }
  }
  return data;
}

Dataset simulate_table(const RunConfig& cfg) {
  const auto estimates = estimate_throughput(cfg.experiment);
  const bool sampled = cfg.experiment.mode == EstimatorMode::sampled;
  Dataset data;
  data.columns = {{"lambda", ColumnKind::real}, {"regime", ColumnKind::text},
                  {"scheme", ColumnKind::text}, {"mean", ColumnKind::mbps},
                  {"stderr", ColumnKind::mbps}, {"trials", ColumnKind::integer}};
  if (sampled) {
    for (const char* name :
         {"mean_attempts", "mean_backoffs", "cooperative_fraction", "delivered_fraction"}) {
      data.columns.push_back({name, ColumnKind::real});
    }
  }
  for (const auto& est : estimates) {
    std::vector<Cell> row{est.density, est.regime, to_string(est.scheme), est.mean,
                          est.std_error, est.trials};
    if (sampled) {
      if (est.protocol) {
        row.insert(row.end(), {est.protocol->mean_attempts, est.protocol->mean_backoffs,
                               est.protocol->cooperative_fraction,
                               est.protocol->delivered_fraction});
      } else {
        row.resize(data.columns.size());
      }
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

Regime contour_regime(const std::string& link_class) {
  if (link_class == "C") return Regime::C;
  if (link_class == "D1") return Regime::D1;
  if (link_class == "D2") return Regime::D2;
  throw ConfigError("class: contours need C, D1 or D2 (got " + link_class + ")");
}

std::string figure_list() {
  std::string s;
  for (auto id : kFigureIds) s += (s.empty() ? "" : ", ") + std::string(id);
  return s;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cooperative-MAC helper selection: bounds, Monte-Carlo and figures", "coopmac"};
  app.require_subcommand(1);

  FlagSet bounds_flags, sim_flags, contour_flags, repro_flags;
  auto* bounds = app.add_subcommand("bounds", "averaged upper/lower throughput bounds");
  add_common(bounds, bounds_flags, false);
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo throughput estimates");
  add_common(simulate, sim_flags, true);
  bool no_helpers = false;
  simulate->add_flag("--no-helpers", no_helpers, "remove every helper (direct links only)");

  auto* contour = app.add_subcommand("contour", "cooperative-throughput grid around one link");
  contour->add_option("--config", contour_flags.config_path, "key=value configuration file");
  contour_flags.add(contour, "--class", "class", "C, D1 or D2");
  contour_flags.add(contour, "--r-k", "contour_r_k", "S-D distance (m)");
  contour_flags.add(contour, "--resolution", "contour_resolution", "grid step (m)");
  contour_flags.add(contour, "--out", "out", "output path");
  contour_flags.add(contour, "--format", "format", "csv or json");

  auto* reproduce = app.add_subcommand("reproduce", "regenerate one figure's data");
  std::string figure;
  reproduce->add_option("figure", figure, "one of: " + figure_list())->required();
  add_common(reproduce, repro_flags, true);
  repro_flags.add(reproduce, "--r-k", "contour_r_k", "S-D distance for contour ids (m)");
  repro_flags.add(reproduce, "--resolution", "contour_resolution", "grid step for contour ids (m)");

  auto* selftest = app.add_subcommand("selftest", "run the built-in oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*selftest) return run_selftest(out) ? kExitOk : kExitRuntime;

    if (*bounds) {
      const auto cfg = build_config(bounds, bounds_flags);
      emit(bounds_table(cfg), cfg, out);
    } else if (*simulate) {
      auto overrides = sim_flags.overrides(simulate);
      if (no_helpers) overrides.emplace_back("suppress_helpers", "true");
      const auto cfg = sim_flags.config_path.empty() ? parse_config("", overrides)
                                                     : load_config(sim_flags.config_path, overrides);
      emit(simulate_table(cfg), cfg, out);
    } else if (*contour) {
      auto overrides = contour_flags.overrides(contour);
      const auto cfg = contour_flags.config_path.empty()
                           ? parse_config("", overrides)
                           : load_config(contour_flags.config_path, overrides);
      const Regime regime = contour_regime(cfg.link_class);
      FigureOverrides fo;
      fo.experiment = cfg.experiment;
      fo.contour_r_k = cfg.contour_r_k;
      fo.contour_resolution = cfg.contour_resolution;
      const std::string id = regime == Regime::C ? "contour_c"
                             : regime == Regime::D1 ? "contour_d1"
                                                    : "contour_d2";
      emit(reproduce_figure(id, fo), cfg, out);
    } else if (*reproduce) {
      bool known = false;
      for (auto id : kFigureIds) known = known || id == figure;
      if (!known) {
        err << "unknown figure '" << figure << "'; valid ids: " << figure_list() << "\n";
        return kExitUsage;
      }
      const auto cfg = build_config(reproduce, repro_flags);
      FigureOverrides fo;
      fo.experiment = cfg.experiment;
      fo.contour_r_k = cfg.contour_r_k;
      fo.contour_resolution = cfg.contour_resolution;
      emit(reproduce_figure(figure, fo), cfg, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace coopmac
