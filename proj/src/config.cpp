#include "coopmac/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <locale>
#include <map>
#include <sstream>

#include "coopmac/errors.hpp"

namespace coopmac {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError(key + ": " + what);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    fail(key, "'" + v + "' is not a finite number");
  }
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    fail(key, "'" + v + "' is not a non-negative integer");
  }
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  const auto u = to_uint(key, v);
  if (u > 1'000'000'000ULL) fail(key, "'" + v + "' is too large");
  return static_cast<int>(u);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(key, "'" + v + "' is not a boolean");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) fail(key, "empty list");
  return out;
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"pt_mw", [](RunConfig& c, auto& k, auto& v) { c.pt_mw = to_double(k, v); }},
      {"pth_dbm", [](RunConfig& c, auto& k, auto& v) { c.pth_dbm = to_double(k, v); }},
      {"k_db", [](RunConfig& c, auto& k, auto& v) { c.k_db = to_double(k, v); }},
      {"alpha", [](RunConfig& c, auto& k, auto& v) { c.alpha = to_double(k, v); }},
      {"sigma_db", [](RunConfig& c, auto& k, auto& v) { c.sigma_db = to_double(k, v); }},
      {"rts_bits", [](RunConfig& c, auto& k, auto& v) { c.frames.rts_bits = to_int(k, v); }},
      {"cooprts_bits", [](RunConfig& c, auto& k, auto& v) { c.frames.cooprts_bits = to_int(k, v); }},
      {"cts_bits", [](RunConfig& c, auto& k, auto& v) { c.frames.cts_bits = to_int(k, v); }},
      {"hts_bits", [](RunConfig& c, auto& k, auto& v) { c.frames.hts_bits = to_int(k, v); }},
      {"data_bytes", [](RunConfig& c, auto& k, auto& v) { c.frames.data_bytes = to_int(k, v); }},
      {"class", [](RunConfig& c, auto& k, auto& v) {
         static const char* valid[] = {"A", "B", "C", "D", "D1", "D2", "all"};
         for (const char* s : valid) {
           if (v == s) {
             c.link_class = v;
             return;
           }
         }
         fail(k, "'" + v + "' is not one of A, B, C, D, D1, D2, all");
       }},
      {"scheme", [](RunConfig& c, auto& k, auto& v) {
         if (v == "both") c.experiment.schemes = {Scheme::proposed, Scheme::conventional};
         else if (v == "proposed") c.experiment.schemes = {Scheme::proposed};
         else if (v == "conventional") c.experiment.schemes = {Scheme::conventional};
         else fail(k, "'" + v + "' is not one of proposed, conventional, both");
       }},
      {"lambda", [](RunConfig& c, auto& k, auto& v) { c.experiment.densities = to_list(k, v); }},
      {"trials", [](RunConfig& c, auto& k, auto& v) { c.experiment.trials = to_uint(k, v); }},
      {"seed", [](RunConfig& c, auto& k, auto& v) { c.experiment.seed = to_uint(k, v); }},
      {"mode", [](RunConfig& c, auto& k, auto& v) {
         if (v == "analytic") c.experiment.mode = EstimatorMode::analytic;
         else if (v == "sampled") c.experiment.mode = EstimatorMode::sampled;
         else fail(k, "'" + v + "' is not one of analytic, sampled");
       }},
      {"conditioning", [](RunConfig& c, auto& k, auto& v) {
         if (v == "ppp") {
           c.experiment.conditioning = Conditioning::Kind::ppp;
         } else if (v.rfind("k=", 0) == 0) {
           c.experiment.conditioning = Conditioning::Kind::k_nearest;
           c.experiment.k = to_int(k, v.substr(2));
         } else {
           fail(k, "'" + v + "' is not 'ppp' or 'k=<int>'");
         }
       }},
      {"window_half_width",
       [](RunConfig& c, auto& k, auto& v) { c.experiment.window_half_width = to_double(k, v); }},
      {"workers", [](RunConfig& c, auto& k, auto& v) {
         c.experiment.workers = static_cast<unsigned>(to_int(k, v));
       }},
      {"suppress_helpers",
       [](RunConfig& c, auto& k, auto& v) { c.experiment.suppress_helpers = to_bool(k, v); }},
      {"max_backoffs",
       [](RunConfig& c, auto& k, auto& v) { c.experiment.max_backoffs = to_int(k, v); }},
      {"contour_r_k", [](RunConfig& c, auto& k, auto& v) { c.contour_r_k = to_double(k, v); }},
      {"contour_resolution",
       [](RunConfig& c, auto& k, auto& v) { c.contour_resolution = to_double(k, v); }},
      {"out", [](RunConfig& c, auto&, auto& v) { c.out = v; }},
      {"format", [](RunConfig& c, auto& k, auto& v) {
         if (v == "csv") c.format = OutputFormat::csv;
         else if (v == "json") c.format = OutputFormat::json;
         else fail(k, "'" + v + "' is not one of csv, json");
       }},
  };
  return table;
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) fail(key, "unknown key");
  it->second(cfg, key, value);
}

std::vector<Regime> regimes_for(const std::string& link_class) {
  if (link_class == "A") return {Regime::A};
  if (link_class == "B") return {Regime::B};
  if (link_class == "C") return {Regime::C};
  if (link_class == "D") return {Regime::D1, Regime::D2};
  if (link_class == "D1") return {Regime::D1};
  if (link_class == "D2") return {Regime::D2};
  return {Regime::A, Regime::B, Regime::C, Regime::D1, Regime::D2};
}

void finalise(RunConfig& c) {
  if (!(c.pt_mw > 0.0)) fail("pt_mw", "must be > 0");
  if (!(c.sigma_db > 0.0)) fail("sigma_db", "must be > 0 (got " + shortest(c.sigma_db) + ")");
  if (!(c.alpha >= 2.0 && c.alpha <= 7.0)) {
    fail("alpha", "must lie in [2, 7] (got " + shortest(c.alpha) + ")");
  }
  const std::pair<const char*, int> frames[] = {{"rts_bits", c.frames.rts_bits},
                                                {"cooprts_bits", c.frames.cooprts_bits},
                                                {"cts_bits", c.frames.cts_bits},
                                                {"hts_bits", c.frames.hts_bits},
                                                {"data_bytes", c.frames.data_bytes}};
  for (const auto& [key, v] : frames) {
    if (v <= 0) fail(key, "must be > 0");
  }
  if (c.experiment.trials < 1) fail("trials", "must be >= 1");
  if (c.experiment.k < 1) fail("conditioning", "k must be >= 1");
  for (double d : c.experiment.densities) {
    if (!(d > 0.0)) fail("lambda", "densities must be > 0 (got " + shortest(d) + ")");
  }
  if (!(c.experiment.window_half_width >= kMaxRange)) {
    fail("window_half_width", "must be >= 100 m");
  }
  if (c.contour_r_k && !(*c.contour_r_k > 0.0)) fail("contour_r_k", "must be > 0");
  if (!(c.contour_resolution > 0.0)) fail("contour_resolution", "must be > 0");

  c.experiment.channel = c.channel();
  c.experiment.regimes = regimes_for(c.link_class);
  c.experiment.include_total = c.link_class == "all";
  try {
    c.experiment.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

ChannelParams RunConfig::channel() const {
  try {
    return ChannelParams(dbm_from_mw(pt_mw), pth_dbm, k_db, alpha, sigma_db);
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("channel: ") + e.what());
  }
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, setter] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    apply(cfg, trim(content.substr(0, eq)), trim(content.substr(eq + 1)));
  }
  for (const auto& [key, value] : overrides) apply(cfg, key, trim(value));
  finalise(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string canonical_config(const RunConfig& c) {
  const auto& e = c.experiment;
  std::string lambdas;
  for (double d : e.densities) lambdas += (lambdas.empty() ? "" : ",") + shortest(d);
  std::string schemes;
  for (Scheme s : e.schemes) schemes += (schemes.empty() ? "" : ",") + to_string(s);
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "pt_mw=" << shortest(c.pt_mw) << "\npth_dbm=" << shortest(c.pth_dbm)
      << "\nk_db=" << shortest(c.k_db) << "\nalpha=" << shortest(c.alpha)
      << "\nsigma_db=" << shortest(c.sigma_db) << "\nrts_bits=" << c.frames.rts_bits
      << "\ncooprts_bits=" << c.frames.cooprts_bits << "\ncts_bits=" << c.frames.cts_bits
      << "\nhts_bits=" << c.frames.hts_bits << "\ndata_bytes=" << c.frames.data_bytes
      << "\nclass=" << c.link_class << "\nscheme=" << schemes << "\nlambda=" << lambdas
      << "\ntrials=" << e.trials << "\nseed=" << e.seed
      << "\nmode=" << (e.mode == EstimatorMode::analytic ? "analytic" : "sampled")
      << "\nconditioning="
      << (e.conditioning == Conditioning::Kind::ppp ? std::string("ppp")
                                                     : "k=" + std::to_string(e.k))
      << "\nwindow_half_width=" << shortest(e.window_half_width)
      << "\nsuppress_helpers=" << (e.suppress_helpers ? "true" : "false")
      << "\nmax_backoffs=" << e.max_backoffs
      << "\ncontour_r_k=" << (c.contour_r_k ? shortest(*c.contour_r_k) : std::string("default"))
      << "\ncontour_resolution=" << shortest(c.contour_resolution) << "\n";
  return out.str();
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace coopmac
