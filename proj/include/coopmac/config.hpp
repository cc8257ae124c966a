#pragma once

// Run configuration: flat key=value text merged with command-line overrides.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coopmac/monte_carlo.hpp"

namespace coopmac {

/// Raised for unknown keys, malformed values and invariant violations. The
/// message starts with the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Control and data frame sizes. Carried for sampled-mode accounting; the
/// throughput metric does not use them.
struct FrameSizes {
  int rts_bits = 352;
  int cooprts_bits = 352;
  int cts_bits = 304;
  int hts_bits = 304;
  int data_bytes = 1000;
};

enum class OutputFormat { csv, json };

struct RunConfig {
  double pt_mw = 1.0;
  double pth_dbm = -98.0;
  double k_db = -40.0;
  double alpha = 3.0;
  double sigma_db = 6.0;
  FrameSizes frames;
  ExperimentConfig experiment;
  std::string link_class = "C";  // A, B, C, D, D1, D2 or all
  std::optional<double> contour_r_k;
  double contour_resolution = 0.5;
  std::string out;  // empty: standard output
  OutputFormat format = OutputFormat::csv;

  ChannelParams channel() const;
};

using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Keys accepted by parse_config, in canonical order.
const std::vector<std::string>& config_keys();

/// Defaults, then every `key = value` line of `text` ('#' starts a comment),
/// then `overrides` in order. Validates the merged result.
RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});

/// parse_config on the contents of a file.
RunConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

/// Canonical key=value rendering of every setting that affects results
/// (workers, output path and format are excluded).
std::string canonical_config(const RunConfig& config);

/// FNV-1a 64 of canonical_config, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace coopmac
