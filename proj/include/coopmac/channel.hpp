#pragma once

// Log-distance path loss with log-normal shadowing, all in dB / dBm.

#include "coopmac/rng.hpp"

namespace coopmac {

double dbm_from_mw(double milliwatts);

/// Link budget parameters. Validated on construction and immutable; the
/// normalised threshold nu and slope mu are derived on every access.
class ChannelParams {
 public:
  ChannelParams(double pt_dbm, double pth_dbm, double k_db, double alpha, double sigma_db);

  /// 1 mW transmit power, -98 dBm threshold, K = -40 dB, alpha = 3, 6 dB shadowing.
  static ChannelParams defaults();

  double pt_dbm() const { return pt_dbm_; }
  double pth_dbm() const { return pth_dbm_; }
  double k_db() const { return k_db_; }
  double alpha() const { return alpha_; }
  double sigma_db() const { return sigma_db_; }

  double nu() const { return (pth_dbm_ - pt_dbm_ - k_db_) / sigma_db_; }
  double mu() const { return 10.0 * alpha_ / sigma_db_; }

  /// nu + mu log10(d): success is Q of this.
  double q_argument(double distance) const;
  double mean_received_power_dbm(double distance) const;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;

 private:
  double pt_dbm_;
  double pth_dbm_;
  double k_db_;
  double alpha_;
  double sigma_db_;
};

/// Gaussian tail probability, via erfc.
double q_function(double x);

/// Probability that a single hop of length `distance` clears the threshold.
double p_success_direct(double distance, const ChannelParams& params);

/// Success probability of the two-hop relay S-H-D with independent shadowing.
double g_joint(double l1, double l2, const ChannelParams& params);

/// Received power (dBm) with one fresh shadowing draw.
double shadowing_sample(double distance, const ChannelParams& params, Rng& rng);

/// One Bernoulli hop: true when the shadowed received power clears the threshold.
bool sample_hop_success(double distance, const ChannelParams& params, Rng& rng);

}  // namespace coopmac
