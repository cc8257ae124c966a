#include "coopmac/channel.hpp"

#include <cmath>
#include <numbers>

#include "coopmac/errors.hpp"

namespace coopmac {
namespace {

void require_distance(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw InvalidParameter("hop distance must be positive and finite");
  }
}

}  // namespace

double dbm_from_mw(double milliwatts) {
  if (!(milliwatts > 0.0)) throw InvalidParameter("power in mW must be positive");
  return 10.0 * std::log10(milliwatts);
}

ChannelParams::ChannelParams(double pt_dbm, double pth_dbm, double k_db, double alpha,
                             double sigma_db)
    : pt_dbm_(pt_dbm), pth_dbm_(pth_dbm), k_db_(k_db), alpha_(alpha), sigma_db_(sigma_db) {
  if (!std::isfinite(pt_dbm) || !std::isfinite(pth_dbm) || !std::isfinite(k_db)) {
    throw InvalidParameter("channel powers must be finite");
  }
  if (!(sigma_db > 0.0) || !std::isfinite(sigma_db)) {
    throw InvalidParameter("shadowing deviation sigma must be > 0 dB");
  }
  if (!(alpha >= 2.0 && alpha <= 7.0)) {
    throw InvalidParameter("path-loss exponent alpha must lie in [2, 7]");
  }
}

ChannelParams ChannelParams::defaults() {
  return ChannelParams(dbm_from_mw(1.0), -98.0, -40.0, 3.0, 6.0);
}

double ChannelParams::q_argument(double distance) const {
  require_distance(distance);
  return nu() + mu() * std::log10(distance);
}

double ChannelParams::mean_received_power_dbm(double distance) const {
  require_distance(distance);
  return pt_dbm_ + k_db_ - 10.0 * alpha_ * std::log10(distance);
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double p_success_direct(double distance, const ChannelParams& params) {
  return q_function(params.q_argument(distance));
}

double g_joint(double l1, double l2, const ChannelParams& params) {
  return p_success_direct(l1, params) * p_success_direct(l2, params);
}

double shadowing_sample(double distance, const ChannelParams& params, Rng& rng) {
  const double mean = params.mean_received_power_dbm(distance);
  std::normal_distribution<double> psi(0.0, params.sigma_db());
  return mean + psi(rng);
}

bool sample_hop_success(double distance, const ChannelParams& params, Rng& rng) {
  return shadowing_sample(distance, params, rng) >= params.pth_dbm();
}

}  // namespace coopmac
