#include "ambsc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ambsc/errors.hpp"
#include "ambsc/units.hpp"

namespace ambsc {

double DerivedConstants::activation_probability() const {
  return std::exp(-activation_threshold() / mean_lt_bd);
}

double friis_constant(double frequency, double gain_tx, double gain_rx) {
  if (!(frequency > 0.0) || !(gain_tx > 0.0) || !(gain_rx > 0.0)) {
    throw std::domain_error("friis_constant: frequency and gains must be > 0");
  }
  const double wavelength_term = units::kSpeedOfLight / (4.0 * std::numbers::pi * frequency);
  return gain_tx * gain_rx * wavelength_term * wavelength_term;
}

double threshold_from_rate(double rate, double bandwidth) {
  if (!(rate >= 0.0) || !(bandwidth > 0.0)) {
    throw std::domain_error("threshold_from_rate: need rate >= 0 and bandwidth > 0");
  }
  return std::exp2(rate / bandwidth) - 1.0;
}

DerivedConstants derive_constants(const SystemParams& sys, const LegacyLink& legacy,
                                  const BackscatterLink& link) {
  DerivedConstants c;
  c.pt = sys.transmit_power;
  c.noise = sys.noise_power;
  c.gamma_legacy = threshold_from_rate(sys.legacy_rate, sys.bandwidth);
  c.gamma_backscatter = threshold_from_rate(sys.backscatter_rate, sys.bandwidth);

  const double f = sys.carrier_frequency;
  c.lambda_lt_bd = friis_constant(f, sys.gain_lt, sys.gain_bd);
  c.lambda_bd_br = friis_constant(f, sys.gain_bd, sys.gain_br);
  c.lambda_lt_br = friis_constant(f, sys.gain_lt, sys.gain_br);
  c.lambda_bd_lr = friis_constant(f, sys.gain_bd, sys.gain_lr);
  c.lambda_lt_lr = friis_constant(f, sys.gain_lt, sys.gain_lr);

  const double alpha = sys.path_loss_exponent;
  const auto path = [alpha](double lambda, double d) { return lambda * std::pow(d, -alpha); };
  c.k_lt_bd = path(c.lambda_lt_bd, link.dist_lt_bd);
  c.k_bd_br = path(c.lambda_bd_br, link.dist_bd_br);
  c.k_lt_br = path(c.lambda_lt_br, link.dist_lt_br);
  c.k_bd_lr = path(c.lambda_bd_lr, link.dist_bd_lr);
  c.k_lt_lr = path(c.lambda_lt_lr, legacy.distance);

  c.mean_lt_bd = link.mean_lt_bd;
  c.mean_bd_br = link.mean_bd_br;
  c.mean_lt_br = link.mean_lt_br;
  c.mean_bd_lr = link.mean_bd_lr;
  c.mean_lt_lr = legacy.fading_mean;
  c.efficiency = link.backscatter_efficiency;

  c.activation_power = harvester::min_input_power(link.eh, link.circuit_power);
  const double eta = c.efficiency;
  c.signal_scale = eta * c.pt * c.k_lt_bd * c.k_bd_br;
  c.signal_offset = eta * c.activation_power * c.k_bd_br;
  c.interference_scale = eta * c.pt * c.k_lt_bd * c.k_bd_lr;
  c.interference_offset = eta * c.activation_power * c.k_bd_lr;

  // Both ratios are written without Pt so that they are exactly Pt-invariant.
  c.br_interference_ratio = c.k_lt_br * c.mean_lt_br /
                            (c.mean_lt_bd * c.mean_bd_br * eta * c.k_lt_bd * c.k_bd_br);
  c.lr_signal_ratio = c.k_lt_lr * c.mean_lt_lr /
                      (c.gamma_legacy * c.mean_lt_bd * c.mean_bd_lr * eta * c.k_lt_bd * c.k_bd_lr);
  return c;
}

std::vector<DerivedConstants> derive_all(const Scenario& scenario) {
  std::vector<DerivedConstants> out;
  out.reserve(scenario.links.size());
  for (const auto& link : scenario.links) {
    out.push_back(derive_constants(scenario.system, scenario.legacy, link));
  }
  return out;
}

SystemParams with_transmit_power(SystemParams sys, double pt_watts) {
  sys.transmit_power = pt_watts;
  return sys;
}

CircleDistances circle_geometry(double theta, double r_lt_bd, double d_lt_br, double d_lt_lr) {
  if (!(r_lt_bd > 0.0) || !(d_lt_br > 0.0) || !(d_lt_lr > 0.0)) {
    throw std::domain_error("circle_geometry: distances must be > 0");
  }
  const double br_sq = r_lt_bd * r_lt_bd + d_lt_br * d_lt_br -
                       2.0 * r_lt_bd * d_lt_br * std::cos(theta + std::numbers::pi / 2.0);
  const double lr_sq = r_lt_bd * r_lt_bd + d_lt_lr * d_lt_lr -
                       2.0 * r_lt_bd * d_lt_lr * std::cos(theta);
  const double scale = r_lt_bd + std::max(d_lt_br, d_lt_lr);
  const double floor = 1e-9 * scale;
  const CircleDistances out{std::sqrt(std::max(br_sq, 0.0)), std::sqrt(std::max(lr_sq, 0.0))};
  if (out.bd_br <= floor || out.bd_lr <= floor) {
    throw std::domain_error("circle_geometry: device coincides with a receiver");
  }
  return out;
}

void validate(const Scenario& s) {
  const auto& sys = s.system;
  const auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
  };
  require(sys.transmit_power > 0.0, "system.transmit_power must be > 0");
  require(sys.noise_power > 0.0, "system.noise_power must be > 0");
  require(sys.bandwidth > 0.0, "system.bandwidth must be > 0");
  require(sys.slot_duration > 0.0, "system.slot_duration must be > 0");
  require(sys.path_loss_exponent > 0.0, "system.path_loss_exponent must be > 0");
  require(sys.carrier_frequency > 0.0, "system.carrier_frequency must be > 0");
  require(sys.gain_lt > 0.0 && sys.gain_lr > 0.0 && sys.gain_br > 0.0 && sys.gain_bd > 0.0,
          "system antenna gains must be > 0");
  require(sys.legacy_rate > 0.0, "system.legacy_rate must be > 0");
  require(sys.backscatter_rate > 0.0, "system.backscatter_rate must be > 0");
  require(sys.gc_order >= 1, "system.gc_order must be >= 1");
  require(sys.trials >= 1, "system.trials must be >= 1");
  require(s.legacy.distance > 0.0, "legacy.distance must be > 0");
  require(s.legacy.fading_mean > 0.0, "legacy.fading_mean must be > 0");
  require(!s.links.empty(), "at least one [[link]] is required (K >= 1)");
  for (std::size_t i = 0; i < s.links.size(); ++i) {
    const auto& l = s.links[i];
    const std::string tag = "link " + std::to_string(i + 1) + ": ";
    require(l.dist_lt_bd > 0.0 && l.dist_bd_br > 0.0 && l.dist_lt_br > 0.0 && l.dist_bd_lr > 0.0,
            tag + "all distances must be > 0");
    require(l.mean_lt_bd > 0.0 && l.mean_bd_br > 0.0 && l.mean_lt_br > 0.0 && l.mean_bd_lr > 0.0,
            tag + "all fading means must be > 0");
    require(l.backscatter_efficiency > 0.0 && l.backscatter_efficiency <= 1.0,
            tag + "backscatter_efficiency must lie in (0, 1]");
    require(l.circuit_power >= 0.0, tag + "circuit_power must be >= 0");
    require(l.eh.e_max > l.circuit_power,
            tag + "EhParams invariant violated: e_max must exceed circuit_power");
    require(l.eh.s1 > 0.0, tag + "s1 must be > 0");
    require(l.eh.linear_efficiency > 0.0 && l.eh.linear_efficiency <= 1.0,
            tag + "linear_efficiency must lie in (0, 1]");
  }
}

}  // namespace ambsc
