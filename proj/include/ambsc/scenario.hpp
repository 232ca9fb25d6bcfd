#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ambsc/harvester.hpp"

namespace ambsc {

/// Network-wide physical constants. Powers in watts, frequencies in hertz,
/// rates in bits/s, gains linear.
struct SystemParams {
  double transmit_power = 0.1;
  double noise_power = 1e-9;
  double bandwidth = 1e6;
  double slot_duration = 1.0;
  double path_loss_exponent = 2.7;
  double carrier_frequency = 915e6;
  double gain_lt = 3.9810717055349722;  // legacy transmitter, 6 dBi
  double gain_lr = 3.9810717055349722;  // legacy receiver
  double gain_br = 3.9810717055349722;  // backscatter receivers
  double gain_bd = 1.5135612484362082;  // backscatter devices, 1.8 dBi
  double legacy_rate = 10e6;
  double backscatter_rate = 1e3;
  int gc_order = 10;
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 0x5eed'ba55'c0de'0001ULL;
};

struct LegacyLink {
  double distance = 10.0;
  double fading_mean = 1.0;
};

/// One backscatter device (BD) with its receiver (BR). Distances in metres;
/// fading means are the means of the exponential channel power gains.
struct BackscatterLink {
  double dist_lt_bd = 0.0;  // legacy transmitter -> device
  double dist_bd_br = 0.0;  // device -> its receiver
  double dist_lt_br = 0.0;  // legacy transmitter -> device's receiver (interference)
  double dist_bd_lr = 0.0;  // device -> legacy receiver (interference)
  double mean_lt_bd = 1.0;
  double mean_bd_br = 1.0;
  double mean_lt_br = 1.0;
  double mean_bd_lr = 1.0;
  double backscatter_efficiency = 0.7762471166286917;  // 1.1 dB loss
  double circuit_power = 8.9e-6;
  EhParams eh;
};

struct Scenario {
  SystemParams system;
  LegacyLink legacy;
  std::vector<BackscatterLink> links;
};

/// Composite constants of one (system, legacy, link) triple, computed once
/// and shared by every closed form and by the simulator.
struct DerivedConstants {
  double pt = 0.0;
  double noise = 0.0;
  double gamma_legacy = 0.0;       // SINR threshold at the legacy receiver
  double gamma_backscatter = 0.0;  // SINR threshold at the backscatter receiver

  // Frequency-dependent constants and path-loss products per hop.
  double lambda_lt_bd = 0.0, lambda_bd_br = 0.0, lambda_lt_br = 0.0, lambda_bd_lr = 0.0,
         lambda_lt_lr = 0.0;
  double k_lt_bd = 0.0, k_bd_br = 0.0, k_lt_br = 0.0, k_bd_lr = 0.0, k_lt_lr = 0.0;

  double mean_lt_bd = 1.0, mean_bd_br = 1.0, mean_lt_br = 1.0, mean_bd_lr = 1.0,
         mean_lt_lr = 1.0;
  double efficiency = 1.0;

  double activation_power = 0.0;     // minimum RF input that powers the device
  double signal_scale = 0.0;         // eta Pt K_lt_bd K_bd_br
  double signal_offset = 0.0;        // eta Phi K_bd_br
  double interference_scale = 0.0;   // eta Pt K_lt_bd K_bd_lr
  double interference_offset = 0.0;  // eta Phi K_bd_lr

  /// Mean LT->BR interference over the backscatter product-channel scale.
  /// Independent of Pt.
  double br_interference_ratio = 0.0;
  /// Mean legacy signal over gamma_legacy times the backscatter interference
  /// scale at the LR. Independent of Pt.
  double lr_signal_ratio = 0.0;

  /// Channel threshold on |h_lt_bd|^2 above which the device is active.
  double activation_threshold() const { return signal_offset / signal_scale; }
  /// P(|h_lt_bd|^2 >= activation_threshold).
  double activation_probability() const;
  /// Scale of the product distribution of the backscatter signal term.
  double signal_product_scale() const { return mean_lt_bd * mean_bd_br * signal_scale; }
  /// Scale of the product distribution of the interference at the LR.
  double interference_product_scale() const {
    return mean_lt_bd * mean_bd_lr * interference_scale;
  }
};

/// Free-space constant g_tx * g_rx * (c / (4 pi f))^2.
double friis_constant(double frequency, double gain_tx, double gain_rx);

/// Shannon threshold 2^(rate / bandwidth) - 1.
double threshold_from_rate(double rate, double bandwidth);

DerivedConstants derive_constants(const SystemParams& sys, const LegacyLink& legacy,
                                  const BackscatterLink& link);

/// Constants for every link of a scenario, in link order.
std::vector<DerivedConstants> derive_all(const Scenario& scenario);

SystemParams with_transmit_power(SystemParams sys, double pt_watts);

struct CircleDistances {
  double bd_br;  // device -> its receiver
  double bd_lr;  // device -> legacy receiver
};

/// Device on a circle of radius r_lt_bd around the LT at angle theta from
/// the LT->LR axis; the receiver sits at distance d_lt_br on the negative
/// y-axis and the legacy receiver at d_lt_lr on the x-axis.
CircleDistances circle_geometry(double theta, double r_lt_bd, double d_lt_br, double d_lt_lr);

void validate(const Scenario& scenario);

}  // namespace ambsc
