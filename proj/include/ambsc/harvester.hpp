#pragma once

namespace ambsc {

enum class EhMode { nonlinear, linear };

const char* to_string(EhMode mode);

/// Rectifier model of a backscatter device. In nonlinear mode the harvested
/// power follows a logistic curve saturating at e_max; s0 is the sensitivity
/// threshold, s1 and s2 shape the knee. Linear mode converts at a constant
/// efficiency and ignores the other fields.
struct EhParams {
  double e_max = 240e-6;  // W
  double s0 = 0.0;        // W
  double s1 = 5000.0;     // 1/W
  double s2 = 2e-4;       // W
  EhMode mode = EhMode::nonlinear;
  double linear_efficiency = 0.8;
};

namespace harvester {

/// Harvested power for RF input p_in >= 0 (watts).
double harvested_power(double p_in, const EhParams& eh);

/// Smallest input power whose harvested output equals p_c. Throws
/// InfeasibleError when the device can never reach p_c.
double min_input_power(const EhParams& eh, double p_c);

/// Adaptive reflection coefficient: the share of incident power routed to
/// the harvester is just enough to cover the circuit, the rest is reflected.
/// Returns 1 (all harvested) when even full harvesting falls short.
double optimal_rc(double h1_sq, double pt, double k1, double activation_power);

}  // namespace harvester
}  // namespace ambsc
