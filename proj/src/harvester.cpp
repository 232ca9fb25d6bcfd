#include "ambsc/harvester.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ambsc/errors.hpp"

namespace ambsc {

const char* to_string(EhMode mode) {
  return mode == EhMode::linear ? "linear" : "nonlinear";
}

namespace harvester {

double harvested_power(double p_in, const EhParams& eh) {
  if (!(p_in >= 0.0)) throw std::domain_error("harvested_power: input power must be >= 0");
  if (eh.mode == EhMode::linear) return eh.linear_efficiency * p_in;
  if (std::isinf(p_in)) return eh.e_max;
  const double num = -std::expm1(-eh.s1 * (p_in - eh.s0));
  const double den = 1.0 + std::exp(-eh.s1 * (p_in - eh.s2));
  return eh.e_max * num / den;
}

double min_input_power(const EhParams& eh, double p_c) {
  if (!(p_c >= 0.0)) throw std::domain_error("min_input_power: circuit power must be >= 0");
  if (eh.mode == EhMode::linear) {
    if (!(eh.linear_efficiency > 0.0)) {
      throw InfeasibleError("min_input_power: linear efficiency must be > 0");
    }
    return p_c / eh.linear_efficiency;
  }
  if (!(eh.e_max > p_c)) {
    throw InfeasibleError("min_input_power: e_max (" + std::to_string(eh.e_max) +
                          " W) must exceed circuit power (" + std::to_string(p_c) + " W)");
  }
  // ln((E e^{s1 s0} + Pc e^{s1 s2}) / (E - Pc)) / s1, with the exponentials
  // factored to keep the sum finite for large s1*s2.
  const double x0 = eh.s1 * eh.s0;
  const double x2 = eh.s1 * eh.s2;
  const double hi = std::max(x0, x2);
  double log_num = hi;
  if (p_c > 0.0) {
    log_num += std::log(eh.e_max * std::exp(x0 - hi) + p_c * std::exp(x2 - hi));
  } else {
    log_num += std::log(eh.e_max) + (x0 - hi);
  }
  return (log_num - std::log(eh.e_max - p_c)) / eh.s1;
}

double optimal_rc(double h1_sq, double pt, double k1, double activation_power) {
  if (!(h1_sq >= 0.0) || !(activation_power >= 0.0) || !(pt * k1 > 0.0)) {
    throw std::domain_error("optimal_rc: inputs must be >= 0 with pt*k1 > 0");
  }
  const double incident = pt * k1 * h1_sq;
  if (incident <= activation_power) return 1.0;
  return activation_power / incident;
}

}  // namespace harvester
}  // namespace ambsc
