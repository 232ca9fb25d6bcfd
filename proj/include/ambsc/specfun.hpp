#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambsc::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286;

/// Modified Bessel function of the second kind, order 0. Requires finite x > 0.
/// Returns 0 once exp(-x) underflows.
double bessel_k0(double x);

/// Modified Bessel function of the second kind, order 1. Requires finite x > 0.
double bessel_k1(double x);

/// 1 - x*K1(x) for x >= 0, summed directly for small x so that tiny
/// probabilities built on it keep full relative precision. Value at 0 is 0.
double one_minus_x_k1(double x);

/// Exponential integral Ei(x) = PV int_{-inf}^{x} e^t/t dt, x != 0.
double expint_ei(double x);

/// e^x * E1(x) = -e^x * Ei(-x) for finite x > 0. Stays finite for large x
/// where the unscaled factors overflow/underflow.
double expint_e1_scaled(double x);

/// Gauss-Chebyshev nodes v_m = cos((2m-1)pi/(2M)), m = 1..M, in decreasing order.
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;

  /// Weights pi/M * sqrt(1 - v_m^2), so that sum w_m g(v_m) approximates
  /// the plain integral of g over [-1, 1].
  std::vector<double> plain_weights() const;
};

QuadratureRule chebyshev_nodes(int order);

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, IntegrationResult best)
      : std::runtime_error(what), best_(best) {}
  const IntegrationResult& best() const noexcept { return best_; }

 private:
  IntegrationResult best_;
};

struct IntegrationOptions {
  int max_depth = 60;
  int max_intervals = 5000;
};

/// Globally adaptive bisection with a 7/15-point Gauss-Kronrod pair. The
/// interval with the largest error estimate is split until the summed
/// estimate drops below tol. Nodes are interior, so integrable endpoint
/// singularities (e.g. logarithmic) are never evaluated directly.
IntegrationResult integrate_adaptive(const std::function<double(double)>& f,
                                     double lo, double hi, double tol,
                                     IntegrationOptions opts = {});

/// Same as integrate_adaptive but throws IntegrationError when it fails to
/// reach tol. The exception carries the best estimate and achieved error.
double adaptive_integrate(const std::function<double(double)>& f, double lo,
                          double hi, double tol, IntegrationOptions opts = {});

}  // namespace ambsc::specfun
