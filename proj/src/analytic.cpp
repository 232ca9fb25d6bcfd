#include "ambsc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ambsc/specfun.hpp"

namespace ambsc::analytic {
namespace {

using specfun::bessel_k0;
using specfun::bessel_k1;

constexpr double kExactTol = 1e-10;

// z K1(z) at z = 2 sqrt(u); equals 1 at u = 0.
double unit_survival(double u) {
  if (u <= 0.0) return 1.0;
  const double z = 2.0 * std::sqrt(u);
  return z * bessel_k1(z);
}

double unit_cdf(double u) {
  if (u <= 0.0) return 0.0;
  return specfun::one_minus_x_k1(2.0 * std::sqrt(u));
}

// Energy-outage exponent b/(a lambda_1).
double activation_exponent(const DerivedConstants& c) {
  return c.activation_threshold() / c.mean_lt_bd;
}

// Mean interference power from the LT at the backscatter receiver.
double br_interference_mean(const DerivedConstants& c) { return c.pt * c.k_lt_br * c.mean_lt_br; }

// gamma sigma^2 / (Pt K_p lambda_p).
double legacy_noise_exponent(const DerivedConstants& c) {
  return c.gamma_legacy * c.noise / (c.pt * c.k_lt_lr * c.mean_lt_lr);
}

// Common outer shell: 1 - act * [1 - F_S(gamma sigma^2) - e^{sigma^2/I} (Theta - J)].
double assemble_backscatter(const DerivedConstants& c, double noise_integral) {
  const double act = std::exp(-activation_exponent(c));
  if (act == 0.0) return 1.0;
  const double upper_u = c.gamma_backscatter * c.noise / c.signal_product_scale();
  const double theta = product_laplace(c.br_interference_ratio * c.gamma_backscatter);
  const double noise_boost = std::exp(c.noise / br_interference_mean(c));
  return 1.0 - act * (1.0 - unit_cdf(upper_u) - noise_boost * (theta - noise_integral));
}

// Integrand of the noise integral in units of the product scale:
// exp(-u / (theta_arg)) * 2 K0(2 sqrt(u)).
double noise_integrand(double u, double decay) {
  if (u <= 0.0) return 0.0;
  return std::exp(-u * decay) * 2.0 * bessel_k0(2.0 * std::sqrt(u));
}

void require_same_system(std::span<const DerivedConstants> links) {
  if (links.empty()) throw std::invalid_argument("need at least one link");
  const auto& first = links.front();
  for (const auto& l : links) {
    if (l.pt != first.pt || l.noise != first.noise || l.gamma_legacy != first.gamma_legacy ||
        l.k_lt_lr != first.k_lt_lr || l.mean_lt_lr != first.mean_lt_lr) {
      throw std::invalid_argument("links must share transmit power, noise and legacy link");
    }
  }
}

// (pi / 2M) sum sqrt(1 - v^2) F(-ln kappa_m), kappa_m = (v_m + 1)/2, i.e. the
// Gauss-Chebyshev estimate of int_0^1 F(-ln y) dy.
template <typename F>
double log_substituted_gc(int order, F&& cdf_of_s) {
  const auto rule = specfun::chebyshev_nodes(order);
  const auto weights = rule.plain_weights();
  double sum = 0.0;
  for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
    const double kappa = 0.5 * rule.nodes[m] + 0.5;
    sum += weights[m] * cdf_of_s(-std::log(kappa));
  }
  return 0.5 * sum;
}

template <typename F>
double log_substituted_quadrature(F&& cdf_of_s) {
  // 0 < y < 1; the integrand tends to F(inf) as y -> 0 and to F(0) as y -> 1.
  return specfun::adaptive_integrate(
      [&](double y) { return cdf_of_s(-std::log(y)); }, 0.0, 1.0, kExactTol);
}

// F_Gmin at x = s * Pt K_p lambda_p / gamma, written through the Pt-free
// ratio u_k = s * Xi_k.
double gmin_cdf_at(std::span<const DerivedConstants> links, double s) {
  double surv = 1.0;
  for (const auto& l : links) surv *= unit_survival(s * l.lr_signal_ratio);
  return 1.0 - surv;
}

double gmax_hat_cdf_at(std::span<const DerivedConstants> links, double s, bool limit) {
  double cdf = 1.0;
  for (const auto& l : links) {
    const double act = limit ? 1.0 : std::exp(-activation_exponent(l));
    cdf *= 1.0 - act * unit_survival(s * l.lr_signal_ratio);
  }
  return cdf;
}

double best_from_expectation(std::span<const DerivedConstants> links, double expectation) {
  const double n = legacy_noise_exponent(links.front());
  const double p1 = prob_all_active(links);
  const double no_sl = -std::expm1(-n);
  const double p2 = 1.0 - std::exp(-n) * expectation;
  return no_sl * (1.0 - p1) + p2 * p1;
}

}  // namespace

double ProductChannelDist::cdf(double x) const {
  if (!(x >= 0.0)) throw std::domain_error("ProductChannelDist::cdf: x must be >= 0");
  return unit_cdf(x / scale);
}

double ProductChannelDist::survival(double x) const {
  if (!(x >= 0.0)) throw std::domain_error("ProductChannelDist::survival: x must be >= 0");
  return unit_survival(x / scale);
}

double ProductChannelDist::pdf(double x) const {
  if (!(x > 0.0)) throw std::domain_error("ProductChannelDist::pdf: x must be > 0");
  return 2.0 / scale * bessel_k0(2.0 * std::sqrt(x / scale));
}

double product_laplace(double r) {
  if (!(r > 0.0)) throw std::domain_error("product_laplace: argument must be > 0");
  if (std::isinf(r)) return 1.0;
  return r * specfun::expint_e1_scaled(r);
}

double backscatter_outage_exact(const DerivedConstants& c) {
  const double upper_u = c.gamma_backscatter * c.noise / c.signal_product_scale();
  double integral = 0.0;
  if (upper_u > 0.0) {
    const double decay = 1.0 / (c.br_interference_ratio * c.gamma_backscatter);
    integral = specfun::adaptive_integrate(
        [decay](double u) { return noise_integrand(u, decay); }, 0.0, upper_u, kExactTol);
  }
  return assemble_backscatter(c, integral);
}

double backscatter_outage_gc(const DerivedConstants& c, int order) {
  const auto rule = specfun::chebyshev_nodes(order);
  const double upper_u = c.gamma_backscatter * c.noise / c.signal_product_scale();
  double integral = 0.0;
  if (upper_u > 0.0) {
    const double decay = 1.0 / (c.br_interference_ratio * c.gamma_backscatter);
    const auto weights = rule.plain_weights();
    for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
      const double kappa = 0.5 * upper_u * (rule.nodes[m] + 1.0);
      integral += weights[m] * noise_integrand(kappa, decay);
    }
    integral *= 0.5 * upper_u;
  }
  return assemble_backscatter(c, integral);
}

double backscatter_outage_highsnr(const DerivedConstants& c) {
  const double act = std::exp(-activation_exponent(c));
  const double mu = c.signal_product_scale();
  const double gs = c.gamma_backscatter * c.noise;  // gamma_b sigma^2
  const double upper_u = gs / mu;
  const double interference = br_interference_mean(c);
  const double noise_ratio = c.noise / interference;
  const double ratio = c.br_interference_ratio * c.gamma_backscatter;
  const double theta = product_laplace(ratio);

  // ln(sqrt(gamma_b) sigma / sqrt(mu)) = ln(upper_u) / 2
  const double log_term = upper_u > 0.0 ? 0.5 * std::log(upper_u) : 0.0;
  const double small_arg =
      upper_u > 0.0 ? upper_u * noise_ratio * (log_term - 0.25) - 2.0 * upper_u * (log_term - 0.5)
                    : 0.0;
  const double euler_term = 2.0 * ratio * specfun::kEulerGamma * -std::expm1(-noise_ratio);
  const double bracket = theta - small_arg + euler_term;
  return 1.0 - act * (1.0 - unit_cdf(upper_u) - std::exp(noise_ratio) * bracket);
}

double backscatter_outage_floor(const DerivedConstants& c) {
  return product_laplace(c.br_interference_ratio * c.gamma_backscatter);
}

double backscatter_best(std::span<const double> per_link) {
  double p = 1.0;
  for (double v : per_link) p *= v;
  return p;
}

double backscatter_worst(std::span<const double> per_link) {
  double success = 1.0;
  for (double v : per_link) success *= 1.0 - v;
  return 1.0 - success;
}

double legacy_outage(const DerivedConstants& c) {
  const double n = legacy_noise_exponent(c);
  const double eps = activation_exponent(c);
  const double i3 = -std::expm1(-n) * -std::expm1(-eps);
  const double i5 = product_laplace(c.lr_signal_ratio);
  const double i4 = std::exp(-eps) * (1.0 - std::exp(-n) * i5);
  return i3 + i4;
}

double legacy_outage_floor(const DerivedConstants& c) {
  return 1.0 - product_laplace(c.lr_signal_ratio);
}

double legacy_no_backscatter(const DerivedConstants& c) {
  return -std::expm1(-legacy_noise_exponent(c));
}

double legacy_no_backscatter(const SystemParams& sys, const LegacyLink& legacy) {
  const double gamma = threshold_from_rate(sys.legacy_rate, sys.bandwidth);
  const double k_p = friis_constant(sys.carrier_frequency, sys.gain_lt, sys.gain_lr) *
                     std::pow(legacy.distance, -sys.path_loss_exponent);
  const double n = gamma * sys.noise_power / (sys.transmit_power * k_p * legacy.fading_mean);
  return -std::expm1(-n);
}

double prob_all_active(std::span<const DerivedConstants> links) {
  double p = 1.0;
  for (const auto& l : links) p *= std::exp(-activation_exponent(l));
  return p;
}

double cdf_gmin(std::span<const DerivedConstants> links, double x) {
  if (!(x >= 0.0)) throw std::domain_error("cdf_gmin: x must be >= 0");
  double surv = 1.0;
  for (const auto& l : links) surv *= unit_survival(x / l.interference_product_scale());
  return 1.0 - surv;
}

double cdf_gmax_hat(std::span<const DerivedConstants> links, double x) {
  if (!(x >= 0.0)) throw std::domain_error("cdf_gmax_hat: x must be >= 0");
  double cdf = 1.0;
  for (const auto& l : links) {
    const double act = std::exp(-activation_exponent(l));
    cdf *= 1.0 - act * unit_survival(x / l.interference_product_scale());
  }
  return cdf;
}

double legacy_best(std::span<const DerivedConstants> links, int order) {
  require_same_system(links);
  const double e = log_substituted_gc(order, [&](double s) { return gmin_cdf_at(links, s); });
  return best_from_expectation(links, e);
}

double legacy_best_floor(std::span<const DerivedConstants> links, int order) {
  require_same_system(links);
  return 1.0 - log_substituted_gc(order, [&](double s) { return gmin_cdf_at(links, s); });
}

double legacy_worst(std::span<const DerivedConstants> links, int order) {
  require_same_system(links);
  const double n = legacy_noise_exponent(links.front());
  const double e =
      log_substituted_gc(order, [&](double s) { return gmax_hat_cdf_at(links, s, false); });
  return 1.0 - std::exp(-n) * e;
}

double legacy_worst_floor(std::span<const DerivedConstants> links, int order) {
  require_same_system(links);
  return 1.0 -
         log_substituted_gc(order, [&](double s) { return gmax_hat_cdf_at(links, s, true); });
}

double legacy_best_quadrature(std::span<const DerivedConstants> links) {
  require_same_system(links);
  const double e = log_substituted_quadrature([&](double s) { return gmin_cdf_at(links, s); });
  return best_from_expectation(links, e);
}

double legacy_worst_quadrature(std::span<const DerivedConstants> links) {
  require_same_system(links);
  const double n = legacy_noise_exponent(links.front());
  const double e =
      log_substituted_quadrature([&](double s) { return gmax_hat_cdf_at(links, s, false); });
  return 1.0 - std::exp(-n) * e;
}

double outage_capacity(double outage, double gamma_backscatter, double bandwidth) {
  return bandwidth * std::log2(1.0 + gamma_backscatter) * (1.0 - outage);
}

double checked_probability(double p, std::string_view what) {
  if (!std::isfinite(p) || p < -1e-9 || p > 1.0 + 1e-9) {
    throw std::logic_error(std::string(what) + ": probability out of range: " +
                           std::to_string(p));
  }
  return std::clamp(p, 0.0, 1.0);
}

OutageReport compute_report(const Scenario& scenario, int order) {
  const auto links = derive_all(scenario);
  OutageReport r;
  std::vector<double> exact;
  std::vector<double> floors;
  for (std::size_t k = 0; k < links.size(); ++k) {
    const auto& c = links[k];
    const std::string tag = "link " + std::to_string(k + 1);
    LinkOutage lo;
    lo.backscatter_exact = checked_probability(backscatter_outage_exact(c), tag + " exact");
    lo.backscatter_gc = checked_probability(backscatter_outage_gc(c, order), tag + " gc");
    // Approximation without a low-power accuracy contract: clamp only.
    lo.backscatter_highsnr = std::clamp(backscatter_outage_highsnr(c), 0.0, 1.0);
    lo.backscatter_floor = checked_probability(backscatter_outage_floor(c), tag + " floor");
    lo.legacy = checked_probability(legacy_outage(c), tag + " legacy");
    lo.legacy_floor = checked_probability(legacy_outage_floor(c), tag + " legacy floor");
    exact.push_back(lo.backscatter_exact);
    floors.push_back(lo.backscatter_floor);
    r.links.push_back(lo);
  }
  r.backscatter_best = backscatter_best(exact);
  r.backscatter_worst = backscatter_worst(exact);
  r.backscatter_best_floor = backscatter_best(floors);
  r.backscatter_worst_floor = backscatter_worst(floors);
  r.legacy_no_backscatter = checked_probability(legacy_no_backscatter(links.front()), "no-SL");
  r.legacy_best = checked_probability(legacy_best(links, order), "legacy best");
  r.legacy_best_floor = checked_probability(legacy_best_floor(links, order), "legacy best floor");
  r.legacy_worst = checked_probability(legacy_worst(links, order), "legacy worst");
  r.legacy_worst_floor =
      checked_probability(legacy_worst_floor(links, order), "legacy worst floor");
  return r;
}

}  // namespace ambsc::analytic
