#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ambsc/scenario.hpp"

namespace ambsc::analytic {

/// Law of Y * (a X - b) given X >= b/a, with X, Y exponential. Conditioned on
/// activation, aX - b is again exponential, so the product has
///   cdf(x) = 1 - z K1(z),  pdf(x) = (2/scale) K0(z),  z = 2 sqrt(x / scale),
/// where scale is the product of the two exponential means.
struct ProductChannelDist {
  double scale = 1.0;

  double cdf(double x) const;
  /// Complementary cdf, z K1(z), accurate for large x.
  double survival(double x) const;
  /// Density; log-singular at 0, so x must be > 0.
  double pdf(double x) const;
};

/// Laplace transform of the unit-scale product distribution at s = 1/r:
/// E[exp(-S / r)] = -r e^r Ei(-r) = r e^r E1(r). In (0, 1), increasing in r.
double product_laplace(double r);

// ---------------------------------------------------------------------------
// Single backscatter link, device k selected, adaptive reflection.

/// Closed form with the finite noise integral done by adaptive quadrature.
double backscatter_outage_exact(const DerivedConstants& c);
/// Same closed form with the noise integral replaced by an order-M
/// Gauss-Chebyshev sum.
double backscatter_outage_gc(const DerivedConstants& c, int order);
/// High transmit-power approximation (small-argument K0 expansion inside the
/// noise integral). No accuracy guarantee at low Pt.
double backscatter_outage_highsnr(const DerivedConstants& c);
/// Pt -> infinity limit; depends only on the interference-to-signal ratio.
double backscatter_outage_floor(const DerivedConstants& c);

/// Selection across independent links: pick max SINR (best) or min SINR (worst).
double backscatter_best(std::span<const double> per_link);
double backscatter_worst(std::span<const double> per_link);

// ---------------------------------------------------------------------------
// Legacy link.

/// Legacy outage when device k is selected and runs the adaptive scheme.
double legacy_outage(const DerivedConstants& c);
double legacy_outage_floor(const DerivedConstants& c);
/// Legacy outage with no backscatter interference at all.
double legacy_no_backscatter(const DerivedConstants& c);
double legacy_no_backscatter(const SystemParams& sys, const LegacyLink& legacy);

/// Probability that every device is active.
double prob_all_active(std::span<const DerivedConstants> links);

/// CDF of min_k G_k given every device active.
double cdf_gmin(std::span<const DerivedConstants> links, double x);
/// Unconditional CDF of max_k G^_k, where inactive devices contribute 0.
double cdf_gmax_hat(std::span<const DerivedConstants> links, double x);

/// Best case: an inactive device is chosen if one exists, else the one with
/// the least interference at the LR. Expectation by order-M Gauss-Chebyshev
/// in the log-substituted variable.
double legacy_best(std::span<const DerivedConstants> links, int order);
double legacy_best_floor(std::span<const DerivedConstants> links, int order);
/// Worst case: the device with the most interference at the LR.
double legacy_worst(std::span<const DerivedConstants> links, int order);
double legacy_worst_floor(std::span<const DerivedConstants> links, int order);

/// The same two expectations evaluated by adaptive quadrature instead of
/// Gauss-Chebyshev. Used as the reference in tests.
double legacy_best_quadrature(std::span<const DerivedConstants> links);
double legacy_worst_quadrature(std::span<const DerivedConstants> links);

/// Threshold rate times success probability, in bits/s.
double outage_capacity(double outage, double gamma_backscatter, double bandwidth);

// ---------------------------------------------------------------------------

/// Throws std::logic_error when p lies outside [-1e-9, 1 + 1e-9] or is not
/// finite, otherwise clamps to [0, 1].
double checked_probability(double p, std::string_view what);

struct LinkOutage {
  double backscatter_exact = 0.0;
  double backscatter_gc = 0.0;
  double backscatter_highsnr = 0.0;
  double backscatter_floor = 0.0;
  double legacy = 0.0;
  double legacy_floor = 0.0;
};

struct OutageReport {
  std::vector<LinkOutage> links;
  double backscatter_best = 0.0;
  double backscatter_best_floor = 0.0;
  double backscatter_worst = 0.0;
  double backscatter_worst_floor = 0.0;
  double legacy_no_backscatter = 0.0;
  double legacy_best = 0.0;
  double legacy_best_floor = 0.0;
  double legacy_worst = 0.0;
  double legacy_worst_floor = 0.0;
};

/// Every closed form for one scenario at its configured transmit power.
/// Best/worst backscatter compose the exact per-link values.
OutageReport compute_report(const Scenario& scenario, int order);

}  // namespace ambsc::analytic
