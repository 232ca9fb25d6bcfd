#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ambsc/analytic.hpp"
#include "ambsc/config.hpp"
#include "ambsc/figures.hpp"
#include "ambsc/specfun.hpp"

using namespace ambsc;
using namespace ambsc::analytic;
using doctest::Approx;

namespace {

const double kGrid[] = {0.0, 10.0, 20.0, 30.0, 40.0, 55.0, 60.0};

// Exact values per link at kGrid, from an independent scipy implementation
// (Bessel/Ei from scipy.special, finite integral by scipy.integrate.quad).
const double kBackscatter[3][7] = {
    {1.0, 1.0, 0.966215, 0.595263, 0.48118, 0.467131, 0.466813},
    {1.0, 0.994823, 0.763489, 0.653403, 0.639901, 0.638417, 0.638384},
    {1.0, 0.999999, 0.873527, 0.603738, 0.555797, 0.550305, 0.550182},
};
const double kBackscatterFloor[3] = {0.4666656, 0.6383689, 0.5501245};
const double kLegacy[3][7] = {
    {1.0, 0.991424, 0.3813, 0.094992, 0.069664, 0.067132, 0.067076},
    {1.0, 0.991446, 0.450226, 0.207414, 0.179275, 0.176206, 0.176138},
    {1.0, 0.991424, 0.395406, 0.126985, 0.098949, 0.095957, 0.09589},
};
const double kLegacyFloor[3] = {0.0670506, 0.1761061, 0.0958596};

std::vector<DerivedConstants> at_dbm(const Scenario& s, double dbm) {
  return derive_all(figures::at_power_dbm(s, dbm));
}

Scenario random_scenario(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> d(0.5, 12.0), m(0.3, 3.0);
  Scenario s = reference_scenario();
  for (auto& l : s.links) {
    l.dist_lt_bd = d(gen);
    l.dist_bd_br = d(gen);
    l.dist_lt_br = d(gen);
    l.dist_bd_lr = d(gen);
    l.mean_lt_bd = m(gen);
    l.mean_bd_br = m(gen);
    l.mean_lt_br = m(gen);
    l.mean_bd_lr = m(gen);
  }
  s.legacy.distance = d(gen);
  return s;
}

}  // namespace

TEST_CASE("product distribution: cdf, survival and density") {
  const ProductChannelDist unit{1.0};
  CHECK(unit.cdf(0.0) == 0.0);
  CHECK(unit.survival(0.0) == 1.0);
  // 1 - 2 K1(2); also the frequency of X Y <= 1 for independent unit
  // exponentials (1e7 draws gave 0.72027).
  CHECK(unit.cdf(1.0) == Approx(0.7202682361).epsilon(1e-9));
  CHECK(unit.cdf(400.0) == Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(unit.cdf(-1.0), std::domain_error);
  CHECK_THROWS_AS(unit.pdf(0.0), std::domain_error);

  const ProductChannelDist scaled{3.5};
  double prev = 0.0;
  for (double x = 0.01; x < 60.0; x *= 1.5) {
    const double c = scaled.cdf(x);
    CHECK(c > prev);
    CHECK(c + scaled.survival(x) == Approx(1.0).epsilon(1e-14));
    prev = c;
  }
  const double mass = specfun::adaptive_integrate([&](double x) { return unit.pdf(x); }, 0.0,
                                                  50.0, 1e-11);
  CHECK(mass == Approx(1.0).epsilon(1e-5));
  const double partial = specfun::adaptive_integrate(
      [&](double x) { return scaled.pdf(x); }, 0.0, 2.0, 1e-12);
  CHECK(partial == Approx(scaled.cdf(2.0)).epsilon(1e-10));
}

TEST_CASE("product distribution matches sampled products of exponentials") {
  // Conditioned on activation, a X - b is exponential with mean a * mean(X),
  // so the signal term is a product of two exponentials.
  std::mt19937_64 gen(2024);
  std::exponential_distribution<double> e(1.0);
  const double a = 2.0, b = 1.0, m1 = 1.5, m2 = 0.8;
  const ProductChannelDist dist{a * m1 * m2};
  const double probes[] = {0.2, 1.0, 2.4, 6.0};
  int hits[4] = {};
  int n = 0;
  while (n < 400'000) {
    const double x = m1 * e(gen);
    if (x < b / a) continue;
    const double s = (a * x - b) * m2 * e(gen);
    for (int i = 0; i < 4; ++i) hits[i] += s <= probes[i];
    ++n;
  }
  for (int i = 0; i < 4; ++i) {
    const double p = dist.cdf(probes[i]);
    const double se = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(hits[i] / static_cast<double>(n) - p) <= 4.0 * se);
  }
}

TEST_CASE("product Laplace transform") {
  CHECK(product_laplace(1.0) == Approx(0.59634736232319407).epsilon(1e-13));
  CHECK(product_laplace(1e-6) == Approx(1.3238309131365003e-5).epsilon(1e-12));
  CHECK(product_laplace(10.0) == Approx(0.91563333939788082).epsilon(1e-13));
  CHECK(product_laplace(1e3) == Approx(0.99900199402388071).epsilon(1e-13));
  CHECK(product_laplace(INFINITY) == 1.0);
  CHECK_THROWS_AS(product_laplace(0.0), std::domain_error);
  double prev = 0.0;
  for (double r = 1e-8; r < 1e8; r *= 3.0) {
    const double v = product_laplace(r);
    CHECK(v > prev);
    CHECK(v < 1.0);
    prev = v;
  }
}

TEST_CASE("Laplace transform of the product density equals the closed form") {
  for (double mu : {0.3, 1.0, 4.0}) {
    for (double alpha : {0.05, 1.0, 7.0}) {
      const ProductChannelDist d{mu};
      // The mass sits within a few mu of the origin; split by decades so no piece is missed.
      const auto f = [&](double x) { return std::exp(-alpha * x) * d.pdf(x); };
      double numeric = 0.0;
      for (double lo = 0.0, hi = mu; lo < 2000.0 * mu; lo = hi, hi *= 10.0) {
        numeric += specfun::adaptive_integrate(f, lo, hi, 1e-13);
      }
      CAPTURE(mu);
      CAPTURE(alpha);
      CHECK(numeric == Approx(product_laplace(1.0 / (mu * alpha))).epsilon(1e-9));
    }
  }
}

TEST_CASE("backscatter outage matches frozen reference values") {
  const Scenario s = reference_scenario();
  for (int p = 0; p < 7; ++p) {
    const auto links = at_dbm(s, kGrid[p]);
    for (int k = 0; k < 3; ++k) {
      CAPTURE(kGrid[p]);
      CAPTURE(k);
      CHECK(std::abs(backscatter_outage_exact(links[k]) - kBackscatter[k][p]) <= 2e-6);
    }
  }
  const auto links = at_dbm(s, 20.0);
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(backscatter_outage_floor(links[k]) - kBackscatterFloor[k]) <= 2e-7);
  }
}

TEST_CASE("Gauss-Chebyshev backscatter outage converges to the exact value") {
  const Scenario s = reference_scenario();
  for (double dbm = 0.0; dbm <= 60.0; dbm += 2.0) {
    for (const auto& c : at_dbm(s, dbm)) {
      const double exact = backscatter_outage_exact(c);
      CAPTURE(dbm);
      CHECK(std::abs(backscatter_outage_gc(c, 10) - exact) <= 1e-3);
      CHECK(std::abs(backscatter_outage_gc(c, 200) - exact) <= 1e-6);
    }
  }
}

TEST_CASE("high-power approximation") {
  const Scenario s = reference_scenario();
  const auto at50 = at_dbm(s, 50.0);
  for (const auto& c : at50) {
    CHECK(std::abs(backscatter_outage_highsnr(c) - backscatter_outage_exact(c)) <= 5e-3);
  }
  for (const auto& c : at_dbm(s, 150.0)) {
    CHECK(backscatter_outage_highsnr(c) == Approx(backscatter_outage_floor(c)).epsilon(1e-9));
  }
  for (const auto& c : at_dbm(s, 0.0)) CHECK(std::isfinite(backscatter_outage_highsnr(c)));
}

TEST_CASE("backscatter floor is the Laplace transform at the interference ratio") {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 100; ++i) {
    const Scenario s = random_scenario(gen);
    for (const auto& c : derive_all(s)) {
      CHECK(backscatter_outage_floor(c) ==
            product_laplace(c.br_interference_ratio * c.gamma_backscatter));
    }
  }
  const Scenario s = reference_scenario();
  const auto lo = at_dbm(s, 0.0), hi = at_dbm(s, 90.0);
  for (std::size_t k = 0; k < lo.size(); ++k) {
    CHECK(backscatter_outage_floor(lo[k]) == backscatter_outage_floor(hi[k]));
    CHECK(legacy_outage_floor(lo[k]) == legacy_outage_floor(hi[k]));
  }
}

TEST_CASE("backscatter outage limits") {
  Scenario s = reference_scenario();
  // No decoding threshold and no energy threshold.
  s.system.backscatter_rate = 1e-9;
  for (auto& l : s.links) l.circuit_power = 0.0;
  for (const auto& c : derive_all(s)) CHECK(backscatter_outage_exact(c) < 1e-6);

  // A device that barely powers up at a weak transmitter is always in outage.
  Scenario starving = figures::at_power_dbm(reference_scenario(), -20.0);
  for (auto& l : starving.links) l.circuit_power = l.eh.e_max * (1.0 - 1e-9);
  for (const auto& c : derive_all(starving)) CHECK(backscatter_outage_exact(c) == 1.0);

  // A tiny interference ratio drives the floor to zero; a huge one to one.
  DerivedConstants c = derive_all(reference_scenario())[0];
  c.br_interference_ratio = 1e9 / c.gamma_backscatter;
  CHECK(backscatter_outage_floor(c) == Approx(1.0 - 1e-9).epsilon(1e-14));
  c.br_interference_ratio = 1e-9 / c.gamma_backscatter;
  CHECK(backscatter_outage_floor(c) < 1e-7);
}

TEST_CASE("best and worst selection compose per-link outages") {
  const std::vector<double> half{0.5, 0.5, 0.5};
  CHECK(backscatter_best(half) == 0.125);
  CHECK(backscatter_worst(half) == 0.875);
  CHECK(backscatter_best(std::vector<double>{0.3, 0.0, 0.9}) == 0.0);
  CHECK(backscatter_worst(std::vector<double>{0.3, 1.0, 0.9}) == 1.0);

  const auto links = at_dbm(reference_scenario(), 30.0);
  std::vector<double> p;
  for (const auto& c : links) p.push_back(backscatter_outage_exact(c));
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  CHECK(backscatter_best(p) <= *lo);
  CHECK(*hi <= backscatter_worst(p));
}

TEST_CASE("legacy outage matches frozen reference values") {
  const Scenario s = reference_scenario();
  for (int p = 0; p < 7; ++p) {
    const auto links = at_dbm(s, kGrid[p]);
    for (int k = 0; k < 3; ++k) {
      CAPTURE(kGrid[p]);
      CAPTURE(k);
      CHECK(std::abs(legacy_outage(links[k]) - kLegacy[k][p]) <= 2e-6);
    }
  }
  const auto links = at_dbm(s, 30.0);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(legacy_outage_floor(links[k]) - kLegacyFloor[k]) <= 2e-7);
  CHECK(legacy_no_backscatter(links[0]) == Approx(legacy_no_backscatter(
                                               figures::at_power_dbm(s, 30.0).system, s.legacy)));
}

TEST_CASE("legacy outage limits and identities") {
  // Interference path so long that the device is invisible to the LR.
  Scenario far = reference_scenario();
  for (auto& l : far.links) l.dist_bd_lr = 1e7;
  for (const auto& c : derive_all(far)) {
    CHECK(legacy_outage(c) == Approx(legacy_no_backscatter(c)).epsilon(1e-12));
    CHECK(legacy_outage_floor(c) < 1e-12);
  }
  // A device that essentially never activates never interferes.
  Scenario idle = reference_scenario();
  for (auto& l : idle.links) l.circuit_power = l.eh.e_max - 1e-15;
  for (const auto& c : derive_all(idle)) {
    CHECK(legacy_outage(c) == Approx(legacy_no_backscatter(c)).epsilon(1e-12));
  }
  std::mt19937_64 gen(8);
  for (int i = 0; i < 100; ++i) {
    for (const auto& c : derive_all(random_scenario(gen))) {
      CHECK(legacy_outage_floor(c) == 1.0 - product_laplace(c.lr_signal_ratio));
      CHECK(legacy_outage(c) >= legacy_no_backscatter(c) - 1e-15);
    }
  }
}

TEST_CASE("activation product and order-statistic distributions") {
  const std::vector<DerivedConstants> none;
  CHECK(prob_all_active(none) == 1.0);
  const auto links = at_dbm(reference_scenario(), 20.0);
  double prod = 1.0;
  for (const auto& c : links) prod *= c.activation_probability();
  CHECK(prob_all_active(links) == Approx(prod).epsilon(1e-15));

  CHECK(cdf_gmin(links, 0.0) == 0.0);
  double inactive = 1.0;
  for (const auto& c : links) inactive *= 1.0 - c.activation_probability();
  CHECK(cdf_gmax_hat(links, 0.0) == Approx(inactive).epsilon(1e-14));
  CHECK(cdf_gmin(links, 1e3) == Approx(1.0));
  CHECK(cdf_gmax_hat(links, 1e3) == Approx(1.0));
  CHECK_THROWS_AS(cdf_gmin(links, -1.0), std::domain_error);
}

TEST_CASE("min and max interference distributions match sampled order statistics") {
  Scenario s = reference_scenario();
  s.links.resize(2);
  s.links[1] = s.links[0];  // two symmetric devices
  const auto links = derive_all(s);
  const double mu = links[0].interference_product_scale();
  const double thr = links[0].activation_threshold();
  std::mt19937_64 gen(77);
  std::exponential_distribution<double> e(1.0);
  const int n = 10'000'000;
  int min_hits = 0, max_hits = 0, all_active = 0;
  const double a = links[0].interference_scale, b = links[0].interference_offset;
  for (int i = 0; i < n; ++i) {
    double g[2];
    bool active = true;
    for (double& gi : g) {
      const double h1 = e(gen), gs = e(gen);
      gi = h1 >= thr ? (a * h1 - b) * gs : 0.0;
      active = active && h1 >= thr;
    }
    const double hi = std::max(g[0], g[1]);
    max_hits += hi <= mu;
    if (active) {
      ++all_active;
      min_hits += std::min(g[0], g[1]) <= mu;
    }
  }
  const double pmax = cdf_gmax_hat(links, mu);
  const double pmin = cdf_gmin(links, mu);
  CHECK(std::abs(max_hits / double(n) - pmax) <= 3.0 * std::sqrt(pmax * (1 - pmax) / n));
  CHECK(std::abs(min_hits / double(all_active) - pmin) <=
        3.0 * std::sqrt(pmin * (1 - pmin) / all_active));
}

TEST_CASE("legacy best and worst selection") {
  const Scenario s = reference_scenario();
  const auto links = at_dbm(s, 30.0);
  // Independent scipy quadrature of the same expectations.
  CHECK(std::abs(legacy_best_quadrature(links) - 0.05944) <= 1e-5);
  CHECK(std::abs(legacy_worst_quadrature(links) - 0.26344) <= 1e-5);
  CHECK(std::abs(legacy_best(links, 400) - legacy_best_quadrature(links)) <= 2e-6);
  CHECK(std::abs(legacy_worst(links, 400) - legacy_worst_quadrature(links)) <= 2e-6);

  for (double dbm = 0.0; dbm <= 60.0; dbm += 2.0) {
    const auto l = at_dbm(s, dbm);
    const double best = legacy_best_quadrature(l), worst = legacy_worst_quadrature(l);
    const double none = legacy_no_backscatter(l[0]);
    CAPTURE(dbm);
    CHECK(none <= best + 1e-12);
    for (const auto& c : l) {
      CHECK(best <= legacy_outage(c) + 1e-9);
      CHECK(legacy_outage(c) <= worst + 1e-9);
    }
  }
}

TEST_CASE("single-link worst case reduces to the per-link legacy outage") {
  Scenario s = figures::at_power_dbm(reference_scenario(), 30.0);
  for (std::size_t k = 0; k < 3; ++k) {
    Scenario one = s;
    one.links = {s.links[k]};
    const auto l = derive_all(one);
    // Gauss-Chebyshev error falls off as 1/M^2.
    const double e10 = std::abs(legacy_worst(l, 10) - legacy_outage(l[0]));
    const double e40 = std::abs(legacy_worst(l, 40) - legacy_outage(l[0]));
    CHECK(e10 <= 3e-3);
    CHECK(e40 <= e10 / 10.0);
    CHECK(std::abs(legacy_worst(l, 400) - legacy_outage(l[0])) <= 2e-6);
    CHECK(std::abs(legacy_worst_quadrature(l) - legacy_outage(l[0])) <= 1e-8);
    CHECK(std::abs(legacy_worst_floor(l, 200) - legacy_outage_floor(l[0])) <= 2e-5);
  }
}

TEST_CASE("noise-free legacy best case with always-active devices is its floor") {
  Scenario s = reference_scenario();
  s.system.noise_power = 1e-30;
  for (auto& l : s.links) l.circuit_power = 0.0;
  const auto links = derive_all(s);
  CHECK(prob_all_active(links) == 1.0);
  CHECK(legacy_best(links, 10) == Approx(legacy_best_floor(links, 10)).epsilon(1e-12));
}

TEST_CASE("outage capacity") {
  const double gamma = threshold_from_rate(1e3, 1e6);
  CHECK(outage_capacity(1.0, gamma, 1e6) == 0.0);
  CHECK(outage_capacity(0.0, gamma, 1e6) == Approx(1e3).epsilon(1e-12));
  CHECK(outage_capacity(0.25, gamma, 1e6) == Approx(750.0).epsilon(1e-12));
}

TEST_CASE("probability checks and the report") {
  CHECK(checked_probability(-1e-12, "x") == 0.0);
  CHECK(checked_probability(1.0 + 1e-12, "x") == 1.0);
  CHECK_THROWS_AS(checked_probability(1.1, "x"), std::logic_error);
  CHECK_THROWS_AS(checked_probability(std::nan(""), "x"), std::logic_error);

  for (double dbm = 0.0; dbm <= 60.0; dbm += 5.0) {
    const auto r = compute_report(figures::at_power_dbm(reference_scenario(), dbm), 10);
    REQUIRE(r.links.size() == 3);
    for (double v : {r.backscatter_best, r.backscatter_worst, r.backscatter_best_floor,
                     r.backscatter_worst_floor, r.legacy_no_backscatter, r.legacy_best,
                     r.legacy_best_floor, r.legacy_worst, r.legacy_worst_floor}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("linear harvesting never predicts more backscatter outage") {
  const Scenario s = reference_scenario();
  const Scenario lin = figures::with_eh_mode(s, EhMode::linear);
  for (double dbm = 0.0; dbm <= 60.0; dbm += 2.0) {
    const auto a = at_dbm(s, dbm), b = at_dbm(lin, dbm);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(backscatter_outage_exact(b[k]) <= backscatter_outage_exact(a[k]) + 1e-12);
    }
  }
}
