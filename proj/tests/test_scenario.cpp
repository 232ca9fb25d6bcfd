#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ambsc/config.hpp"
#include "ambsc/errors.hpp"
#include "ambsc/scenario.hpp"
#include "ambsc/units.hpp"

using namespace ambsc;
using doctest::Approx;

TEST_CASE("Friis constant at 915 MHz") {
  // c = 299792458 m/s exactly.
  CHECK(friis_constant(915e6, 1.0, 1.0) == Approx(6.797973850689421e-4).epsilon(1e-13));
  CHECK(friis_constant(915e6, units::db_to_linear(6.0), units::db_to_linear(1.8)) ==
        Approx(4.096184309615725e-3).epsilon(1e-12));
  CHECK(friis_constant(915e6, units::db_to_linear(6.0), units::db_to_linear(6.0)) ==
        Approx(1.0774062478486324e-2).epsilon(1e-12));
  CHECK_THROWS_AS(friis_constant(0.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(friis_constant(915e6, -1.0, 1.0), std::domain_error);
}

TEST_CASE("Shannon thresholds of the reference rates") {
  CHECK(threshold_from_rate(10e6, 1e6) == 1023.0);
  CHECK(threshold_from_rate(1e3, 1e6) == Approx(6.933874625807412e-4).epsilon(1e-12));
  CHECK(threshold_from_rate(0.0, 1e6) == 0.0);
  CHECK_THROWS_AS(threshold_from_rate(1.0, 0.0), std::domain_error);
}

TEST_CASE("derived constants of the reference deployment") {
  const Scenario s = reference_scenario();
  const auto c = derive_constants(s.system, s.legacy, s.links[0]);
  CHECK(c.k_lt_lr == Approx(2.149708084244396e-05).epsilon(1e-12));
  CHECK(c.activation_power == Approx(2.676565503172219e-5).epsilon(1e-12));
  CHECK(c.gamma_legacy == 1023.0);
  CHECK(c.signal_scale ==
        Approx(c.efficiency * c.pt * c.k_lt_bd * c.k_bd_br).epsilon(1e-15));
  CHECK(c.signal_offset == Approx(c.efficiency * c.activation_power * c.k_bd_br).epsilon(1e-15));
  CHECK(c.activation_threshold() ==
        Approx(c.activation_power / (c.pt * c.k_lt_bd)).epsilon(1e-13));
  CHECK(c.activation_probability() == Approx(std::exp(-c.activation_threshold())));
}

TEST_CASE("interference ratios are exactly independent of transmit power") {
  const Scenario s = reference_scenario();
  for (const auto& link : s.links) {
    const auto lo = derive_constants(with_transmit_power(s.system, 1e-3), s.legacy, link);
    const auto hi = derive_constants(with_transmit_power(s.system, 1e3), s.legacy, link);
    CHECK(lo.br_interference_ratio == hi.br_interference_ratio);
    CHECK(lo.lr_signal_ratio == hi.lr_signal_ratio);
    // and they agree with the Pt-dependent definitions
    CHECK(hi.br_interference_ratio ==
          Approx(hi.pt * hi.k_lt_br * hi.mean_lt_br / hi.signal_product_scale()).epsilon(1e-13));
    CHECK(hi.lr_signal_ratio == Approx(hi.pt * hi.k_lt_lr * hi.mean_lt_lr /
                                       (hi.gamma_legacy * hi.interference_product_scale()))
                                    .epsilon(1e-13));
  }
}

TEST_CASE("path loss scales as distance to the minus exponent") {
  Scenario s = reference_scenario();
  BackscatterLink far = s.links[0];
  far.dist_bd_br *= 2.0;
  const auto a = derive_constants(s.system, s.legacy, s.links[0]);
  const auto b = derive_constants(s.system, s.legacy, far);
  CHECK(a.k_bd_br / b.k_bd_br == Approx(std::pow(2.0, s.system.path_loss_exponent)));
  CHECK(a.k_lt_bd == b.k_lt_bd);
}

TEST_CASE("circle geometry: known angles and the triangle inequality") {
  const double r = 2.0, dbr = 4.0, dlr = 10.0;
  const double pi = std::numbers::pi;
  auto d = circle_geometry(pi, r, dbr, dlr);
  CHECK(d.bd_lr == Approx(r + dlr));
  CHECK(d.bd_br == Approx(std::hypot(r, dbr)));
  d = circle_geometry(3.0 * pi / 2.0, r, dbr, dlr);
  CHECK(d.bd_br == Approx(dbr - r));
  d = circle_geometry(0.0, r, dbr, dlr);
  CHECK(d.bd_lr == Approx(dlr - r));

  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi), len(0.1, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double th = angle(gen), a = len(gen), b = len(gen), c = len(gen);
    if (std::abs(a - b) < 1e-3 || std::abs(a - c) < 1e-3) continue;
    const auto g = circle_geometry(th, a, b, c);
    CHECK(g.bd_br <= a + b + 1e-9);
    CHECK(g.bd_br >= std::abs(a - b) - 1e-9);
    CHECK(g.bd_lr <= a + c + 1e-9);
    CHECK(g.bd_lr >= std::abs(a - c) - 1e-9);
  }
  CHECK_THROWS_AS(circle_geometry(3.0 * pi / 2.0, 4.0, 4.0, 10.0), std::domain_error);
  CHECK_THROWS_AS(circle_geometry(0.0, 0.0, 4.0, 10.0), std::domain_error);
}

TEST_CASE("validate rejects broken scenarios") {
  Scenario s = reference_scenario();
  CHECK_NOTHROW(validate(s));
  Scenario none = s;
  none.links.clear();
  CHECK_THROWS_AS(validate(none), ValidationError);
  Scenario starving = s;
  starving.links[1].circuit_power = 300e-6;
  CHECK_THROWS_WITH_AS(validate(starving), doctest::Contains("e_max must exceed circuit_power"),
                       ValidationError);
  Scenario lossy = s;
  lossy.links[0].backscatter_efficiency = 1.5;
  CHECK_THROWS_AS(validate(lossy), ValidationError);
  Scenario zero_gc = s;
  zero_gc.system.gc_order = 0;
  CHECK_THROWS_AS(validate(zero_gc), ValidationError);
}
