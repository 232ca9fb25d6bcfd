#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "ambsc/config.hpp"
#include "ambsc/errors.hpp"
#include "ambsc/units.hpp"

using namespace ambsc;
using doctest::Approx;

TEST_CASE("dB and dBm conversions round-trip") {
  using namespace units;
  CHECK(dbm_to_watts(30.0) == Approx(1.0));
  CHECK(dbm_to_watts(-120.0) == Approx(1e-15));
  CHECK(db_to_linear(6.0) == Approx(3.9810717055349722));
  for (double v : {-150.0, -60.0, 0.0, 13.7, 60.0}) {
    CHECK(watts_to_dbm(dbm_to_watts(v)) == Approx(v).epsilon(1e-13));
    CHECK(linear_to_db(db_to_linear(v)) == Approx(v).epsilon(1e-13));
  }
  CHECK_THROWS_AS(watts_to_dbm(0.0), std::domain_error);
  CHECK_THROWS_AS(linear_to_db(-1.0), std::domain_error);
}

namespace {

const char* kMinimal = R"(
[[link]]
dist_lt_bd = 4
dist_bd_br = 1.2
dist_lt_br = 5
dist_bd_lr = 7
)";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("a minimal config fills every default") {
  const Scenario s = parse_config(kMinimal);
  REQUIRE(s.links.size() == 1);
  CHECK(s.system.transmit_power == Approx(0.1));
  CHECK(s.system.noise_power == Approx(1e-9));
  CHECK(s.system.gc_order == 10);
  CHECK(s.system.trials == 1'000'000);
  CHECK(s.legacy.distance == 10.0);
  CHECK(s.links[0].circuit_power == Approx(8.9e-6));
  CHECK(s.links[0].eh.s0 == 0.0);
}

TEST_CASE("the shipped reference config matches the built-in reference scenario") {
  const Scenario file = load_config(std::string(AMBSC_CONFIG_DIR) + "/reference.cfg");
  const Scenario ref = reference_scenario();
  REQUIRE(file.links.size() == ref.links.size());
  CHECK(file.system.transmit_power == Approx(ref.system.transmit_power));
  CHECK(file.system.noise_power == Approx(ref.system.noise_power));
  CHECK(file.system.gain_lt == Approx(ref.system.gain_lt));
  CHECK(file.system.gain_bd == Approx(ref.system.gain_bd));
  CHECK(file.system.legacy_rate == ref.system.legacy_rate);
  CHECK(file.system.backscatter_rate == ref.system.backscatter_rate);
  CHECK(file.system.seed == ref.system.seed);
  for (std::size_t i = 0; i < ref.links.size(); ++i) {
    CAPTURE(i);
    const auto& a = file.links[i];
    const auto& b = ref.links[i];
    CHECK(a.dist_lt_bd == b.dist_lt_bd);
    CHECK(a.dist_bd_br == b.dist_bd_br);
    CHECK(a.dist_lt_br == b.dist_lt_br);
    CHECK(a.dist_bd_lr == b.dist_bd_lr);
    CHECK(a.backscatter_efficiency == Approx(b.backscatter_efficiency));
    CHECK(a.circuit_power == Approx(b.circuit_power));
    CHECK(a.eh.e_max == Approx(b.eh.e_max));
    CHECK(a.eh.s1 == b.eh.s1);
    CHECK(a.eh.s2 == Approx(b.eh.s2));
  }
}

TEST_CASE("units are converted at the boundary") {
  const Scenario s = parse_config(std::string(R"(
[system]
transmit_power = 250 mW
noise_psd = -170 dBm/Hz
bandwidth = 2 MHz
carrier_frequency = 2.4 GHz
gain_bd = 3 dB
legacy_rate = 500 kbps
seed = 42
)") + kMinimal);
  CHECK(s.system.transmit_power == Approx(0.25));
  CHECK(s.system.noise_power == Approx(1e-20 * 2e6));
  CHECK(s.system.carrier_frequency == Approx(2.4e9));
  CHECK(s.system.gain_bd == Approx(1.9952623149688795));
  CHECK(s.system.legacy_rate == Approx(5e5));
  CHECK(s.system.seed == 42u);
}

TEST_CASE("explicit noise power overrides the density") {
  const Scenario s = parse_config(std::string("[system]\nnoise_power = -90 dBm\n") + kMinimal);
  CHECK(s.system.noise_power == Approx(1e-12));
}

TEST_CASE("config errors carry line numbers") {
  const auto expect_line = [](const std::string& text, int line) {
    try {
      parse_config(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("[system]\ntransmit_power = 20 furlongs\n", 2);
  expect_line("[system]\nbogus = 1\n", 2);
  expect_line("[system]\nbandwidth = 1 MHz\nbandwidth = 2 MHz\n", 3);
  expect_line("transmit_power = 1\n", 1);
  expect_line("[nowhere]\n", 1);
  expect_line("[system]\ngc_order = ten\n", 2);
}

TEST_CASE("semantic violations raise ValidationError") {
  CHECK_THROWS_AS(parse_config("[system]\ntransmit_power = 1 W\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[[link]]\ndist_lt_bd = 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "e_max = 5 uW\n"), ValidationError);
  CHECK_THROWS_AS(
      parse_config("[[link]]\ndist_lt_bd = 4\ndist_bd_br = 1\ndist_lt_br = 5\ndist_bd_lr = 0\n"),
      ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/scenario.cfg"), ConfigError);
}

TEST_CASE("content hash is stable and sensitive") {
  CHECK(content_hash("") == "cbf29ce484222325");
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
  CHECK(content_hash(kMinimal) != content_hash(std::string(kMinimal) + " "));
  const auto text = read_file(std::string(AMBSC_CONFIG_DIR) + "/reference.cfg");
  CHECK(content_hash(text).size() == 16);
}
