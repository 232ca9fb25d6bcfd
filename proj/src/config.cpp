#include "ambsc/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "ambsc/errors.hpp"
#include "ambsc/units.hpp"

namespace ambsc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

struct Token {
  std::string key;
  std::string raw;   // value text with comments and quotes removed
  double number = 0.0;
  std::string unit;  // as written, may be empty
  bool numeric = false;
  int line = 0;
};

Token tokenize(std::string key, std::string_view value, int line) {
  Token t;
  t.key = std::move(key);
  t.line = line;
  if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
      value.back() == value.front()) {
    value = value.substr(1, value.size() - 2);
  }
  t.raw = std::string(value);
  const char* first = t.raw.data();
  const char* last = first + t.raw.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc() && ptr != first) {
    t.numeric = true;
    t.number = v;
    t.unit = std::string(trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr))));
  }
  return t;
}

[[noreturn]] void bad_unit(const Token& t, const char* expected) {
  throw ConfigError("key '" + t.key + "': unsupported unit '" + t.unit + "' (expected " +
                        expected + ")",
                    t.line);
}

double require_number(const Token& t) {
  if (!t.numeric || !std::isfinite(t.number)) {
    throw ConfigError("key '" + t.key + "': expected a number, got '" + t.raw + "'", t.line);
  }
  return t.number;
}

double as_plain(const Token& t) {
  const double v = require_number(t);
  if (!t.unit.empty()) bad_unit(t, "no unit");
  return v;
}

double as_power(const Token& t) {
  const double v = require_number(t);
  const std::string u = t.unit;
  if (u.empty() || u == "W") return v;
  if (u == "mW") return v * 1e-3;
  if (u == "uW" || u == "\xC2\xB5W" || u == "\xCE\xBCW") return v * 1e-6;
  if (u == "nW") return v * 1e-9;
  if (lower(u) == "dbm") return units::dbm_to_watts(v);
  bad_unit(t, "W, mW, uW, nW or dBm");
}

double as_psd(const Token& t) {
  const double v = require_number(t);
  const std::string u = lower(t.unit);
  if (u.empty() || u == "w/hz") return v;
  if (u == "dbm/hz") return units::dbm_to_watts(v);
  bad_unit(t, "W/Hz or dBm/Hz");
}

double as_frequency(const Token& t) {
  const double v = require_number(t);
  const std::string u = lower(t.unit);
  if (u.empty() || u == "hz") return v;
  if (u == "khz") return v * 1e3;
  if (u == "mhz") return v * 1e6;
  if (u == "ghz") return v * 1e9;
  bad_unit(t, "Hz, kHz, MHz or GHz");
}

double as_rate(const Token& t) {
  const double v = require_number(t);
  const std::string u = lower(t.unit);
  if (u.empty() || u == "bps" || u == "bit/s") return v;
  if (u == "kbps") return v * 1e3;
  if (u == "mbps") return v * 1e6;
  if (u == "gbps") return v * 1e9;
  bad_unit(t, "bps, kbps or Mbps");
}

double as_gain(const Token& t) {
  const double v = require_number(t);
  const std::string u = lower(t.unit);
  if (u.empty()) return v;
  if (u == "dbi" || u == "db") return units::db_to_linear(v);
  bad_unit(t, "dBi or linear");
}

double as_distance(const Token& t) {
  const double v = require_number(t);
  if (t.unit.empty() || t.unit == "m") return v;
  if (t.unit == "km") return v * 1e3;
  bad_unit(t, "m");
}

double as_time(const Token& t) {
  const double v = require_number(t);
  if (t.unit.empty() || t.unit == "s") return v;
  if (t.unit == "ms") return v * 1e-3;
  bad_unit(t, "s or ms");
}

double as_loss_db(const Token& t) {
  const double v = require_number(t);
  const std::string u = lower(t.unit);
  if (u.empty() || u == "db") return units::db_to_linear(-v);
  bad_unit(t, "dB");
}

double as_inverse_power(const Token& t) {
  const double v = require_number(t);
  if (t.unit.empty() || t.unit == "1/W" || t.unit == "/W") return v;
  bad_unit(t, "1/W");
}

std::int64_t as_integer(const Token& t) {
  std::int64_t out = 0;
  const auto s = trim(t.raw);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("key '" + t.key + "': expected an integer, got '" + t.raw + "'", t.line);
  }
  return out;
}

std::uint64_t as_unsigned(const Token& t) {
  std::uint64_t out = 0;
  const auto s = trim(t.raw);
  int base = 10;
  std::string_view digits = s;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    digits.remove_prefix(2);
    base = 16;
  }
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out, base);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ConfigError("key '" + t.key + "': expected an unsigned integer, got '" + t.raw + "'",
                      t.line);
  }
  return out;
}

[[noreturn]] void unknown_key(const Token& t, const char* section) {
  throw ConfigError("unknown key '" + t.key + "' in [" + std::string(section) + "]", t.line);
}

enum class Section { none, system, legacy, link };

struct SystemDraft {
  SystemParams params;
  double noise_psd = units::dbm_to_watts(-120.0);
  bool explicit_noise_power = false;
};

void apply_system(SystemDraft& d, const Token& t) {
  auto& s = d.params;
  const auto& k = t.key;
  if (k == "transmit_power") s.transmit_power = as_power(t);
  else if (k == "noise_psd") d.noise_psd = as_psd(t);
  else if (k == "noise_power") { s.noise_power = as_power(t); d.explicit_noise_power = true; }
  else if (k == "bandwidth") s.bandwidth = as_frequency(t);
  else if (k == "slot_duration") s.slot_duration = as_time(t);
  else if (k == "path_loss_exponent") s.path_loss_exponent = as_plain(t);
  else if (k == "carrier_frequency") s.carrier_frequency = as_frequency(t);
  else if (k == "gain_lt") s.gain_lt = as_gain(t);
  else if (k == "gain_lr") s.gain_lr = as_gain(t);
  else if (k == "gain_br") s.gain_br = as_gain(t);
  else if (k == "gain_bd") s.gain_bd = as_gain(t);
  else if (k == "legacy_rate") s.legacy_rate = as_rate(t);
  else if (k == "backscatter_rate") s.backscatter_rate = as_rate(t);
  else if (k == "gc_order") s.gc_order = static_cast<int>(as_integer(t));
  else if (k == "trials") s.trials = as_integer(t);
  else if (k == "seed") s.seed = as_unsigned(t);
  else unknown_key(t, "system");
}

void apply_legacy(LegacyLink& l, const Token& t) {
  if (t.key == "distance") l.distance = as_distance(t);
  else if (t.key == "fading_mean") l.fading_mean = as_plain(t);
  else unknown_key(t, "legacy");
}

void apply_link(BackscatterLink& l, const Token& t) {
  const auto& k = t.key;
  if (k == "dist_lt_bd") l.dist_lt_bd = as_distance(t);
  else if (k == "dist_bd_br") l.dist_bd_br = as_distance(t);
  else if (k == "dist_lt_br") l.dist_lt_br = as_distance(t);
  else if (k == "dist_bd_lr") l.dist_bd_lr = as_distance(t);
  else if (k == "mean_lt_bd") l.mean_lt_bd = as_plain(t);
  else if (k == "mean_bd_br") l.mean_bd_br = as_plain(t);
  else if (k == "mean_lt_br") l.mean_lt_br = as_plain(t);
  else if (k == "mean_bd_lr") l.mean_bd_lr = as_plain(t);
  else if (k == "backscatter_efficiency") l.backscatter_efficiency = as_plain(t);
  else if (k == "backscatter_loss") l.backscatter_efficiency = as_loss_db(t);
  else if (k == "circuit_power") l.circuit_power = as_power(t);
  else if (k == "e_max") l.eh.e_max = as_power(t);
  else if (k == "s0") l.eh.s0 = as_power(t);
  else if (k == "s1") l.eh.s1 = as_inverse_power(t);
  else if (k == "s2") l.eh.s2 = as_power(t);
  else if (k == "linear_efficiency") l.eh.linear_efficiency = as_plain(t);
  else if (k == "eh_mode") {
    const auto mode = lower(trim(t.raw));
    if (mode == "nonlinear") l.eh.mode = EhMode::nonlinear;
    else if (mode == "linear") l.eh.mode = EhMode::linear;
    else throw ConfigError("eh_mode must be 'nonlinear' or 'linear', got '" + t.raw + "'", t.line);
  } else unknown_key(t, "link");
}

}  // namespace

Scenario parse_config(std::string_view text) {
  Scenario scenario;
  SystemDraft system;
  Section section = Section::none;
  std::set<std::string> seen;  // keys of the current section
  std::vector<std::set<std::string>> link_keys;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      seen.clear();
      if (line == "[system]") section = Section::system;
      else if (line == "[legacy]") section = Section::legacy;
      else if (line == "[[link]]") {
        section = Section::link;
        scenario.links.emplace_back();
        link_keys.emplace_back();
      } else {
        throw ConfigError("unknown section header '" + std::string(line) + "'", line_no);
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value', got '" + std::string(line) + "'", line_no);
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (value.empty()) throw ConfigError("key '" + key + "' has no value", line_no);
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'", line_no);

    const Token tok = tokenize(key, value, line_no);
    switch (section) {
      case Section::none:
        throw ConfigError("key '" + key + "' appears before any section header", line_no);
      case Section::system: apply_system(system, tok); break;
      case Section::legacy: apply_legacy(scenario.legacy, tok); break;
      case Section::link:
        apply_link(scenario.links.back(), tok);
        link_keys.back().insert(key);
        break;
    }
  }

  for (std::size_t i = 0; i < link_keys.size(); ++i) {
    for (const char* required : {"dist_lt_bd", "dist_bd_br", "dist_lt_br", "dist_bd_lr"}) {
      if (!link_keys[i].count(required)) {
        throw ValidationError("link " + std::to_string(i + 1) + ": missing required key '" +
                              required + "'");
      }
    }
  }

  scenario.system = system.params;
  if (!system.explicit_noise_power) {
    scenario.system.noise_power = system.noise_psd * scenario.system.bandwidth;
  }
  validate(scenario);
  return scenario;
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Scenario reference_scenario() {
  Scenario s;
  s.system.noise_power = units::dbm_to_watts(-120.0) * s.system.bandwidth;
  s.legacy = LegacyLink{10.0, 1.0};
  const double lt_bd[] = {4.0, 2.0, 3.0};
  const double bd_br[] = {1.2, 2.0, 1.5};
  const double lt_br[] = {5.0, 3.0, 4.0};
  const double bd_lr[] = {7.0, 9.0, 8.0};
  for (int k = 0; k < 3; ++k) {
    BackscatterLink link;
    link.dist_lt_bd = lt_bd[k];
    link.dist_bd_br = bd_br[k];
    link.dist_lt_br = lt_br[k];
    link.dist_bd_lr = bd_lr[k];
    link.backscatter_efficiency = units::db_to_linear(-1.1);
    link.circuit_power = 8.9e-6;
    s.links.push_back(link);
  }
  return s;
}

std::string content_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace ambsc
