#pragma once

#include <string>
#include <string_view>

#include "ambsc/scenario.hpp"

namespace ambsc {

/// Scenario file format (INI/TOML-like):
///
///   [system]                 # optional, every key has a default
///   transmit_power = 20 dBm
///   noise_psd = -120 dBm/Hz  # noise_power = psd * bandwidth unless noise_power is set
///   ...
///   [legacy]
///   distance = 10
///   [[link]]                 # repeated once per backscatter device
///   dist_lt_bd = 4
///   ...
///
/// Powers accept W/mW/uW/nW/dBm, gains dBi/dB or linear, frequencies
/// Hz/kHz/MHz/GHz, rates bps/kbps/Mbps, distances m. Comments start with
/// '#' or ';'.
Scenario parse_config(std::string_view text);

Scenario load_config(const std::string& path);

/// The three-device reference deployment also shipped as
/// configs/reference.cfg.
Scenario reference_scenario();

/// FNV-1a hash of a file's bytes, hex encoded; used to tag CSV outputs.
std::string content_hash(std::string_view text);

}  // namespace ambsc
