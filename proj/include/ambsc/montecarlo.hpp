#pragma once

#include <cstdint>
#include <vector>

#include "ambsc/scenario.hpp"

namespace ambsc::mc {

/// splitmix64 finalizer; also used to derive per-trial seeds.
std::uint64_t mix64(std::uint64_t x);

/// xoshiro256** seeded from (seed, stream). Every trial owns stream = trial
/// index, so a run is bit-identical however trials are spread over threads.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  /// Uniform on the open interval (0, 1).
  double uniform();
  double exponential(double mean);

 private:
  std::uint64_t s_[4];
};

/// Channel power gains of one trial. Per-link vectors are indexed by link.
struct ChannelDraw {
  double hp_sq = 0.0;          // LT -> LR
  std::vector<double> h1_sq;   // LT -> BD
  std::vector<double> h2_sq;   // BD -> BR
  std::vector<double> gp_sq;   // LT -> BR (interference at the BR)
  std::vector<double> gs_sq;   // BD -> LR (interference at the LR)
};

/// Draw order is fixed: hp, then (h1, h2, gp, gs) for each link.
ChannelDraw draw_channels(TrialRng& rng, const Scenario& scenario);

struct McEstimate {
  double p_hat = 0.0;
  std::int64_t n = 0;
  double std_error = 0.0;

  static McEstimate from_counts(std::int64_t hits, std::int64_t n);
};

struct RcScheme {
  enum class Kind { adaptive, fixed, random_uniform };
  Kind kind = Kind::adaptive;
  double beta = 0.0;  // only for fixed

  static RcScheme adaptive() { return {}; }
  static RcScheme fixed(double beta);
  static RcScheme random_uniform() { return {Kind::random_uniform, 0.0}; }
};

struct LegacySelection {
  enum class Kind { link, best, worst, none };
  Kind kind = Kind::none;
  std::size_t index = 0;  // only for link

  static LegacySelection link(std::size_t k) { return {Kind::link, k}; }
  static LegacySelection best() { return {Kind::best, 0}; }
  static LegacySelection worst() { return {Kind::worst, 0}; }
  static LegacySelection none() { return {Kind::none, 0}; }
};

struct McOptions {
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 0x5eed'ba55'c0de'0001ULL;
  unsigned workers = 0;  // 0: hardware concurrency
};

McOptions options_from(const SystemParams& sys);

/// Every estimate from one pass over common draws.
struct SimulationSummary {
  std::vector<McEstimate> backscatter;  // per link
  std::vector<McEstimate> legacy;       // per link
  std::vector<McEstimate> active;       // per link activation frequency
  McEstimate backscatter_best;
  McEstimate backscatter_worst;
  McEstimate legacy_best;
  McEstimate legacy_worst;
  McEstimate legacy_none;
  McEstimate all_active;
};

SimulationSummary simulate(const Scenario& scenario, RcScheme scheme, const McOptions& opts);

McEstimate estimate_backscatter_outage(const Scenario& scenario, std::size_t k, RcScheme scheme,
                                       const McOptions& opts);
McEstimate estimate_legacy_outage(const Scenario& scenario, LegacySelection selection,
                                  const McOptions& opts);
/// Max-SINR (best) or min-SINR (worst) selection among the backscatter links.
McEstimate estimate_backscatter_selection(const Scenario& scenario, bool best,
                                          const McOptions& opts);

struct CapacityEstimate {
  double capacity = 0.0;  // bits/s
  double std_error = 0.0;
  McEstimate outage;
};

CapacityEstimate estimate_outage_capacity(const Scenario& scenario, std::size_t k,
                                          RcScheme scheme, const McOptions& opts);

/// Activation test shared by every estimator: harvested power at the
/// scheme's reflection coefficient covers the circuit (with a 1e-9 relative
/// slack so that the adaptive coefficient lands on the boundary reliably).
bool device_active(double harvested, double circuit_power);

}  // namespace ambsc::mc
