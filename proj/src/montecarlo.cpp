#include "ambsc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ambsc/harvester.hpp"

namespace ambsc::mc {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

constexpr std::int64_t kChunk = 4096;

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = mix64(seed) ^ mix64(stream ^ 0x6a09e667f3bcc909ULL);
  for (auto& s : s_) {
    x += 0x9e3779b97f4a7c15ULL;
    s = mix64(x);
  }
}

std::uint64_t TrialRng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double TrialRng::uniform() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double TrialRng::exponential(double mean) { return -mean * std::log(uniform()); }

ChannelDraw draw_channels(TrialRng& rng, const Scenario& scenario) {
  const std::size_t k = scenario.links.size();
  ChannelDraw d;
  d.h1_sq.resize(k);
  d.h2_sq.resize(k);
  d.gp_sq.resize(k);
  d.gs_sq.resize(k);
  d.hp_sq = rng.exponential(scenario.legacy.fading_mean);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& l = scenario.links[i];
    d.h1_sq[i] = rng.exponential(l.mean_lt_bd);
    d.h2_sq[i] = rng.exponential(l.mean_bd_br);
    d.gp_sq[i] = rng.exponential(l.mean_lt_br);
    d.gs_sq[i] = rng.exponential(l.mean_bd_lr);
  }
  return d;
}

McEstimate McEstimate::from_counts(std::int64_t hits, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("McEstimate: n must be >= 1");
  McEstimate e;
  e.n = n;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(n);
  e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
  return e;
}

RcScheme RcScheme::fixed(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("fixed RC must lie in [0, 1]");
  return {Kind::fixed, beta};
}

McOptions options_from(const SystemParams& sys) {
  McOptions o;
  o.trials = sys.trials;
  o.seed = sys.seed;
  return o;
}

bool device_active(double harvested, double circuit_power) {
  return harvested >= circuit_power * (1.0 - 1e-9);
}

namespace {

struct Counts {
  std::vector<std::int64_t> backscatter, legacy, active;
  std::int64_t bs_best = 0, bs_worst = 0, lg_best = 0, lg_worst = 0, lg_none = 0, all_active = 0;

  explicit Counts(std::size_t k) : backscatter(k), legacy(k), active(k) {}

  void add(const Counts& o) {
    for (std::size_t i = 0; i < backscatter.size(); ++i) {
      backscatter[i] += o.backscatter[i];
      legacy[i] += o.legacy[i];
      active[i] += o.active[i];
    }
    bs_best += o.bs_best;
    bs_worst += o.bs_worst;
    lg_best += o.lg_best;
    lg_worst += o.lg_worst;
    lg_none += o.lg_none;
    all_active += o.all_active;
  }
};

class Simulator {
 public:
  Simulator(const Scenario& scenario, RcScheme scheme)
      : scenario_(scenario), scheme_(scheme), consts_(derive_all(scenario)) {
    if (scenario.links.empty()) throw std::invalid_argument("simulate: no links");
    const auto& c = consts_.front();
    legacy_signal_scale_ = c.pt * c.k_lt_lr;
  }

  void run_trial(std::int64_t trial, std::uint64_t seed, Counts& out) const {
    TrialRng rng(seed, static_cast<std::uint64_t>(trial));
    const ChannelDraw d = draw_channels(rng, scenario_);
    const std::size_t k = consts_.size();

    // Per-link reflection, activation, backscatter SINR and LR interference.
    double best_sinr = 0.0;
    double worst_sinr = std::numeric_limits<double>::infinity();
    double min_interf = std::numeric_limits<double>::infinity();
    double max_interf = 0.0;
    bool any_inactive = false;
    std::vector<double> interference(k);

    for (std::size_t i = 0; i < k; ++i) {
      const auto& c = consts_[i];
      const auto& link = scenario_.links[i];
      double beta = 0.0;
      switch (scheme_.kind) {
        case RcScheme::Kind::adaptive:
          beta = harvester::optimal_rc(d.h1_sq[i], c.pt, c.k_lt_bd, c.activation_power);
          break;
        case RcScheme::Kind::fixed:
          beta = scheme_.beta;
          break;
        case RcScheme::Kind::random_uniform:
          beta = rng.uniform();
          break;
      }
      const double incident = c.pt * c.k_lt_bd * d.h1_sq[i];
      const bool active =
          device_active(harvester::harvested_power(beta * incident, link.eh), link.circuit_power);
      const double reflected = active ? c.efficiency * (1.0 - beta) * incident : 0.0;
      const double sinr =
          reflected * c.k_bd_br * d.h2_sq[i] / (c.pt * c.k_lt_br * d.gp_sq[i] + c.noise);
      const double interf = reflected * c.k_bd_lr * d.gs_sq[i];

      interference[i] = interf;
      if (active) {
        ++out.active[i];
        min_interf = std::min(min_interf, interf);
      } else {
        any_inactive = true;
      }
      max_interf = std::max(max_interf, interf);
      if (!active || sinr < c.gamma_backscatter) ++out.backscatter[i];
      best_sinr = std::max(best_sinr, sinr);
      worst_sinr = std::min(worst_sinr, sinr);
    }

    const double gamma_b = consts_.front().gamma_backscatter;
    if (best_sinr < gamma_b) ++out.bs_best;
    if (worst_sinr < gamma_b) ++out.bs_worst;
    if (!any_inactive) ++out.all_active;

    const double noise = consts_.front().noise;
    const double gamma_l = consts_.front().gamma_legacy;
    const double signal = legacy_signal_scale_ * d.hp_sq;
    const auto legacy_outage = [&](double interf) { return signal / (interf + noise) < gamma_l; };

    for (std::size_t i = 0; i < k; ++i) {
      if (legacy_outage(interference[i])) ++out.legacy[i];
    }
    if (legacy_outage(0.0)) ++out.lg_none;
    // An inactive device adds no interference, so choosing one is the same
    // as the no-interference case.
    if (legacy_outage(any_inactive ? 0.0 : min_interf)) ++out.lg_best;
    if (legacy_outage(max_interf)) ++out.lg_worst;
  }

 private:
  const Scenario& scenario_;
  RcScheme scheme_;
  std::vector<DerivedConstants> consts_;
  double legacy_signal_scale_ = 0.0;
};

Counts run_parallel(const Scenario& scenario, RcScheme scheme, const McOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
  const std::size_t k = scenario.links.size();
  const std::int64_t chunks = (opts.trials + kChunk - 1) / kChunk;
  unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, chunks));

  const Simulator prototype(scenario, scheme);
  std::vector<Counts> per_chunk(static_cast<std::size_t>(chunks), Counts(k));
  std::atomic<std::int64_t> next{0};

  const auto work = [&]() {
    const Simulator& sim = prototype;
    for (std::int64_t c = next++; c < chunks; c = next++) {
      Counts& counts = per_chunk[static_cast<std::size_t>(c)];
      const std::int64_t end = std::min(opts.trials, (c + 1) * kChunk);
      for (std::int64_t t = c * kChunk; t < end; ++t) sim.run_trial(t, opts.seed, counts);
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  Counts total(k);
  for (const auto& c : per_chunk) total.add(c);
  return total;
}

}  // namespace

SimulationSummary simulate(const Scenario& scenario, RcScheme scheme, const McOptions& opts) {
  const Counts c = run_parallel(scenario, scheme, opts);
  const std::int64_t n = opts.trials;
  SimulationSummary s;
  for (std::size_t i = 0; i < scenario.links.size(); ++i) {
    s.backscatter.push_back(McEstimate::from_counts(c.backscatter[i], n));
    s.legacy.push_back(McEstimate::from_counts(c.legacy[i], n));
    s.active.push_back(McEstimate::from_counts(c.active[i], n));
  }
  s.backscatter_best = McEstimate::from_counts(c.bs_best, n);
  s.backscatter_worst = McEstimate::from_counts(c.bs_worst, n);
  s.legacy_best = McEstimate::from_counts(c.lg_best, n);
  s.legacy_worst = McEstimate::from_counts(c.lg_worst, n);
  s.legacy_none = McEstimate::from_counts(c.lg_none, n);
  s.all_active = McEstimate::from_counts(c.all_active, n);
  return s;
}

McEstimate estimate_backscatter_outage(const Scenario& scenario, std::size_t k, RcScheme scheme,
                                       const McOptions& opts) {
  if (k >= scenario.links.size()) throw std::out_of_range("link index out of range");
  return simulate(scenario, scheme, opts).backscatter[k];
}

McEstimate estimate_legacy_outage(const Scenario& scenario, LegacySelection selection,
                                  const McOptions& opts) {
  const auto s = simulate(scenario, RcScheme::adaptive(), opts);
  switch (selection.kind) {
    case LegacySelection::Kind::link:
      if (selection.index >= s.legacy.size()) throw std::out_of_range("link index out of range");
      return s.legacy[selection.index];
    case LegacySelection::Kind::best:
      return s.legacy_best;
    case LegacySelection::Kind::worst:
      return s.legacy_worst;
    case LegacySelection::Kind::none:
      break;
  }
  return s.legacy_none;
}

McEstimate estimate_backscatter_selection(const Scenario& scenario, bool best,
                                          const McOptions& opts) {
  const auto s = simulate(scenario, RcScheme::adaptive(), opts);
  return best ? s.backscatter_best : s.backscatter_worst;
}

CapacityEstimate estimate_outage_capacity(const Scenario& scenario, std::size_t k,
                                          RcScheme scheme, const McOptions& opts) {
  CapacityEstimate out;
  out.outage = estimate_backscatter_outage(scenario, k, scheme, opts);
  const auto& sys = scenario.system;
  const double rate = sys.bandwidth *
                      std::log2(1.0 + threshold_from_rate(sys.backscatter_rate, sys.bandwidth));
  out.capacity = rate * (1.0 - out.outage.p_hat);
  out.std_error = rate * out.outage.std_error;
  return out;
}

}  // namespace ambsc::mc
