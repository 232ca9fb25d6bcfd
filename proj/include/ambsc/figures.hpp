#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ambsc/csv.hpp"
#include "ambsc/montecarlo.hpp"
#include "ambsc/scenario.hpp"

namespace ambsc::figures {

/// Inclusive grid lo, lo + step, ..., hi (hi kept when it lands within
/// step * 1e-9 of a grid point).
struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
};

/// Parses "LO:HI:STEP".
Grid parse_grid(std::string_view text);

struct FigureOptions {
  mc::McOptions mc;
  int gc_order = 10;
  bool monte_carlo = true;
};

FigureOptions options_from(const Scenario& scenario);

Scenario at_power_dbm(Scenario scenario, double pt_dbm);
Scenario with_eh_mode(Scenario scenario, EhMode mode);

/// Backscatter outage versus transmit power: per-link exact, Gauss-Chebyshev,
/// high-power approximation, floor, simulation; best/worst selection; the
/// same exact curves under the linear harvester.
Table fig2(const Scenario& scenario, const std::vector<double>& pt_dbm, const FigureOptions& opts);

/// Outage capacity of one link versus circuit power, per reflection scheme.
/// Rows where the harvester can never cover the circuit report 0 with
/// feasible = 0.
struct Fig3Options {
  std::size_t link = 2;
  double pt_dbm = 20.0;
  std::vector<double> fixed_betas = {0.3, 0.5, 0.7};
};
Table fig3(const Scenario& scenario, const std::vector<double>& circuit_power,
           const Fig3Options& fig, const FigureOptions& opts);

/// Legacy outage versus transmit power: no-backscatter baseline, per link,
/// best/worst selection, their floors and quadrature cross-checks.
Table fig4(const Scenario& scenario, const std::vector<double>& pt_dbm, const FigureOptions& opts);

/// Same curves as fig4 versus the legacy target rate (bits/s) at fixed power.
Table fig5(const Scenario& scenario, const std::vector<double>& legacy_rate, double pt_dbm,
           const FigureOptions& opts);

/// Single device on a circle of `radius` around the LT; its receiver at
/// dist_lt_br on one axis, the legacy receiver at dist_lt_lr on the other.
struct CircleLayout {
  double radius = 2.0;
  double dist_lt_br = 4.0;
  double dist_lt_lr = 10.0;
  double pt_dbm = 30.0;
};
Scenario circle_scenario(const Scenario& base, const CircleLayout& layout, double theta);

Table fig6_angle(const Scenario& base, const std::vector<double>& theta, const CircleLayout& layout);
Table fig6_radius(const Scenario& base, const std::vector<double>& radius, double theta,
                  const CircleLayout& layout);

/// Every closed form of the report at each transmit power; no simulation.
Table sweep(const Scenario& scenario, const std::vector<double>& pt_dbm, int gc_order);

struct ValidationRow {
  std::string quantity;
  double pt_dbm = 0.0;
  double analytic = 0.0;
  double mc = 0.0;
  double std_error = 0.0;
  double tolerance = 0.0;
  bool gating = true;  // informational rows do not affect the verdict
  bool pass = false;
};

/// Analytic versus simulation for the per-link, best and worst quantities of
/// both families at each power. Tolerance max(3 * stderr, 2e-3). The legacy
/// best/worst reference is the quadrature evaluation; the Gauss-Chebyshev
/// values are listed as informational rows.
std::vector<ValidationRow> validate(const Scenario& scenario, const std::vector<double>& pt_dbm,
                                    const FigureOptions& opts);

bool all_pass(const std::vector<ValidationRow>& rows);

}  // namespace ambsc::figures
