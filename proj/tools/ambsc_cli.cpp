// Command-line front end: figure sweeps, validation and raw closed-form sweeps.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "ambsc/config.hpp"
#include "ambsc/errors.hpp"
#include "ambsc/figures.hpp"
#include "ambsc/units.hpp"

namespace fig = ambsc::figures;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<int> gc_order;
  std::string pt_dbm;
  std::string out;
  std::string eh;
  bool no_mc = false;
};

struct Loaded {
  ambsc::Scenario scenario;
  std::string hash;
};

Loaded load(const CommonArgs& args) {
  Loaded l;
  if (args.config.empty()) {
    l.scenario = ambsc::reference_scenario();
    l.hash = "builtin";
  } else {
    std::ifstream in(args.config, std::ios::binary);
    if (!in) throw ambsc::ConfigError("cannot open config file '" + args.config + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    l.scenario = ambsc::parse_config(buf.str());
    l.hash = ambsc::content_hash(buf.str());
  }
  auto& sys = l.scenario.system;
  if (args.seed) sys.seed = *args.seed;
  if (args.trials) sys.trials = *args.trials;
  if (args.gc_order) sys.gc_order = *args.gc_order;
  if (args.eh == "linear") l.scenario = fig::with_eh_mode(l.scenario, ambsc::EhMode::linear);
  if (args.eh == "nonlinear") l.scenario = fig::with_eh_mode(l.scenario, ambsc::EhMode::nonlinear);
  ambsc::validate(l.scenario);
  return l;
}

fig::FigureOptions figure_options(const CommonArgs& args, const ambsc::Scenario& s) {
  auto o = fig::options_from(s);
  o.monte_carlo = !args.no_mc;
  return o;
}

std::vector<double> pt_grid(const CommonArgs& args, const char* fallback) {
  return fig::parse_grid(args.pt_dbm.empty() ? fallback : args.pt_dbm).points();
}

void emit(const CommonArgs& args, const std::string& command, const ambsc::Table& table,
          const Loaded& loaded) {
  const ambsc::CsvMeta meta{command, loaded.hash, loaded.scenario.system.seed};
  std::string path = args.out;
  if (path.empty()) {
    if (const char* dir = std::getenv("BSC_OUT_DIR"); dir && *dir) {
      std::filesystem::create_directories(dir);
      path = (std::filesystem::path(dir) / (command + ".csv")).string();
    }
  }
  if (path.empty()) {
    ambsc::write_csv(std::cout, table, meta);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  ambsc::write_csv(out, table, meta);
  std::cerr << "wrote " << table.rows.size() << " rows to " << path << '\n';
}

int print_validation(const std::vector<fig::ValidationRow>& rows) {
  std::printf("%-24s %7s %12s %12s %10s %10s  %s\n", "quantity", "pt_dbm", "analytic", "mc",
              "stderr", "tol", "status");
  for (const auto& r : rows) {
    const char* status = r.pass ? "pass" : (r.gating ? "FAIL" : "info");
    std::printf("%-24s %7.1f %12.6f %12.6f %10.2e %10.2e  %s\n", r.quantity.c_str(), r.pt_dbm,
                r.analytic, r.mc, r.std_error, r.tolerance, status);
  }
  const bool ok = fig::all_pass(rows);
  std::printf("%s\n", ok ? "all pairings within tolerance" : "some pairings out of tolerance");
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outage analysis of ambient backscatter links sharing a legacy channel"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(AMBSC_VERSION));

  CommonArgs args;
  app.add_option("--config", args.config, "Scenario file (default: built-in reference)");
  app.add_option("--seed", args.seed, "Simulation seed");
  app.add_option("--trials", args.trials, "Simulation trials per point")->check(CLI::PositiveNumber);
  app.add_option("--gc-order", args.gc_order, "Gauss-Chebyshev order")->check(CLI::PositiveNumber);
  app.add_option("--pt-dbm", args.pt_dbm, "Transmit power grid LO:HI:STEP in dBm");
  app.add_option("--out", args.out, "Output file (default: $BSC_OUT_DIR/<cmd>.csv or stdout)");
  app.add_option("--eh", args.eh, "Harvester model override")
      ->check(CLI::IsMember({"nonlinear", "linear"}));
  app.add_flag("--no-mc", args.no_mc, "Skip the simulation columns");

  auto* fig2 = app.add_subcommand("fig2", "Backscatter outage versus transmit power");
  auto* fig3 = app.add_subcommand("fig3", "Outage capacity versus circuit power per RC scheme");
  std::string pc_grid = "0:30:2";
  std::size_t fig3_link = 3;
  double fig3_pt = 20.0;
  fig3->add_option("--pc-uw", pc_grid, "Circuit power grid LO:HI:STEP in microwatts");
  fig3->add_option("--link", fig3_link, "1-based link index")->check(CLI::PositiveNumber);
  fig3->add_option("--at-dbm", fig3_pt, "Transmit power in dBm");

  auto* fig4 = app.add_subcommand("fig4", "Legacy outage versus transmit power");
  auto* fig5 = app.add_subcommand("fig5", "Legacy outage versus legacy target rate");
  std::string rate_grid = "1:20:1";
  double fig5_pt = 30.0;
  fig5->add_option("--rate-mbps", rate_grid, "Rate grid LO:HI:STEP in Mbit/s");
  fig5->add_option("--at-dbm", fig5_pt, "Transmit power in dBm");

  auto* fig6 = app.add_subcommand("fig6", "Single-device geometry sweep");
  std::string fig6_mode = "angle";
  int theta_points = 360;
  std::string radius_grid = "1:3.5:0.125";
  double fig6_theta = std::numbers::pi / 4.0;
  fig::CircleLayout layout;
  fig6->add_option("--sweep", fig6_mode, "angle or radius")
      ->check(CLI::IsMember({"angle", "radius"}));
  fig6->add_option("--theta-points", theta_points, "Angle grid size over [0, 2pi)")
      ->check(CLI::PositiveNumber);
  fig6->add_option("--radius", radius_grid, "Radius grid LO:HI:STEP in metres");
  fig6->add_option("--theta", fig6_theta, "Angle in radians for the radius sweep");
  fig6->add_option("--at-dbm", layout.pt_dbm, "Transmit power in dBm");

  auto* validate = app.add_subcommand("validate", "Analytic versus simulation report");
  auto* sweep = app.add_subcommand("sweep", "All closed forms over a power grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Loaded loaded = load(args);
    const auto& s = loaded.scenario;
    const auto opts = figure_options(args, s);

    if (*fig2) {
      emit(args, "fig2", fig::fig2(s, pt_grid(args, "0:60:2"), opts), loaded);
    } else if (*fig3) {
      if (fig3_link > s.links.size()) throw std::invalid_argument("--link exceeds link count");
      std::vector<double> pc;
      for (double uw : fig::parse_grid(pc_grid).points()) pc.push_back(uw * 1e-6);
      fig::Fig3Options f;
      f.link = fig3_link - 1;
      f.pt_dbm = fig3_pt;
      emit(args, "fig3", fig::fig3(s, pc, f, opts), loaded);
    } else if (*fig4) {
      emit(args, "fig4", fig::fig4(s, pt_grid(args, "0:60:2"), opts), loaded);
    } else if (*fig5) {
      std::vector<double> rates;
      for (double mbps : fig::parse_grid(rate_grid).points()) rates.push_back(mbps * 1e6);
      emit(args, "fig5", fig::fig5(s, rates, fig5_pt, opts), loaded);
    } else if (*fig6) {
      if (fig6_mode == "angle") {
        std::vector<double> theta;
        for (int i = 0; i < theta_points; ++i) {
          theta.push_back(2.0 * std::numbers::pi * i / theta_points);
        }
        emit(args, "fig6", fig::fig6_angle(s, theta, layout), loaded);
      } else {
        emit(args, "fig6",
             fig::fig6_radius(s, fig::parse_grid(radius_grid).points(), fig6_theta, layout),
             loaded);
      }
    } else if (*validate) {
      const auto grid = args.pt_dbm.empty() ? std::vector<double>{10.0, 20.0, 30.0}
                                            : pt_grid(args, "");
      return print_validation(fig::validate(s, grid, opts));
    } else if (*sweep) {
      emit(args, "sweep", fig::sweep(s, pt_grid(args, "0:60:2"), opts.gc_order), loaded);
    }
  } catch (const ambsc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ambsc::ValidationError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
