#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ambsc/analytic.hpp"
#include "ambsc/config.hpp"
#include "ambsc/errors.hpp"
#include "ambsc/figures.hpp"
#include "ambsc/montecarlo.hpp"
#include "ambsc/specfun.hpp"
#include "ambsc/units.hpp"

namespace py = pybind11;
using namespace ambsc;

namespace {

// Column-major view of a table: {name: [values...]}, in column order.
py::dict table_to_dict(const Table& t) {
  py::dict out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    std::vector<double> col;
    col.reserve(t.rows.size());
    for (const auto& row : t.rows) col.push_back(row[c]);
    out[py::str(t.columns[c])] = std::move(col);
  }
  return out;
}

py::dict estimate_to_dict(const mc::McEstimate& e) {
  py::dict d;
  d["p"] = e.p_hat;
  d["std_error"] = e.std_error;
  d["trials"] = e.n;
  return d;
}

EhMode parse_eh(const std::string& name) {
  if (name == "nonlinear") return EhMode::nonlinear;
  if (name == "linear") return EhMode::linear;
  throw std::invalid_argument("eh mode must be 'nonlinear' or 'linear'");
}

mc::RcScheme parse_scheme(const std::string& name, double beta) {
  if (name == "adaptive") return mc::RcScheme::adaptive();
  if (name == "fixed") return mc::RcScheme::fixed(beta);
  if (name == "random") return mc::RcScheme::random_uniform();
  throw std::invalid_argument("scheme must be 'adaptive', 'fixed' or 'random'");
}

using Seed = std::optional<std::uint64_t>;

// Zero trials and a missing seed keep the scenario's own settings.
figures::FigureOptions figure_options(const Scenario& s, bool monte_carlo, std::int64_t trials,
                                      Seed seed) {
  auto o = figures::options_from(s);
  o.monte_carlo = monte_carlo;
  if (trials > 0) o.mc.trials = trials;
  if (seed) o.mc.seed = *seed;
  return o;
}

template <class Fn>
py::dict run_table(Fn&& fn) {
  Table t;
  {
    py::gil_scoped_release release;
    t = fn();
  }
  return table_to_dict(t);
}

}  // namespace

PYBIND11_MODULE(_ambsc, m) {
  m.doc() = "Ambient backscatter outage analysis and simulation";
  m.attr("__version__") = AMBSC_VERSION;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<Scenario>(m, "Scenario")
      .def_property_readonly("num_links", [](const Scenario& s) { return s.links.size(); })
      .def_property_readonly("transmit_power_dbm",
                             [](const Scenario& s) { return units::watts_to_dbm(s.system.transmit_power); })
      .def_property_readonly("seed", [](const Scenario& s) { return s.system.seed; })
      .def("at_power_dbm", &figures::at_power_dbm, py::arg("pt_dbm"),
           "Copy with the legacy transmit power replaced.")
      .def("with_eh_mode",
           [](const Scenario& s, const std::string& mode) {
             return figures::with_eh_mode(s, parse_eh(mode));
           },
           py::arg("mode"))
      .def("__repr__", [](const Scenario& s) {
        return "<Scenario links=" + std::to_string(s.links.size()) +
               " pt=" + std::to_string(units::watts_to_dbm(s.system.transmit_power)) + " dBm>";
      });

  m.def("reference_scenario", &reference_scenario);
  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", [](const std::string& text) { return parse_config(text); },
        py::arg("text"));

  m.def("bessel_k0", &specfun::bessel_k0);
  m.def("bessel_k1", &specfun::bessel_k1);
  m.def("expint_ei", &specfun::expint_ei);
  m.def("product_cdf",
        [](double x, double scale) { return analytic::ProductChannelDist{scale}.cdf(x); },
        py::arg("x"), py::arg("scale") = 1.0,
        "CDF of the product of two independent exponential gains with mean product `scale`.");
  m.def("product_laplace", &analytic::product_laplace, py::arg("r"));

  m.def("outage",
        [](const Scenario& s, int gc_order) {
          const auto r = analytic::compute_report(s, gc_order);
          py::list links;
          for (const auto& l : r.links) {
            py::dict d;
            d["backscatter"] = l.backscatter_exact;
            d["backscatter_gc"] = l.backscatter_gc;
            d["backscatter_highsnr"] = l.backscatter_highsnr;
            d["backscatter_floor"] = l.backscatter_floor;
            d["legacy"] = l.legacy;
            d["legacy_floor"] = l.legacy_floor;
            links.append(d);
          }
          py::dict out;
          out["links"] = links;
          out["backscatter_best"] = r.backscatter_best;
          out["backscatter_best_floor"] = r.backscatter_best_floor;
          out["backscatter_worst"] = r.backscatter_worst;
          out["backscatter_worst_floor"] = r.backscatter_worst_floor;
          out["legacy_no_backscatter"] = r.legacy_no_backscatter;
          out["legacy_best"] = r.legacy_best;
          out["legacy_best_floor"] = r.legacy_best_floor;
          out["legacy_worst"] = r.legacy_worst;
          out["legacy_worst_floor"] = r.legacy_worst_floor;
          return out;
        },
        py::arg("scenario"), py::arg("gc_order") = 10,
        "Closed-form outage probabilities at the scenario's transmit power.");

  m.def("simulate",
        [](const Scenario& s, std::int64_t trials, Seed seed, const std::string& scheme,
           double beta, unsigned workers) {
          mc::McOptions o = mc::options_from(s.system);
          o.trials = trials;
          if (seed) o.seed = *seed;
          o.workers = workers;
          mc::SimulationSummary r;
          {
            py::gil_scoped_release release;
            r = mc::simulate(s, parse_scheme(scheme, beta), o);
          }
          py::list bs, lg, act;
          for (const auto& e : r.backscatter) bs.append(estimate_to_dict(e));
          for (const auto& e : r.legacy) lg.append(estimate_to_dict(e));
          for (const auto& e : r.active) act.append(estimate_to_dict(e));
          py::dict out;
          out["backscatter"] = bs;
          out["legacy"] = lg;
          out["active"] = act;
          out["backscatter_best"] = estimate_to_dict(r.backscatter_best);
          out["backscatter_worst"] = estimate_to_dict(r.backscatter_worst);
          out["legacy_best"] = estimate_to_dict(r.legacy_best);
          out["legacy_worst"] = estimate_to_dict(r.legacy_worst);
          out["legacy_no_backscatter"] = estimate_to_dict(r.legacy_none);
          out["all_active"] = estimate_to_dict(r.all_active);
          return out;
        },
        py::arg("scenario"), py::arg("trials") = 1'000'000, py::arg("seed") = py::none(),
        py::arg("scheme") = "adaptive", py::arg("beta") = 0.5, py::arg("workers") = 0);

  m.def("sweep",
        [](const Scenario& s, const std::vector<double>& pt_dbm, int gc_order) {
          return run_table([&] { return figures::sweep(s, pt_dbm, gc_order); });
        },
        py::arg("scenario"), py::arg("pt_dbm"), py::arg("gc_order") = 10);

  m.def("fig2",
        [](const Scenario& s, const std::vector<double>& pt_dbm, bool monte_carlo,
           std::int64_t trials, Seed seed) {
          const auto o = figure_options(s, monte_carlo, trials, seed);
          return run_table([&] { return figures::fig2(s, pt_dbm, o); });
        },
        py::arg("scenario"), py::arg("pt_dbm"), py::arg("monte_carlo") = false,
        py::arg("trials") = 0, py::arg("seed") = py::none());

  m.def("fig4",
        [](const Scenario& s, const std::vector<double>& pt_dbm, bool monte_carlo,
           std::int64_t trials, Seed seed) {
          const auto o = figure_options(s, monte_carlo, trials, seed);
          return run_table([&] { return figures::fig4(s, pt_dbm, o); });
        },
        py::arg("scenario"), py::arg("pt_dbm"), py::arg("monte_carlo") = false,
        py::arg("trials") = 0, py::arg("seed") = py::none());

  m.def("validate",
        [](const Scenario& s, const std::vector<double>& pt_dbm, std::int64_t trials, Seed seed) {
          const auto o = figure_options(s, true, trials, seed);
          std::vector<figures::ValidationRow> rows;
          {
            py::gil_scoped_release release;
            rows = figures::validate(s, pt_dbm, o);
          }
          py::list out;
          for (const auto& r : rows) {
            py::dict d;
            d["quantity"] = r.quantity;
            d["pt_dbm"] = r.pt_dbm;
            d["analytic"] = r.analytic;
            d["mc"] = r.mc;
            d["std_error"] = r.std_error;
            d["tolerance"] = r.tolerance;
            d["gating"] = r.gating;
            d["pass"] = r.pass;
            out.append(d);
          }
          return out;
        },
        py::arg("scenario"), py::arg("pt_dbm"), py::arg("trials") = 0, py::arg("seed") = py::none());
}
