#include "ambsc/figures.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "ambsc/analytic.hpp"
#include "ambsc/errors.hpp"
#include "ambsc/units.hpp"

namespace ambsc::figures {
namespace {

namespace an = ambsc::analytic;

using Row = std::vector<double>;

// Rows are computed on a pool but stored by index, so output order is the
// grid order. Each row's simulation then runs single-threaded.
template <typename F>
std::vector<Row> map_rows(std::size_t n, F&& make_row) {
  std::vector<Row> rows(n);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, n));
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) rows[i] = make_row(i, workers > 1);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

mc::McOptions row_mc(const FigureOptions& opts, bool rows_parallel) {
  mc::McOptions m = opts.mc;
  if (rows_parallel) m.workers = 1;
  return m;
}

std::string link_col(const char* prefix, std::size_t k, const char* suffix = "") {
  return prefix + std::to_string(k + 1) + suffix;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number '" + std::string(s) + "' in grid");
  }
  return v;
}

// Columns and values shared by fig4 and fig5.
std::vector<std::string> legacy_columns(std::size_t k, bool with_mc) {
  std::vector<std::string> c{"no_sl"};
  for (std::size_t i = 0; i < k; ++i) {
    c.push_back(link_col("lg", i));
    c.push_back(link_col("lg", i, "_floor"));
  }
  for (const char* s : {"best", "best_floor", "best_quad", "worst", "worst_floor", "worst_quad"}) {
    c.emplace_back(s);
  }
  for (std::size_t i = 0; i < k; ++i) c.push_back(link_col("lg", i, "_linear"));
  c.emplace_back("best_linear");
  c.emplace_back("worst_linear");
  if (with_mc) {
    c.emplace_back("no_sl_mc");
    c.emplace_back("no_sl_mc_se");
    for (std::size_t i = 0; i < k; ++i) {
      c.push_back(link_col("lg", i, "_mc"));
      c.push_back(link_col("lg", i, "_mc_se"));
    }
    for (const char* s : {"best_mc", "best_mc_se", "worst_mc", "worst_mc_se"}) c.emplace_back(s);
  }
  return c;
}

void append_legacy_values(Row& row, const Scenario& s, const FigureOptions& opts,
                          bool rows_parallel) {
  const auto links = derive_all(s);
  const int m = opts.gc_order;
  row.push_back(an::legacy_no_backscatter(links.front()));
  for (const auto& c : links) {
    row.push_back(an::legacy_outage(c));
    row.push_back(an::legacy_outage_floor(c));
  }
  row.push_back(an::legacy_best(links, m));
  row.push_back(an::legacy_best_floor(links, m));
  row.push_back(an::legacy_best_quadrature(links));
  row.push_back(an::legacy_worst(links, m));
  row.push_back(an::legacy_worst_floor(links, m));
  row.push_back(an::legacy_worst_quadrature(links));

  const auto linear = derive_all(with_eh_mode(s, EhMode::linear));
  for (const auto& c : linear) row.push_back(an::legacy_outage(c));
  row.push_back(an::legacy_best(linear, m));
  row.push_back(an::legacy_worst(linear, m));

  if (opts.monte_carlo) {
    const auto sim = mc::simulate(s, mc::RcScheme::adaptive(), row_mc(opts, rows_parallel));
    row.push_back(sim.legacy_none.p_hat);
    row.push_back(sim.legacy_none.std_error);
    for (const auto& e : sim.legacy) {
      row.push_back(e.p_hat);
      row.push_back(e.std_error);
    }
    row.push_back(sim.legacy_best.p_hat);
    row.push_back(sim.legacy_best.std_error);
    row.push_back(sim.legacy_worst.p_hat);
    row.push_back(sim.legacy_worst.std_error);
  }
}

}  // namespace

std::vector<double> Grid::points() const {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("grid needs finite lo <= hi and step > 0");
  }
  const double span = (hi - lo) / step;
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  if (n > 1'000'000) throw std::invalid_argument("grid too large");
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

Grid parse_grid(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos) {
    throw std::invalid_argument("grid must look like LO:HI:STEP");
  }
  Grid g{parse_double(text.substr(0, a)), parse_double(text.substr(a + 1, b - a - 1)),
         parse_double(text.substr(b + 1))};
  g.points();  // validates
  return g;
}

FigureOptions options_from(const Scenario& scenario) {
  FigureOptions o;
  o.mc = mc::options_from(scenario.system);
  o.gc_order = scenario.system.gc_order;
  return o;
}

Scenario at_power_dbm(Scenario scenario, double pt_dbm) {
  scenario.system.transmit_power = units::dbm_to_watts(pt_dbm);
  return scenario;
}

Scenario with_eh_mode(Scenario scenario, EhMode mode) {
  for (auto& l : scenario.links) l.eh.mode = mode;
  return scenario;
}

Table fig2(const Scenario& scenario, const std::vector<double>& pt_dbm,
           const FigureOptions& opts) {
  const std::size_t k = scenario.links.size();
  Table t;
  t.columns.emplace_back("pt_dbm");
  for (std::size_t i = 0; i < k; ++i) {
    for (const char* s : {"_exact", "_gc", "_highsnr", "_floor"}) t.columns.push_back(link_col("bs", i, s));
    if (opts.monte_carlo) {
      t.columns.push_back(link_col("bs", i, "_mc"));
      t.columns.push_back(link_col("bs", i, "_mc_se"));
    }
  }
  for (const char* sel : {"best", "worst"}) {
    t.columns.emplace_back(sel);
    t.columns.push_back(std::string(sel) + "_floor");
    if (opts.monte_carlo) {
      t.columns.push_back(std::string(sel) + "_mc");
      t.columns.push_back(std::string(sel) + "_mc_se");
    }
  }
  for (std::size_t i = 0; i < k; ++i) t.columns.push_back(link_col("bs", i, "_exact_linear"));
  t.columns.emplace_back("best_linear");
  t.columns.emplace_back("worst_linear");

  t.rows = map_rows(pt_dbm.size(), [&](std::size_t r, bool par) {
    const Scenario s = at_power_dbm(scenario, pt_dbm[r]);
    const auto links = derive_all(s);
    mc::SimulationSummary sim;
    if (opts.monte_carlo) sim = mc::simulate(s, mc::RcScheme::adaptive(), row_mc(opts, par));

    Row row{pt_dbm[r]};
    std::vector<double> exact, floors;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& c = links[i];
      exact.push_back(an::backscatter_outage_exact(c));
      floors.push_back(an::backscatter_outage_floor(c));
      row.push_back(exact.back());
      row.push_back(an::backscatter_outage_gc(c, opts.gc_order));
      row.push_back(an::backscatter_outage_highsnr(c));
      row.push_back(floors.back());
      if (opts.monte_carlo) {
        row.push_back(sim.backscatter[i].p_hat);
        row.push_back(sim.backscatter[i].std_error);
      }
    }
    row.push_back(an::backscatter_best(exact));
    row.push_back(an::backscatter_best(floors));
    if (opts.monte_carlo) {
      row.push_back(sim.backscatter_best.p_hat);
      row.push_back(sim.backscatter_best.std_error);
    }
    row.push_back(an::backscatter_worst(exact));
    row.push_back(an::backscatter_worst(floors));
    if (opts.monte_carlo) {
      row.push_back(sim.backscatter_worst.p_hat);
      row.push_back(sim.backscatter_worst.std_error);
    }
    std::vector<double> linear;
    for (const auto& c : derive_all(with_eh_mode(s, EhMode::linear))) {
      linear.push_back(an::backscatter_outage_exact(c));
      row.push_back(linear.back());
    }
    row.push_back(an::backscatter_best(linear));
    row.push_back(an::backscatter_worst(linear));
    return row;
  });
  return t;
}

Table fig3(const Scenario& scenario, const std::vector<double>& circuit_power,
           const Fig3Options& fig, const FigureOptions& opts) {
  if (fig.link >= scenario.links.size()) throw std::out_of_range("fig3: link index out of range");
  std::vector<mc::RcScheme> schemes{mc::RcScheme::adaptive()};
  Table t;
  t.columns = {"pc_w", "feasible", "analytic_adaptive", "adaptive", "adaptive_se"};
  for (double b : fig.fixed_betas) {
    schemes.push_back(mc::RcScheme::fixed(b));
    const std::string name = "fixed_" + format_number(b);
    t.columns.push_back(name);
    t.columns.push_back(name + "_se");
  }
  schemes.push_back(mc::RcScheme::random_uniform());
  t.columns.emplace_back("random");
  t.columns.emplace_back("random_se");

  const std::size_t width = t.columns.size();
  t.rows = map_rows(circuit_power.size(), [&](std::size_t r, bool par) {
    Scenario s = at_power_dbm(scenario, fig.pt_dbm);
    BackscatterLink link = s.links[fig.link];
    link.circuit_power = circuit_power[r];
    s.links = {link};
    Row row{circuit_power[r]};
    DerivedConstants c;
    try {
      c = derive_constants(s.system, s.legacy, link);
    } catch (const InfeasibleError&) {
      // The device can never power up: zero capacity for every scheme.
      row.resize(width, 0.0);
      return row;
    }
    row.push_back(1.0);
    row.push_back(an::outage_capacity(an::backscatter_outage_exact(c), c.gamma_backscatter,
                                      s.system.bandwidth));
    for (const auto& scheme : schemes) {
      const auto cap = mc::estimate_outage_capacity(s, 0, scheme, row_mc(opts, par));
      row.push_back(cap.capacity);
      row.push_back(cap.std_error);
    }
    return row;
  });
  return t;
}

Table fig4(const Scenario& scenario, const std::vector<double>& pt_dbm,
           const FigureOptions& opts) {
  Table t;
  t.columns = {"pt_dbm"};
  for (auto& c : legacy_columns(scenario.links.size(), opts.monte_carlo)) t.columns.push_back(c);
  t.rows = map_rows(pt_dbm.size(), [&](std::size_t r, bool par) {
    Row row{pt_dbm[r]};
    append_legacy_values(row, at_power_dbm(scenario, pt_dbm[r]), opts, par);
    return row;
  });
  return t;
}

Table fig5(const Scenario& scenario, const std::vector<double>& legacy_rate, double pt_dbm,
           const FigureOptions& opts) {
  Table t;
  t.columns = {"rate_bps"};
  for (auto& c : legacy_columns(scenario.links.size(), opts.monte_carlo)) t.columns.push_back(c);
  t.rows = map_rows(legacy_rate.size(), [&](std::size_t r, bool par) {
    Scenario s = at_power_dbm(scenario, pt_dbm);
    s.system.legacy_rate = legacy_rate[r];
    Row row{legacy_rate[r]};
    append_legacy_values(row, s, opts, par);
    return row;
  });
  return t;
}

Scenario circle_scenario(const Scenario& base, const CircleLayout& layout, double theta) {
  if (base.links.empty()) throw std::invalid_argument("circle_scenario: base has no link");
  Scenario s = at_power_dbm(base, layout.pt_dbm);
  BackscatterLink link = base.links.front();
  const auto d = circle_geometry(theta, layout.radius, layout.dist_lt_br, layout.dist_lt_lr);
  link.dist_lt_bd = layout.radius;
  link.dist_lt_br = layout.dist_lt_br;
  link.dist_bd_br = d.bd_br;
  link.dist_bd_lr = d.bd_lr;
  s.legacy.distance = layout.dist_lt_lr;
  s.links = {link};
  return s;
}

namespace {

Row circle_row(const Scenario& s, double x) {
  const auto c = derive_constants(s.system, s.legacy, s.links.front());
  return {x,
          s.links.front().dist_bd_br,
          s.links.front().dist_bd_lr,
          an::legacy_outage(c),
          an::legacy_outage_floor(c),
          an::backscatter_outage_exact(c),
          an::backscatter_outage_floor(c)};
}

const std::vector<std::string> kCircleColumns = {
    "dist_bd_br", "dist_bd_lr", "legacy", "legacy_floor", "backscatter", "backscatter_floor"};

}  // namespace

Table fig6_angle(const Scenario& base, const std::vector<double>& theta,
                 const CircleLayout& layout) {
  Table t;
  t.columns = {"theta"};
  t.columns.insert(t.columns.end(), kCircleColumns.begin(), kCircleColumns.end());
  t.rows = map_rows(theta.size(), [&](std::size_t r, bool) {
    return circle_row(circle_scenario(base, layout, theta[r]), theta[r]);
  });
  return t;
}

Table fig6_radius(const Scenario& base, const std::vector<double>& radius, double theta,
                  const CircleLayout& layout) {
  Table t;
  t.columns = {"radius"};
  t.columns.insert(t.columns.end(), kCircleColumns.begin(), kCircleColumns.end());
  t.rows = map_rows(radius.size(), [&](std::size_t r, bool) {
    CircleLayout l = layout;
    l.radius = radius[r];
    return circle_row(circle_scenario(base, l, theta), radius[r]);
  });
  return t;
}

Table sweep(const Scenario& scenario, const std::vector<double>& pt_dbm, int gc_order) {
  const std::size_t k = scenario.links.size();
  Table t;
  t.columns = {"pt_dbm"};
  for (std::size_t i = 0; i < k; ++i) {
    for (const char* s : {"_exact", "_gc", "_highsnr", "_floor"}) t.columns.push_back(link_col("bs", i, s));
  }
  for (std::size_t i = 0; i < k; ++i) {
    t.columns.push_back(link_col("lg", i));
    t.columns.push_back(link_col("lg", i, "_floor"));
  }
  for (const char* s : {"bs_best", "bs_best_floor", "bs_worst", "bs_worst_floor", "no_sl",
                        "lg_best", "lg_best_floor", "lg_worst", "lg_worst_floor"}) {
    t.columns.emplace_back(s);
  }
  t.rows = map_rows(pt_dbm.size(), [&](std::size_t r, bool) {
    const auto rep = an::compute_report(at_power_dbm(scenario, pt_dbm[r]), gc_order);
    Row row{pt_dbm[r]};
    for (const auto& l : rep.links) {
      row.insert(row.end(), {l.backscatter_exact, l.backscatter_gc, l.backscatter_highsnr,
                             l.backscatter_floor});
    }
    for (const auto& l : rep.links) row.insert(row.end(), {l.legacy, l.legacy_floor});
    row.insert(row.end(), {rep.backscatter_best, rep.backscatter_best_floor, rep.backscatter_worst,
                           rep.backscatter_worst_floor, rep.legacy_no_backscatter, rep.legacy_best,
                           rep.legacy_best_floor, rep.legacy_worst, rep.legacy_worst_floor});
    return row;
  });
  return t;
}

std::vector<ValidationRow> validate(const Scenario& scenario, const std::vector<double>& pt_dbm,
                                    const FigureOptions& opts) {
  std::vector<ValidationRow> out;
  for (double p : pt_dbm) {
    const Scenario s = at_power_dbm(scenario, p);
    const auto links = derive_all(s);
    const auto sim = mc::simulate(s, mc::RcScheme::adaptive(), opts.mc);
    const auto add = [&](std::string name, double analytic, const mc::McEstimate& e,
                         bool gating = true) {
      ValidationRow r;
      r.quantity = std::move(name);
      r.pt_dbm = p;
      r.analytic = analytic;
      r.mc = e.p_hat;
      r.std_error = e.std_error;
      r.tolerance = std::max(3.0 * e.std_error, 2e-3);
      r.gating = gating;
      r.pass = std::abs(analytic - e.p_hat) <= r.tolerance;
      out.push_back(std::move(r));
    };
    std::vector<double> exact;
    for (std::size_t i = 0; i < links.size(); ++i) {
      exact.push_back(an::backscatter_outage_exact(links[i]));
      add(link_col("backscatter_", i), exact.back(), sim.backscatter[i]);
    }
    add("backscatter_best", an::backscatter_best(exact), sim.backscatter_best);
    add("backscatter_worst", an::backscatter_worst(exact), sim.backscatter_worst);
    for (std::size_t i = 0; i < links.size(); ++i) {
      add(link_col("legacy_", i), an::legacy_outage(links[i]), sim.legacy[i]);
    }
    add("legacy_best", an::legacy_best_quadrature(links), sim.legacy_best);
    add("legacy_worst", an::legacy_worst_quadrature(links), sim.legacy_worst);
    add("legacy_best_gc", an::legacy_best(links, opts.gc_order), sim.legacy_best, false);
    add("legacy_worst_gc", an::legacy_worst(links, opts.gc_order), sim.legacy_worst, false);
    add("legacy_no_backscatter", an::legacy_no_backscatter(links.front()), sim.legacy_none);
  }
  return out;
}

bool all_pass(const std::vector<ValidationRow>& rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ValidationRow& r) { return !r.gating || r.pass; });
}

}  // namespace ambsc::figures
