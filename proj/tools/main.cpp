// wavebasis command-line front end: spectra, wavefunction traces, Bloch
// dispersion curves, transfer-matrix propagation, and the built-in
// validation report. Emits deterministic CSV or JSON.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wavebasis/bases.hpp"
#include "wavebasis/bloch.hpp"
#include "wavebasis/dtmm.hpp"
#include "wavebasis/errors.hpp"
#include "wavebasis/oracle.hpp"
#include "wavebasis/report.hpp"
#include "wavebasis/spectra.hpp"
#include "wavebasis/version.hpp"

namespace {

using nlohmann::json;
using namespace wavebasis;

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json json_value(double v) {
  if (std::isfinite(v)) return v;
  return fmt_double(v);  // JSON has no inf/nan; emit the sentinel string
}

struct OutputTable {
  std::string command;
  std::vector<std::string> columns;  // names with bracketed units
  std::vector<std::vector<double>> rows;
  std::vector<std::string> method_tags;  // optional per-row tag column
  std::string tag_column;
};

void write_output(const OutputTable& table, const std::string& out_path,
                  const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    os << "# wavebasis " << version_string << " " << table.command << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      os << (c ? "," : "") << table.columns[c];
    if (!table.tag_column.empty()) os << "," << table.tag_column;
    os << "\n";
    for (std::size_t rix = 0; rix < table.rows.size(); ++rix) {
      const auto& row = table.rows[rix];
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << fmt_double(row[c]);
      if (!table.tag_column.empty()) os << "," << table.method_tags[rix];
      os << "\n";
    }
  } else if (format == "json") {
    json doc;
    doc["version"] = version_string;
    doc["command"] = table.command;
    doc["columns"] = table.columns;
    if (!table.tag_column.empty()) doc["tag_column"] = table.tag_column;
    json rows = json::array();
    for (std::size_t rix = 0; rix < table.rows.size(); ++rix) {
      json row = json::array();
      for (double v : table.rows[rix]) row.push_back(json_value(v));
      if (!table.tag_column.empty()) row.push_back(table.method_tags[rix]);
      rows.push_back(row);
    }
    doc["rows"] = rows;
    os << doc.dump(2) << "\n";
  } else {
    throw ConfigError("unknown output format: " + format);
  }

  if (out_path.empty() || out_path == "-") {
    std::cout << os.str();
  } else {
    std::ofstream f(out_path);
    if (!f) throw ConfigError("cannot open output file: " + out_path);
    f << os.str();
  }
}

struct PotentialArgs {
  std::string type;
  std::string spec_path;
  double U = 1.0;
  double alpha = 2.0;
  double beta = 0.5;
  double omega = 1.0;
  double half_width = 1.0;

  void register_flags(CLI::App* cmd) {
    cmd->add_option("--potential", type,
                    "potential type: power_law|singular|harmonic|piecewise|tabulated|hard_wall");
    cmd->add_option("--spec", spec_path, "path to a JSON potential spec");
    cmd->add_option("--U", U, "potential strength U");
    cmd->add_option("--alpha", alpha, "power-law exponent");
    cmd->add_option("--beta", beta, "singular-well exponent, in (0,1)");
    cmd->add_option("--omega", omega, "harmonic angular frequency");
    cmd->add_option("--half-width", half_width, "hard-wall half width");
  }

  PotentialDocument resolve() const {
    if (!spec_path.empty()) return load_potential_file(spec_path);
    PotentialDocument doc;
    if (type == "power_law")
      doc.potential = PowerLawPotential{U, alpha};
    else if (type == "singular")
      doc.potential = SingularPotential{U, beta};
    else if (type == "harmonic")
      doc.potential = HarmonicPotential{omega};
    else if (type == "hard_wall")
      doc.potential = HardWallPotential{half_width};
    else if (type.empty())
      throw ConfigError("no potential given: use --potential or --spec");
    else
      throw ConfigError("potential type \"" + type +
                        "\" needs a JSON spec (--spec) or is unknown");
    try {
      validate(doc.potential);
    } catch (const PreconditionError& e) {
      throw ConfigError(e.what());
    }
    return doc;
  }
};

double closed_form_energy(const PotentialDocument& doc, int n) {
  const auto& scales = doc.scales;
  if (const auto* p = std::get_if<PowerLawPotential>(&doc.potential))
    return power_law_energy(p->U, p->alpha, n, scales);
  if (const auto* p = std::get_if<HarmonicPotential>(&doc.potential))
    return power_law_energy(0.5 * scales.mass * p->omega * p->omega, 2.0, n, scales);
  if (const auto* p = std::get_if<SingularPotential>(&doc.potential))
    return singular_energy(p->U, p->beta, n, scales);
  if (const auto* p = std::get_if<HardWallPotential>(&doc.potential))
    return infinite_well_energy(n, scales, p->half_width);
  return std::numeric_limits<double>::quiet_NaN();
}

double oracle_energy(const PotentialDocument& doc, int node_count) {
  const bool singular = std::holds_alternative<SingularPotential>(doc.potential);
  const double rtol = singular ? 1.2e-3 : 1e-8;
  return numerov_energy_converged(doc.potential, doc.scales, node_count, rtol,
                                  singular ? 3 : 4);
}

int cmd_spectrum(const PotentialArgs& pot, int n_max, const std::string& out,
                 const std::string& format) {
  const PotentialDocument doc = pot.resolve();
  const bool hard_wall = std::holds_alternative<HardWallPotential>(doc.potential);
  const KsqProfile prof(doc.potential, doc.scales);

  OutputTable table;
  table.command = "spectrum";
  table.columns = {"n",          "E_closed_form[energy]", "E_quantization_root[energy]",
                   "E_wkb_rule[energy]", "E_oracle[energy]",      "rel_err_vs_oracle[1]"};
  const int n_lo = hard_wall ? 1 : 0;
  for (int n = n_lo; n <= std::max(n_lo, n_max); ++n) {
    const double cf = closed_form_energy(doc, n);
    const double root = solve_quantization(prof, QuantizationRule::NewBases, n).E;
    const double wkb = solve_quantization(prof, QuantizationRule::WKB, n).E;
    const double oracle = oracle_energy(doc, hard_wall ? n - 1 : n);
    const double err = std::abs(cf - oracle) / std::abs(oracle);
    table.rows.push_back({static_cast<double>(n), cf, root, wkb, oracle, err});
  }
  write_output(table, out, format);
  return exit_ok;
}

int cmd_wavefunction(const PotentialArgs& pot, int n, const std::string& energy_from,
                     const std::string& rule_name, double window, int grid_points,
                     bool with_airy, const std::string& out, const std::string& format) {
  const PotentialDocument doc = pot.resolve();
  if (n % 2 != 0)
    throw ConfigError("wavefunction traces support even states (C-basis initial conditions)");
  if (!(window > 0.0 && window <= 1.0))
    throw ConfigError("--window must lie in (0, 1]");
  QuantizationRule rule;
  if (rule_name == "new")
    rule = QuantizationRule::NewBases;
  else if (rule_name == "wkb")
    rule = QuantizationRule::WKB;
  else
    throw ConfigError("--rule must be new|wkb");

  double energy = 0.0;
  if (energy_from == "oracle")
    energy = oracle_energy(doc, n);
  else if (energy_from == "closed-form")
    energy = closed_form_energy(doc, n);
  else if (energy_from == "quantization")
    energy = solve_quantization(KsqProfile(doc.potential, doc.scales), rule, n).E;
  else
    throw ConfigError("--energy-from must be oracle|closed-form|quantization");
  if (std::isnan(energy)) throw ConfigError("no closed form for this potential type");

  const auto traces =
      wavefunction_traces(doc.potential, doc.scales, energy, window, grid_points);

  OutputTable table;
  table.command = "wavefunction";
  table.columns = {"x[length]", "u_oracle[1]", "u_new_bases[1]", "u_simple_wkb[1]",
                   "u_improved_wkb[1]"};
  if (with_airy) table.columns.push_back("u_airy_improved[1]");
  const double tp_tol = 1e-8;
  for (std::size_t i = 0; i < traces.x.size(); ++i) {
    const double x = traces.x[i];
    const bool at_tp =
        std::abs(x - traces.xi) < tp_tol || std::abs(x + traces.xi) < tp_tol;
    auto divergent = [&](double v) {
      return at_tp ? std::copysign(std::numeric_limits<double>::infinity(),
                                   v == 0.0 ? 1.0 : v)
                   : v;
    };
    std::vector<double> row = {x, traces.u_oracle[i], traces.u_new_bases[i],
                               traces.u_simple_wkb[i], divergent(traces.u_improved_wkb[i])};
    if (with_airy) row.push_back(divergent(traces.u_airy[i]));
    table.rows.push_back(std::move(row));
  }
  write_output(table, out, format);
  return exit_ok;
}

int cmd_dispersion(const PotentialArgs& pot, double period, double drive_min, double drive_max,
                   int drive_steps, int segments, const std::string& out,
                   const std::string& format) {
  const PotentialDocument doc = pot.resolve();
  KsqProfile cell(doc.potential, doc.scales);
  double L = period;
  if (L <= 0.0) {
    const auto [lo, hi] = cell.domain();
    if (!std::isfinite(hi) || hi <= 0.0)
      throw ConfigError("give --period for unbounded cell profiles");
    L = hi;
  }

  OutputTable table;
  table.command = "dispersion";
  table.columns = {"drive[energy]", "kappa_re[1/length]", "kappa_im[1/length]"};
  table.tag_column = "method";
  if (drive_steps < 1) drive_steps = 1;
  for (int i = 0; i < drive_steps; ++i) {
    const double drive =
        drive_steps == 1 ? drive_min
                         : drive_min + (drive_max - drive_min) * i / (drive_steps - 1.0);
    PeriodicProfile profile(L, cell, drive);
    const DispersionPoint pn = kappa_new(profile);
    table.rows.push_back({drive, pn.kappa_re, pn.kappa_im});
    table.method_tags.push_back("new");
    double kw_re = std::numeric_limits<double>::quiet_NaN();
    try {
      kw_re = kappa_wkb(profile);
      table.rows.push_back({drive, kw_re, 0.0});
    } catch (const ForbiddenRegionError&) {
      table.rows.push_back({drive, kw_re, kw_re});
    }
    table.method_tags.push_back("wkb");
    const DispersionPoint pe = kappa_exact(profile, segments);
    table.rows.push_back({drive, pe.kappa_re, pe.kappa_im});
    table.method_tags.push_back("exact");
  }
  write_output(table, out, format);
  return exit_ok;
}

int cmd_dtmm_propagate(const PotentialArgs& pot, double energy, double x_max, int segments,
                       const StateVector4& f0, const std::string& out,
                       const std::string& format) {
  const PotentialDocument doc = pot.resolve();
  const KsqProfile prof(doc.potential, doc.scales);
  if (segments < 1) throw ConfigError("--segments must be >= 1");
  if (!(x_max > 0.0)) throw ConfigError("--x-max must be > 0");

  const ComplexCoefficient f =
      ComplexCoefficient::real([&](double x) { return prof.ksq(energy, x); });

  OutputTable table;
  table.command = "dtmm-propagate";
  table.columns = {"x[length]", "u[1]", "v[1]", "du[1/length]", "dv[1/length]"};
  table.rows.push_back({0.0, f0.u, f0.v, f0.du, f0.dv});
  TransferMatrix4 acc{Eigen::Matrix4d::Identity(), 0.0, 0.0};
  for (int i = 0; i < segments; ++i) {
    const double lo = x_max * static_cast<double>(i) / segments;
    const double hi = x_max * static_cast<double>(i + 1) / segments;
    acc = compose(acc, transfer_Q(f, lo, hi, 1e-12));
    const StateVector4 s = propagate(acc, f0);
    table.rows.push_back({hi, s.u, s.v, s.du, s.dv});
  }
  write_output(table, out, format);
  return exit_ok;
}

int cmd_compare(const std::string& suite, const std::string& out, const std::string& format) {
  if (suite != "paper")
    throw ConfigError("unknown suite \"" + suite + "\" (available: paper)");
  if (format != "json" && format != "csv")
    throw ConfigError("unknown output format: " + format);

  const std::vector<CheckResult> checks = run_validation_suite();
  bool all_pass = true;
  json doc;
  doc["version"] = version_string;
  doc["command"] = "compare";
  doc["suite"] = suite;
  json arr = json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    arr.push_back({{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}, {"values", c.values}});
  }
  doc["checks"] = arr;
  doc["all_pass"] = all_pass;

  std::ostringstream os;
  os << doc.dump(2) << "\n";
  if (out.empty() || out == "-") {
    std::cout << os.str();
  } else {
    std::ofstream f(out);
    if (!f) throw ConfigError("cannot open output file: " + out);
    f << os.str();
  }
  return all_pass ? exit_ok : exit_numerical;
}

void print_error_json(const std::string& kind, const std::string& message) {
  json err;
  err["error"] = {{"type", kind}, {"message", message}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wave-equation basis functions, spectra, and dispersion toolkit"};
  app.require_subcommand(1);

  std::string out, format = "csv";
  app.add_option("--out", out, "output path (default: stdout)")->capture_default_str();
  app.add_option("--format", format, "output format: csv|json")->capture_default_str();

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "bound-state energies by every method");
  sp->fallthrough();
  PotentialArgs sp_pot;
  sp_pot.register_flags(sp);
  int sp_nmax = 3;
  sp->add_option("--n-max", sp_nmax, "highest state index")->capture_default_str();

  // wavefunction
  auto* wf = app.add_subcommand("wavefunction", "sampled bound-state traces per basis");
  wf->fallthrough();
  PotentialArgs wf_pot;
  wf_pot.register_flags(wf);
  int wf_n = 0, wf_points = 400;
  double wf_window = 0.8;
  std::string wf_energy_from = "oracle";
  std::string wf_basis;
  std::string wf_rule = "new";
  wf->add_option("--n", wf_n, "even state index")->capture_default_str();
  wf->add_option("--energy-from", wf_energy_from, "oracle|closed-form|quantization")
      ->capture_default_str();
  wf->add_option("--rule", wf_rule, "quantization rule for --energy-from quantization: new|wkb")
      ->capture_default_str();
  wf->add_option("--window", wf_window, "sampled fraction of [-xi, xi]")
      ->capture_default_str();
  wf->add_option("--grid-points", wf_points, "number of samples")->capture_default_str();
  wf->add_option("--basis", wf_basis, "airy: append the Ai/Bi-based column");

  // dispersion
  auto* di = app.add_subcommand("dispersion", "Bloch dispersion of a periodic cell");
  di->fallthrough();
  PotentialArgs di_pot;
  di_pot.register_flags(di);
  double di_period = 0.0, di_min = 1.0, di_max = 1.0;
  int di_steps = 1, di_segments = 1024;
  di->add_option("--period", di_period, "cell period L (default: cell domain end)");
  di->add_option("--drive", di_min, "single drive value (energy/frequency)");
  di->add_option("--drive-max", di_max, "sweep end (with --drive as start)");
  di->add_option("--drive-steps", di_steps, "number of sweep samples")->capture_default_str();
  di->add_option("--segments", di_segments, "monodromy segments")->capture_default_str();

  // dtmm-propagate
  auto* dp = app.add_subcommand("dtmm-propagate", "propagate a state with transfer matrices");
  dp->fallthrough();
  PotentialArgs dp_pot;
  dp_pot.register_flags(dp);
  double dp_energy = 1.0, dp_xmax = 1.0;
  int dp_segments = 64;
  StateVector4 dp_f0{1.0, 0.0, 0.0, 0.0};
  dp->add_option("--energy", dp_energy, "energy E defining f = k^2(x; E)")
      ->capture_default_str();
  dp->add_option("--x-max", dp_xmax, "propagation end")->capture_default_str();
  dp->add_option("--segments", dp_segments, "piecewise segments")->capture_default_str();
  dp->add_option("--u0", dp_f0.u, "u(0)")->capture_default_str();
  dp->add_option("--v0", dp_f0.v, "v(0)")->capture_default_str();
  dp->add_option("--du0", dp_f0.du, "u'(0)")->capture_default_str();
  dp->add_option("--dv0", dp_f0.dv, "v'(0)")->capture_default_str();

  // compare
  auto* cp = app.add_subcommand("compare", "run the built-in validation suite");
  cp->fallthrough();
  std::string cp_suite = "paper";
  cp->add_option("--suite", cp_suite, "suite name")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::stringstream ss;
    ss << e.what();
    print_error_json("config", ss.str());
    return exit_config;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(sp_pot, sp_nmax, out, format);
    if (wf->parsed())
      return cmd_wavefunction(wf_pot, wf_n, wf_energy_from, wf_rule, wf_window, wf_points,
                              wf_basis == "airy", out, format);
    if (di->parsed()) {
      if (di->count("--drive-max") == 0) di_max = di_min;
      return cmd_dispersion(di_pot, di_period, di_min, di_max, di_steps, di_segments, out,
                            format);
    }
    if (dp->parsed())
      return cmd_dtmm_propagate(dp_pot, dp_energy, dp_xmax, dp_segments, dp_f0, out, format);
    if (cp->parsed()) return cmd_compare(cp_suite, out, format == "csv" ? "json" : format);
  } catch (const ConfigError& e) {
    print_error_json("config", e.what());
    return exit_config;
  } catch (const Error& e) {
    print_error_json("numerical", e.what());
    return exit_numerical;
  } catch (const std::exception& e) {
    print_error_json("internal", e.what());
    return exit_numerical;
  }
  return exit_config;
}
