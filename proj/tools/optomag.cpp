// optomag - command-line front end for the cavity-optomagnonics toolkit.
// Emits plot-ready CSV/JSON for Walker-mode tables, mode textures,
// Brillouin scattering channels and spectra, and FMR mode identification.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "optomag/identify.hpp"
#include "optomag/run_config.hpp"
#include "optomag/scattering.hpp"
#include "optomag/texture.hpp"
#include "optomag/walker.hpp"
#include "optomag/wgm.hpp"

namespace {

using nlohmann::json;
using namespace optomag;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

// Fixed 12-significant-digit formatting so identical runs are byte-identical.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) { return std::stod(fmt(v)); }

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::ios_base::failure("cannot open output file: " + path);
  return file;
}

Orbit parse_orbit(const std::string& s) {
  if (s == "cw") return Orbit::cw;
  if (s == "ccw") return Orbit::ccw;
  throw std::invalid_argument("orbit must be 'cw' or 'ccw'");
}

json channel_to_json(const ScatteringChannel& ch) {
  json j;
  j["orbit"] = ch.orbit == Orbit::cw ? "cw" : "ccw";
  j["process"] = ch.process == Process::stokes ? "stokes" : "anti_stokes";
  j["m_tm"] = ch.input.m;
  j["input_spin"] = spin_of_wgm(ch.input) > 0 ? "sigma+" : "sigma-";
  j["m_te"] = ch.output_m_te;
  j["output_oam"] = ch.output_oam;
  j["walker"] = {{"n", ch.walker.index.n},
                 {"m", ch.walker.index.m_mag},
                 {"r", ch.walker.index.r},
                 {"freq_ghz", round12(ch.walker.frequency_ghz)}};
  j["photon_thz"] = round12(ch.photon_frequency_thz);
  j["target_thz"] = round12(ch.target_resonance_thz);
  j["detuning_ghz"] = round12(ch.detuning_ghz);
  j["weight"] = round12(ch.weight);
  j["conserved"] = check_conservation(ch);
  return j;
}

struct ModeRow {
  WalkerModeSolution sol;
  double rel_ghz;
};

int cmd_modes(const RunConfig& cfg, int n_max, const std::string& out_path) {
  std::vector<ModeRow> rows;
  for (int n = 1; n <= n_max; ++n)
    for (int m = -n; m <= n; ++m)
      for (const auto& sol : solve_walker_modes(n, m, cfg.material))
        rows.push_back({sol, sol.frequency_ghz - cfg.material.kittel_frequency_ghz});
  std::sort(rows.begin(), rows.end(),
            [](const ModeRow& a, const ModeRow& b) { return a.rel_ghz < b.rel_ghz; });

  std::ofstream file;
  auto& os = open_output(out_path, file);
  os << "n,m,r,freq_ghz,rel_ghz,oam\n";
  for (const auto& row : rows)
    os << row.sol.index.n << ',' << row.sol.index.m_mag << ',' << row.sol.index.r
       << ',' << fmt(row.sol.frequency_ghz) << ',' << fmt(row.rel_ghz) << ','
       << row.sol.oam << '\n';
  return 0;
}

int cmd_texture(const RunConfig& cfg, int n, int m, int r, int grid,
                const std::string& out_path, std::string meta_path) {
  const auto sol = solve_walker_mode({n, m, r}, cfg.material);
  const auto tex = compute_texture(sol, cfg.material, grid);

  std::optional<int> winding;
  for (const double radius : {0.5, 0.35, 0.65}) {
    try {
      winding = winding_number(tex, radius);
      break;
    } catch (const std::runtime_error&) {
    }
  }

  {
    std::ofstream file;
    auto& os = open_output(out_path, file);
    os << "x,y,re_mplus,im_mplus,re_mminus,im_mminus\n";
    for (std::size_t i = 0; i < tex.x.size(); ++i)
      os << fmt(tex.x[i]) << ',' << fmt(tex.y[i]) << ','
         << fmt(tex.m_plus[i].real()) << ',' << fmt(tex.m_plus[i].imag()) << ','
         << fmt(tex.m_minus[i].real()) << ',' << fmt(tex.m_minus[i].imag())
         << '\n';
  }

  json meta;
  if (winding)
    meta["winding"] = *winding;
  else
    meta["winding"] = nullptr;
  meta["pde_residual"] = round12(tex.pde_residual);
  meta["boundary_residual"] = round12(tex.boundary_residual);
  if (meta_path.empty() && !out_path.empty()) meta_path = out_path + ".meta.json";
  if (!meta_path.empty()) {
    std::ofstream mf(meta_path);
    if (!mf) throw std::ios_base::failure("cannot open sidecar file: " + meta_path);
    mf << meta.dump(2) << '\n';
  } else {
    std::cout << meta.dump(2) << '\n';
  }
  return 0;
}

int cmd_channels(const RunConfig& cfg, int n, int m, int r, int m_tm,
                 const std::string& orbit_str, const std::string& out_path) {
  const auto sol = solve_walker_mode({n, m, r}, cfg.material);
  const auto channels =
      enumerate_channels(m_tm, sol, parse_orbit(orbit_str), cfg.ladder);
  json j = json::array();
  for (const auto& ch : channels) j.push_back(channel_to_json(ch));
  std::ofstream file;
  open_output(out_path, file) << j.dump(2) << '\n';
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, int n, int m, int r, int m_tm,
                 double span_ghz, int points, const std::string& out_path) {
  if (points < 2) throw std::invalid_argument("spectrum: need points >= 2");
  if (!(span_ghz > 0.0)) throw std::invalid_argument("spectrum: span must be > 0");
  const auto sol = solve_walker_mode({n, m, r}, cfg.material);
  std::vector<double> drive(points);
  for (int i = 0; i < points; ++i)
    drive[i] = sol.frequency_ghz - span_ghz / 2 + span_ghz * i / (points - 1);
  const auto spec =
      bls_spectrum(m_tm, sol, cfg.ladder, drive, cfg.magnon_linewidth_ghz);

  std::ofstream file;
  auto& os = open_output(out_path, file);
  os << "drive_ghz,amp_cw,amp_ccw\n";
  for (std::size_t i = 0; i < spec.drive_ghz.size(); ++i)
    os << fmt(spec.drive_ghz[i]) << ',' << fmt(spec.amplitude_cw[i]) << ','
       << fmt(spec.amplitude_ccw[i]) << '\n';
  return 0;
}

int cmd_identify(const RunConfig& cfg, const std::vector<std::string>& inputs,
                 const std::vector<double>& kittels, int n_max, double prominence,
                 double min_sep, double tolerance, bool fit_ms,
                 const std::string& out_path) {
  if (inputs.empty()) throw std::invalid_argument("identify: need >= 1 input file");
  if (kittels.size() != inputs.size())
    throw std::invalid_argument("identify: one --kittel per input file required");

  std::vector<FMRTrace> traces;
  json report;
  report["traces"] = json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    std::ifstream in(inputs[i]);
    if (!in) throw std::ios_base::failure("cannot open input file: " + inputs[i]);
    const auto spectrum = load_spectrum(in, kittels[i]);
    const auto dips = find_dips(spectrum, prominence, min_sep);
    traces.push_back({kittels[i], dips});
  }

  auto emit_assignments = [&](const std::vector<std::vector<ModeAssignment>>& all) {
    report["traces"] = json::array();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      json t;
      t["file"] = inputs[i];
      t["kittel_ghz"] = round12(kittels[i]);
      t["dips"] = json::array();
      for (const auto& a : all[i]) {
        json d;
        d["dip_ghz"] = round12(a.dip_frequency_ghz);
        d["rel_ghz"] = round12(a.relative_frequency_ghz);
        if (a.label) {
          d["n"] = a.label->n;
          d["m"] = a.label->m_mag;
          d["r"] = a.label->r;
        } else {
          d["n"] = nullptr;
          d["m"] = nullptr;
          d["r"] = nullptr;
        }
        d["residual_ghz"] = round12(a.residual_ghz);
        t["dips"].push_back(d);
      }
      report["traces"].push_back(t);
    }
  };

  if (fit_ms) {
    const auto fit = fit_ms_eff(traces, cfg.material, n_max, tolerance);
    emit_assignments(fit.assignments);
    report["fit"] = {{"ms_scale", round12(fit.scale)},
                     {"four_pi_ms_eff_g",
                      round12(fit.scale * cfg.material.four_pi_ms_g)},
                     {"objective", round12(fit.objective)}};
  } else {
    std::vector<std::vector<ModeAssignment>> all;
    for (const auto& trace : traces)
      all.push_back(assign_modes(trace.dips_ghz, trace.kittel_ghz, cfg.material,
                                 n_max, tolerance));
    emit_assignments(all);
  }

  std::ofstream file;
  open_output(out_path, file) << report.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cavity-optomagnonics toolkit: Walker modes, WGM ladder, "
               "Brillouin scattering channels, FMR mode identification"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration");

  // Flag overrides applied on top of the config file and environment.
  std::optional<double> kittel, four_pi_ms, gamma, fsr, gb, q, ref_thz, linewidth;
  std::optional<int> ref_index;
  app.add_option("--kittel", kittel, "Kittel frequency (GHz)");
  app.add_option("--four-pi-ms", four_pi_ms, "4piMs (gauss)");
  app.add_option("--gamma", gamma, "gyromagnetic ratio (MHz/G)");
  app.add_option("--fsr", fsr, "WGM free spectral range (GHz)");
  app.add_option("--gb", gb, "TE-TM geometric birefringence (GHz)");
  app.add_option("--quality-factor", q, "WGM quality factor");
  app.add_option("--ref-frequency", ref_thz, "ladder reference frequency (THz)");
  app.add_option("--ref-index", ref_index, "ladder reference azimuthal index");
  app.add_option("--magnon-linewidth", linewidth, "magnon linewidth (GHz)");

  int n_max = 4, n = 1, m = 1, r = 0, m_tm = -1, grid = 41, points = 201;
  double span = 0.02, prominence = 0.01, min_sep = 0.01, tolerance = 0.05;
  std::string out_path, meta_path, orbit = "ccw";
  std::vector<std::string> inputs;
  std::vector<double> kittels;
  bool fit_ms = false;

  auto* modes = app.add_subcommand("modes", "Walker-mode frequency table (CSV)");
  modes->add_option("--n-max", n_max, "largest polar index n")->check(CLI::Range(1, 8));
  modes->add_option("-o,--out", out_path, "output CSV path (default stdout)");

  auto* texture = app.add_subcommand("texture", "equatorial mode texture (CSV + JSON sidecar)");
  texture->add_option("--n", n)->required();
  texture->add_option("--m", m)->required();
  texture->add_option("--r", r)->required();
  texture->add_option("--grid", grid, "half grid size (odd, >= 21)");
  texture->add_option("-o,--out", out_path, "output CSV path");
  texture->add_option("--meta", meta_path, "sidecar JSON path");

  auto* channels = app.add_subcommand("channels", "selection-rule scattering channels (JSON)");
  channels->add_option("--n", n)->required();
  channels->add_option("--m", m)->required();
  channels->add_option("--r", r)->required();
  channels->add_option("--m-tm", m_tm, "input TM azimuthal index (default: ladder reference)");
  channels->add_option("--orbit", orbit, "cw | ccw")->required();
  channels->add_option("-o,--out", out_path, "output JSON path");

  auto* spectrum = app.add_subcommand("spectrum", "BLS drive spectrum, CW and CCW (CSV)");
  spectrum->add_option("--n", n)->required();
  spectrum->add_option("--m", m)->required();
  spectrum->add_option("--r", r)->required();
  spectrum->add_option("--m-tm", m_tm, "input TM azimuthal index");
  spectrum->add_option("--span", span, "drive span around the magnon line (GHz)");
  spectrum->add_option("--points", points, "number of grid points");
  spectrum->add_option("-o,--out", out_path, "output CSV path");

  auto* identify = app.add_subcommand("identify", "label FMR dips with Walker modes (JSON)");
  identify->add_option("-i,--input", inputs, "FMR CSV file(s): freq_ghz,s11")->required();
  identify->add_option("--kittel-ghz", kittels, "Kittel frequency per input file (GHz)")
      ->required();
  identify->add_option("--n-max", n_max)->check(CLI::Range(1, 8));
  identify->add_option("--prominence", prominence, "dip prominence threshold");
  identify->add_option("--min-sep", min_sep, "minimum dip separation (GHz)");
  identify->add_option("--tolerance", tolerance, "assignment tolerance (GHz)");
  identify->add_flag("--fit-ms", fit_ms, "fit an effective 4piMs scale");
  identify->add_option("-o,--out", out_path, "output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = RunConfig::from_json_file(config_path);
    cfg.apply_env_overrides();
    if (kittel) cfg.material.kittel_frequency_ghz = *kittel;
    if (four_pi_ms) cfg.material.four_pi_ms_g = *four_pi_ms;
    if (gamma) cfg.material.gamma_mhz_per_g = *gamma;
    if (fsr) cfg.ladder.fsr_ghz = *fsr;
    if (gb) cfg.ladder.gb_ghz = *gb;
    if (q) cfg.ladder.quality_factor = *q;
    if (ref_thz) cfg.ladder.reference_frequency_thz = *ref_thz;
    if (ref_index) cfg.ladder.reference_index = *ref_index;
    if (linewidth) cfg.magnon_linewidth_ghz = *linewidth;
    cfg.validate();
    if (m_tm < 0) m_tm = cfg.ladder.reference_index;

    if (modes->parsed()) return cmd_modes(cfg, n_max, out_path);
    if (texture->parsed()) return cmd_texture(cfg, n, m, r, grid, out_path, meta_path);
    if (channels->parsed()) return cmd_channels(cfg, n, m, r, m_tm, orbit, out_path);
    if (spectrum->parsed()) return cmd_spectrum(cfg, n, m, r, m_tm, span, points, out_path);
    if (identify->parsed())
      return cmd_identify(cfg, inputs, kittels, n_max, prominence, min_sep,
                          tolerance, fit_ms, out_path);
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
