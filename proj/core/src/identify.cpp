#include "optomag/identify.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace optomag {

FMRSpectrum load_spectrum(std::istream& source, double kittel_frequency_ghz) {
  if (!(kittel_frequency_ghz > 0.0))
    throw std::invalid_argument("load_spectrum: Kittel frequency must be > 0");
  FMRSpectrum spec;
  spec.kittel_frequency_ghz = kittel_frequency_ghz;

  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (!header_seen) {  // header row: freq_ghz,s11
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b))
      throw std::runtime_error("load_spectrum: malformed row at line " +
                               std::to_string(line_no));
    double f, s;
    try {
      f = std::stod(a);
      s = std::stod(b);
    } catch (const std::exception&) {
      throw std::runtime_error("load_spectrum: non-numeric value at line " +
                               std::to_string(line_no));
    }
    if (std::isnan(f) || std::isnan(s))
      throw std::runtime_error("load_spectrum: NaN at line " +
                               std::to_string(line_no));
    if (!spec.frequencies_ghz.empty() && !(f > spec.frequencies_ghz.back()))
      throw std::runtime_error("load_spectrum: grid not increasing at line " +
                               std::to_string(line_no));
    if (!(s > 0.0) || !std::isfinite(s))
      throw std::runtime_error("load_spectrum: |S11| must be finite and positive, line " +
                               std::to_string(line_no));
    spec.frequencies_ghz.push_back(f);
    spec.s11_magnitude.push_back(s);
  }
  if (spec.frequencies_ghz.size() < 16)
    throw std::runtime_error("load_spectrum: need at least 16 points, got " +
                             std::to_string(spec.frequencies_ghz.size()));
  return spec;
}

std::vector<double> find_dips(const FMRSpectrum& spectrum, double prominence,
                              double min_separation_ghz) {
  if (!(prominence > 0.0))
    throw std::invalid_argument("find_dips: prominence must be > 0");
  const auto& f = spectrum.frequencies_ghz;
  const auto& s = spectrum.s11_magnitude;
  const int n = int(s.size());

  struct Dip {
    int i;
    double prom;
  };
  std::vector<Dip> dips;
  for (int i = 1; i + 1 < n; ++i) {
    if (!(s[i] < s[i - 1]) || !(s[i] <= s[i + 1])) continue;
    // Prominence of the inverted signal: lowest barrier to either side
    // before a deeper minimum (or the trace edge).
    double left = 0.0;
    for (int j = i - 1; j >= 0 && s[j] >= s[i]; --j)
      left = std::max(left, s[j] - s[i]);
    double right = 0.0;
    for (int j = i + 1; j < n && s[j] >= s[i]; ++j)
      right = std::max(right, s[j] - s[i]);
    const double prom = std::min(left, right);
    if (prom >= prominence) dips.push_back({i, prom});
  }

  // Separation rule: keep the deeper of any pair closer than min_separation.
  std::sort(dips.begin(), dips.end(),
            [&](const Dip& a, const Dip& b) { return s[a.i] < s[b.i]; });
  std::vector<Dip> kept;
  for (const auto& d : dips) {
    bool blocked = false;
    for (const auto& k : kept)
      if (std::abs(f[d.i] - f[k.i]) < min_separation_ghz) blocked = true;
    if (!blocked) kept.push_back(d);
  }

  std::vector<double> out;
  for (const auto& d : kept) {
    // Parabolic refinement on the three points around the minimum.
    const int i = d.i;
    const double den = s[i + 1] - 2.0 * s[i] + s[i - 1];
    double pos = f[i];
    if (den > 0.0) {
      const double delta = 0.5 * (s[i - 1] - s[i + 1]) / den;
      pos += delta * (f[i + 1] - f[i - 1]) / 2.0;
    }
    out.push_back(pos);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CatalogEntry> walker_catalog(const MaterialConfig& config, int n_max) {
  config.validate();
  if (n_max < 1 || n_max > 8)
    throw std::invalid_argument("walker_catalog: need 1 <= n_max <= 8");
  std::vector<CatalogEntry> catalog;
  for (int n = 1; n <= n_max; ++n)
    for (int m = -n; m <= n; ++m)
      for (const auto& sol : solve_walker_modes(n, m, config))
        catalog.push_back(
            {sol.index, sol.frequency_ghz - config.kittel_frequency_ghz});
  return catalog;
}

std::vector<ModeAssignment> assign_modes(const std::vector<double>& dips_ghz,
                                         double kittel_ghz,
                                         const MaterialConfig& config, int n_max,
                                         double tolerance_ghz) {
  MaterialConfig cfg = config;
  cfg.kittel_frequency_ghz = kittel_ghz;
  const auto catalog = walker_catalog(cfg, n_max);

  struct Pair {
    std::size_t dip, entry;
    double dist;
  };
  std::vector<Pair> pairs;
  for (std::size_t d = 0; d < dips_ghz.size(); ++d) {
    const double rel = dips_ghz[d] - kittel_ghz;
    for (std::size_t e = 0; e < catalog.size(); ++e) {
      const double dist = std::abs(rel - catalog[e].relative_frequency_ghz);
      if (dist <= tolerance_ghz) pairs.push_back({d, e, dist});
    }
  }
  // Parsimony tie-break: degenerate catalog entries exist (e.g. the Kittel
  // mode coincides exactly with (4,3,0)), so equal distances prefer the
  // simpler label.
  std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    const auto& ia = catalog[a.entry].index;
    const auto& ib = catalog[b.entry].index;
    if (ia.n != ib.n) return ia.n < ib.n;
    if (std::abs(ia.m_mag) != std::abs(ib.m_mag))
      return std::abs(ia.m_mag) < std::abs(ib.m_mag);
    if (ia.m_mag != ib.m_mag) return ia.m_mag > ib.m_mag;
    return ia.r < ib.r;
  });

  std::vector<ModeAssignment> out(dips_ghz.size());
  std::vector<bool> dip_used(dips_ghz.size(), false);
  std::vector<bool> entry_used(catalog.size(), false);
  for (std::size_t d = 0; d < dips_ghz.size(); ++d) {
    out[d].dip_frequency_ghz = dips_ghz[d];
    out[d].relative_frequency_ghz = dips_ghz[d] - kittel_ghz;
  }
  for (const auto& p : pairs) {
    if (dip_used[p.dip] || entry_used[p.entry]) continue;
    dip_used[p.dip] = true;
    entry_used[p.entry] = true;
    out[p.dip].label = catalog[p.entry].index;
    out[p.dip].residual_ghz = p.dist;
  }
  for (std::size_t d = 0; d < dips_ghz.size(); ++d) {
    if (dip_used[d]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : catalog)
      best = std::min(best, std::abs(out[d].relative_frequency_ghz -
                                     e.relative_frequency_ghz));
    out[d].residual_ghz = best;
  }
  return out;
}

std::vector<TrackAssignment> assign_modes_tracked(
    const std::vector<FMRTrace>& traces, const MaterialConfig& config,
    int n_max, double tolerance_ghz) {
  if (traces.empty())
    throw std::invalid_argument("assign_modes_tracked: need >= 1 trace");
  const std::size_t n_tracks = traces.front().dips_ghz.size();
  for (const auto& t : traces)
    if (t.dips_ghz.size() != n_tracks)
      throw std::invalid_argument(
          "assign_modes_tracked: traces must carry the same number of dips");

  // Theory catalogs per trace, keyed by label; keep only labels whose root
  // survives at every field value.
  std::vector<std::vector<CatalogEntry>> catalogs;
  for (const auto& t : traces) {
    MaterialConfig cfg = config;
    cfg.kittel_frequency_ghz = t.kittel_ghz;
    catalogs.push_back(walker_catalog(cfg, n_max));
  }
  auto find_entry = [](const std::vector<CatalogEntry>& cat,
                       const WalkerModeIndex& idx) -> const CatalogEntry* {
    for (const auto& e : cat)
      if (e.index.n == idx.n && e.index.m_mag == idx.m_mag && e.index.r == idx.r)
        return &e;
    return nullptr;
  };
  std::vector<CatalogEntry> labels;
  for (const auto& e : catalogs.front()) {
    bool everywhere = true;
    for (std::size_t t = 1; t < catalogs.size(); ++t)
      if (!find_entry(catalogs[t], e.index)) everywhere = false;
    if (everywhere) labels.push_back(e);
  }

  struct Pair {
    std::size_t track, entry;
    double rms;
  };
  std::vector<Pair> pairs;
  for (std::size_t k = 0; k < n_tracks; ++k) {
    for (std::size_t e = 0; e < labels.size(); ++e) {
      double sq = 0.0;
      for (std::size_t t = 0; t < traces.size(); ++t) {
        const double rel = traces[t].dips_ghz[k] - traces[t].kittel_ghz;
        const double diff =
            rel - find_entry(catalogs[t], labels[e].index)->relative_frequency_ghz;
        sq += diff * diff;
      }
      const double rms = std::sqrt(sq / traces.size());
      if (rms <= tolerance_ghz) pairs.push_back({k, e, rms});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
    if (a.rms != b.rms) return a.rms < b.rms;
    const auto& ia = labels[a.entry].index;
    const auto& ib = labels[b.entry].index;
    if (ia.n != ib.n) return ia.n < ib.n;
    if (std::abs(ia.m_mag) != std::abs(ib.m_mag))
      return std::abs(ia.m_mag) < std::abs(ib.m_mag);
    if (ia.m_mag != ib.m_mag) return ia.m_mag > ib.m_mag;
    return ia.r < ib.r;
  });

  std::vector<TrackAssignment> out(n_tracks);
  std::vector<bool> track_used(n_tracks, false), entry_used(labels.size(), false);
  for (const auto& p : pairs) {
    if (track_used[p.track] || entry_used[p.entry]) continue;
    track_used[p.track] = true;
    entry_used[p.entry] = true;
    out[p.track].label = labels[p.entry].index;
    out[p.track].rms_residual_ghz = p.rms;
  }
  return out;
}

namespace {

struct Objective {
  const std::vector<FMRTrace>& traces;
  const MaterialConfig& config;
  int n_max;
  double tol;

  double operator()(double scale,
                    std::vector<std::vector<ModeAssignment>>* keep = nullptr,
                    int* assigned_count = nullptr) const {
    MaterialConfig cfg = config;
    cfg.four_pi_ms_g = config.four_pi_ms_g * scale;
    double total = 0.0;
    int assigned = 0;
    if (keep) keep->clear();
    for (const auto& trace : traces) {
      auto as = assign_modes(trace.dips_ghz, trace.kittel_ghz, cfg, n_max, tol);
      for (const auto& a : as) {
        if (a.label) {
          total += a.residual_ghz * a.residual_ghz;
          ++assigned;
        } else {
          total += tol * tol;  // unassigned dips count as full-tolerance misses
        }
      }
      if (keep) keep->push_back(std::move(as));
    }
    if (assigned_count) *assigned_count = assigned;
    return total;
  }
};

}  // namespace

MsFitResult fit_ms_eff(const std::vector<FMRTrace>& traces,
                       const MaterialConfig& config, int n_max,
                       double tolerance_ghz) {
  if (traces.empty()) throw std::invalid_argument("fit_ms_eff: need >= 1 trace");
  const Objective obj{traces, config, n_max, tolerance_ghz};

  constexpr double kLo = 0.8, kHi = 1.3;
  constexpr int kCoarse = 100;
  double best_s = kLo, best_f = std::numeric_limits<double>::infinity();
  bool any_assigned = false;
  for (int i = 0; i <= kCoarse; ++i) {
    const double s = kLo + (kHi - kLo) * i / kCoarse;
    int assigned = 0;
    const double f = obj(s, nullptr, &assigned);
    any_assigned = any_assigned || assigned > 0;
    if (f < best_f) {
      best_f = f;
      best_s = s;
    }
  }
  if (!any_assigned)
    throw std::runtime_error("fit_ms_eff: no dips assignable anywhere in [0.8, 1.3]");

  // Golden-section refinement inside the bracketing coarse cells.
  const double cell = (kHi - kLo) / kCoarse;
  double a = std::max(kLo, best_s - cell), b = std::min(kHi, best_s + cell);
  const double gr = (std::sqrt(5.0) + 1.0) / 2.0;
  double c = b - (b - a) / gr, d = a + (b - a) / gr;
  double fc = obj(c), fd = obj(d);
  while (b - a > 1e-5) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) / gr;
      fc = obj(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) / gr;
      fd = obj(d);
    }
  }

  MsFitResult result;
  result.scale = 0.5 * (a + b);
  int assigned = 0;
  result.objective = obj(result.scale, &result.assignments, &assigned);
  if (assigned == 0)
    throw std::runtime_error("fit_ms_eff: fitted scale assigns no dips");
  return result;
}

}  // namespace optomag
