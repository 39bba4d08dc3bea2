#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "optomag/walker.hpp"

namespace optomag {

/// A measured ferromagnetic-resonance reflection trace |S11|(f).
struct FMRSpectrum {
  std::vector<double> frequencies_ghz;  // strictly increasing
  std::vector<double> s11_magnitude;
  double kittel_frequency_ghz = 0.0;
};

/// One detected dip and its (possibly absent) Walker-mode label.
struct ModeAssignment {
  double dip_frequency_ghz = 0.0;
  double relative_frequency_ghz = 0.0;  // dip - kittel
  std::optional<WalkerModeIndex> label;
  double residual_ghz = 0.0;  // |theory - dip|, nearest catalog entry if unassigned
};

/// Theory catalog entry: Walker label and its frequency relative to the
/// Kittel mode.
struct CatalogEntry {
  WalkerModeIndex index;
  double relative_frequency_ghz = 0.0;
};

/// Parse a two-column CSV `freq_ghz,s11` with header. Throws
/// std::runtime_error naming the offending line for NaN values,
/// non-increasing grids, or fewer than 16 points.
FMRSpectrum load_spectrum(std::istream& source, double kittel_frequency_ghz);

/// Local |S11| minima with at least the given prominence, separated by
/// min_separation (deeper dip wins), refined by parabolic interpolation.
std::vector<double> find_dips(const FMRSpectrum& spectrum, double prominence,
                              double min_separation_ghz);

/// All Walker modes with n <= n_max, as Kittel-relative frequencies.
std::vector<CatalogEntry> walker_catalog(const MaterialConfig& config, int n_max);

/// Greedy nearest-match labeling of dips against the theory catalog, unique
/// on both sides; dips farther than tolerance stay unassigned.
std::vector<ModeAssignment> assign_modes(const std::vector<double>& dips_ghz,
                                         double kittel_ghz,
                                         const MaterialConfig& config, int n_max,
                                         double tolerance_ghz = 0.05);

struct FMRTrace {
  double kittel_ghz = 0.0;
  std::vector<double> dips_ghz;
};

/// One dip track followed across traces taken at different fields.
struct TrackAssignment {
  std::optional<WalkerModeIndex> label;
  double rms_residual_ghz = 0.0;
};

/// Joint labeling across traces recorded at different Kittel frequencies:
/// the k-th dip of every trace is treated as one physical mode and matched
/// to the theory curve minimizing the rms Kittel-relative residual. The
/// field dependence disambiguates labels that nearly coincide at a single
/// field. All traces must carry the same number of dips.
std::vector<TrackAssignment> assign_modes_tracked(
    const std::vector<FMRTrace>& traces, const MaterialConfig& config,
    int n_max, double tolerance_ghz = 0.05);

struct MsFitResult {
  double scale = 1.0;  // multiplier on four_pi_ms
  std::vector<std::vector<ModeAssignment>> assignments;  // per trace
  double objective = 0.0;
};

/// Least-squares fit of an effective saturation-magnetization scale in
/// [0.8, 1.3]: coarse scan plus golden-section refinement to 1e-4.
/// Throws std::runtime_error when no dip is assignable anywhere in the window.
MsFitResult fit_ms_eff(const std::vector<FMRTrace>& traces,
                       const MaterialConfig& config, int n_max,
                       double tolerance_ghz = 0.05);

}  // namespace optomag
