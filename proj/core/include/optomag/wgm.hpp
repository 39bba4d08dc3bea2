#pragma once

namespace optomag {

enum class WgmFamily { te, tm };
enum class Orbit { cw, ccw };

/// Polarization component of a WGM. TE modes are pi-polarized; TM modes
/// split into an inner and an outer circular component, radially displaced
/// by the spin-Hall effect of light.
enum class WgmComponent { pi, inner, outer };

/// Linear resonance-ladder model: constant FSR and a constant TE/TM
/// offset (geometric birefringence) over the narrow band of interest.
struct WGMLadderConfig {
  double reference_frequency_thz = 193.41;  // TM anchor (1550 nm carrier)
  int reference_index = 4835;               // azimuthal index at the anchor
  double fsr_ghz = 40.0;
  double gb_ghz = -32.0;  // TE offset relative to TM at equal m
  double quality_factor = 1e5;

  double linewidth_ghz() const {
    return reference_frequency_thz * 1e3 / quality_factor;
  }
  void validate() const;
};

struct WGMLabel {
  WgmFamily family = WgmFamily::tm;
  int m = 2;
  Orbit orbit = Orbit::ccw;
  WgmComponent component = WgmComponent::inner;

  void validate() const;
};

/// Ladder frequency in THz; independent of orbit and of the inner/outer
/// split (both components of one TM mode share a resonance).
double wgm_frequency_thz(const WGMLabel& label, const WGMLadderConfig& config);

/// Orbital angular momentum of the component. CCW: TE -> m, inner -> m-1,
/// outer -> m+1; CW carries the sign-inverted values with the inner/outer
/// roles following the radial naming.
int oam_of_wgm(const WGMLabel& label);

/// Spin angular momentum (+1 for sigma+, -1 for sigma-, 0 for pi) of the
/// component given the orbit; inner is sigma+ for CCW and sigma- for CW.
int spin_of_wgm(const WGMLabel& label);

/// The TM component carrying the given spin for the given orbit.
WgmComponent component_for_spin(Orbit orbit, int spin);

}  // namespace optomag
