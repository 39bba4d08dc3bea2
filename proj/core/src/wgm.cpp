#include "optomag/wgm.hpp"

#include <stdexcept>

namespace optomag {

void WGMLadderConfig::validate() const {
  if (!(reference_frequency_thz > 0.0))
    throw std::invalid_argument("ladder: reference frequency must be > 0");
  if (!(fsr_ghz > 0.0)) throw std::invalid_argument("ladder: FSR must be > 0");
  if (!(quality_factor > 0.0))
    throw std::invalid_argument("ladder: quality factor must be > 0");
  if (reference_index < 2)
    throw std::invalid_argument("ladder: reference index must be >= 2");
}

void WGMLabel::validate() const {
  if (m < 2) throw std::invalid_argument("WGM label: m must be >= 2");
  const bool is_pi = component == WgmComponent::pi;
  if ((family == WgmFamily::te) != is_pi)
    throw std::invalid_argument(
        "WGM label: TE pairs with pi, TM with inner/outer");
}

double wgm_frequency_thz(const WGMLabel& label, const WGMLadderConfig& config) {
  label.validate();
  config.validate();
  const double offset_ghz =
      (label.m - config.reference_index) * config.fsr_ghz +
      (label.family == WgmFamily::te ? config.gb_ghz : 0.0);
  return config.reference_frequency_thz + offset_ghz * 1e-3;
}

int oam_of_wgm(const WGMLabel& label) {
  label.validate();
  int ccw_value = 0;
  switch (label.component) {
    case WgmComponent::pi: ccw_value = label.m; break;
    case WgmComponent::inner: ccw_value = label.m - 1; break;
    case WgmComponent::outer: ccw_value = label.m + 1; break;
  }
  return label.orbit == Orbit::ccw ? ccw_value : -ccw_value;
}

int spin_of_wgm(const WGMLabel& label) {
  label.validate();
  if (label.component == WgmComponent::pi) return 0;
  const bool inner = label.component == WgmComponent::inner;
  return (label.orbit == Orbit::ccw) == inner ? +1 : -1;
}

WgmComponent component_for_spin(Orbit orbit, int spin) {
  if (spin != 1 && spin != -1)
    throw std::invalid_argument("component_for_spin: spin must be +-1");
  return ((orbit == Orbit::ccw) == (spin == 1)) ? WgmComponent::inner
                                                : WgmComponent::outer;
}

}  // namespace optomag
