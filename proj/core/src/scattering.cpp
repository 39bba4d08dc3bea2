#include "optomag/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optomag {

std::vector<ScatteringChannel> enumerate_channels(int m_tm,
                                                  const WalkerModeSolution& walker,
                                                  Orbit orbit,
                                                  const WGMLadderConfig& ladder) {
  ladder.validate();
  if (m_tm < 2)
    throw std::invalid_argument("enumerate_channels: m_tm must be >= 2");
  const int m_mag = walker.index.m_mag;

  const WGMLabel input_tm{WgmFamily::tm, m_tm, orbit, WgmComponent::inner};
  const double f_in = wgm_frequency_thz(input_tm, ladder);
  const double f_mag_thz = walker.frequency_ghz * 1e-3;
  const double half_width = ladder.linewidth_ghz() / 2.0;

  std::vector<ScatteringChannel> out;
  for (const Process process : {Process::anti_stokes, Process::stokes}) {
    const bool anti = process == Process::anti_stokes;
    // Anti-Stokes annihilates a magnon and draws from the sigma+ component;
    // Stokes creates one and draws from sigma-.
    const int spin = anti ? +1 : -1;
    // m_te = m_tm - m_mag (CCW aS / CW S), m_tm + m_mag otherwise.
    const int m_te = (anti == (orbit == Orbit::ccw)) ? m_tm - m_mag : m_tm + m_mag;
    if (m_te < 2)
      throw std::invalid_argument("enumerate_channels: output index m_te < 2");

    ScatteringChannel ch;
    ch.orbit = orbit;
    ch.process = process;
    ch.input = {WgmFamily::tm, m_tm, orbit, component_for_spin(orbit, spin)};
    ch.walker = walker;
    ch.output_m_te = m_te;
    ch.output_oam = (orbit == Orbit::ccw) ? m_te : -m_te;
    ch.photon_frequency_thz = f_in + (anti ? f_mag_thz : -f_mag_thz);
    ch.target_resonance_thz =
        wgm_frequency_thz({WgmFamily::te, m_te, orbit, WgmComponent::pi}, ladder);
    ch.detuning_ghz = (ch.photon_frequency_thz - ch.target_resonance_thz) * 1e3;
    ch.weight = half_width * half_width /
                (ch.detuning_ghz * ch.detuning_ghz + half_width * half_width);
    out.push_back(ch);
  }
  return out;
}

bool check_conservation(const ScatteringChannel& channel) {
  const bool anti = channel.process == Process::anti_stokes;
  const int magnon_oam = oam_of_walker(channel.walker.index.m_mag);
  const int expected =
      oam_of_wgm(channel.input) + (anti ? magnon_oam : -magnon_oam);
  const bool oam_ok = expected == channel.output_oam;
  const bool spin_ok = spin_of_wgm(channel.input) == (anti ? +1 : -1);
  return oam_ok && spin_ok;
}

BLSSpectrum bls_spectrum(int m_tm, const WalkerModeSolution& walker,
                         const WGMLadderConfig& ladder,
                         const std::vector<double>& drive_ghz,
                         double magnon_linewidth_ghz) {
  if (drive_ghz.empty())
    throw std::invalid_argument("bls_spectrum: empty drive grid");
  if (!(magnon_linewidth_ghz > 0.0))
    throw std::invalid_argument("bls_spectrum: magnon linewidth must be > 0");
  for (std::size_t i = 1; i < drive_ghz.size(); ++i)
    if (!(drive_ghz[i] > drive_ghz[i - 1]))
      throw std::invalid_argument("bls_spectrum: drive grid must be increasing");

  double weight_cw = 0.0, weight_ccw = 0.0;
  for (const auto& ch : enumerate_channels(m_tm, walker, Orbit::cw, ladder))
    weight_cw += ch.weight;
  for (const auto& ch : enumerate_channels(m_tm, walker, Orbit::ccw, ladder))
    weight_ccw += ch.weight;

  BLSSpectrum spec;
  spec.walker = walker.index;
  spec.drive_ghz = drive_ghz;
  const double hw = magnon_linewidth_ghz / 2.0;
  const double f0 = walker.frequency_ghz;
  // Normalized to the on-resonance amplitude of the stronger orbit, so the
  // larger peak is 1 and far-detuned drives tend to zero.
  const double peak = std::max(weight_cw, weight_ccw);
  for (const double f : drive_ghz) {
    const double lor = hw * hw / ((f - f0) * (f - f0) + hw * hw);
    spec.amplitude_cw.push_back(weight_cw * lor / peak);
    spec.amplitude_ccw.push_back(weight_ccw * lor / peak);
  }
  return spec;
}

double nonreciprocity_ratio(int m_tm, const WalkerModeSolution& walker,
                            const WGMLadderConfig& ladder) {
  double cw = 0.0, ccw = 0.0;
  for (const auto& ch : enumerate_channels(m_tm, walker, Orbit::cw, ladder))
    cw += ch.weight;
  for (const auto& ch : enumerate_channels(m_tm, walker, Orbit::ccw, ladder))
    ccw += ch.weight;
  return cw / ccw;
}

Reciprocity classify_reciprocity(double ratio, double threshold) {
  if (!(ratio > 0.0))
    throw std::invalid_argument("classify_reciprocity: ratio must be > 0");
  if (!(threshold > 1.0))
    throw std::invalid_argument("classify_reciprocity: threshold must be > 1");
  if (ratio > threshold) return Reciprocity::cw_favored;
  if (ratio < 1.0 / threshold) return Reciprocity::ccw_favored;
  return Reciprocity::reciprocal;
}

}  // namespace optomag
