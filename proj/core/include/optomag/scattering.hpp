#pragma once

#include <vector>

#include "optomag/walker.hpp"
#include "optomag/wgm.hpp"

namespace optomag {

enum class Process { stokes, anti_stokes };
enum class Reciprocity { cw_favored, reciprocal, ccw_favored };

/// One selection-rule-allowed (input photon, magnon, output photon)
/// Brillouin process with its detuning from the target TE resonance and
/// the Lorentzian density-of-states weight.
struct ScatteringChannel {
  Orbit orbit = Orbit::ccw;
  Process process = Process::anti_stokes;
  WGMLabel input;               // TM component the process draws from
  WalkerModeSolution walker;
  int output_m_te = 0;
  int output_oam = 0;
  double photon_frequency_thz = 0.0;   // input -/+ magnon frequency
  double target_resonance_thz = 0.0;   // TE ladder frequency at output_m_te
  double detuning_ghz = 0.0;           // photon - target
  double weight = 0.0;                 // Lorentzian, in (0, 1]
};

/// The two channels (anti-Stokes from the sigma+ component, Stokes from
/// sigma-) for light on the TM resonance at m_tm, per the orbit-dependent
/// index rules m_te = m_tm -/+ m_mag.
std::vector<ScatteringChannel> enumerate_channels(int m_tm,
                                                  const WalkerModeSolution& walker,
                                                  Orbit orbit,
                                                  const WGMLadderConfig& ladder);

/// Angular-momentum bookkeeping: output OAM must equal the input component
/// OAM plus (anti-Stokes) or minus (Stokes) the magnon OAM, and the photon
/// spin change sigma+- -> pi must match magnon annihilation/creation.
bool check_conservation(const ScatteringChannel& channel);

struct BLSSpectrum {
  std::vector<double> drive_ghz;
  std::vector<double> amplitude_cw;
  std::vector<double> amplitude_ccw;
  WalkerModeIndex walker;
};

/// Beat-signal model: per orbit, a magnon Lorentzian centered at the Walker
/// frequency scaled by that orbit's summed channel weights; jointly
/// normalized so the larger peak is 1.
BLSSpectrum bls_spectrum(int m_tm, const WalkerModeSolution& walker,
                         const WGMLadderConfig& ladder,
                         const std::vector<double>& drive_ghz,
                         double magnon_linewidth_ghz);

/// R = (sum of CW channel weights) / (sum of CCW channel weights).
double nonreciprocity_ratio(int m_tm, const WalkerModeSolution& walker,
                            const WGMLadderConfig& ladder);

Reciprocity classify_reciprocity(double ratio, double threshold = 2.0);

}  // namespace optomag
