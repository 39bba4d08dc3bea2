#pragma once

namespace optomag {

/// Sphere and magnet parameters driving all magnon computations.
/// Frequencies are in GHz, the saturation magnetization enters as
/// 4*pi*Ms in gauss and the gyromagnetic ratio in MHz/G, so fields
/// never appear explicitly.
struct MaterialConfig {
  double gamma_mhz_per_g = 2.8;
  double four_pi_ms_g = 1940.0;
  double sphere_radius_mm = 0.5;
  double kittel_frequency_ghz = 7.1;

  /// omega_M = gamma * 4piMs, in GHz.
  double omega_m_ghz() const { return gamma_mhz_per_g * four_pi_ms_g * 1e-3; }

  /// Dimensionless internal field Omega_H = omega_H / omega_M.
  /// For a sphere the Kittel frequency is omega_H + omega_M/3.
  double omega_h_reduced() const {
    return (kittel_frequency_ghz - omega_m_ghz() / 3.0) / omega_m_ghz();
  }

  /// Throws std::invalid_argument when any parameter is non-physical.
  void validate() const;
};

}  // namespace optomag
