#pragma once

#include <utility>
#include <vector>

#include "optomag/material.hpp"

namespace optomag {

/// Walker-mode label (n, m_mag, r). |m_mag| <= n; r counts roots in
/// ascending frequency (r starts at 0 for m_mag >= 1, at 1 otherwise).
struct WalkerModeIndex {
  int n = 1;
  int m_mag = 1;
  int r = 0;
};

/// A solved magnetostatic eigenmode of the uniformly magnetized sphere.
/// omega is the dimensionless eigenfrequency Omega = omega/omega_M.
struct WalkerModeSolution {
  WalkerModeIndex index;
  double omega = 0.0;
  double frequency_ghz = 0.0;
  double kappa = 0.0;    // Polder diagonal susceptibility parameter
  double nu = 0.0;       // Polder off-diagonal parameter
  double xi0_sq = 0.0;   // 1 + 1/kappa
  int oam = 0;           // orbital angular momentum L_z = -(m_mag - 1)
};

/// Polder parameters kappa = Wh/(Wh^2 - W^2), nu = W/(Wh^2 - W^2).
/// Throws std::domain_error at the pole omega == omega_h.
std::pair<double, double> polder_parameters(double omega, double omega_h);

/// g(t) = xi * P'_n^m(xi) / P_n^m(xi) written as a rational function of
/// t = xi^2, real-valued also for t < 0 (imaginary xi).
/// Throws std::domain_error at poles (zeros of P_n^m, or t == 1 for m > 0).
double legendre_logderiv(int n, int m_abs, double t);

/// Coefficients of d^m P_n / dw^m in descending powers
/// w^(n-m), w^(n-m-2), ...; exposed for the texture construction.
std::vector<double> legendre_derivative_coeffs(int n, int m_abs);

/// Characteristic function F(Omega) = g(1 + 1/kappa) + (n+1) + m_mag*nu
/// whose roots in (Omega_H, Omega_H + 1/2] are the Walker eigenfrequencies.
/// Returns NaN at poles.
double walker_characteristic(int n, int m_mag, double omega, double omega_h);

/// All Walker eigenfrequencies for (n, m_mag) in the magnetostatic band,
/// sorted ascending and refined to |residual| < 1e-9. Empty list when the
/// pair supports no mode at this Omega_H.
std::vector<WalkerModeSolution> solve_walker_modes(int n, int m_mag,
                                                   const MaterialConfig& config);

/// Convenience lookup of one labeled mode; throws std::invalid_argument
/// when r is out of range for the roots found.
WalkerModeSolution solve_walker_mode(const WalkerModeIndex& index,
                                     const MaterialConfig& config);

/// L_z = -(m_mag - 1).
int oam_of_walker(int m_mag);

}  // namespace optomag
