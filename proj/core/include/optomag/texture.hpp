#pragma once

#include <complex>
#include <vector>

#include "optomag/walker.hpp"

namespace optomag {

/// Equatorial-plane snapshot of a Walker mode. Lengths are in units of
/// the sphere radius; the square grid covers [-2, 2]^2 with
/// (2*grid_size + 1) points per axis. Magnetization is zero outside the
/// sphere; the magnetostatic potential continues into the exterior.
struct TextureField {
  int grid_size = 0;
  std::vector<double> x;                       // per point
  std::vector<double> y;                       // per point
  std::vector<std::complex<double>> m_plus;    // m_x + i m_y
  std::vector<std::complex<double>> m_minus;   // m_x - i m_y
  std::vector<std::complex<double>> potential; // psi
  double pde_residual = 0.0;       // relative interior Walker-PDE residual
  double boundary_residual = 0.0;  // relative psi mismatch at the surface

  int points_per_axis() const { return 2 * grid_size + 1; }
};

/// Build the mode texture from the separable interior solution of the
/// Walker equation matched to the exterior harmonic potential.
/// grid_size must be odd and >= 21. Throws std::runtime_error when the
/// construction residuals exceed 1e-3 (wrong root or transformation) and
/// std::invalid_argument for modes odd under z -> -z, whose transverse
/// magnetization vanishes identically on the equator.
TextureField compute_texture(const WalkerModeSolution& solution,
                             const MaterialConfig& config, int grid_size);

/// Winding of arg(m_plus) accumulated counterclockwise around the circle
/// of the given radius (in units of the sphere radius, within (0.2, 0.9)),
/// from branch-cut-safe phase increments over >= 256 samples.
/// Throws std::runtime_error when |m_plus| on the loop falls below 1e-6 of
/// its grid maximum (ill-defined winding; retry with another radius).
int winding_number(const TextureField& texture, double loop_radius);

}  // namespace optomag
