#include "optomag/walker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace optomag {

void MaterialConfig::validate() const {
  if (!(gamma_mhz_per_g > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(four_pi_ms_g > 0.0)) throw std::invalid_argument("4piMs must be > 0");
  if (!(sphere_radius_mm > 0.0)) throw std::invalid_argument("sphere radius must be > 0");
  if (!(kittel_frequency_ghz > 0.0)) throw std::invalid_argument("Kittel frequency must be > 0");
  if (!(omega_h_reduced() > 0.0))
    throw std::invalid_argument("internal field Omega_H = (f_K - omega_M/3)/omega_M must be > 0");
}

std::pair<double, double> polder_parameters(double omega, double omega_h) {
  if (!(omega > 0.0) || !(omega_h > 0.0))
    throw std::invalid_argument("polder_parameters: frequencies must be positive");
  const double den = omega_h * omega_h - omega * omega;
  if (den == 0.0)
    throw std::domain_error("polder_parameters: pole at omega == omega_h");
  return {omega_h / den, omega / den};
}

namespace {

// Coefficients of the Legendre polynomial P_n in descending powers
// w^n, w^(n-1), ..., w^0, via the Bonnet recurrence.
std::vector<double> legendre_coeffs(int n) {
  std::vector<double> pm1{1.0};     // P_0
  if (n == 0) return pm1;
  std::vector<double> p{1.0, 0.0};  // P_1
  for (int k = 1; k < n; ++k) {
    std::vector<double> next(k + 2, 0.0);
    const double a = (2.0 * k + 1.0) / (k + 1.0);
    const double b = double(k) / (k + 1.0);
    for (int i = 0; i <= k; ++i) next[i] += a * p[i];      // (2k+1)/(k+1) * w * P_k
    for (int i = 0; i <= k - 1; ++i) next[i + 2] -= b * pm1[i];
    pm1 = std::move(p);
    p = std::move(next);
  }
  return p;
}

}  // namespace

std::vector<double> legendre_derivative_coeffs(int n, int m_abs) {
  if (n < 0 || m_abs < 0 || m_abs > n)
    throw std::invalid_argument("legendre_derivative_coeffs: need 0 <= m <= n");
  std::vector<double> c = legendre_coeffs(n);
  int deg = n;
  for (int d = 0; d < m_abs; ++d) {
    std::vector<double> dc(deg, 0.0);
    for (int i = 0; i < deg; ++i) dc[i] = c[i] * (deg - i);
    c = std::move(dc);
    --deg;
  }
  // Strip the zero entries of the opposite parity: keep w^(n-m), w^(n-m-2), ...
  std::vector<double> out;
  for (int i = 0; i <= deg; i += 2) out.push_back(c[i]);
  return out;
}

double legendre_logderiv(int n, int m_abs, double t) {
  if (n < 1 || m_abs < 0 || m_abs > n)
    throw std::invalid_argument("legendre_logderiv: need n >= 1, 0 <= m <= n");
  const int p = (n - m_abs) % 2;
  // s(t) with d^m P_n / dw^m = w^p * s(w^2)
  const std::vector<double> a = legendre_derivative_coeffs(n, m_abs);
  const int big_k = int(a.size()) - 1;  // degree of s in t
  double s = 0.0, sp = 0.0;
  for (int k = 0; k <= big_k; ++k) {  // a[k] multiplies t^(K-k)
    const int e = big_k - k;
    s += a[k] * std::pow(t, e);
    if (e > 0) sp += a[k] * e * std::pow(t, e - 1);
  }
  if (s == 0.0)
    throw std::domain_error("legendre_logderiv: pole at a zero of P_n^m");
  double g = double(p) + 2.0 * t * sp / s;
  if (m_abs > 0) {
    if (t == 1.0)
      throw std::domain_error("legendre_logderiv: pole at t == 1 for m > 0");
    g += m_abs * t / (t - 1.0);
  }
  return g;
}

double walker_characteristic(int n, int m_mag, double omega, double omega_h) {
  const double den = omega_h * omega_h - omega * omega;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double kappa = omega_h / den;
  const double nu = omega / den;
  if (kappa == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double t = 1.0 + 1.0 / kappa;
  try {
    return legendre_logderiv(n, std::abs(m_mag), t) + double(n + 1) + m_mag * nu;
  } catch (const std::domain_error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

int oam_of_walker(int m_mag) { return -(m_mag - 1); }

namespace {

constexpr int kScanSamples = 4096;
constexpr double kResidualTol = 1e-9;

// Bisection on the characteristic function to 1e-12 relative bracket width.
double refine_root(int n, int m_mag, double omega_h, double lo, double hi,
                   double flo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((hi - lo) <= 1e-12 * mid) return mid;
    const double fm = walker_characteristic(n, m_mag, mid, omega_h);
    if (std::isnan(fm))
      throw std::runtime_error("walker solver: bisection hit a pole inside bracket [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw std::runtime_error("walker solver: bisection failed to converge");
}

}  // namespace

std::vector<WalkerModeSolution> solve_walker_modes(int n, int m_mag,
                                                   const MaterialConfig& config) {
  config.validate();
  if (n < 1) throw std::invalid_argument("walker solver: n must be >= 1");
  if (std::abs(m_mag) > n)
    throw std::invalid_argument("walker solver: need |m_mag| <= n");

  const double omega_h = config.omega_h_reduced();
  const double omega_m = config.omega_m_ghz();

  std::vector<double> roots;
  double prev_x = 0.0, prev_f = std::numeric_limits<double>::quiet_NaN();
  for (int i = 1; i <= kScanSamples; ++i) {
    const double x = omega_h + 0.5 * double(i) / kScanSamples;
    const double f = walker_characteristic(n, m_mag, x, omega_h);
    if (!std::isnan(f) && !std::isnan(prev_f) && (f < 0.0) != (prev_f < 0.0)) {
      // Pole-aware acceptance: a genuine root stays bounded at the midpoint.
      const double fm = walker_characteristic(n, m_mag, 0.5 * (prev_x + x), omega_h);
      if (!std::isnan(fm) &&
          std::abs(fm) < 10.0 * 0.5 * (std::abs(f) + std::abs(prev_f))) {
        const double root = refine_root(n, m_mag, omega_h, prev_x, x, prev_f);
        const double res = walker_characteristic(n, m_mag, root, omega_h);
        if (std::abs(res) < kResidualTol) roots.push_back(root);
      }
    }
    prev_x = x;
    prev_f = f;
  }
  std::sort(roots.begin(), roots.end());

  std::vector<WalkerModeSolution> out;
  const int r0 = (m_mag >= 1) ? 0 : 1;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    WalkerModeSolution s;
    s.index = {n, m_mag, r0 + int(i)};
    s.omega = roots[i];
    s.frequency_ghz = roots[i] * omega_m;
    std::tie(s.kappa, s.nu) = polder_parameters(roots[i], omega_h);
    s.xi0_sq = 1.0 + 1.0 / s.kappa;
    s.oam = oam_of_walker(m_mag);
    out.push_back(s);
  }
  return out;
}

WalkerModeSolution solve_walker_mode(const WalkerModeIndex& index,
                                     const MaterialConfig& config) {
  const auto all = solve_walker_modes(index.n, index.m_mag, config);
  for (const auto& s : all)
    if (s.index.r == index.r) return s;
  throw std::invalid_argument("no Walker root r=" + std::to_string(index.r) +
                              " for (n=" + std::to_string(index.n) +
                              ", m=" + std::to_string(index.m_mag) + "); " +
                              std::to_string(all.size()) + " root(s) exist");
}

}  // namespace optomag
