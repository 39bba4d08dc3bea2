#include "optomag/texture.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace optomag {

namespace {

using cplx = std::complex<double>;

// Sparse trivariate polynomial in (x, y, z), complex coefficients.
struct Poly3 {
  std::map<std::array<int, 3>, cplx> terms;

  void add(std::array<int, 3> e, cplx c) {
    auto it = terms.find(e);
    if (it == terms.end())
      terms.emplace(e, c);
    else if ((it->second += c) == cplx{})
      terms.erase(it);
  }

  Poly3 operator*(const Poly3& o) const {
    Poly3 r;
    for (const auto& [ea, ca] : terms)
      for (const auto& [eb, cb] : o.terms)
        r.add({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
  }

  Poly3& operator+=(const Poly3& o) {
    for (const auto& [e, c] : o.terms) add(e, c);
    return *this;
  }

  Poly3 scaled(cplx s) const {
    Poly3 r = *this;
    for (auto& [e, c] : r.terms) c *= s;
    return r;
  }

  Poly3 diff(int axis) const {
    Poly3 r;
    for (const auto& [e, c] : terms) {
      if (e[axis] == 0) continue;
      auto f = e;
      --f[axis];
      r.add(f, c * double(e[axis]));
    }
    return r;
  }

  cplx eval(double x, double y, double z) const {
    cplx acc = 0.0;
    for (const auto& [e, c] : terms)
      acc += c * std::pow(x, e[0]) * std::pow(y, e[1]) * std::pow(z, e[2]);
    return acc;
  }

  static Poly3 one() {
    Poly3 p;
    p.add({0, 0, 0}, 1.0);
    return p;
  }

  Poly3 pow(int k) const {
    Poly3 r = one();
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }
};

// 1-D polynomial in ascending powers.
using Poly1 = std::vector<double>;

Poly1 p1_mul(const Poly1& a, const Poly1& b) {
  Poly1 r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly1 p1_pow(const Poly1& a, int k) {
  Poly1 r{1.0};
  for (int i = 0; i < k; ++i) r = p1_mul(r, a);
  return r;
}

void p1_axpy(Poly1& acc, double s, const Poly1& a) {
  if (acc.size() < a.size()) acc.resize(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) acc[i] += s * a[i];
}

// Solve a small dense system by Gaussian elimination with partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                std::vector<double> rhs) {
  const int n = int(rhs.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14)
      throw std::runtime_error("texture: singular boundary-matching system");
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs[r];
    for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

// Analytic evaluator for one mode: interior polynomial solution of the
// Walker equation matched on the sphere to the exterior harmonic.
struct ModeField {
  int n = 0, m_mag = 0, mu = 0;
  double c2 = 0.0;  // 1 + kappa
  Poly3 psi, psi_x, psi_y;
  std::vector<double> d_coeffs;  // d^mu P_n / dw^mu, descending even steps

  cplx azimuthal_power(double x, double y) const {  // E^mu = (x -/+ iy)^mu
    const cplx e = (m_mag > 0) ? cplx(x, -y) : cplx(x, y);
    cplx r = 1.0;
    for (int i = 0; i < mu; ++i) r *= e;
    return r;
  }

  double legendre_part(double w) const {  // d(w) = sum a_k w^(n-mu-2k)
    double s = 0.0;
    for (std::size_t k = 0; k < d_coeffs.size(); ++k)
      s += d_coeffs[k] * std::pow(w, n - mu - 2 * int(k));
    return s;
  }

  cplx psi_exterior(double x, double y, double z) const {
    const double r = std::sqrt(x * x + y * y + z * z);
    return azimuthal_power(x, y) * legendre_part(z / r) /
           std::pow(r, n + 1 + mu);
  }
};

ModeField build_mode_field(const WalkerModeSolution& sol) {
  ModeField f;
  f.n = sol.index.n;
  f.m_mag = sol.index.m_mag;
  f.mu = std::abs(f.m_mag);
  f.c2 = 1.0 + sol.kappa;
  f.d_coeffs = legendre_derivative_coeffs(f.n, f.mu);
  if (f.c2 == 0.0)
    throw std::runtime_error("texture: degenerate mode with kappa == -1");

  const int big_k = int(f.d_coeffs.size()) - 1;  // number of mixed harmonics - 1

  // Interior basis: scaled solid harmonics of degrees n, n-2, ...; each
  // solves (1+kappa) laplace_perp psi + psi_zz = 0 exactly.
  Poly3 e_pow;  // E^mu
  {
    Poly3 e;
    e.add({1, 0, 0}, 1.0);
    e.add({0, 1, 0}, (f.m_mag > 0) ? cplx(0.0, -1.0) : cplx(0.0, 1.0));
    e_pow = e.pow(f.mu);
  }
  Poly3 q;  // (x^2 + y^2)/c2 + z^2
  q.add({2, 0, 0}, 1.0 / f.c2);
  q.add({0, 2, 0}, 1.0 / f.c2);
  q.add({0, 0, 2}, 1.0);

  // Surface restriction of each basis element: sin^mu(theta) e^{-im phi}
  // times h_l(cos theta); qs is q restricted to the unit sphere.
  const Poly1 qs{1.0 / f.c2, 0.0, 1.0 - 1.0 / f.c2};

  std::vector<Poly3> basis;
  std::vector<Poly1> h;
  for (int j = 0; j <= big_k; ++j) {
    const int l = f.n - 2 * j;
    const auto a = legendre_derivative_coeffs(l, f.mu);
    Poly3 radial;
    Poly1 hl{0.0};
    for (std::size_t k = 0; k < a.size(); ++k) {
      const int zp = l - f.mu - 2 * int(k);
      Poly3 zterm;
      zterm.add({0, 0, zp}, a[k]);
      radial += zterm * q.pow(int(k));
      Poly1 wterm(zp + 1, 0.0);
      wterm[zp] = a[k];
      p1_axpy(hl, 1.0, p1_mul(wterm, p1_pow(qs, int(k))));
    }
    basis.push_back(e_pow * radial);
    h.push_back(hl);
  }

  // Match sum_j b_j h_j(w) = d(w) coefficient-wise so psi restricts on the
  // sphere to exactly the exterior angular dependence.
  std::vector<std::vector<double>> mat(big_k + 1, std::vector<double>(big_k + 1, 0.0));
  std::vector<double> rhs(big_k + 1, 0.0);
  for (int i = 0; i <= big_k; ++i) {
    const int deg = f.n - f.mu - 2 * i;
    rhs[i] = f.d_coeffs[i];
    for (int j = 0; j <= big_k; ++j)
      mat[i][j] = (deg < int(h[j].size())) ? h[j][deg] : 0.0;
  }
  const auto b = solve_dense(std::move(mat), std::move(rhs));

  for (int j = 0; j <= big_k; ++j) f.psi += basis[j].scaled(b[j]);
  f.psi_x = f.psi.diff(0);
  f.psi_y = f.psi.diff(1);
  return f;
}

}  // namespace

TextureField compute_texture(const WalkerModeSolution& solution,
                             const MaterialConfig& config, int grid_size) {
  config.validate();
  if (grid_size < 21 || grid_size % 2 == 0)
    throw std::invalid_argument("compute_texture: grid_size must be odd and >= 21");
  const int n = solution.index.n;
  const int mu = std::abs(solution.index.m_mag);
  if (n < 1 || mu > n)
    throw std::invalid_argument("compute_texture: invalid Walker index");
  if ((n - mu) % 2 != 0)
    throw std::invalid_argument(
        "compute_texture: mode is odd under z -> -z; equatorial transverse "
        "magnetization vanishes");
  {  // sanity of the supplied eigensolution
    const double omega_h = config.omega_h_reduced();
    const auto [k, v] = polder_parameters(solution.omega, omega_h);
    if (std::abs(k - solution.kappa) > 1e-6 * std::abs(k) ||
        std::abs(v - solution.nu) > 1e-6 * std::abs(v))
      throw std::invalid_argument("compute_texture: inconsistent Polder parameters");
  }

  const ModeField field = build_mode_field(solution);

  TextureField tex;
  tex.grid_size = grid_size;
  const int npts = tex.points_per_axis();
  const double step = 2.0 / grid_size;  // grid spans [-2, 2]

  tex.x.reserve(std::size_t(npts) * npts);
  tex.y.reserve(std::size_t(npts) * npts);
  tex.m_plus.reserve(std::size_t(npts) * npts);
  tex.m_minus.reserve(std::size_t(npts) * npts);
  tex.potential.reserve(std::size_t(npts) * npts);

  const cplx i_unit(0.0, 1.0);
  const double cp = solution.kappa + solution.nu;  // m_plus susceptibility
  const double cm = solution.kappa - solution.nu;  // m_minus susceptibility

  for (int iy = 0; iy < npts; ++iy) {
    const double y = -2.0 + step * iy;
    for (int ix = 0; ix < npts; ++ix) {
      const double x = -2.0 + step * ix;
      tex.x.push_back(x);
      tex.y.push_back(y);
      if (x * x + y * y <= 1.0) {
        const cplx hx = field.psi_x.eval(x, y, 0.0);
        const cplx hy = field.psi_y.eval(x, y, 0.0);
        tex.m_plus.push_back(cp * (hx + i_unit * hy));
        tex.m_minus.push_back(cm * (hx - i_unit * hy));
        tex.potential.push_back(field.psi.eval(x, y, 0.0));
      } else {
        tex.m_plus.push_back(0.0);
        tex.m_minus.push_back(0.0);
        tex.potential.push_back(field.psi_exterior(x, y, 0.0));
      }
    }
  }

  // Interior PDE residual from a central-difference stencil on three
  // planes around the equator, relative to the largest second derivative.
  {
    const double d = 1e-3;
    double worst = 0.0, scale = 0.0;
    for (int iy = 0; iy < npts; iy += 2) {
      const double y = -2.0 + step * iy;
      for (int ix = 0; ix < npts; ix += 2) {
        const double x = -2.0 + step * ix;
        if (x * x + y * y > 0.85 * 0.85) continue;
        const cplx c0 = field.psi.eval(x, y, 0.0);
        const cplx pxx =
            (field.psi.eval(x + d, y, 0.0) - 2.0 * c0 + field.psi.eval(x - d, y, 0.0)) / (d * d);
        const cplx pyy =
            (field.psi.eval(x, y + d, 0.0) - 2.0 * c0 + field.psi.eval(x, y - d, 0.0)) / (d * d);
        const cplx pzz =
            (field.psi.eval(x, y, d) - 2.0 * c0 + field.psi.eval(x, y, -d)) / (d * d);
        worst = std::max(worst, std::abs(field.c2 * (pxx + pyy) + pzz));
        scale = std::max({scale, std::abs(pxx), std::abs(pyy), std::abs(pzz)});
      }
    }
    tex.pde_residual = (scale > 1e-12) ? worst / scale : 0.0;
  }

  // Continuity of psi across the sphere surface, sampled over theta, phi.
  {
    constexpr int kSamples = 64;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    double worst = 0.0, scale = 0.0;
    for (int j = 0; j < kSamples; ++j) {
      const double w = -0.95 + 1.9 * j / (kSamples - 1);  // cos(theta)
      const double phi = golden * j;
      const double s = std::sqrt(1.0 - w * w);
      const double x = s * std::cos(phi), y = s * std::sin(phi), z = w;
      const cplx in = field.psi.eval(x, y, z);
      const cplx out = field.psi_exterior(x, y, z);
      worst = std::max(worst, std::abs(in - out));
      scale = std::max(scale, std::abs(out));
    }
    tex.boundary_residual = (scale > 1e-300) ? worst / scale : 0.0;
  }

  if (tex.pde_residual > 1e-3)
    throw std::runtime_error("compute_texture: interior PDE residual " +
                             std::to_string(tex.pde_residual) + " exceeds 1e-3");
  if (tex.boundary_residual > 1e-3)
    throw std::runtime_error("compute_texture: boundary continuity residual " +
                             std::to_string(tex.boundary_residual) + " exceeds 1e-3");

  // Gauge: max |m_plus| = 1, phase zero at the grid point nearest (0.5, 0).
  double max_abs = 0.0;
  for (const auto& v : tex.m_plus) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs < 1e-300)
    throw std::runtime_error("compute_texture: transverse magnetization vanishes");
  std::size_t anchor =
      std::size_t(grid_size) * npts + std::size_t(std::lround((0.5 + 2.0) / step));
  if (std::abs(tex.m_plus[anchor]) < 1e-9 * max_abs) {
    for (std::size_t i = 0; i < tex.m_plus.size(); ++i)
      if (std::abs(tex.m_plus[i]) == max_abs) anchor = i;
  }
  const cplx gauge =
      std::exp(cplx(0.0, -std::arg(tex.m_plus[anchor]))) / max_abs;
  for (auto& v : tex.m_plus) v *= gauge;
  for (auto& v : tex.m_minus) v *= gauge;
  for (auto& v : tex.potential) v *= gauge;

  return tex;
}

namespace {

cplx bilinear(const TextureField& t, double x, double y) {
  const int npts = t.points_per_axis();
  const double step = 2.0 / t.grid_size;
  const double fx = (x + 2.0) / step, fy = (y + 2.0) / step;
  const int ix = std::min(npts - 2, std::max(0, int(std::floor(fx))));
  const int iy = std::min(npts - 2, std::max(0, int(std::floor(fy))));
  const double ax = fx - ix, ay = fy - iy;
  auto at = [&](int i, int j) { return t.m_plus[std::size_t(j) * npts + i]; };
  return (1 - ax) * (1 - ay) * at(ix, iy) + ax * (1 - ay) * at(ix + 1, iy) +
         (1 - ax) * ay * at(ix, iy + 1) + ax * ay * at(ix + 1, iy + 1);
}

}  // namespace

int winding_number(const TextureField& texture, double loop_radius) {
  if (!(loop_radius > 0.2 && loop_radius < 0.9))
    throw std::invalid_argument("winding_number: loop_radius must be in (0.2, 0.9)");
  if (texture.m_plus.empty())
    throw std::invalid_argument("winding_number: empty texture");

  double max_abs = 0.0;
  for (const auto& v : texture.m_plus) max_abs = std::max(max_abs, std::abs(v));

  constexpr int kSamples = 512;
  std::vector<cplx> ring(kSamples);
  for (int k = 0; k < kSamples; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / kSamples;
    ring[k] = bilinear(texture, loop_radius * std::cos(phi),
                       loop_radius * std::sin(phi));
    if (std::abs(ring[k]) < 1e-6 * max_abs)
      throw std::runtime_error(
          "winding_number: |m_plus| too small on the loop; winding ill-defined");
  }
  double total = 0.0;
  for (int k = 0; k < kSamples; ++k)
    total += std::arg(ring[(k + 1) % kSamples] / ring[k]);
  const double turns = total / (2.0 * std::numbers::pi);
  const int wind = int(std::lround(turns));
  if (std::abs(turns - wind) > 0.1)
    throw std::runtime_error("winding_number: phase accumulation not integral");
  return wind;
}

}  // namespace optomag
