#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "optomag/scattering.hpp"

using namespace optomag;

namespace {

const MaterialConfig kConfig{};
const WGMLadderConfig kLadder{};

const ScatteringChannel& pick(const std::vector<ScatteringChannel>& channels,
                              Process process) {
  for (const auto& ch : channels)
    if (ch.process == process) return ch;
  throw std::logic_error("process not present");
}

}  // namespace

TEST_CASE("channels: Kittel mode near double resonance for CW anti-Stokes") {
  const auto kittel = solve_walker_mode({1, 1, 0}, kConfig);

  const auto cw = enumerate_channels(4835, kittel, Orbit::cw, kLadder);
  REQUIRE(cw.size() == 2);
  const auto& cw_as = pick(cw, Process::anti_stokes);
  CHECK(cw_as.output_m_te == 4836);
  CHECK(cw_as.detuning_ghz == doctest::Approx(-0.9).epsilon(1e-9));
  CHECK(cw_as.weight == doctest::Approx(0.535887).epsilon(1e-4));
  CHECK(pick(cw, Process::stokes).detuning_ghz == doctest::Approx(64.9).epsilon(1e-9));

  const auto ccw = enumerate_channels(4835, kittel, Orbit::ccw, kLadder);
  CHECK(pick(ccw, Process::anti_stokes).output_m_te == 4834);
  CHECK(pick(ccw, Process::anti_stokes).detuning_ghz == doctest::Approx(79.1).epsilon(1e-9));
  CHECK(pick(ccw, Process::stokes).detuning_ghz == doctest::Approx(-15.1).epsilon(1e-9));
}

TEST_CASE("channels: spin sourcing rule") {
  const auto walker = solve_walker_mode({3, 1, 1}, kConfig);
  for (const Orbit orbit : {Orbit::cw, Orbit::ccw}) {
    for (const auto& ch : enumerate_channels(4835, walker, orbit, kLadder)) {
      const int spin = spin_of_wgm(ch.input);
      CHECK(spin == (ch.process == Process::anti_stokes ? +1 : -1));
      CHECK(ch.input.family == WgmFamily::tm);
      CHECK(ch.input.m == 4835);
    }
  }
}

TEST_CASE("channels: conservation holds across the solvable catalog") {
  // Property sweep, > 10^3 channel instances.
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> m_tms(100, 9000);
  std::uniform_real_distribution<double> kittels(6.0, 8.5);
  int checked = 0;
  for (int rep = 0; rep < 40; ++rep) {
    MaterialConfig cfg = kConfig;
    cfg.kittel_frequency_ghz = kittels(rng);
    const int m_tm = m_tms(rng);
    for (int n = 1; n <= 5; ++n) {
      for (int m = -n; m <= n; ++m) {
        for (const auto& walker : solve_walker_modes(n, m, cfg)) {
          for (const Orbit orbit : {Orbit::cw, Orbit::ccw}) {
            if (m_tm - std::abs(m) < 2) continue;
            for (const auto& ch : enumerate_channels(m_tm, walker, orbit, kLadder)) {
              CHECK(check_conservation(ch));
              CHECK(ch.weight > 0.0);
              CHECK(ch.weight <= 1.0);
              CHECK(std::abs(ch.output_oam) == ch.output_m_te);
              CHECK(ch.detuning_ghz ==
                    doctest::Approx((ch.photon_frequency_thz - ch.target_resonance_thz) * 1e3)
                        .epsilon(1e-9));
              ++checked;
            }
          }
        }
      }
    }
  }
  CHECK(checked >= 1000);
  MESSAGE("conservation checked on ", checked, " channels");
}

TEST_CASE("channels: broken bookkeeping is detected") {
  const auto walker = solve_walker_mode({1, 1, 0}, kConfig);
  auto chans = enumerate_channels(4835, walker, Orbit::ccw, kLadder);
  auto bad = chans[0];
  bad.output_oam += 1;
  CHECK(!check_conservation(bad));
  bad = chans[0];
  bad.input.component = component_for_spin(bad.input.orbit, -spin_of_wgm(bad.input));
  CHECK(!check_conservation(bad));
}

TEST_CASE("channels: orbit mirror under m_mag -> -m_mag") {
  // With the magnon frequency held fixed, the CW channel set of a mode with
  // azimuthal index m equals the CCW set of the index-flipped mode up to the
  // orbit-signed fields.
  const auto base = solve_walker_mode({3, 1, 1}, kConfig);
  auto flipped = base;
  flipped.index.m_mag = -flipped.index.m_mag;
  const auto cw = enumerate_channels(4835, base, Orbit::cw, kLadder);
  const auto ccw = enumerate_channels(4835, flipped, Orbit::ccw, kLadder);
  REQUIRE(cw.size() == ccw.size());
  for (std::size_t i = 0; i < cw.size(); ++i) {
    CHECK(cw[i].process == ccw[i].process);
    CHECK(cw[i].output_m_te == ccw[i].output_m_te);
    CHECK(cw[i].output_oam == -ccw[i].output_oam);
    CHECK(cw[i].photon_frequency_thz ==
          doctest::Approx(ccw[i].photon_frequency_thz).epsilon(1e-13));
    CHECK(cw[i].detuning_ghz == doctest::Approx(ccw[i].detuning_ghz).epsilon(1e-10));
    CHECK(cw[i].weight == doctest::Approx(ccw[i].weight).epsilon(1e-10));
  }
}

TEST_CASE("nonreciprocity: frozen ratios at defaults") {
  struct Case { int n, m, r; double ratio; };
  for (const Case c : {Case{1, 1, 0, 126.609}, {3, -1, 1, 0.00667822},
                       {3, 1, 1, 163.003}}) {
    CAPTURE(c.n);
    CAPTURE(c.m);
    const auto walker = solve_walker_mode({c.n, c.m, c.r}, kConfig);
    CHECK(nonreciprocity_ratio(4835, walker, kLadder) ==
          doctest::Approx(c.ratio).epsilon(1e-4));
  }
}

TEST_CASE("nonreciprocity: m_mag = 0 is exactly reciprocal") {
  const auto walker = solve_walker_mode({4, 0, 1}, kConfig);
  CHECK(std::abs(nonreciprocity_ratio(4835, walker, kLadder) - 1.0) < 1e-12);
}

TEST_CASE("nonreciprocity: ratio inverts under m_mag -> -m_mag at fixed frequency") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> ms(1, 4);
  std::uniform_real_distribution<double> kittels(6.5, 7.7);
  for (int rep = 0; rep < 200; ++rep) {
    MaterialConfig cfg = kConfig;
    cfg.kittel_frequency_ghz = kittels(rng);
    const int m = ms(rng);
    const auto sols = solve_walker_modes(m, m, cfg);
    REQUIRE(!sols.empty());
    auto flipped = sols[0];
    flipped.index.m_mag = -m;
    const double r = nonreciprocity_ratio(4835, sols[0], kLadder);
    const double rf = nonreciprocity_ratio(4835, flipped, kLadder);
    CHECK(r * rf == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("classify_reciprocity thresholds") {
  CHECK(classify_reciprocity(126.6) == Reciprocity::cw_favored);
  CHECK(classify_reciprocity(0.0067) == Reciprocity::ccw_favored);
  CHECK(classify_reciprocity(1.0) == Reciprocity::reciprocal);
  CHECK(classify_reciprocity(1.99) == Reciprocity::reciprocal);
  CHECK(classify_reciprocity(0.51) == Reciprocity::reciprocal);
  CHECK_THROWS_AS(classify_reciprocity(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(classify_reciprocity(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("bls spectrum: peak placement, normalization, asymmetry") {
  const auto walker = solve_walker_mode({1, 1, 0}, kConfig);
  const double f0 = walker.frequency_ghz;
  std::vector<double> drive;
  for (int i = -200; i <= 200; ++i) drive.push_back(f0 + i * 1e-4);
  const auto spec = bls_spectrum(4835, walker, kLadder, drive, 0.002);

  REQUIRE(spec.amplitude_cw.size() == drive.size());
  // Grid contains f0 exactly; the stronger (CW) orbit peaks at 1 there.
  const std::size_t center = 200;
  CHECK(spec.amplitude_cw[center] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(spec.amplitude_ccw[center] ==
        doctest::Approx(1.0 / 126.609).epsilon(1e-4));
  // Half maximum one half-linewidth away.
  CHECK(spec.amplitude_cw[center + 10] == doctest::Approx(0.5).epsilon(1e-6));
  // Constant CW/CCW ratio across the drive grid.
  for (std::size_t i = 0; i < drive.size(); i += 25)
    CHECK(spec.amplitude_cw[i] / spec.amplitude_ccw[i] ==
          doctest::Approx(126.609).epsilon(1e-4));
}

TEST_CASE("bls spectrum: far-detuned drives give vanishing amplitude") {
  const auto walker = solve_walker_mode({1, 1, 0}, kConfig);
  const auto spec = bls_spectrum(4835, walker, kLadder,
                                 {walker.frequency_ghz + 5.0,
                                  walker.frequency_ghz + 10.0},
                                 0.002);
  for (const double a : spec.amplitude_cw) CHECK(a < 1e-6);
  for (const double a : spec.amplitude_ccw) CHECK(a < 1e-6);
}

TEST_CASE("bls spectrum: input validation") {
  const auto walker = solve_walker_mode({1, 1, 0}, kConfig);
  CHECK_THROWS_AS(bls_spectrum(4835, walker, kLadder, {}, 0.002),
                  std::invalid_argument);
  CHECK_THROWS_AS(bls_spectrum(4835, walker, kLadder, {7.1, 7.0}, 0.002),
                  std::invalid_argument);
  CHECK_THROWS_AS(bls_spectrum(4835, walker, kLadder, {7.0, 7.1}, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_channels(1, walker, Orbit::cw, kLadder),
                  std::invalid_argument);
}
