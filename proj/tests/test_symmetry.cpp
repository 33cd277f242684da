#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dwg/qbound.hpp"
#include "dwg/symmetry.hpp"

using namespace dwg;
using namespace dwg::symmetry;

namespace {

struct Setup {
  double k;
  WellConfig well;
};

std::vector<Setup> setups(SymmetryOp op) {
  std::vector<Setup> electric = {{2.5, WellConfig::electric(4.0)}, {-1.5, WellConfig::electric(3.0)},
                                 {3.0, WellConfig::electric(-5.0)}, {1.2, WellConfig::electric(2.0, 0.6)}};
  std::vector<Setup> magnetic = {{-3.0, WellConfig::magnetic(4.0)}, {-2.5, WellConfig::magnetic(1.5)},
                                 {2.0, WellConfig::magnetic(-5.0)}, {-4.0, WellConfig::magnetic(3.0, 0.7)}};
  std::vector<Setup> out;
  if (applies_to(op, WellKind::Electric)) out.insert(out.end(), electric.begin(), electric.end());
  if (applies_to(op, WellKind::Magnetic)) out.insert(out.end(), magnetic.begin(), magnetic.end());
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  for (int i = 0; i < n / 2; ++i) g[n - 1 - i] = -g[i];
  return g;
}

std::vector<double> spectrum(double k, const WellConfig& w) {
  std::vector<double> e;
  for (const auto& s : find_bound_states(k, w)) e.push_back(s.energy);
  return e;
}

}  // namespace

TEST_CASE("every op is an involution up to phase") {
  const auto grid = linspace(-3.0, 3.0, 301);
  const auto state = find_bound_states(-3.0, WellConfig::magnetic(4.0))[0];
  const auto samples = sample_wavefunction(state, grid);
  for (SymmetryOp op : kAllOps) {
    CAPTURE(to_string(op));
    const auto twice = symmetry::apply(op, symmetry::apply(op, samples));
    const cplx phase = twice[150].psi1 / samples[150].psi1;
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      CHECK(twice[i].x == samples[i].x);
      CHECK(std::abs(twice[i].psi1 - phase * samples[i].psi1) < 1e-12);
      CHECK(std::abs(twice[i].psi2 - phase * samples[i].psi2) < 1e-12);
    }
    CHECK(projective_overlap(twice, samples) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("reflection ops need a symmetric grid") {
  const auto state = find_bound_states(2.5, WellConfig::electric(4.0))[0];
  const auto samples = sample_wavefunction(state, {-1.0, 0.0, 0.5});
  CHECK_THROWS_AS(symmetry::apply(SymmetryOp::ReflectX, samples), std::invalid_argument);
  CHECK_THROWS_AS(symmetry::apply(SymmetryOp::ChiralMagnetic, samples), std::invalid_argument);
  CHECK_NOTHROW(symmetry::apply(SymmetryOp::ChargeConjElectric, samples));
}

TEST_CASE("ops are rejected for the wrong well") {
  CHECK_THROWS_AS(map_parameters(SymmetryOp::ChiralMagnetic, 1.0, 1.0, WellConfig::electric(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(map_parameters(SymmetryOp::KFlipElectric, 1.0, 1.0, WellConfig::magnetic(1.0)), std::invalid_argument);
  CHECK_NOTHROW(map_parameters(SymmetryOp::ReflectX, 1.0, 1.0, WellConfig::magnetic(1.0)));
}

TEST_CASE("documented spectrum maps") {
  const auto chiral = spectrum_map(SymmetryOp::ChiralMagnetic, {-2.0, 0.2, 1.0}, -3.0, WellConfig::magnetic(4.0));
  CHECK(chiral.spectrum == std::vector<double>{-1.0, -0.2, 2.0});
  CHECK(chiral.k == -3.0);
  CHECK(chiral.well.strength == 4.0);

  const auto cc = spectrum_map(SymmetryOp::ChargeConjElectric, {-1.12, -0.27, 0.76, 1.83}, 2.5, WellConfig::electric(4.0));
  CHECK(cc.spectrum == std::vector<double>{-1.83, -0.76, 0.27, 1.12});
  CHECK(cc.k == 2.5);
  CHECK(cc.well.strength == -4.0);

  const auto kflip = spectrum_map(SymmetryOp::KFlipElectric, {0.5, -0.5}, 2.5, WellConfig::electric(4.0));
  CHECK(kflip.spectrum == std::vector<double>{-0.5, 0.5});
  CHECK(kflip.k == -2.5);

  const auto flip = spectrum_map(SymmetryOp::SignFlipMagnetic, {1.0}, -3.0, WellConfig::magnetic(4.0));
  CHECK(flip.k == 3.0);
  CHECK(flip.well.strength == -4.0);
}

TEST_CASE("predicted spectra match recomputed spectra") {
  for (SymmetryOp op : kAllOps) {
    int checked = 0;
    for (const auto& s : setups(op)) {
      CAPTURE(to_string(op));
      CAPTURE(s.k);
      CAPTURE(s.well.strength);
      const auto original = spectrum(s.k, s.well);
      REQUIRE(!original.empty());
      const auto predicted = spectrum_map(op, original, s.k, s.well);
      const auto actual = spectrum(predicted.k, predicted.well);
      REQUIRE(actual.size() == predicted.spectrum.size());
      for (std::size_t i = 0; i < actual.size(); ++i) CHECK(std::abs(actual[i] - predicted.spectrum[i]) < 1e-8);
      ++checked;
    }
    CHECK(checked >= 3);
  }
}

TEST_CASE("transformed eigenstates solve the mapped equation") {
  const auto grid = linspace(-3.0, 3.0, 6001);
  for (SymmetryOp op : kAllOps) {
    for (const auto& s : setups(op)) {
      CAPTURE(to_string(op));
      CAPTURE(s.k);
      CAPTURE(s.well.strength);
      const WellConfig well{s.well.kind, s.well.strength, 1.0};
      for (const auto& state : find_bound_states(s.k, well)) {
        const auto samples = sample_wavefunction(state, grid);
        const auto image = symmetry::apply(op, samples);
        const auto m = map_parameters(op, state.energy, s.k, well);
        const auto res = dirac_residual(image, m.E, m.k, m.well);
        CHECK(res.points_checked > 5000);
        CHECK(res.max_residual < 1e-4);

        // Same state recomputed at the image parameters.
        const auto partners = find_bound_states(m.k, m.well);
        const auto it = std::min_element(partners.begin(), partners.end(), [&](const auto& a, const auto& b) {
          return std::abs(a.energy - m.E) < std::abs(b.energy - m.E);
        });
        REQUIRE(it != partners.end());
        CHECK(projective_overlap(image, sample_wavefunction(*it, grid)) == doctest::Approx(1.0).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("residual detects a wrong transform") {
  const auto grid = linspace(-3.0, 3.0, 6001);
  const WellConfig well = WellConfig::electric(4.0);
  const auto state = find_bound_states(2.5, well)[0];
  const auto samples = sample_wavefunction(state, grid);
  std::vector<SpinorSample> sigma_y(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    sigma_y[i] = {samples[i].x, cplx(0, -1) * samples[i].psi2, cplx(0, 1) * samples[i].psi1};
  CHECK(dirac_residual(sigma_y, state.energy, -2.5, well).max_residual > 0.1);
  CHECK(dirac_residual(symmetry::apply(SymmetryOp::KFlipElectric, samples), state.energy, -2.5, well).max_residual < 1e-4);
  CHECK(dirac_residual(samples, state.energy + 0.01, 2.5, well).max_residual > 1e-3);
}
