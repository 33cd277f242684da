#pragma once

// Quantum scattering off a square electric or magnetic well.
//
// Each region carries plane-wave (or exponential) spinors
//
//   exp(lambda x) (1, i (q_y - lambda) / eps)
//
// where (eps, q_y) are that region's kinetic energy and y-momentum and
// lambda^2 = q_y^2 - eps^2. Propagating waves have lambda = +-i p_x,
// evanescent ones lambda = +-kappa. The amplitudes follow from continuity of
// both spinor components at x = -h and x = +h with
//
//   psi_I = u_+ + r u_-,   psi_II = A w_+ + B w_-,   psi_III = t u_+.
//
// The 4x4 matching solve is the reference; the closed forms below are
// independent checks of it.

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dwg/model.hpp"

namespace dwg {

using cplx = std::complex<double>;
using Spinor = Eigen::Vector2cd;

/// exp(exponent * x) * (1, lower_component).
struct BasisSpinor {
  cplx exponent;
  cplx lower_component;

  Spinor at(double x) const;
};

/// Plane-wave (or exponential) solution with the given exponent in a region
/// with kinetic energy kin.energy and y-momentum kin.qy. Throws RegimeError
/// when the kinetic energy vanishes.
BasisSpinor basis_spinor(const RegionKinematics& kin, cplx exponent);

/// (+, -) pair: propagating exponents +-i p, evanescent exponents +-kappa.
/// Throws BranchPoint when the momentum is zero.
std::pair<BasisSpinor, BasisSpinor> region_basis(const RegionKinematics& kin, const TransverseMomentum& p);

struct ScatteringResult {
  cplx r;
  cplx t;
  double R = 0.0;  // |r|
  double T = 0.0;  // |t|
  double probability_check = 0.0;  // |r|^2 + |t|^2

  // Interior amplitudes and basis; enough to rebuild the wave everywhere.
  cplx inner_plus;
  cplx inner_minus;
  TransverseMomentum inner;
};

/// Solve the matching problem. Requires |E| > |k|. Throws RegimeError
/// otherwise and SingularMatrix when the interior basis degenerates.
ScatteringResult solve_scattering(const QuantumNumbers& qn, const WellConfig& well);

/// Scattering wave function at x, rebuilt from a solved result.
Spinor scattering_wave(const QuantumNumbers& qn, const WellConfig& well, const ScatteringResult& res, double x);

/// Closed-form magnetic transmission amplitude
///   t = e^{-2i kx h} kx kx' / (kx kx' cos(2 kx' h) - i (E^2 - k (k + a0)) sin(2 kx' h))
/// and its analytic continuation kx' -> i kappa for |E| < |k + a0|.
cplx closed_form_t_magnetic(const QuantumNumbers& qn, double a0, double half_width = 1.0);

/// Closed-form electric transmission amplitude
///   t = e^{-2i kx h} kx kx' / (kx kx' cos(2 kx' h) - i (E (E + v0) - k^2) sin(2 kx' h))
/// with the same continuation for |E + v0| < |k|.
cplx closed_form_t_electric(const QuantumNumbers& qn, double v0, double half_width = 1.0);

struct TransmissionPoint {
  double alpha = 0.0;
  double E = 0.0;
  double T = 0.0;
  double R = 0.0;
  double probability_check = 0.0;
  bool classically_allowed = false;
};

struct TransmissionCurve {
  std::vector<TransmissionPoint> points;
  /// Incident angle beyond which classical particles are reflected (magnetic only).
  std::optional<double> classical_limit_alpha;
};

/// T(alpha) at E = |k| / sin(alpha). alpha must lie in (0, pi/2) and k != 0.
/// Points where the matching system is singular are omitted.
TransmissionCurve transmission_vs_angle(double k, const WellConfig& well, const std::vector<double>& alpha_grid);

/// T(E) on an energy grid; points with |E| <= |k| or a singular system are omitted.
TransmissionCurve transmission_vs_energy(double k, const WellConfig& well, const std::vector<double>& E_grid);

struct ResonanceLevel {
  int n = 0;
  int sign = +1;  // which root of the quadratic
  double E = 0.0;
};

/// Energies with 2 kx' h = n pi, n = 1..n_max, keeping those with |E_n| > |k|.
/// Magnetic: E = +-sqrt((n pi / 2h)^2 + (k + a0)^2). Electric: E = -v0 +- sqrt((n pi / 2h)^2 + k^2).
/// Empty for a zero-strength well.
std::vector<ResonanceLevel> resonance_levels(double k, const WellConfig& well, int n_max);

/// Sorted energies of resonance_levels.
std::vector<double> resonance_energies(double k, const WellConfig& well, int n_max);

}  // namespace dwg
