#include "dwg/qscatter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dwg/classical.hpp"
#include "dwg/errors.hpp"

namespace dwg {

namespace {

constexpr cplx I{0.0, 1.0};

// Below this reciprocal condition number the matching system is treated as singular.
constexpr double kMinRcond = 1e-13;

void require_scattering(const QuantumNumbers& qn) {
  if (!(std::abs(qn.E) > std::abs(qn.k)))
    throw RegimeError("scattering requires |E| > |k| (no asymptotic plane waves otherwise)");
}

}  // namespace

Spinor BasisSpinor::at(double x) const {
  const cplx phase = std::exp(exponent * x);
  return Spinor(phase, phase * lower_component);
}

BasisSpinor basis_spinor(const RegionKinematics& kin, cplx exponent) {
  if (kin.energy == 0.0) throw RegimeError("kinetic energy vanishes in region; spinor basis undefined");
  return {exponent, I * (kin.qy - exponent) / kin.energy};
}

std::pair<BasisSpinor, BasisSpinor> region_basis(const RegionKinematics& kin, const TransverseMomentum& p) {
  if (p.value == 0.0) throw BranchPoint("transverse momentum vanishes; basis spinors coincide");
  const cplx lam = p.propagating() ? I * p.value : cplx(p.value, 0.0);
  return {basis_spinor(kin, lam), basis_spinor(kin, -lam)};
}

ScatteringResult solve_scattering(const QuantumNumbers& qn, const WellConfig& well) {
  well.validate();
  require_scattering(qn);
  const double h = well.half_width;

  const RegionKinematics out = outer_kinematics(qn);
  const TransverseMomentum kx = outer_momentum(qn);
  const auto [u_plus, u_minus] = region_basis(out, kx);

  const RegionKinematics in = inner_kinematics(qn, well);
  const TransverseMomentum kin = inner_momentum(qn, well);
  if (kin.value == 0.0)
    throw SingularMatrix("interior momentum vanishes at |E| == |q_y|; matching system degenerate", 0.0);
  const auto [w_plus, w_minus] = region_basis(in, kin);

  // Unknowns (r, A, B, t).
  Eigen::Matrix4cd M = Eigen::Matrix4cd::Zero();
  Eigen::Vector4cd rhs = Eigen::Vector4cd::Zero();
  M.block<2, 1>(0, 0) = -u_minus.at(-h);
  M.block<2, 1>(0, 1) = w_plus.at(-h);
  M.block<2, 1>(0, 2) = w_minus.at(-h);
  rhs.head<2>() = u_plus.at(-h);
  M.block<2, 1>(2, 1) = w_plus.at(h);
  M.block<2, 1>(2, 2) = w_minus.at(h);
  M.block<2, 1>(2, 3) = -u_plus.at(h);

  Eigen::PartialPivLU<Eigen::Matrix4cd> lu(M);
  const double rcond = lu.rcond();
  if (!(rcond > kMinRcond)) throw SingularMatrix("scattering matching matrix is singular", rcond);
  const Eigen::Vector4cd sol = lu.solve(rhs);

  ScatteringResult res;
  res.r = sol(0);
  res.inner_plus = sol(1);
  res.inner_minus = sol(2);
  res.t = sol(3);
  res.R = std::abs(res.r);
  res.T = std::abs(res.t);
  res.probability_check = std::norm(res.r) + std::norm(res.t);
  res.inner = kin;
  return res;
}

Spinor scattering_wave(const QuantumNumbers& qn, const WellConfig& well, const ScatteringResult& res, double x) {
  const double h = well.half_width;
  const auto [u_plus, u_minus] = region_basis(outer_kinematics(qn), outer_momentum(qn));
  if (x < -h) return u_plus.at(x) + res.r * u_minus.at(x);
  if (x > h) return res.t * u_plus.at(x);
  const auto [w_plus, w_minus] = region_basis(inner_kinematics(qn, well), res.inner);
  return res.inner_plus * w_plus.at(x) + res.inner_minus * w_minus.at(x);
}

namespace {

// e^{-2i kx h} kx kx' / (kx kx' cos(2 kx' h) - i C sin(2 kx' h)), continued to
// kx' = i kappa and to kx' -> 0.
cplx closed_form_t(const QuantumNumbers& qn, const TransverseMomentum& inner, double coupling, double h) {
  const double kx = outer_momentum(qn).value;
  const cplx prefactor = std::exp(-2.0 * I * kx * h);
  if (inner.value == 0.0) return prefactor * kx / (kx - I * coupling * 2.0 * h);
  if (inner.propagating()) {
    const double kxp = inner.value;
    return prefactor * kx * kxp / (kx * kxp * std::cos(2.0 * kxp * h) - I * coupling * std::sin(2.0 * kxp * h));
  }
  const double kappa = inner.value;
  return prefactor * kappa * kx /
         (kappa * kx * std::cosh(2.0 * kappa * h) - I * coupling * std::sinh(2.0 * kappa * h));
}

}  // namespace

cplx closed_form_t_magnetic(const QuantumNumbers& qn, double a0, double half_width) {
  require_scattering(qn);
  const TransverseMomentum inner = inner_momentum(qn, WellConfig{WellKind::Magnetic, a0, half_width});
  return closed_form_t(qn, inner, qn.E * qn.E - qn.k * (qn.k + a0), half_width);
}

cplx closed_form_t_electric(const QuantumNumbers& qn, double v0, double half_width) {
  require_scattering(qn);
  const TransverseMomentum inner = inner_momentum(qn, WellConfig{WellKind::Electric, v0, half_width});
  return closed_form_t(qn, inner, qn.E * (qn.E + v0) - qn.k * qn.k, half_width);
}

namespace {

std::optional<TransmissionPoint> transmission_point(double alpha, double E, double k, const WellConfig& well) {
  const QuantumNumbers qn{E, k};
  try {
    const ScatteringResult res = solve_scattering(qn, well);
    TransmissionPoint p;
    p.alpha = alpha;
    p.E = E;
    p.T = res.T;
    p.R = res.R;
    p.probability_check = res.probability_check;
    try {
      p.classically_allowed = classical::classify(qn, well).tag == classical::Regime::Scattering;
    } catch (const BoundaryCase&) {
      p.classically_allowed = false;
    }
    return p;
  } catch (const SingularMatrix&) {
    return std::nullopt;
  } catch (const RegimeError&) {
    return std::nullopt;
  }
}

}  // namespace

TransmissionCurve transmission_vs_angle(double k, const WellConfig& well, const std::vector<double>& alpha_grid) {
  well.validate();
  if (k == 0.0) throw std::invalid_argument("transmission_vs_angle: k must be nonzero");
  TransmissionCurve curve;
  for (double alpha : alpha_grid) {
    if (!(alpha > 0.0 && alpha < std::numbers::pi / 2))
      throw std::invalid_argument("transmission_vs_angle: alpha must lie in (0, pi/2)");
    const double E = std::abs(k) / std::sin(alpha);
    if (auto p = transmission_point(alpha, E, k, well)) curve.points.push_back(*p);
  }
  if (well.kind == WellKind::Magnetic) {
    try {
      curve.classical_limit_alpha = classical::max_angle(k, well.strength, WellKind::Magnetic).radians;
    } catch (const RegimeError&) {
      // no finite limit for these parameters
    }
  }
  return curve;
}

TransmissionCurve transmission_vs_energy(double k, const WellConfig& well, const std::vector<double>& E_grid) {
  well.validate();
  TransmissionCurve curve;
  for (double E : E_grid) {
    if (!(std::abs(E) > std::abs(k))) continue;
    const double alpha = std::asin(k / std::abs(E));
    if (auto p = transmission_point(alpha, E, k, well)) curve.points.push_back(*p);
  }
  return curve;
}

std::vector<ResonanceLevel> resonance_levels(double k, const WellConfig& well, int n_max) {
  well.validate();
  if (n_max < 1) throw std::invalid_argument("resonance_levels: n_max must be >= 1");
  std::vector<ResonanceLevel> out;
  // Without a potential T = 1 everywhere and there are no isolated resonances.
  if (well.strength == 0.0) return out;
  const double h = well.half_width;
  for (int n = 1; n <= n_max; ++n) {
    const double kxp = n * std::numbers::pi / (2.0 * h);
    for (int sign : {-1, +1}) {
      double E = 0.0;
      if (well.kind == WellKind::Magnetic) {
        const double qy = k + well.strength;
        E = sign * std::hypot(kxp, qy);
      } else {
        E = -well.strength + sign * std::hypot(kxp, k);
      }
      if (std::abs(E) > std::abs(k)) out.push_back({n, sign, E});
    }
  }
  return out;
}

std::vector<double> resonance_energies(double k, const WellConfig& well, int n_max) {
  std::vector<double> out;
  for (const auto& lvl : resonance_levels(k, well, n_max)) out.push_back(lvl.E);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dwg
