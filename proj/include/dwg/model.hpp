#pragma once

// Square electric and magnetic waveguides for massless Dirac particles.
//
// Units: hbar = v_F = 1. A(x) = -e A~/hbar, V(x) = V~/(hbar v_F) and
// E = eps/(hbar v_F), so energies and momenta are measured in inverse
// length. With the default half-width of 1 every quantity is dimensionless.
//
// The reduced Hamiltonian for a mode exp(i k y) psi(x) is
//
//   H = sigma_x (-i d/dx) + sigma_y (k - A(x)) + V(x)
//
// with A = -a0 (magnetic) or V = -v0 (electric) inside |x| < h and zero
// outside. Inside the well a magnetic potential shifts the kinetic
// y-momentum to k + a0; an electric one shifts the kinetic energy to E + v0.

#include <string_view>

namespace dwg {

enum class WellKind { Electric, Magnetic };

std::string_view to_string(WellKind kind);

/// Geometry and strength of a square well centred at x = 0.
///
/// `strength` is v0 for an electric well and a0 for a magnetic one; a
/// positive value is a well, a negative value a barrier.
struct WellConfig {
  WellKind kind = WellKind::Electric;
  double strength = 0.0;
  double half_width = 1.0;

  static WellConfig electric(double v0, double half_width = 1.0);
  static WellConfig magnetic(double a0, double half_width = 1.0);

  /// Throws std::invalid_argument unless half_width > 0 and all fields are finite.
  void validate() const;
};

/// Energy and conserved y-momentum of a stationary mode.
struct QuantumNumbers {
  double E = 0.0;
  double k = 0.0;
};

enum class Region { Outer, Inner };
enum class Character { Propagating, Evanescent };

std::string_view to_string(Character c);

/// |p_x| in one region together with its branch. A propagating value v
/// means p_x = +-v; an evanescent one means a decay rate v.
struct TransverseMomentum {
  double value = 0.0;
  Character character = Character::Propagating;
  Region region = Region::Outer;

  bool propagating() const { return character == Character::Propagating; }
  bool evanescent() const { return character == Character::Evanescent; }
};

/// Kinetic energy and kinetic y-momentum seen by the particle in a region.
/// Outside: (E, k). Inside a magnetic well: (E, k + a0). Inside an
/// electric well: (E + v0, k).
struct RegionKinematics {
  double energy = 0.0;
  double qy = 0.0;
};

RegionKinematics outer_kinematics(const QuantumNumbers& qn);
RegionKinematics inner_kinematics(const QuantumNumbers& qn, const WellConfig& well);

/// Branch selection for E^2 against q_y^2. |E| == |q_y| is reported as
/// Propagating with value 0.
TransverseMomentum transverse_momentum(const RegionKinematics& kin, Region region);

TransverseMomentum outer_momentum(const QuantumNumbers& qn);
TransverseMomentum inner_momentum(const QuantumNumbers& qn, const WellConfig& well);

}  // namespace dwg
