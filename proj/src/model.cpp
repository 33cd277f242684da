#include "dwg/model.hpp"

#include <cmath>
#include <stdexcept>

namespace dwg {

std::string_view to_string(WellKind kind) {
  return kind == WellKind::Electric ? "electric" : "magnetic";
}

std::string_view to_string(Character c) {
  return c == Character::Propagating ? "propagating" : "evanescent";
}

WellConfig WellConfig::electric(double v0, double half_width) {
  WellConfig w{WellKind::Electric, v0, half_width};
  w.validate();
  return w;
}

WellConfig WellConfig::magnetic(double a0, double half_width) {
  WellConfig w{WellKind::Magnetic, a0, half_width};
  w.validate();
  return w;
}

void WellConfig::validate() const {
  if (!std::isfinite(strength)) throw std::invalid_argument("well strength must be finite");
  if (!std::isfinite(half_width) || half_width <= 0.0)
    throw std::invalid_argument("well half_width must be positive and finite");
}

RegionKinematics outer_kinematics(const QuantumNumbers& qn) { return {qn.E, qn.k}; }

RegionKinematics inner_kinematics(const QuantumNumbers& qn, const WellConfig& well) {
  if (well.kind == WellKind::Magnetic) return {qn.E, qn.k + well.strength};
  return {qn.E + well.strength, qn.k};
}

TransverseMomentum transverse_momentum(const RegionKinematics& kin, Region region) {
  // (|E| - |q|)(|E| + |q|) is exactly zero on the boundary, E^2 - q^2 may not be.
  const double e = std::abs(kin.energy);
  const double q = std::abs(kin.qy);
  const double diff = (e - q) * (e + q);
  if (diff >= 0.0) return {std::sqrt(diff), Character::Propagating, region};
  return {std::sqrt(-diff), Character::Evanescent, region};
}

TransverseMomentum outer_momentum(const QuantumNumbers& qn) {
  return transverse_momentum(outer_kinematics(qn), Region::Outer);
}

TransverseMomentum inner_momentum(const QuantumNumbers& qn, const WellConfig& well) {
  return transverse_momentum(inner_kinematics(qn, well), Region::Inner);
}

}  // namespace dwg
