#pragma once

// Discrete symmetries of H = sigma_x (-i d/dx) + sigma_y (k - A(x)) + V(x)
// for wells that are even in x.
//
//   ReflectX            sigma_y R_x                      (E, k, well) -> (E, k, well)
//   ChiralMagnetic      sigma_x R_x,  V = 0              (E, k, a0)   -> (-E, k, a0)
//   SignFlipMagnetic    sigma_x,      V = 0              (E, k, a0)   -> (E, -k, -a0)
//   ChargeConjElectric  sigma_z,      A = 0              (E, k, v0)   -> (-E, k, -v0)
//   KFlipElectric       sigma_x,      A = 0              (E, k, v0)   -> (E, -k, v0)
//
// R_x psi(x) = psi(-x). Every statement holds up to a global phase.

#include <string_view>
#include <vector>

#include "dwg/model.hpp"
#include "dwg/qbound.hpp"

namespace dwg::symmetry {

enum class SymmetryOp { ReflectX, ChiralMagnetic, SignFlipMagnetic, ChargeConjElectric, KFlipElectric };

inline constexpr SymmetryOp kAllOps[] = {SymmetryOp::ReflectX, SymmetryOp::ChiralMagnetic, SymmetryOp::SignFlipMagnetic,
                                         SymmetryOp::ChargeConjElectric, SymmetryOp::KFlipElectric};

std::string_view to_string(SymmetryOp op);

bool includes_reflection(SymmetryOp op);

/// Whether op is a symmetry for this kind of well (ReflectX applies to both).
bool applies_to(SymmetryOp op, WellKind kind);

/// Apply the transform to a sampled spinor. Reflection ops require the grid
/// to be symmetric about x = 0 (x_i == -x_{n-1-i}); throws std::invalid_argument otherwise.
std::vector<SpinorSample> apply(SymmetryOp op, const std::vector<SpinorSample>& samples);

struct MappedParameters {
  double E = 0.0;
  double k = 0.0;
  WellConfig well;
};

/// Image of (E, k, well) under op. Throws std::invalid_argument if op does
/// not apply to the well kind.
MappedParameters map_parameters(SymmetryOp op, double E, double k, const WellConfig& well);

struct SpectrumImage {
  std::vector<double> spectrum;  // sorted
  double k = 0.0;
  WellConfig well;
};

/// Spectrum predicted at the image parameters.
SpectrumImage spectrum_map(SymmetryOp op, const std::vector<double>& spectrum, double k, const WellConfig& well);

/// |<a, b>| / (|a| |b|) with discrete sums over samples.
double projective_overlap(const std::vector<SpinorSample>& a, const std::vector<SpinorSample>& b);

struct DiracResidual {
  double max_residual = 0.0;
  std::size_t points_checked = 0;
};

/// Central-difference residual of (H - E) psi on a sampled spinor. Points
/// within two grid spacings of x = +-h are skipped because psi' jumps there.
DiracResidual dirac_residual(const std::vector<SpinorSample>& samples, double E, double k, const WellConfig& well);

}  // namespace dwg::symmetry
