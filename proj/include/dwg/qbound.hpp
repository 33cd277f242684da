#pragma once

// Bound states of square electric and magnetic waveguides.
//
// Outside the well a bound state decays as exp(-q |x|) with q = sqrt(k^2 - E^2),
// so |E| < |k|. Inside it is oscillatory (standard state) or exponential (edge
// state, localized at the walls). Eigenvalues are the zeros of the 4x4
// matching determinant
//
//   psi_I = A e^{+q x} spinor,  psi_II = B w_+ + C w_-,  psi_III = D e^{-q x} spinor.

#include <optional>
#include <vector>

#include "dwg/model.hpp"
#include "dwg/qscatter.hpp"

namespace dwg {

enum class StateCharacter { Standard, Edge };

std::string_view to_string(StateCharacter c);

struct BoundState {
  double energy = 0.0;
  double k = 0.0;
  WellConfig well;
  StateCharacter character = StateCharacter::Standard;
  double exterior_decay = 0.0;  // q = sqrt(k^2 - E^2)
  TransverseMomentum interior;
};

/// The 4x4 matching matrix for unknowns (A, B, C, D). Requires 0 < |E| < |k|.
Eigen::Matrix4cd bound_matching_matrix(double E, double k, const WellConfig& well);

/// Real-valued matching determinant, scaled by the product of column norms so
/// that it lies in [-1, 1]. The raw determinant is purely imaginary when the
/// interior is propagating and real when it is evanescent; it is rotated onto
/// the real axis accordingly, so it changes sign at simple eigenvalues.
///
/// Throws RegimeError unless 0 < |E| < |k|, BranchPoint when the interior
/// momentum vanishes, and RegimeError when the interior kinetic energy does.
double bound_determinant(double E, double k, const WellConfig& well);

struct EnergyWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Points where bound_determinant is undefined or changes its analytic form:
/// E = 0, the interior branch points and (electric) E = -v0. Sorted, restricted
/// to the open band (-|k|, |k|).
std::vector<double> bound_breakpoints(double k, const WellConfig& well);

/// Default number of scan points per sub-window.
inline constexpr int kDefaultScanPoints = 2000;

/// Scan the determinant on `grid_points` cell centres per sub-window,
/// bracket sign changes and bisect them to below 1e-12. The window defaults
/// to the whole band (-|k|, |k|) and is split at bound_breakpoints. Sorted by energy.
std::vector<BoundState> find_bound_states(double k, const WellConfig& well,
                                          std::optional<EnergyWindow> window = std::nullopt,
                                          int grid_points = kDefaultScanPoints);

enum class SweepParameter { K, Strength };

std::string_view to_string(SweepParameter p);

struct SpectralSample {
  double parameter = 0.0;
  double energy = 0.0;
  StateCharacter character = StateCharacter::Standard;
};

struct SpectralCurve {
  SweepParameter sweep = SweepParameter::K;
  int branch_id = 0;
  StateCharacter character = StateCharacter::Standard;  // majority over samples
  std::vector<SpectralSample> samples;
};

struct SweepOptions {
  double half_width = 1.0;
  int grid_points = kDefaultScanPoints;
  unsigned jobs = 1;
};

/// Bound energies over a monotone parameter grid, linked into branches by
/// nearest-energy continuation. With sweep = K the strength is fixed at
/// `fixed_value`; with sweep = Strength, k is.
std::vector<SpectralCurve> spectral_curves(SweepParameter sweep, double fixed_value,
                                           const std::vector<double>& sweep_grid, WellKind kind,
                                           const SweepOptions& opts = {});

/// Link per-slice root lists into branches. Exposed for testing.
std::vector<SpectralCurve> link_branches(SweepParameter sweep, const std::vector<double>& grid,
                                         const std::vector<std::vector<BoundState>>& slices);

struct ResonanceBranch {
  int n = 0;
  int sign = +1;
  std::vector<SpectralSample> samples;  // (k, E_n(k)) on a contiguous run of the k grid
};

struct ResonanceBoundDataset {
  WellKind kind = WellKind::Electric;
  double strength = 0.0;
  std::vector<double> k_grid;
  std::vector<SpectralCurve> bound;
  std::vector<ResonanceBranch> resonances;
};

/// Bound spectral curves (|E| < |k|) together with the T = 1 resonance loci
/// (|E| > |k|) over the same k grid.
ResonanceBoundDataset join_resonance_bound_plot_data(WellKind kind, double strength, const std::vector<double>& k_grid,
                                                     int n_max, const SweepOptions& opts = {});

struct SpinorSample {
  double x = 0.0;
  cplx psi1;
  cplx psi2;
};

/// Matching coefficients (A, B, C, D) from the null vector of the matching matrix.
Eigen::Vector4cd bound_coefficients(const BoundState& state);

/// Evaluate the bound spinor on x_grid (sorted, at least two points),
/// normalized so the trapezoid integral of |psi1|^2 + |psi2|^2 is 1 and
/// psi1(-h) is real and positive. With that phase psi1 is real and psi2
/// purely imaginary everywhere.
std::vector<SpinorSample> sample_wavefunction(const BoundState& state, const std::vector<double>& x_grid);

}  // namespace dwg
