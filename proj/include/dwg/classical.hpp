#pragma once

// Classical massless charged particles in square waveguides.
//
// Inside each region the vector potential is constant, so the force vanishes
// and trajectories are straight lines; the walls refract or reflect them.

#include <optional>
#include <string_view>
#include <vector>

#include "dwg/model.hpp"

namespace dwg::classical {

enum class Regime { Scattering, Bound, TotalReflection, Forbidden };

/// Sign of the kinetic y-momentum k + a0 inside a magnetic well during bound motion.
enum class BoundDirection { DownwardBound, UpwardBound };

struct ClassicalRegime {
  Regime tag = Regime::Forbidden;
  std::optional<BoundDirection> detail;

  bool operator==(const ClassicalRegime&) const = default;
};

std::string_view to_string(Regime r);

/// Scattering if |E| > |k|; Bound if |E| < |k| < |E + v0|; otherwise Forbidden.
/// Throws BoundaryCase when an equality decides the outcome.
ClassicalRegime classify_electric(const QuantumNumbers& qn, double v0);

/// Scattering if |E| exceeds both |k| and |k + a0|, TotalReflection if
/// |k| < |E| < |k + a0|, Bound if |k + a0| < |E| < |k|, Forbidden otherwise.
ClassicalRegime classify_magnetic(const QuantumNumbers& qn, double a0);

ClassicalRegime classify(const QuantumNumbers& qn, const WellConfig& well);

/// Incident angle alpha (region I) and refracted angle alpha' (region II),
/// both measured from the wall normal and signed like the y-momentum.
struct AnglePair {
  double alpha = 0.0;
  double alpha_prime = 0.0;
};

/// Snell-like refraction E sin(alpha) = (E + v0) sin(alpha').
/// Requires E > 0 and |E| >= |k|; throws NoRefraction if |k| > |E + v0|.
AnglePair electric_angles(const QuantumNumbers& qn, double v0);

/// sin(alpha) = k/E, sin(alpha') = (k + a0)/E. The two angles may have
/// opposite signs. Throws NoRefraction if |k + a0| > E.
AnglePair magnetic_angles(const QuantumNumbers& qn, double a0);

struct MaxAngle {
  double sine = 0.0;
  double radians = 0.0;
};

/// Electric: largest refraction angle inside the well, sin = k/(k + v0).
/// Magnetic: largest incident angle that still crosses, sin = k/(k + a0).
/// Throws NoLimit when the ratio exceeds 1 in modulus.
MaxAngle max_angle(double k, double strength, WellKind kind);

enum class RayRegion { I, II, III };
enum class RayTermination { ExitedRight, ExitedLeft, TruncatedAtLength };

std::string_view to_string(RayRegion r);
std::string_view to_string(RayTermination t);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct RayPath {
  std::vector<Point> vertices;
  std::vector<RayRegion> segment_regions;  // one per segment
  RayTermination terminated = RayTermination::TruncatedAtLength;
};

RayRegion region_of(double x, double half_width);

/// Event-driven ray tracing. The particle starts at `start` moving towards
/// +x (or -x when it starts in region III). At each wall it refracts into the
/// next region, or reflects specularly when that region is classically
/// forbidden. The final segment after leaving the well has length 2h (or less
/// if the path budget runs out).
RayPath trace_ray(const QuantumNumbers& qn, const WellConfig& well, Point start, double max_path_length);

/// Which parameter is held fixed in a region diagram; the other one is swept.
enum class FixedParameter { Strength, K };

struct MaskSpec {
  WellKind kind = WellKind::Electric;
  FixedParameter fixed = FixedParameter::Strength;
  double fixed_value = 0.0;
  double half_width = 1.0;
};

/// mask[i][j] is true when (E_grid[i], other_grid[j]) is classically bound.
/// `other_grid` holds k values when the strength is fixed and strengths when
/// k is fixed. Separatrix points count as not bound.
std::vector<std::vector<bool>> region_mask(const MaskSpec& spec, const std::vector<double>& E_grid,
                                           const std::vector<double>& other_grid);

}  // namespace dwg::classical
