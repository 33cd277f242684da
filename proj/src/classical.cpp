#include "dwg/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dwg/errors.hpp"

namespace dwg::classical {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Scattering: return "scattering";
    case Regime::Bound: return "bound";
    case Regime::TotalReflection: return "total_reflection";
    case Regime::Forbidden: return "forbidden";
  }
  return "unknown";
}

std::string_view to_string(RayRegion r) {
  switch (r) {
    case RayRegion::I: return "I";
    case RayRegion::II: return "II";
    case RayRegion::III: return "III";
  }
  return "?";
}

std::string_view to_string(RayTermination t) {
  switch (t) {
    case RayTermination::ExitedRight: return "exited_right";
    case RayTermination::ExitedLeft: return "exited_left";
    case RayTermination::TruncatedAtLength: return "truncated";
  }
  return "?";
}

ClassicalRegime classify_electric(const QuantumNumbers& qn, double v0) {
  const double e = std::abs(qn.E);
  const double k = std::abs(qn.k);
  const double inner = std::abs(qn.E + v0);
  if (e == k) throw BoundaryCase("electric: |E| == |k|");
  if (e > k) return {Regime::Scattering, std::nullopt};
  if (inner == k) throw BoundaryCase("electric: |E + v0| == |k|");
  if (inner > k) return {Regime::Bound, std::nullopt};
  return {Regime::Forbidden, std::nullopt};
}

ClassicalRegime classify_magnetic(const QuantumNumbers& qn, double a0) {
  const double e = std::abs(qn.E);
  const double k = std::abs(qn.k);
  const double qy = qn.k + a0;
  const double inner = std::abs(qy);
  if (e == k) throw BoundaryCase("magnetic: |E| == |k|");
  if (e == inner) throw BoundaryCase("magnetic: |E| == |k + a0|");
  if (e > k && e > inner) return {Regime::Scattering, std::nullopt};
  if (e > k) return {Regime::TotalReflection, std::nullopt};
  if (e > inner) {
    std::optional<BoundDirection> dir;
    if (qy < 0.0) dir = BoundDirection::DownwardBound;
    if (qy > 0.0) dir = BoundDirection::UpwardBound;
    return {Regime::Bound, dir};
  }
  return {Regime::Forbidden, std::nullopt};
}

ClassicalRegime classify(const QuantumNumbers& qn, const WellConfig& well) {
  return well.kind == WellKind::Electric ? classify_electric(qn, well.strength)
                                         : classify_magnetic(qn, well.strength);
}

namespace {

void require_incident(const QuantumNumbers& qn) {
  if (!(qn.E > 0.0)) throw RegimeError("refraction angles require E > 0");
  if (std::abs(qn.E) < std::abs(qn.k)) throw RegimeError("refraction angles require |E| >= |k|");
}

}  // namespace

AnglePair electric_angles(const QuantumNumbers& qn, double v0) {
  require_incident(qn);
  const double inner = qn.E + v0;
  if (std::abs(qn.k) > std::abs(inner) || inner == 0.0)
    throw NoRefraction("electric: |k| > |E + v0|, the particle cannot enter the well");
  return {std::asin(qn.k / qn.E), std::asin(qn.k / inner)};
}

AnglePair magnetic_angles(const QuantumNumbers& qn, double a0) {
  require_incident(qn);
  const double qy = qn.k + a0;
  if (std::abs(qy) > qn.E) throw NoRefraction("magnetic: |k + a0| > E, total reflection");
  return {std::asin(qn.k / qn.E), std::asin(qy / qn.E)};
}

MaxAngle max_angle(double k, double strength, WellKind kind) {
  const double denom = k + strength;
  if (denom == 0.0) throw RegimeError("max_angle: k + strength vanishes");
  const double s = k / denom;
  if (std::abs(s) > 1.0)
    throw NoLimit(std::string(to_string(kind)) + ": |k/(k + strength)| > 1, every angle is allowed");
  return {s, std::asin(s)};
}

RayRegion region_of(double x, double half_width) {
  if (x < -half_width) return RayRegion::I;
  if (x > half_width) return RayRegion::III;
  return RayRegion::II;
}

namespace {

RegionKinematics kinematics_in(RayRegion r, const QuantumNumbers& qn, const WellConfig& well) {
  return r == RayRegion::II ? inner_kinematics(qn, well) : outer_kinematics(qn);
}

bool admits_motion(const RegionKinematics& kin) {
  const auto p = transverse_momentum(kin, Region::Outer);
  return p.propagating() && p.value > 0.0;
}

}  // namespace

RayPath trace_ray(const QuantumNumbers& qn, const WellConfig& well, Point start, double max_path_length) {
  well.validate();
  if (!(max_path_length > 0.0)) throw std::invalid_argument("trace_ray: max_path_length must be positive");
  if (classify(qn, well).tag == Regime::Forbidden)
    throw ForbiddenRegime("trace_ray: no classical motion for these parameters");

  const double h = well.half_width;
  RayRegion region = region_of(start.x, h);
  if (!admits_motion(kinematics_in(region, qn, well)))
    throw ForbiddenRegime("trace_ray: start point lies in a classically forbidden region");

  // x-velocity sign; particles start heading into the well.
  double sx = region == RayRegion::III ? -1.0 : 1.0;
  double remaining = max_path_length;
  Point pos = start;

  RayPath path;
  path.vertices.push_back(pos);

  for (;;) {
    const RegionKinematics kin = kinematics_in(region, qn, well);
    const double speed_norm = std::abs(kin.energy);  // |p| for a massless particle
    if (speed_norm == 0.0) throw RegimeError("trace_ray: zero velocity");
    const double px = transverse_momentum(kin, Region::Outer).value;
    const double vx = sx * px / speed_norm;
    const double vy = std::copysign(1.0, kin.energy) * kin.qy / speed_norm;

    const bool leaving = (region == RayRegion::I && sx < 0.0) || (region == RayRegion::III && sx > 0.0);
    if (leaving) {
      const double len = std::min(remaining, 2.0 * h);
      path.vertices.push_back({pos.x + vx * len, pos.y + vy * len});
      path.segment_regions.push_back(region);
      path.terminated = sx > 0.0 ? RayTermination::ExitedRight : RayTermination::ExitedLeft;
      return path;
    }

    double wall = 0.0;
    if (region == RayRegion::II) wall = sx * h;
    else if (region == RayRegion::I) wall = -h;
    else wall = h;

    const double dist = vx != 0.0 ? (wall - pos.x) / vx : remaining;
    if (dist >= remaining) {
      path.vertices.push_back({pos.x + vx * remaining, pos.y + vy * remaining});
      path.segment_regions.push_back(region);
      path.terminated = RayTermination::TruncatedAtLength;
      return path;
    }

    pos = {wall, pos.y + vy * dist};
    remaining -= dist;
    path.vertices.push_back(pos);
    path.segment_regions.push_back(region);

    RayRegion next = RayRegion::II;
    if (region == RayRegion::II) next = sx > 0.0 ? RayRegion::III : RayRegion::I;
    if (admits_motion(kinematics_in(next, qn, well))) region = next;
    else sx = -sx;  // turning point: specular bounce
  }
}

std::vector<std::vector<bool>> region_mask(const MaskSpec& spec, const std::vector<double>& E_grid,
                                           const std::vector<double>& other_grid) {
  auto check = [](const std::vector<double>& g, const char* name) {
    if (g.empty()) throw std::invalid_argument(std::string("region_mask: empty ") + name);
    for (std::size_t i = 1; i < g.size(); ++i)
      if (!(g[i] > g[i - 1])) throw std::invalid_argument(std::string("region_mask: ") + name + " not increasing");
  };
  check(E_grid, "E grid");
  check(other_grid, "parameter grid");

  std::vector<std::vector<bool>> mask(E_grid.size(), std::vector<bool>(other_grid.size(), false));
  for (std::size_t i = 0; i < E_grid.size(); ++i) {
    for (std::size_t j = 0; j < other_grid.size(); ++j) {
      const bool k_fixed = spec.fixed == FixedParameter::K;
      const double k = k_fixed ? spec.fixed_value : other_grid[j];
      const double strength = k_fixed ? other_grid[j] : spec.fixed_value;
      try {
        const WellConfig well{spec.kind, strength, spec.half_width};
        mask[i][j] = classify({E_grid[i], k}, well).tag == Regime::Bound;
      } catch (const BoundaryCase&) {
        mask[i][j] = false;
      }
    }
  }
  return mask;
}

}  // namespace dwg::classical
