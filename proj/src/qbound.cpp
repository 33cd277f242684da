#include "dwg/qbound.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "dwg/errors.hpp"
#include "dwg/parallel.hpp"

namespace dwg {

namespace {

constexpr cplx I{0.0, 1.0};

void require_bound(double E, double k) {
  if (E == 0.0) throw RegimeError("bound determinant undefined at E = 0");
  if (!(std::abs(E) < std::abs(k))) throw RegimeError("bound states require |E| < |k|");
}

StateCharacter character_of(const TransverseMomentum& interior) {
  return interior.evanescent() ? StateCharacter::Edge : StateCharacter::Standard;
}

double exterior_decay(double E, double k) { return std::sqrt((std::abs(k) - std::abs(E)) * (std::abs(k) + std::abs(E))); }

}  // namespace

std::string_view to_string(StateCharacter c) { return c == StateCharacter::Standard ? "standard" : "edge"; }

std::string_view to_string(SweepParameter p) { return p == SweepParameter::K ? "k" : "strength"; }

Eigen::Matrix4cd bound_matching_matrix(double E, double k, const WellConfig& well) {
  well.validate();
  require_bound(E, k);
  const double h = well.half_width;
  const QuantumNumbers qn{E, k};
  const double q = exterior_decay(E, k);

  const RegionKinematics out = outer_kinematics(qn);
  const BasisSpinor left = basis_spinor(out, q);    // decays as x -> -inf
  const BasisSpinor right = basis_spinor(out, -q);  // decays as x -> +inf
  const auto [w_plus, w_minus] = region_basis(inner_kinematics(qn, well), inner_momentum(qn, well));

  Eigen::Matrix4cd M = Eigen::Matrix4cd::Zero();
  M.block<2, 1>(0, 0) = left.at(-h);
  M.block<2, 1>(0, 1) = -w_plus.at(-h);
  M.block<2, 1>(0, 2) = -w_minus.at(-h);
  M.block<2, 1>(2, 1) = w_plus.at(h);
  M.block<2, 1>(2, 2) = w_minus.at(h);
  M.block<2, 1>(2, 3) = -right.at(h);
  return M;
}

double bound_determinant(double E, double k, const WellConfig& well) {
  const Eigen::Matrix4cd M = bound_matching_matrix(E, k, well);
  const bool propagating = inner_momentum({E, k}, well).propagating();
  const cplx det = M.determinant() * (propagating ? -I : cplx(1.0, 0.0));
  double scale = 1.0;
  for (int c = 0; c < 4; ++c) scale *= M.col(c).norm();
  return det.real() / scale;
}

std::vector<double> bound_breakpoints(double k, const WellConfig& well) {
  const double band = std::abs(k);
  std::vector<double> pts{0.0};
  if (well.kind == WellKind::Magnetic) {
    const double qy = std::abs(k + well.strength);
    pts.push_back(qy);
    pts.push_back(-qy);
  } else {
    pts.push_back(-well.strength);
    pts.push_back(-well.strength + band);
    pts.push_back(-well.strength - band);
  }
  std::vector<double> inside;
  for (double p : pts)
    if (p > -band && p < band) inside.push_back(p);
  std::sort(inside.begin(), inside.end());
  inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
  return inside;
}

namespace {

constexpr double kRootResidual = 1e-6;

double bisect(double lo, double hi, double f_lo, double k, const WellConfig& well) {
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = bound_determinant(mid, k, well);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Cell centres of [lo, hi], plus points approaching each end geometrically so
// that roots closer to a sub-window edge than half a cell are still bracketed.
std::vector<double> scan_points(double lo, double hi, int grid_points) {
  const double step = (hi - lo) / grid_points;
  const double floor = 1e-13 * std::max({1.0, std::abs(lo), std::abs(hi)});
  std::vector<double> xs;
  for (double d = 0.25 * step; d > floor; d *= 0.25) {
    xs.push_back(lo + d);
    xs.push_back(hi - d);
  }
  for (int i = 0; i < grid_points; ++i) xs.push_back(lo + (i + 0.5) * step);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

BoundState make_state(double E, double k, const WellConfig& well) {
  BoundState s;
  s.energy = E;
  s.k = k;
  s.well = well;
  s.interior = inner_momentum({E, k}, well);
  s.character = character_of(s.interior);
  s.exterior_decay = exterior_decay(E, k);
  return s;
}

}  // namespace

std::vector<BoundState> find_bound_states(double k, const WellConfig& well, std::optional<EnergyWindow> window,
                                          int grid_points) {
  well.validate();
  if (grid_points < 2) throw std::invalid_argument("find_bound_states: grid_points must be >= 2");
  const double band = std::abs(k);
  if (band == 0.0) return {};
  EnergyWindow w = window.value_or(EnergyWindow{-band, band});
  if (!(w.lo < w.hi) || w.lo < -band || w.hi > band)
    throw RegimeError("find_bound_states: window must lie inside the band (-|k|, |k|)");

  // Breakpoints closer than merge_tol to a neighbour would leave empty
  // sub-windows whose ends are branch points, so they are merged away.
  const double merge_tol = 1e-9 * std::max(1.0, band);
  std::vector<double> edges{w.lo};
  for (double p : bound_breakpoints(k, well))
    if (p - edges.back() > merge_tol && w.hi - p > merge_tol) edges.push_back(p);
  edges.push_back(w.hi);

  std::vector<BoundState> states;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const std::vector<double> xs = scan_points(edges[s], edges[s + 1], grid_points);
    double x_prev = xs.front();
    double f_prev = bound_determinant(x_prev, k, well);
    if (f_prev == 0.0) states.push_back(make_state(x_prev, k, well));
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const double x = xs[i];
      const double f = bound_determinant(x, k, well);
      if (f == 0.0) {
        states.push_back(make_state(x, k, well));
      } else if (f_prev != 0.0 && (f < 0.0) != (f_prev < 0.0)) {
        const double root = bisect(x_prev, x, f_prev, k, well);
        // A sign flip without a zero is a jump at a merged breakpoint.
        if (std::abs(bound_determinant(root, k, well)) < kRootResidual) states.push_back(make_state(root, k, well));
      }
      x_prev = x;
      f_prev = f;
    }
  }
  std::sort(states.begin(), states.end(), [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
  return states;
}

std::vector<SpectralCurve> link_branches(SweepParameter sweep, const std::vector<double>& grid,
                                         const std::vector<std::vector<BoundState>>& slices) {
  struct Open {
    std::size_t curve;
    std::size_t last_slice;
  };
  std::vector<SpectralCurve> curves;
  std::vector<Open> open;

  for (std::size_t s = 0; s < slices.size(); ++s) {
    const auto& roots = slices[s];
    std::vector<bool> taken(roots.size(), false);
    std::vector<Open> still_open;

    if (s > 0) {
      const double dp = std::abs(grid[s] - grid[s - 1]);
      // Candidate (|dE|, branch, root) pairs under each branch's threshold.
      std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
      for (std::size_t b = 0; b < open.size(); ++b) {
        if (open[b].last_slice != s - 1) continue;
        const auto& smp = curves[open[b].curve].samples;
        double slope = 1.0;
        if (smp.size() >= 2) {
          const auto& p1 = smp[smp.size() - 1];
          const auto& p0 = smp[smp.size() - 2];
          if (p1.parameter != p0.parameter)
            slope = std::max(slope, std::abs((p1.energy - p0.energy) / (p1.parameter - p0.parameter)));
        }
        const double threshold = 5.0 * dp * slope;
        for (std::size_t j = 0; j < roots.size(); ++j) {
          const double de = std::abs(roots[j].energy - smp.back().energy);
          if (de < threshold) cand.emplace_back(de, b, j);
        }
      }
      std::sort(cand.begin(), cand.end());
      std::vector<bool> extended(open.size(), false);
      for (const auto& [de, b, j] : cand) {
        if (extended[b] || taken[j]) continue;
        extended[b] = true;
        taken[j] = true;
        curves[open[b].curve].samples.push_back({grid[s], roots[j].energy, roots[j].character});
        still_open.push_back({open[b].curve, s});
      }
    }

    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (taken[j]) continue;
      SpectralCurve c;
      c.sweep = sweep;
      c.branch_id = static_cast<int>(curves.size());
      c.samples.push_back({grid[s], roots[j].energy, roots[j].character});
      curves.push_back(std::move(c));
      still_open.push_back({curves.size() - 1, s});
    }
    open = std::move(still_open);
  }

  for (auto& c : curves) {
    std::size_t edge = 0;
    for (const auto& smp : c.samples) edge += smp.character == StateCharacter::Edge;
    c.character = 2 * edge > c.samples.size() ? StateCharacter::Edge : StateCharacter::Standard;
  }
  return curves;
}

std::vector<SpectralCurve> spectral_curves(SweepParameter sweep, double fixed_value, const std::vector<double>& sweep_grid,
                                           WellKind kind, const SweepOptions& opts) {
  for (std::size_t i = 1; i < sweep_grid.size(); ++i)
    if (!(sweep_grid[i] > sweep_grid[i - 1]))
      throw std::invalid_argument("spectral_curves: sweep grid must be strictly increasing");

  std::vector<std::vector<BoundState>> slices(sweep_grid.size());
  parallel_for(sweep_grid.size(), opts.jobs, [&](std::size_t i) {
    const double k = sweep == SweepParameter::K ? sweep_grid[i] : fixed_value;
    const double strength = sweep == SweepParameter::K ? fixed_value : sweep_grid[i];
    const WellConfig well{kind, strength, opts.half_width};
    slices[i] = find_bound_states(k, well, std::nullopt, opts.grid_points);
  });
  return link_branches(sweep, sweep_grid, slices);
}

ResonanceBoundDataset join_resonance_bound_plot_data(WellKind kind, double strength, const std::vector<double>& k_grid,
                                                     int n_max, const SweepOptions& opts) {
  ResonanceBoundDataset data;
  data.kind = kind;
  data.strength = strength;
  data.k_grid = k_grid;
  data.bound = spectral_curves(SweepParameter::K, strength, k_grid, kind, opts);

  const WellConfig well{kind, strength, opts.half_width};
  // (n, sign) -> index of the branch extended on the previous k slice
  std::map<std::pair<int, int>, std::size_t> active;
  std::vector<ResonanceBranch> branches;
  for (double k : k_grid) {
    std::map<std::pair<int, int>, std::size_t> next;
    for (const auto& lvl : resonance_levels(k, well, n_max)) {
      const auto key = std::make_pair(lvl.n, lvl.sign);
      std::size_t idx = 0;
      if (auto it = active.find(key); it != active.end()) {
        idx = it->second;
      } else {
        branches.push_back({lvl.n, lvl.sign, {}});
        idx = branches.size() - 1;
      }
      branches[idx].samples.push_back({k, lvl.E, StateCharacter::Standard});
      next[key] = idx;
    }
    active = std::move(next);
  }
  data.resonances = std::move(branches);
  return data;
}

Eigen::Vector4cd bound_coefficients(const BoundState& state) {
  const Eigen::Matrix4cd M = bound_matching_matrix(state.energy, state.k, state.well);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(M, Eigen::ComputeFullV);
  Eigen::Vector4cd v = svd.matrixV().col(3);
  // Fix the phase so that A (hence psi1(-h)) is real and positive.
  if (std::abs(v(0)) > 0.0) v *= std::conj(v(0)) / std::abs(v(0));
  return v;
}

std::vector<SpinorSample> sample_wavefunction(const BoundState& state, const std::vector<double>& x_grid) {
  if (x_grid.size() < 2) throw std::invalid_argument("sample_wavefunction: x grid needs at least two points");
  for (std::size_t i = 1; i < x_grid.size(); ++i)
    if (x_grid[i] < x_grid[i - 1]) throw std::invalid_argument("sample_wavefunction: x grid must be sorted");

  const Eigen::Vector4cd c = bound_coefficients(state);
  const QuantumNumbers qn{state.energy, state.k};
  const double h = state.well.half_width;
  const double q = state.exterior_decay;
  const RegionKinematics out = outer_kinematics(qn);
  const BasisSpinor left = basis_spinor(out, q);
  const BasisSpinor right = basis_spinor(out, -q);
  const auto [w_plus, w_minus] = region_basis(inner_kinematics(qn, state.well), inner_momentum(qn, state.well));

  std::vector<SpinorSample> out_samples;
  out_samples.reserve(x_grid.size());
  for (double x : x_grid) {
    Spinor psi;
    if (x < -h) psi = c(0) * left.at(x);
    else if (x > h) psi = c(3) * right.at(x);
    else psi = c(1) * w_plus.at(x) + c(2) * w_minus.at(x);
    out_samples.push_back({x, psi(0), psi(1)});
  }

  double norm = 0.0;
  for (std::size_t i = 1; i < out_samples.size(); ++i) {
    const auto& a = out_samples[i - 1];
    const auto& b = out_samples[i];
    const double da = std::norm(a.psi1) + std::norm(a.psi2);
    const double db = std::norm(b.psi1) + std::norm(b.psi2);
    norm += 0.5 * (b.x - a.x) * (da + db);
  }
  if (!(norm > 0.0)) throw std::invalid_argument("sample_wavefunction: grid carries no weight");
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& s : out_samples) {
    s.psi1 *= scale;
    s.psi2 *= scale;
  }
  return out_samples;
}

}  // namespace dwg
