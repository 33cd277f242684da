#include "dwg/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dwg::symmetry {

namespace {

constexpr cplx I{0.0, 1.0};

struct Pair {
  cplx a, b;
};

Pair pauli(SymmetryOp op, cplx p1, cplx p2) {
  switch (op) {
    case SymmetryOp::ReflectX: return {-I * p2, I * p1};  // sigma_y
    case SymmetryOp::ChiralMagnetic:
    case SymmetryOp::SignFlipMagnetic:
    case SymmetryOp::KFlipElectric: return {p2, p1};  // sigma_x
    case SymmetryOp::ChargeConjElectric: return {p1, -p2};  // sigma_z
  }
  return {p1, p2};
}

}  // namespace

std::string_view to_string(SymmetryOp op) {
  switch (op) {
    case SymmetryOp::ReflectX: return "reflect_x";
    case SymmetryOp::ChiralMagnetic: return "chiral_magnetic";
    case SymmetryOp::SignFlipMagnetic: return "sign_flip_magnetic";
    case SymmetryOp::ChargeConjElectric: return "charge_conj_electric";
    case SymmetryOp::KFlipElectric: return "k_flip_electric";
  }
  return "?";
}

bool includes_reflection(SymmetryOp op) { return op == SymmetryOp::ReflectX || op == SymmetryOp::ChiralMagnetic; }

bool applies_to(SymmetryOp op, WellKind kind) {
  switch (op) {
    case SymmetryOp::ReflectX: return true;
    case SymmetryOp::ChiralMagnetic:
    case SymmetryOp::SignFlipMagnetic: return kind == WellKind::Magnetic;
    case SymmetryOp::ChargeConjElectric:
    case SymmetryOp::KFlipElectric: return kind == WellKind::Electric;
  }
  return false;
}

std::vector<SpinorSample> apply(SymmetryOp op, const std::vector<SpinorSample>& samples) {
  const std::size_t n = samples.size();
  std::vector<SpinorSample> out(n);
  if (includes_reflection(op)) {
    double span = 0.0;
    for (const auto& s : samples) span = std::max(span, std::abs(s.x));
    const double tol = 1e-9 * std::max(span, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& mirror = samples[n - 1 - i];
      if (std::abs(samples[i].x + mirror.x) > tol)
        throw std::invalid_argument("symmetry::apply: grid is not symmetric about x = 0");
      const Pair p = pauli(op, mirror.psi1, mirror.psi2);
      out[i] = {samples[i].x, p.a, p.b};
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Pair p = pauli(op, samples[i].psi1, samples[i].psi2);
    out[i] = {samples[i].x, p.a, p.b};
  }
  return out;
}

MappedParameters map_parameters(SymmetryOp op, double E, double k, const WellConfig& well) {
  if (!applies_to(op, well.kind))
    throw std::invalid_argument(std::string("symmetry ") + std::string(to_string(op)) + " does not apply to a " +
                                std::string(dwg::to_string(well.kind)) + " well");
  MappedParameters m{E, k, well};
  switch (op) {
    case SymmetryOp::ReflectX: break;
    case SymmetryOp::ChiralMagnetic: m.E = -E; break;
    case SymmetryOp::SignFlipMagnetic:
      m.k = -k;
      m.well.strength = -well.strength;
      break;
    case SymmetryOp::ChargeConjElectric:
      m.E = -E;
      m.well.strength = -well.strength;
      break;
    case SymmetryOp::KFlipElectric: m.k = -k; break;
  }
  return m;
}

SpectrumImage spectrum_map(SymmetryOp op, const std::vector<double>& spectrum, double k, const WellConfig& well) {
  SpectrumImage img;
  for (double E : spectrum) {
    const MappedParameters m = map_parameters(op, E, k, well);
    img.spectrum.push_back(m.E);
  }
  const MappedParameters m = map_parameters(op, 0.0, k, well);
  img.k = m.k;
  img.well = m.well;
  std::sort(img.spectrum.begin(), img.spectrum.end());
  return img;
}

double projective_overlap(const std::vector<SpinorSample>& a, const std::vector<SpinorSample>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("projective_overlap: sample counts differ");
  cplx inner = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    inner += std::conj(a[i].psi1) * b[i].psi1 + std::conj(a[i].psi2) * b[i].psi2;
    na += std::norm(a[i].psi1) + std::norm(a[i].psi2);
    nb += std::norm(b[i].psi1) + std::norm(b[i].psi2);
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(inner) / std::sqrt(na * nb);
}

DiracResidual dirac_residual(const std::vector<SpinorSample>& samples, double E, double k, const WellConfig& well) {
  DiracResidual res;
  const double h = well.half_width;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const double x = samples[i].x;
    const double dx = samples[i + 1].x - samples[i - 1].x;
    if (!(dx > 0.0)) continue;
    if (std::abs(std::abs(x) - h) <= dx) continue;  // dx spans two grid spacings

    const bool inside = std::abs(x) < h;
    double qy = k;
    double V = 0.0;
    if (inside && well.kind == WellKind::Magnetic) qy = k + well.strength;
    if (inside && well.kind == WellKind::Electric) V = -well.strength;

    const cplx d1 = (samples[i + 1].psi1 - samples[i - 1].psi1) / dx;
    const cplx d2 = (samples[i + 1].psi2 - samples[i - 1].psi2) / dx;
    const cplx p1 = samples[i].psi1;
    const cplx p2 = samples[i].psi2;
    const cplx r1 = -I * d2 - I * qy * p2 + (V - E) * p1;
    const cplx r2 = -I * d1 + I * qy * p1 + (V - E) * p2;
    res.max_residual = std::max(res.max_residual, std::sqrt(std::norm(r1) + std::norm(r2)));
    ++res.points_checked;
  }
  return res;
}

}  // namespace dwg::symmetry
