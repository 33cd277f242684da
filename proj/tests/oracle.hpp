#pragma once

// Reference solutions obtained by direct numerical integration of the
// first-order system psi' = (i eps sigma_x + Q sigma_z) psi, piecewise in x.
// Shares no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

struct Params {
  bool magnetic = false;
  double strength = 0.0;
  double h = 1.0;
};

struct State {
  cplx a;
  cplx b;
};

inline void local(const Params& p, double E, double k, double x, double& eps, double& Q) {
  const bool inside = std::abs(x) < p.h;
  eps = E;
  Q = k;
  if (inside && p.magnetic) Q = k + p.strength;
  if (inside && !p.magnetic) eps = E + p.strength;
}

inline State rhs(double eps, double Q, const State& s) {
  const cplx I(0.0, 1.0);
  return {Q * s.a + I * eps * s.b, I * eps * s.a - Q * s.b};
}

// Integrates across the well interior from x0 to x1 (both on the boundary or
// inside), steps uniformly.
inline State integrate(const Params& p, double E, double k, State s, double x0, double x1, int steps = 4000) {
  const double dx = (x1 - x0) / steps;
  const double mid = 0.5 * (x0 + x1);
  double eps, Q;
  local(p, E, k, mid, eps, Q);
  auto add = [](const State& s, const State& d, double f) { return State{s.a + f * d.a, s.b + f * d.b}; };
  for (int i = 0; i < steps; ++i) {
    const State k1 = rhs(eps, Q, s);
    const State k2 = rhs(eps, Q, add(s, k1, dx / 2));
    const State k3 = rhs(eps, Q, add(s, k2, dx / 2));
    const State k4 = rhs(eps, Q, add(s, k3, dx));
    s.a += dx / 6 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
    s.b += dx / 6 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b);
  }
  return s;
}

struct Scattering {
  cplx r;
  cplx t;
};

// Free-region spinor exp(lam x) (1, i (k - lam) / E).
inline State free_wave(double E, double k, cplx lam, double x) {
  const cplx I(0.0, 1.0);
  const cplx f = std::exp(lam * x);
  return {f, f * I * (k - lam) / E};
}

// Start from the transmitted wave at x = +h and integrate back to x = -h,
// then split the result into incident and reflected waves.
inline Scattering scatter(const Params& p, double E, double k, int steps = 4000) {
  const cplx I(0.0, 1.0);
  const double kx = std::sqrt(E * E - k * k);
  const State right = free_wave(E, k, I * kx, p.h);
  const State left = integrate(p, E, k, right, p.h, -p.h, steps);
  const State up = free_wave(E, k, I * kx, -p.h);
  const State um = free_wave(E, k, -I * kx, -p.h);
  const cplx det = up.a * um.b - um.a * up.b;
  const cplx a = (left.a * um.b - um.a * left.b) / det;
  const cplx b = (up.a * left.b - left.a * up.b) / det;
  return {b / a, 1.0 / a};
}

// Real mismatch whose zeros in |E| < |k| are bound-state energies: start from
// the growing exterior solution at -h, integrate to +h and project out the
// decaying exterior solution. Has a pole at E = 0 when k < 0.
inline double shoot(const Params& p, double E, double k, int steps = 2000) {
  if (E == 0.0) return HUGE_VAL;
  const double q = std::sqrt(k * k - E * E);
  const State start{1.0, cplx(0.0, (k - q) / E)};
  const State end = integrate(p, E, k, start, -p.h, p.h, steps);
  return end.b.imag() - (k + q) / E * end.a.real();
}

inline std::vector<double> bound_energies(const Params& p, double k, int scan = 4000) {
  std::vector<double> roots;
  const double lo = -std::abs(k), hi = std::abs(k);
  auto f = [&](double E) { return shoot(p, E, k); };
  double xa = lo + (hi - lo) * 0.5 / scan;
  double fa = f(xa);
  for (int i = 1; i < scan; ++i) {
    const double xb = lo + (hi - lo) * (i + 0.5) / scan;
    const double fb = f(xb);
    if ((fa < 0) != (fb < 0) && fa != 0.0) {
      double a = xa, b = xb, ga = fa;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        const double gm = f(m);
        if ((gm < 0) == (ga < 0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      const double root = 0.5 * (a + b);
      if (std::abs(f(root)) < 1e-6 * std::max(std::abs(fa), std::abs(fb))) roots.push_back(root);
    }
    xa = xb;
    fa = fb;
  }
  return roots;
}

}  // namespace oracle
