#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "echo2d/bath.hpp"
#include "echo2d/exciton_model.hpp"
#include "echo2d/units.hpp"

namespace echo2d::fx {

/// Two-site dimer with eps = (-50, 50), J = 100, eps_g = -12000.
inline ExcitonModel reference_dimer(Eigen::Vector2d dipoles = Eigen::Vector2d(1.0, 1.0)) {
  ExcitonModel m;
  m.ground_energy = -12000.0;
  m.site_energies = Eigen::Vector2d(-50.0, 50.0);
  m.couplings = Eigen::Matrix2d{{0.0, 100.0}, {100.0, 0.0}};
  m.site_dipoles = dipoles;
  return m;
}

/// Site dipoles giving unit stationary dipoles mu_ga = 1, mu_gb = -1.
inline ExcitonModel reference_dimer_stationary() {
  ExcitonModel m = reference_dimer();
  m.site_dipoles = site_dipoles_from_stationary(m, Eigen::Vector2d(1.0, -1.0));
  return m;
}

/// Ohmic, lambda = 1.2 omega_c, omega_c = 53, T = 77 K.
inline BathSpec reference_bath() {
  BathSpec b;
  b.kind = SpectralKind::Ohmic;
  b.cutoff = 53.0;
  b.reorganization = 1.2 * 53.0;
  b.temperature = 77.0;
  return b;
}

/// Composite trapezoid of f on [a, b] with n intervals.
template <class F>
auto trapezoid(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  auto sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  return sum * h;
}

/// Trapezoid with two Richardson steps (error O(h^6) for smooth integrands).
template <class F>
auto romberg(F&& f, double a, double b, int n) {
  const auto t1 = trapezoid(f, a, b, n);
  const auto t2 = trapezoid(f, a, b, 2 * n);
  const auto t4 = trapezoid(f, a, b, 4 * n);
  const auto r1 = (4.0 * t2 - t1) / 3.0;
  const auto r2 = (4.0 * t4 - t2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

inline double rel_err(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

}  // namespace echo2d::fx

namespace echo2d::fx {

/// Nested trapezoid of f(t', t'') K(t' - t'') over [0,t]x[0,s] (or the ordered
/// triangle t'' <= t' <= t when ordered), step h fs, integration measure in cm.
/// Two Richardson steps on h, h/2, h/4.
template <class Kernel, class Phase>
std::complex<double> double_integral(Kernel&& kernel, Phase&& phase, double t, double s, bool ordered, double h) {
  auto level = [&](double step) {
    const int nt = static_cast<int>(std::lround(t / step));
    const int ns = ordered ? nt : static_cast<int>(std::lround(s / step));
    std::vector<std::complex<double>> k(static_cast<std::size_t>(nt + ns + 1));
    for (int d = -ns; d <= nt; ++d) k[static_cast<std::size_t>(d + ns)] = kernel(d * step);
    std::complex<double> outer = 0.0;
    for (int i = 0; i <= nt; ++i) {
      const int jmax = ordered ? i : ns;
      if (jmax == 0) continue;
      std::complex<double> inner = 0.0;
      for (int j = 0; j <= jmax; ++j) {
        const double w = (j == 0 || j == jmax) ? 0.5 : 1.0;
        inner += w * phase(i * step, j * step) * k[static_cast<std::size_t>(i - j + ns)];
      }
      outer += ((i == 0 || i == nt) ? 0.5 : 1.0) * inner;
    }
    const double hc = units::fs_to_cm(step);
    return outer * hc * hc;
  };
  const auto q1 = level(h);
  const auto q2 = level(h / 2.0);
  const auto q4 = level(h / 4.0);
  return (64.0 * q4 - 20.0 * q2 + q1) / 45.0;
}

}  // namespace echo2d::fx
