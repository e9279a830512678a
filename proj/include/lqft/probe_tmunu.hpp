#pragma once

#include <cmath>
#include <vector>

#include "lqft/error.hpp"
#include "lqft/quadrature.hpp"
#include "lqft/specfun.hpp"

// Stress-energy profile of the covariant localized probe built from a
// sech-shaped classical field, a supporting perfect fluid, and the trapped
// field mode: fluid pressure and density, energy conditions, the bound mode
// of the sech-squared well, and the ground-state T_mu_nu components.

namespace lqft::probe {

using specfun::pi;

// Twelve-digit reference constants entering the closed form of the central
// pressure: d/ds zeta(s) at s = -3 and Glaisher's constant.
inline constexpr double kZetaPrimeMinus3 = 0.005378576357774;
inline constexpr double kGlaisherA = 1.282427129100623;

struct ProbeModel {
  double ell = 1.0;       // localization length
  double mu_fluid = 0.2;  // fluid coupling (length^2), 0 < mu_fluid < ell^2;
                          // named to avoid the clash with the detector
                          // monopole operator
  int eta = 0;            // fluid Lagrangian choice, 0 or 1
  double m_c = 2.0;       // classical-field mass, m_c * ell > 1
  double m_d = 5.0;       // detector-field mass, m_d * ell > 1

  void validate() const {
    if (!(ell > 0.0)) throw contract_error("ProbeModel: ell must be > 0");
    if (!(mu_fluid > 0.0) || !(mu_fluid < ell * ell))
      throw contract_error("ProbeModel: need 0 < mu_fluid < ell^2 (P diverges otherwise)");
    if (eta != 0 && eta != 1) throw contract_error("ProbeModel: eta must be 0 or 1");
    if (!(m_c * ell > 1.0) || !(m_d * ell > 1.0))
      throw contract_error("ProbeModel: need m_c ell > 1 and m_d ell > 1");
  }
  double omega_c() const { return std::sqrt(m_c * m_c - 1.0 / (ell * ell)); }
  double omega_d() const { return std::sqrt(m_d * m_d - 1.0 / (ell * ell)); }
};

namespace detail {

inline double sech(double x) { return 1.0 / std::cosh(x); }

// G(r) = 4 sech^2(r/ell) tanh^2(r/ell) / r
inline double g_kernel(double r, double ell) {
  const double s = sech(r / ell), t = std::tanh(r / ell);
  return 4.0 * s * s * t * t / r;
}

// Int_r^inf G; the integrand decays like 16 e^{-2r/ell}/r, cut at 40 ell
// with a remainder below 1e-14 of the total.
inline double g_tail(double r, double ell) {
  const double cut = 40.0 * ell;
  if (r >= cut) return 0.0;
  auto f = [&](double u) { return g_kernel(u, ell); };
  return integrate(f, r, cut, QuadOptions{1e-13, 1e-12, 20000}).value;
}

}  // namespace detail

// central-pressure constant from the quadrature of G at unit length scale
inline double g0_quadrature() {
  auto f = [](double u) { return detail::g_kernel(u, 1.0); };
  return integrate(f, 1e-12, 40.0, QuadOptions{1e-13, 1e-12, 40000}).value;
}

// same constant in closed form
inline double g0_closed_form() {
  return 4.0 * (4.0 * std::log(kGlaisherA) - 40.0 * kZetaPrimeMinus3 - 1.0 / 3.0 -
                4.0 / 45.0 * std::log(2.0));
}

inline double fluid_pressure(const ProbeModel& m, double r) {
  m.validate();
  if (!(r > 0.0)) throw contract_error("fluid_pressure: r > 0 required");
  const double s = detail::sech(r / m.ell);
  return detail::g_tail(r, m.ell) /
         (m.ell * m.ell * (m.ell * m.ell - m.mu_fluid * s * s));
}

inline double fluid_density(const ProbeModel& m, double r) {
  m.validate();
  if (!(r > 0.0)) throw contract_error("fluid_density: r > 0 required");
  const double x = r / m.ell;
  const double base = 2.0 / (m.mu_fluid * m.ell * m.ell) * std::tanh(x) / x;
  return 3.0 * m.eta * fluid_pressure(m, r) + base;
}

// ---------------------------------------------------------------------------
// Energy conditions

struct EnergyConditionPoint {
  double r;
  double rho, P;
  double rho_plus_P, rho_plus_3P, rho_minus_absP;
  double w;  // P / rho
};

struct EnergyConditionReport {
  std::vector<EnergyConditionPoint> points;
  bool null_ok = true;      // rho + P > 0 everywhere
  bool strong_ok = true;    // rho + 3P > 0 everywhere
  bool dominant_ok = true;  // rho - |P| > 0 everywhere
};

inline EnergyConditionReport energy_conditions(const ProbeModel& m,
                                               const std::vector<double>& r_grid) {
  EnergyConditionReport rep;
  for (double r : r_grid) {
    EnergyConditionPoint p;
    p.r = r;
    p.P = fluid_pressure(m, r);
    p.rho = fluid_density(m, r);
    p.rho_plus_P = p.rho + p.P;
    p.rho_plus_3P = p.rho + 3.0 * p.P;
    p.rho_minus_absP = p.rho - std::abs(p.P);
    p.w = p.P / p.rho;
    rep.null_ok = rep.null_ok && p.rho_plus_P > 0.0;
    rep.strong_ok = rep.strong_ok && p.rho_plus_3P > 0.0;
    rep.dominant_ok = rep.dominant_ok && p.rho_minus_absP > 0.0;
    rep.points.push_back(p);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Bound mode of the sech^2 well

struct BoundMode {
  double omega1;  // sqrt(m_d^2 - 1/ell^2)
  // profile Phi_1(r) = sqrt(3/(8 pi ell omega_d)) tanh(r/ell)/(r cosh(r/ell))
  double amplitude;
  double ell;
  double operator()(double r) const {
    if (r == 0.0) return amplitude / ell;  // tanh(x)/x -> 1
    const double x = r / ell;
    return amplitude * std::tanh(x) / (r * std::cosh(x));
  }
};

inline BoundMode bound_mode(const ProbeModel& m) {
  m.validate();
  if (!(m.m_d * m.ell > 1.0))
    throw contract_error("bound_mode: m_d ell <= 1 makes the mode unstable");
  BoundMode b;
  b.ell = m.ell;
  b.omega1 = m.omega_d();
  b.amplitude = std::sqrt(3.0 / (8.0 * pi * m.ell * b.omega1));
  return b;
}

// Klein-Gordon norm 2 omega_1 Int |Phi_1|^2 dSigma, equal to one for the
// normalized mode (verified by quadrature in the tests).
inline double bound_mode_norm(const ProbeModel& m) {
  const auto b = bound_mode(m);
  auto f = [&](double r) {
    const double v = b(r);
    return 8.0 * pi * b.omega1 * r * r * v * v;
  };
  return integrate(f, 0.0, 45.0 * m.ell, QuadOptions{1e-12, 1e-10, 40000}).value;
}

// ---------------------------------------------------------------------------
// Ground-state stress-energy components

struct GroundTmunu {
  double rho0;      // energy density
  double R0;        // radial pressure
  double P0;        // tangential pressure
  double deviator;  // Pi(r) = (2/3)(R0 - P0)
  double isotropic; // p(r) = (R0 + 2 P0)/3
};

inline GroundTmunu ground_tmunu(const ProbeModel& m, double r) {
  m.validate();
  if (!(r > 0.0)) throw contract_error("ground_tmunu: r > 0 required");
  const double x = r / m.ell;
  const double s2 = detail::sech(x) * detail::sech(x);
  const double ell2 = m.ell * m.ell;
  const double fl = 1.0 - m.mu_fluid * s2 / ell2;
  const double P = fluid_pressure(m, r);
  const double rho = fluid_density(m, r);
  GroundTmunu g;
  g.rho0 = 2.0 * s2 / ell2 * m.m_c * m.m_c + fl * rho;
  g.R0 = -2.0 * s2 * s2 / (ell2 * ell2) + fl * P;
  g.P0 = -2.0 * s2 / (ell2 * ell2) + fl * P;
  g.deviator = 2.0 / 3.0 * (g.R0 - g.P0);
  g.isotropic = (g.R0 + 2.0 * g.P0) / 3.0;
  return g;
}

// closed form of the deviator for cross-checks
inline double deviator_closed(const ProbeModel& m, double r) {
  const double x = r / m.ell;
  const double s = detail::sech(x), t = std::tanh(x);
  return 4.0 / 3.0 * s * s * t * t / (m.ell * m.ell * m.ell * m.ell);
}

// ---------------------------------------------------------------------------
// Excited-state fluid part (the trapped-mode contribution to the fluid)

// g(x) = <:phi_d^2:> in the one-excitation state
inline double excited_g(const ProbeModel& m, double r) {
  const double x = r / m.ell;
  const double sh = std::sinh(x), csch2x = 1.0 / std::sinh(2.0 * x);
  return 6.0 * std::pow(csch2x, 4) * std::pow(sh, 6) /
         (pi * r * r * m.omega_d() * m.ell);
}

inline double excited_fluid_pressure(const ProbeModel& m, double r) {
  m.validate();
  if (!(r > 0.0)) throw contract_error("excited_fluid_pressure: r > 0 required");
  auto dg = [&](double u) {
    const double x = u / m.ell;
    const double s = detail::sech(x), t = std::tanh(x);
    return detail::g_kernel(u, m.ell) -
           9.0 * t * t * t * std::pow(s, 4) /
               (4.0 * pi * u * u * m.ell * m.ell * m.omega_d());
  };
  const double tail =
      integrate(dg, r, 40.0 * m.ell, QuadOptions{1e-13, 1e-12, 20000}).value;
  const double s = detail::sech(r / m.ell);
  return tail / (m.ell * m.ell * (m.ell * m.ell - m.mu_fluid * s * s));
}

inline double excited_fluid_density(const ProbeModel& m, double r) {
  const double x = r / m.ell;
  const double base = 2.0 / (m.mu_fluid * m.ell * m.ell) * std::tanh(x) / x;
  // alpha = -6 throughout this family of probes
  return 3.0 * m.eta * excited_fluid_pressure(m, r) + base -
         3.0 / m.mu_fluid * excited_g(m, r);
}

}  // namespace lqft::probe
