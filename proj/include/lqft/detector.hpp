#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "lqft/density_matrix.hpp"
#include "lqft/error.hpp"
#include "lqft/smeared.hpp"
#include "lqft/specfun.hpp"

// Single two-level detector dynamics: perturbative Bloch evolution, the
// closed-form vacuum response of a Gaussian-coupled inertial detector, the
// long-time transition rate, wavepacket detection amplitudes, and the
// non-perturbative zero-gap channel. All channel outputs are proper density
// matrices (Hermitian, unit trace, PSD up to the perturbative tolerance).

namespace lqft::detector {

using cdouble = std::complex<double>;
using specfun::pi;
using specfun::sqrt_pi;
using Matrix2 = Eigen::Matrix2cd;

// ---------------------------------------------------------------------------
// Bloch-vector evolution

struct BlochState {
  std::array<double, 3> a{0.0, 0.0, -1.0};

  double norm() const {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  }
  void validate() const {
    if (norm() > 1.0 + 1e-9) throw contract_error("BlochState: |a| > 1");
  }
  Matrix2 density() const {
    Matrix2 rho;
    rho << 0.5 * (1.0 + a[2]), 0.5 * cdouble{a[0], -a[1]},
           0.5 * cdouble{a[0], a[1]}, 0.5 * (1.0 - a[2]);
    return rho;
  }
};

// Leading-order response functionals of the field state against the
// detector's smearing (coupling constant already included).
struct ResponseTerms {
  cdouble X{0.0, 0.0};   // one-point term, zero for quasifree states
  double Lminus = 0.0;   // excitation weight
  double Lplus = 0.0;    // deexcitation weight
  cdouble K{0.0, 0.0};   // rotating two-point term
  cdouble N{0.0, 0.0};   // time-ordering dependent term

  void validate() const {
    if (Lminus < -1e-12 || Lplus < -1e-12)
      throw contract_error("ResponseTerms: L+- must be non-negative");
  }
};

struct BlochResult {
  BlochState state;
  bool perturbativity_warning = false;  // |a| ran past the Bloch ball
};

inline BlochResult bloch_evolve(const BlochState& a0, const ResponseTerms& t) {
  a0.validate();
  t.validate();
  const double ax = a0.a[0], ay = a0.a[1], az = a0.a[2];
  BlochResult r;
  r.state.a[0] = ax - 2.0 * az * t.X.imag() -
                 (ax * (t.N - t.K).real() + ay * (t.N + t.K).imag());
  r.state.a[1] = ay - 2.0 * az * t.X.real() -
                 (ay * (t.N + t.K).real() - ax * (t.N - t.K).imag());
  r.state.a[2] = az + 2.0 * (ax * t.X.imag() + ay * t.X.real()) -
                 (az * (t.Lminus + t.Lplus) - t.Lminus + t.Lplus);
  r.perturbativity_warning = r.state.norm() > 1.0 + 1e-6;
  return r;
}

// ---------------------------------------------------------------------------
// Vacuum response of the Gaussian-coupled inertial detector

// P(Omega): excitation probability for gap Omega; P(-Omega) gives the
// deexcitation probability. sigma = 0 selects the pointlike form.
inline double vacuum_response(double lambda, double Omega, double T, double sigma) {
  if (!(T > 0.0) || sigma < 0.0)
    throw contract_error("vacuum_response: T > 0 and sigma >= 0 required");
  const double alpha2 = 1.0 + sigma * sigma / (T * T);
  const double y = Omega * T / std::sqrt(alpha2);
  const double pref = lambda * lambda / (4.0 * pi * alpha2);
  const double eOT = std::exp(-Omega * Omega * T * T);
  double val;
  if (y >= 0.0) {
    val = pref * eOT * (1.0 - sqrt_pi * y * specfun::erfcx(y));
  } else {
    // erfc(y<0) = 2 - erfc(-y); fuse exp(-O^2T^2+y^2) analytically
    const double fused = std::exp(-Omega * Omega * T * T + y * y);
    val = pref * (eOT + sqrt_pi * (-y) * (2.0 * fused - eOT * specfun::erfcx(-y)));
  }
  return std::max(val, 0.0);
}

// Long-time deexcitation rate for gap Omega > 0 (zero for Omega <= 0: an
// inertial ground-state detector is never excited at infinite time).
inline double transition_rate(double lambda, double Omega, double sigma) {
  if (!std::isfinite(Omega) || sigma < 0.0)
    throw contract_error("transition_rate: bad arguments");
  if (Omega <= 0.0) return 0.0;
  return lambda * lambda * Omega * std::exp(-Omega * Omega * sigma * sigma) /
         (2.0 * sqrt_pi);
}

// ---------------------------------------------------------------------------
// Wavepacket detection amplitude

// q(Omega) for a one-particle Gaussian wavepacket of central momentum k0 and
// momentum width 1/delta. Assembled from erfcx so the deep tails stay finite.
inline cdouble wavepacket_response(double Omega, double T, double sigma, double k0,
                                   double delta) {
  if (!(delta > 0.0) || !(k0 > 0.0) || !(T > 0.0) || sigma < 0.0)
    throw contract_error("wavepacket_response: need delta > 0, k0 > 0, T > 0");
  const double alpha2 = 1.0 + sigma * sigma / (T * T);
  const double beta2 = 1.0 + (delta * delta + sigma * sigma) / (T * T);
  const double beta = std::sqrt(beta2);
  const double N0 = 4.0 * std::sqrt(k0) * std::pow(delta, 1.5) * std::pow(pi, 0.75) /
                    std::sqrt(std::erf(k0 * delta));
  const double pref = 2.0 * pi * pi * N0 / (beta * k0 * delta * delta);
  const double eOm = -Omega * Omega * sigma * sigma / alpha2;

  const double Ap = 0.5 * alpha2 * delta * delta / beta2 * (k0 + Omega / alpha2) *
                    (k0 + Omega / alpha2);
  const double Am = 0.5 * alpha2 * delta * delta / beta2 * (k0 - Omega / alpha2) *
                    (k0 - Omega / alpha2);
  const double Cp = (delta * delta * k0 - Omega * T * T) / (std::sqrt(2.0) * beta * T);
  const double Cm = (delta * delta * k0 + Omega * T * T) / (std::sqrt(2.0) * beta * T);

  // exp(-A) (1 + erf(C)) = exp(-A) erfc(-C), fused through erfcx
  auto one_plus_erf = [](double A, double C) {
    if (C <= 0.0) return std::exp(-A - C * C) * specfun::erfcx(-C);
    return 2.0 * std::exp(-A) - std::exp(-A - C * C) * specfun::erfcx(C);
  };
  // exp(-A) (1 - erf(C)) = exp(-A) erfc(C)
  auto one_minus_erf = [](double A, double C) {
    if (C >= 0.0) return std::exp(-A - C * C) * specfun::erfcx(C);
    return 2.0 * std::exp(-A) - std::exp(-A - C * C) * specfun::erfcx(-C);
  };
  return pref * std::exp(eOm) * (one_plus_erf(Ap, Cp) - one_minus_erf(Am, Cm));
}

// Sharp-wavepacket approximation, valid for delta * k0 >> 1.
inline double wavepacket_response_asymptotic(double Omega, double T, double sigma,
                                             double k0, double delta) {
  const double alpha2 = 1.0 + sigma * sigma / (T * T);
  const double beta2 = 1.0 + (delta * delta + sigma * sigma) / (T * T);
  const double beta = std::sqrt(beta2);
  const double A = 0.5 * alpha2 * delta * delta / beta2 * (k0 + Omega / alpha2) *
                   (k0 + Omega / alpha2);
  return 16.0 * pi * pi * std::pow(pi, 0.75) /
         (beta * std::sqrt(k0 * delta)) *
         std::exp(-Omega * Omega * sigma * sigma / alpha2 - A);
}

// ---------------------------------------------------------------------------
// Zero-gap (gapless) channel, solvable non-perturbatively

struct GaplessChannelParams {
  double xi = 0.0;  // lambda^2 W(Lam, Lam), >= 0
  double G = 0.0;   // (lambda^2/2) |G_R(Lam, Lam)|
  Matrix2 mu = (Matrix2() << 0, 1, 1, 0).finished();  // Hermitian, mu^2 = 1

  void validate() const {
    if (xi < 0.0) throw contract_error("GaplessChannelParams: xi < 0");
    if ((mu - mu.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw contract_error("GaplessChannelParams: mu not Hermitian");
    if ((mu * mu - Matrix2::Identity()).cwiseAbs().maxCoeff() > 1e-12)
      throw contract_error("GaplessChannelParams: mu^2 != 1");
  }
};

// Minkowski-vacuum parameters of a Gaussian profile: xi = lambda^2/(4 pi
// alpha^2) and G = (lambda^2/2)(T/sigma)/(4 pi alpha^2), both obtained from
// the smeared self-pair constants (the phase uses the magnitude of the
// retarded constant; the kernel convention makes G_R(Lam,Lam) itself
// negative).
inline GaplessChannelParams gapless_params(double lambda, double T, double sigma) {
  const auto sp = smeared::self_pair_constants(T, sigma);
  GaplessChannelParams p;
  p.xi = lambda * lambda * sp.W;
  p.G = 0.5 * lambda * lambda * std::abs(sp.GR);
  return p;
}

inline Matrix2 gapless_channel(const Matrix2& rho0, const GaplessChannelParams& p) {
  p.validate();
  dm::require_state(rho0);
  const double cplus = 0.5 * (1.0 + std::exp(-2.0 * p.xi));   // e^-xi cosh xi
  const double cminus = 0.5 * (1.0 - std::exp(-2.0 * p.xi));  // e^-xi sinh xi
  const Matrix2 mixed = cplus * rho0 + cminus * p.mu * rho0 * p.mu;
  const Matrix2 U = std::cos(p.G) * Matrix2::Identity() -
                    cdouble{0.0, 1.0} * std::sin(p.G) * p.mu;
  Matrix2 rho = U * mixed * U.adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return rho;
}

// ---------------------------------------------------------------------------
// Geometry-side helpers for localized probes

// Largest radius around an accelerated worldline where a localized
// non-relativistic description can hold: 1/(a + sqrt(lambda_R)).
inline double fermi_bound(double accel, double lambda_R) {
  if (accel < 0.0 || lambda_R < 0.0)
    throw contract_error("fermi_bound: negative inputs");
  if (accel == 0.0 && lambda_R == 0.0)
    return std::numeric_limits<double>::infinity();  // no bound
  return 1.0 / (accel + std::sqrt(lambda_R));
}

enum class TrapKind { Box, Harmonic };

// Eigenfrequencies of a field trapped in a Dirichlet box of side d
// (n_i >= 1) or a harmonic well of length scale l (n_i >= 0).
inline double localized_spectrum(TrapKind kind, double scale, double mass,
                                 const std::array<int, 3>& n) {
  if (!(scale > 0.0) || mass < 0.0)
    throw contract_error("localized_spectrum: need scale > 0, mass >= 0");
  switch (kind) {
    case TrapKind::Box: {
      for (int ni : n)
        if (ni < 1) throw contract_error("box modes need n_i >= 1");
      const double k2 = pi * pi / (scale * scale) *
                        (double(n[0]) * n[0] + double(n[1]) * n[1] + double(n[2]) * n[2]);
      return std::sqrt(mass * mass + k2);
    }
    case TrapKind::Harmonic: {
      for (int ni : n)
        if (ni < 0) throw contract_error("harmonic modes need n_i >= 0");
      return std::sqrt(mass * mass +
                       2.0 / (scale * scale) * (n[0] + n[1] + n[2] + 1.5));
    }
  }
  throw contract_error("unknown trap kind");
}

}  // namespace lqft::detector
