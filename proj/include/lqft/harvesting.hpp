#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "lqft/density_matrix.hpp"
#include "lqft/error.hpp"
#include "lqft/smeared.hpp"
#include "lqft/specfun.hpp"

// Two-detector entanglement harvesting: leading-order joint states for qubit
// and harmonic-oscillator probes, their negativity, the closed-form result
// for comoving Gaussian detectors in the Minkowski vacuum, and the
// harvested-vs-communicated classifier based on the symmetric propagator.

namespace lqft::harvesting {

using cdouble = std::complex<double>;
using smeared::BiKind;
using smeared::GaussianSmearing;
using specfun::pi;
using specfun::sqrt_pi;
using Matrix4 = Eigen::Matrix4cd;
using Matrix9 = Eigen::Matrix<cdouble, 9, 9>;

// Leading-order response terms of a detector pair; the coupling lambda^2 is
// already included in every entry.
struct HarvestTerms {
  double Laa = 0.0;          // local excitation weight, detector A
  double Lbb = 0.0;          // local excitation weight, detector B
  cdouble Lab{0.0, 0.0};     // cross excitation term
  cdouble M{0.0, 0.0};       // pair-creation term
  cdouble Dab{0.0, 0.0};     // (lambda^2/2) Delta(Lam_A^+, Lam_B^+): signalling
  cdouble Ka{0.0, 0.0};      // oscillator-only double excitation, detector A
  cdouble Kb{0.0, 0.0};      // oscillator-only double excitation, detector B

  void validate() const {
    if (Laa < -1e-12 || Lbb < -1e-12)
      throw contract_error("HarvestTerms: local weights must be non-negative");
  }
};

namespace detail {

inline GaussianSmearing with_omega(const GaussianSmearing& f, double omega) {
  GaussianSmearing g = f;
  g.Omega = omega;
  return g;
}

}  // namespace detail

// Assemble the leading-order terms for two Gaussian-coupled inertial
// detectors in the Minkowski vacuum; f_a.Omega / f_b.Omega carry the energy
// gaps of the detectors.
inline HarvestTerms harvest_terms(double lambda, const GaussianSmearing& fa,
                                  const GaussianSmearing& fb) {
  const double l2 = lambda * lambda;
  const auto am = detail::with_omega(fa, -fa.Omega);
  const auto ap = detail::with_omega(fa, fa.Omega);
  const auto bm = detail::with_omega(fb, -fb.Omega);
  const auto bp = detail::with_omega(fb, fb.Omega);
  HarvestTerms t;
  t.Laa = l2 * smeared::bidistribution_closed(BiKind::Wightman, am, ap).value.real();
  t.Lbb = l2 * smeared::bidistribution_closed(BiKind::Wightman, bm, bp).value.real();
  t.Lab = l2 * smeared::bidistribution_closed(BiKind::Wightman, am, bp).value;
  t.M = -l2 * smeared::bidistribution_closed(BiKind::Feynman, ap, bp).value;
  t.Dab = 0.5 * l2 * smeared::bidistribution_closed(BiKind::Symmetric, ap, bp).value;
  t.Ka = -l2 / std::sqrt(2.0) *
         smeared::bidistribution_closed(BiKind::Feynman, ap, ap).value;
  t.Kb = -l2 / std::sqrt(2.0) *
         smeared::bidistribution_closed(BiKind::Feynman, bp, bp).value;
  t.Laa = std::max(t.Laa, 0.0);
  t.Lbb = std::max(t.Lbb, 0.0);
  return t;
}

// Final state of two qubit detectors that start in their ground states,
// basis {gg, ge, eg, ee}.
inline Matrix4 qubit_pair_state(const HarvestTerms& t) {
  t.validate();
  Matrix4 rho = Matrix4::Zero();
  rho(0, 0) = 1.0 - t.Laa - t.Lbb;
  rho(1, 1) = t.Lbb;
  rho(2, 2) = t.Laa;
  rho(1, 2) = t.Lab;
  rho(2, 1) = std::conj(t.Lab);
  rho(3, 0) = t.M;
  rho(0, 3) = std::conj(t.M);
  if (std::abs(rho.trace() - cdouble{1.0, 0.0}) > 1e-10)
    throw numerical_error("qubit_pair_state: trace defect beyond tolerance");
  return rho;
}

// Final state of two harmonic-oscillator probes truncated to occupation <= 2,
// basis |n_a n_b> ordered {00,01,02,10,11,12,20,21,22}.
inline Matrix9 oscillator_pair_state(const HarvestTerms& t) {
  t.validate();
  Matrix9 rho = Matrix9::Zero();
  auto idx = [](int na, int nb) { return 3 * na + nb; };
  rho(idx(0, 0), idx(0, 0)) = 1.0 - t.Laa - t.Lbb;
  rho(idx(0, 1), idx(0, 1)) = t.Lbb;
  rho(idx(1, 0), idx(1, 0)) = t.Laa;
  rho(idx(0, 1), idx(1, 0)) = t.Lab;
  rho(idx(1, 0), idx(0, 1)) = std::conj(t.Lab);
  rho(idx(0, 2), idx(0, 0)) = t.Kb;
  rho(idx(0, 0), idx(0, 2)) = std::conj(t.Kb);
  rho(idx(2, 0), idx(0, 0)) = t.Ka;
  rho(idx(0, 0), idx(2, 0)) = std::conj(t.Ka);
  rho(idx(1, 1), idx(0, 0)) = t.M;
  rho(idx(0, 0), idx(1, 1)) = std::conj(t.M);
  if (std::abs(rho.trace() - cdouble{1.0, 0.0}) > 1e-10)
    throw numerical_error("oscillator_pair_state: trace defect beyond tolerance");
  return rho;
}

// Leading-order negativity of either pair state.
inline double negativity_leading(const HarvestTerms& t) {
  t.validate();
  const double half_diff = 0.5 * (t.Laa - t.Lbb);
  const double half_sum = 0.5 * (t.Laa + t.Lbb);
  return std::max(0.0, std::hypot(std::abs(t.M), half_diff) - half_sum);
}

// ---------------------------------------------------------------------------
// General pure product initial states |psi_i> = cos(alpha_i)|g> -
// e^{i beta_i} sin(alpha_i)|e>; the negativity depends only on the
// generalized L/M combinations, not on the time-ordering-sensitive entries.

struct GeneralAngles {
  double alpha_a = 0.0, beta_a = 0.0;
  double alpha_b = 0.0, beta_b = 0.0;
};

inline double negativity_general(double lambda, const GaussianSmearing& fa,
                                 const GaussianSmearing& fb, const GeneralAngles& ang) {
  const double l2 = lambda * lambda;
  const cdouble i{0.0, 1.0};
  auto W4 = [&](const GaussianSmearing& f1, double s1, const GaussianSmearing& f2,
                double s2) {
    return smeared::bidistribution_closed(
               BiKind::Wightman, detail::with_omega(f1, s1 * f1.Omega),
               detail::with_omega(f2, s2 * f2.Omega))
        .value;
  };
  auto GF4 = [&](const GaussianSmearing& f1, double s1, const GaussianSmearing& f2,
                 double s2) {
    return smeared::bidistribution_closed(
               BiKind::Feynman, detail::with_omega(f1, s1 * f1.Omega),
               detail::with_omega(f2, s2 * f2.Omega))
        .value;
  };
  auto ca = [](double a) { return std::cos(a) * std::cos(a); };
  auto sa = [](double a) { return std::sin(a) * std::sin(a); };

  // L^gen_IJ = W(cos^2 a_J Lam_I^- - e^{-2i b_J} sin^2 a_J Lam_I^+,
  //             cos^2 a_I Lam_J^+ - e^{+2i b_I} sin^2 a_I Lam_J^-)
  auto Lgen = [&](const GaussianSmearing& fI, double aI, double bI,
                  const GaussianSmearing& fJ, double aJ, double bJ) {
    const cdouble c1 = ca(aJ);
    const cdouble c2 = -std::exp(-2.0 * i * bJ) * sa(aJ);
    const cdouble c3 = ca(aI);
    const cdouble c4 = -std::exp(2.0 * i * bI) * sa(aI);
    return l2 * (c1 * c3 * W4(fI, -1, fJ, +1) + c1 * c4 * W4(fI, -1, fJ, -1) +
                 c2 * c3 * W4(fI, +1, fJ, +1) + c2 * c4 * W4(fI, +1, fJ, -1));
  };
  const cdouble Laa = Lgen(fa, ang.alpha_a, ang.beta_a, fa, ang.alpha_a, ang.beta_a);
  const cdouble Lbb = Lgen(fb, ang.alpha_b, ang.beta_b, fb, ang.alpha_b, ang.beta_b);

  const cdouble ma1 = ca(ang.alpha_a);
  const cdouble ma2 = -std::exp(2.0 * i * ang.beta_a) * sa(ang.alpha_a);
  const cdouble mb1 = ca(ang.alpha_b);
  const cdouble mb2 = -std::exp(2.0 * i * ang.beta_b) * sa(ang.alpha_b);
  const cdouble Mgen =
      l2 * (ma1 * mb1 * GF4(fa, +1, fb, +1) + ma1 * mb2 * GF4(fa, +1, fb, -1) +
            ma2 * mb1 * GF4(fa, -1, fb, +1) + ma2 * mb2 * GF4(fa, -1, fb, -1));

  const double half_diff = 0.5 * (Laa.real() - Lbb.real());
  const double half_sum = 0.5 * (Laa.real() + Lbb.real());
  return std::max(0.0, std::hypot(std::abs(Mgen), half_diff) - half_sum);
}

// ---------------------------------------------------------------------------
// Closed-form Minkowski results for identical comoving detectors

struct MinkowskiHarvest {
  double negativity = 0.0;
  double signalling = 0.0;  // (lambda^2/2)|Delta(Lam_A^+, Lam_B^+)|
  bool harvested = false;   // signalling <= threshold * negativity
};

inline constexpr double kDefaultHarvestThreshold = 0.1;

// Pipeline route: terms from the smeared propagators, any time delay t0.
inline MinkowskiHarvest negativity_closed_minkowski(
    double lambda, double Omega, double T, double sigma, double L, double t0,
    double threshold = kDefaultHarvestThreshold) {
  GaussianSmearing fa, fb;
  fa.T = fb.T = T;
  fa.sigma = fb.sigma = sigma;
  fa.Omega = fb.Omega = Omega;
  fb.t_c = t0;
  fb.center = {L, 0.0, 0.0};
  const auto t = harvest_terms(lambda, fa, fb);
  MinkowskiHarvest out;
  out.negativity = negativity_leading(t);
  out.signalling = std::abs(t.Dab);
  out.harvested = out.negativity > 0.0 && out.signalling <= threshold * out.negativity;
  return out;
}

// Analytic route at t0 = 0, assembled from scaled error functions.
inline double negativity_analytic(double lambda, double Omega, double T, double sigma,
                                  double L) {
  const double alpha2 = 1.0 + sigma * sigma / (T * T);
  const double alpha = std::sqrt(alpha2);
  const double y = Omega * T / alpha;
  const double yL = L / (2.0 * alpha * T);
  const double xL = L / (2.0 * alpha * sigma);
  // exp(-yL^2) sqrt(erf(xL)^2 + erfi(yL)^2), fused:
  const double X = std::hypot(std::exp(-yL * yL) * std::erf(xL),
                              2.0 / sqrt_pi * specfun::dawson(yL));
  double noise;  // sqrt(pi) y erfcx(y) - 1 rearranged, stable for either sign
  if (y >= 0.0) {
    noise = sqrt_pi * y * specfun::erfcx(y) - 1.0;
  } else {
    noise = sqrt_pi * y * (2.0 * std::exp(y * y) - specfun::erfcx(-y)) - 1.0;
  }
  const double pref =
      lambda * lambda * std::exp(-Omega * Omega * T * T) / (4.0 * pi * alpha2);
  const double bracket = sqrt_pi * alpha * X * T / L + noise;
  return std::max(0.0, pref * bracket);
}

// Closed-form signalling estimate at t0 = 0.
inline double signalling_analytic(double lambda, double Omega, double T, double sigma,
                                  double L) {
  const double alpha2 = 1.0 + sigma * sigma / (T * T);
  const double alpha = std::sqrt(alpha2);
  const double yL = L / (2.0 * alpha * T);
  return lambda * lambda *
         std::exp(-Omega * Omega * T * T - yL * yL) / (4.0 * alpha * sqrt_pi) *
         (T / L) * std::erf(L / (2.0 * alpha * sigma));
}

// Optimal-gap asymptotics for widely separated detectors.
struct HarvestAsymptotics {
  double Omega_opt;  // = L / (2 T^2)
  double N_asym;     // = (4 lambda^2/pi) exp(-L^2/4T^2) (T/L)^4
};

inline HarvestAsymptotics asymptotics(double lambda, double T, double /*sigma*/,
                                      double L) {
  HarvestAsymptotics a;
  a.Omega_opt = L / (2.0 * T * T);
  a.N_asym = 4.0 * lambda * lambda / pi * std::exp(-L * L / (4.0 * T * T)) *
             std::pow(T / L, 4);
  return a;
}

}  // namespace lqft::harvesting
