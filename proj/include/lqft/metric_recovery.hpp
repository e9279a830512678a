#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "lqft/error.hpp"
#include "lqft/quadrature.hpp"
#include "lqft/specfun.hpp"

// Spacetime-metric reconstruction from two-point functions: closed-form
// Wightman kernels for six scenarios, the discrete coincidence-limit stencil
// g_{mu nu} = -(1/8 pi^2) d_mu d_nu' W^{-1}, and the detector-based
// correlator estimates for spacelike and timelike event pairs.

namespace lqft::metric {

using cdouble = std::complex<double>;
using specfun::pi;
using Event = std::array<double, 4>;  // chart coordinates (x0, x1, x2, x3)

// ---------------------------------------------------------------------------
// Kernels

struct MinkowskiMassless {
  double eps = 1e-8;
};
struct MinkowskiMassive {
  double m = 1.0;
  double eps = 1e-8;
};
// static hyperbolic cosmology in conformal coordinates (eta, chi); the two
// transverse angles must coincide between the events
struct RWHyperbolic {
  double a = 1.0;   // constant scale factor
  double mu = 1.0;  // effective mass parameter a m_eff
  double eps = 1e-8;
};
// exponentially expanding spacetime in conformal coordinates (eta, x, y, z)
struct DeSitter {
  double ell = 1.0;  // curvature radius
  double nu = 2.25;  // mass/coupling parameter
  double eps = 1e-8;
};
struct HalfSpaceDirichlet {
  double eps = 1e-8;
};
// massless Minkowski with one Gaussian wavepacket on top of the vacuum
struct OneParticleGaussian {
  double sigma_k = 1.0;  // momentum-space width
  double eps = 1e-8;
};

using WightmanKernel = std::variant<MinkowskiMassless, MinkowskiMassive, RWHyperbolic,
                                    DeSitter, HalfSpaceDirichlet, OneParticleGaussian>;

struct KernelValue {
  cdouble value;
  bool near_lightcone = false;  // |interval| within a few regulators of null
};

namespace detail {

// half squared geodesic interval with the causal-side regulator,
// sigma_eps = ((dx)^2 - (dt - i eps)^2)/2
inline cdouble sigma_eps(const Event& x, const Event& xp, double eps) {
  const double dt = x[0] - xp[0];
  const double dx = x[1] - xp[1], dy = x[2] - xp[2], dz = x[3] - xp[3];
  const cdouble dte{dt, -eps};
  return 0.5 * (dx * dx + dy * dy + dz * dz - dte * dte);
}

// an eps-sized wiggle of the coordinates moves sigma by ~eps * scale; pairs
// closer to the cone than that are flagged
inline bool near_null(cdouble sig, double eps, double scale) {
  return std::abs(sig.real()) < 5.0 * eps * (scale + eps);
}

inline double coord_scale(const Event& x, const Event& xp) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += std::abs(x[i] - xp[i]);
  return s;
}

inline KernelValue eval_massless(const MinkowskiMassless& k, const Event& x,
                                 const Event& xp) {
  const cdouble sig = sigma_eps(x, xp, k.eps);
  return {1.0 / (8.0 * pi * pi * sig), near_null(sig, k.eps, coord_scale(x, xp))};
}

inline KernelValue eval_massive(const MinkowskiMassive& k, const Event& x,
                                const Event& xp) {
  const cdouble sig = sigma_eps(x, xp, k.eps);
  // branch cut of the log along the negative real axis (principal branch)
  const cdouble arg = 2.0 * k.m * k.m * sig;
  const cdouble val = 1.0 / (8.0 * pi * pi * sig) +
                      k.m * k.m / (8.0 * pi * pi) *
                          specfun::bessel_i1_ratio_c(arg) * std::log(arg);
  return {val, near_null(sig, k.eps, coord_scale(x, xp))};
}

inline KernelValue eval_rw(const RWHyperbolic& k, const Event& x, const Event& xp) {
  if (std::abs(x[2] - xp[2]) > 1e-12 || std::abs(x[3] - xp[3]) > 1e-12)
    throw contract_error("RW kernel: events must share the transverse angles");
  double deta = x[0] - xp[0];
  const double dchi = x[1] - xp[1];
  // Hermiticity: evaluate at |deta| and conjugate for the reversed order
  const bool flip = deta < 0.0;
  if (flip) deta = -deta;
  // z = sqrt((deta - i eps)^2 - dchi^2) with the product-of-roots
  // continuation that keeps the causal side on the correct branch
  const cdouble f1{deta - dchi, -k.eps};
  const cdouble f2{deta + dchi, -k.eps};
  const cdouble z = std::sqrt(f1) * std::sqrt(f2);
  const double chi_ratio =
      std::abs(dchi) < 1e-12 ? 1.0 : dchi / std::sinh(dchi);
  const cdouble h = specfun::hankel1_2_c(k.mu * z);
  cdouble val = cdouble{0.0, 1.0} * k.mu * chi_ratio * h /
                (8.0 * pi * k.a * k.a * z);
  if (flip) val = std::conj(val);
  const cdouble sig = 0.5 * (dchi * dchi - deta * deta);
  return {val, near_null(sig, k.eps, deta + std::abs(dchi))};
}

inline KernelValue eval_desitter(const DeSitter& k, const Event& x, const Event& xp) {
  const double eta = x[0], etap = xp[0];
  if (eta * etap <= 0.0)
    throw contract_error("deSitter kernel: events must sit on one conformal patch");
  const double dx = x[1] - xp[1], dy = x[2] - xp[2], dz = x[3] - xp[3];
  const double r2 = dx * dx + dy * dy + dz * dz;
  const cdouble dte{eta - etap, -k.eps};
  const cdouble u = 1.0 + (dte * dte - r2) / (4.0 * eta * etap);
  const double pref = (0.25 - k.nu * k.nu) / (16.0 * pi * k.ell * k.ell) /
                      std::cos(pi * k.nu);
  const cdouble val =
      pref * specfun::gauss_2f1(1.5 + k.nu, 1.5 - k.nu, 2.0, u);
  const cdouble sig = 0.5 * (r2 - (eta - etap) * (eta - etap));
  return {val, near_null(sig, k.eps, coord_scale(x, xp))};
}

inline KernelValue eval_halfspace(const HalfSpaceDirichlet& k, const Event& x,
                                  const Event& xp) {
  if (x[3] < 0.0 || xp[3] < 0.0)
    throw contract_error("half-space kernel: z >= 0 required");
  const cdouble sig = sigma_eps(x, xp, k.eps);
  Event xi = xp;
  xi[3] = -xp[3];  // image source across the boundary
  const cdouble sig_img = sigma_eps(x, xi, k.eps);
  const cdouble val =
      1.0 / (8.0 * pi * pi * sig) - 1.0 / (8.0 * pi * pi * sig_img);
  return {val, near_null(sig, k.eps, coord_scale(x, xp))};
}

// one-particle profile F(t, r) by radial quadrature
inline cdouble one_particle_profile(const OneParticleGaussian& k, const Event& x) {
  const double t = x[0];
  const double r = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  const double s = k.sigma_k;
  const double C = 4.0 * pi / (std::pow(2.0 * pi, 1.5) *
                               std::pow(pi * s * s, 0.75) * std::sqrt(2.0));
  auto sinc = [](double u) {
    return std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
  };
  auto integrand = [&](double kk) -> cdouble {
    return std::pow(kk, 1.5) * std::exp(-0.5 * kk * kk / (s * s)) * sinc(kk * r) *
           std::exp(cdouble{0.0, -kk * t});
  };
  auto q = integrate(integrand, 0.0, 10.0 * s + 10.0 / std::max(r + std::abs(t), 1.0),
                     QuadOptions{1e-12, 1e-10, 20000});
  return C * q.value;
}

inline KernelValue eval_one_particle(const OneParticleGaussian& k, const Event& x,
                                     const Event& xp) {
  const auto vac = eval_massless(MinkowskiMassless{k.eps}, x, xp);
  const cdouble F1 = one_particle_profile(k, x);
  const cdouble F2 = one_particle_profile(k, xp);
  return {vac.value + F1 * std::conj(F2) + F2 * std::conj(F1), vac.near_lightcone};
}

}  // namespace detail

inline KernelValue kernel_eval(const WightmanKernel& kernel, const Event& x,
                               const Event& xp) {
  bool coincident = true;
  for (int i = 0; i < 4; ++i) coincident = coincident && x[i] == xp[i];
  if (coincident) throw singular_input_error("kernel_eval: coincident events");
  struct Visitor {
    const Event& x;
    const Event& xp;
    KernelValue operator()(const MinkowskiMassless& k) const {
      return detail::eval_massless(k, x, xp);
    }
    KernelValue operator()(const MinkowskiMassive& k) const {
      return detail::eval_massive(k, x, xp);
    }
    KernelValue operator()(const RWHyperbolic& k) const {
      return detail::eval_rw(k, x, xp);
    }
    KernelValue operator()(const DeSitter& k) const {
      return detail::eval_desitter(k, x, xp);
    }
    KernelValue operator()(const HalfSpaceDirichlet& k) const {
      return detail::eval_halfspace(k, x, xp);
    }
    KernelValue operator()(const OneParticleGaussian& k) const {
      return detail::eval_one_particle(k, x, xp);
    }
  };
  return std::visit(Visitor{x, xp}, kernel);
}

// ---------------------------------------------------------------------------
// Lattice of interaction events and the discrete metric estimate

enum class Chart { Inertial, Rindler, ConformalRW, ConformalDeSitter, HalfSpace };

struct LatticeSpec {
  Chart chart = Chart::Inertial;
  double rindler_a = 1.0;      // proper-acceleration scale of the Rindler chart
  double rw_a = 1.0;           // scale factor of the static cosmology chart
  double desitter_ell = 1.0;   // curvature radius of the expanding chart
  double spacing = 0.1;        // coordinate spacing L, all axes
  std::array<int, 4> extents{2, 2, 2, 2};
  Event base{0.0, 1.0, 0.0, 0.0};

  int active_dims() const { return chart == Chart::ConformalRW ? 2 : 4; }

  void validate() const {
    if (!(spacing > 0.0)) throw contract_error("LatticeSpec: spacing must be > 0");
    for (int d = 0; d < active_dims(); ++d)
      if (extents[d] < 2)
        throw contract_error("LatticeSpec: need at least 2 sites per active axis");
    if (chart == Chart::Rindler && base[1] <= spacing)
      throw contract_error("LatticeSpec: Rindler chart needs X > L > 0");
    if (chart == Chart::HalfSpace && base[3] < 0.0)
      throw contract_error("LatticeSpec: half-space chart needs z >= 0");
    if (chart == Chart::ConformalDeSitter && base[0] == 0.0)
      throw contract_error("LatticeSpec: deSitter chart needs eta != 0");
  }

  Event site(const std::array<int, 4>& idx) const {
    Event e = base;
    for (int d = 0; d < 4; ++d) e[d] += spacing * idx[d];
    return e;
  }

  // exact chart metric at an event (diagonal for every chart used here)
  std::array<double, 4> exact_metric_diag(const Event& e) const {
    switch (chart) {
      case Chart::Inertial:
      case Chart::HalfSpace:
        return {-1.0, 1.0, 1.0, 1.0};
      case Chart::Rindler: {
        const double aX = rindler_a * e[1];
        return {-aX * aX, 1.0, 1.0, 1.0};
      }
      case Chart::ConformalRW:
        return {-rw_a * rw_a, rw_a * rw_a, 0.0, 0.0};
      case Chart::ConformalDeSitter: {
        const double f = desitter_ell * desitter_ell / (e[0] * e[0]);
        return {-f, f, f, f};
      }
    }
    throw contract_error("unknown chart");
  }

  // kernel-native coordinates of a chart event (identity except Rindler,
  // whose vacuum is the inertial one)
  Event kernel_coords(const Event& e) const {
    if (chart != Chart::Rindler) return e;
    const double T = e[0], X = e[1];
    return {X * std::sinh(rindler_a * T), X * std::cosh(rindler_a * T), e[2], e[3]};
  }
};

struct SiteEstimate {
  Event coords;
  std::array<std::array<cdouble, 4>, 4> g_est{};   // estimated metric components
  std::array<double, 4> g_exact_diag{};
  double residual = 0.0;       // max |Re g_est - g_exact| over active components
  double imag_norm = 0.0;      // max |Im g_est|
  bool failed = false;         // kernel failure or vanishing W in the stencil
};

struct MetricEstimate {
  std::vector<SiteEstimate> sites;
  double max_residual = 0.0;   // over non-failed sites
  int n_failed = 0;
};

// Four-point stencil for g_{mu nu}(x) = -(1/8 pi^2) d_mu d_nu' W^{-1} on a
// lattice of spacing L; the inverse correlator at coincident arguments is
// zero by the short-distance behaviour of W.
inline MetricEstimate discrete_metric(const WightmanKernel& kernel,
                                      const LatticeSpec& lattice) {
  lattice.validate();
  const int dims = lattice.active_dims();
  const double L = lattice.spacing;

  MetricEstimate out;
  std::array<int, 4> idx{0, 0, 0, 0};
  // iterate over sites whose +1 shifts exist along every active axis
  std::function<void(int)> recurse = [&](int d) {
    if (d == 4) {
      SiteEstimate site;
      site.coords = lattice.site(idx);
      site.g_exact_diag = lattice.exact_metric_diag(site.coords);
      const double wscale = 1.0 / (8.0 * pi * pi * 2.0 * L * L);
      auto winv = [&](const std::array<int, 4>& i1,
                      const std::array<int, 4>& i2) -> cdouble {
        bool same = i1 == i2;
        if (same) return {0.0, 0.0};
        const auto v = kernel_eval(kernel, lattice.kernel_coords(lattice.site(i1)),
                                   lattice.kernel_coords(lattice.site(i2)));
        if (std::abs(v.value) < 1e-4 * wscale) {
          site.failed = true;  // the estimate divides by a vanishing W
          return {0.0, 0.0};
        }
        return 1.0 / v.value;
      };
      try {
        for (int mu = 0; mu < dims; ++mu) {
          for (int nu = 0; nu < dims; ++nu) {
            auto ip_mu = idx, ip_nu = idx, ip_munu_a = idx, ip_munu_b = idx;
            ip_mu[mu] += 1;
            ip_nu[nu] += 1;
            ip_munu_a[nu] += 1;
            ip_munu_b[mu] += 1;
            const cdouble num = winv(ip_munu_a, ip_munu_b) - winv(idx, ip_munu_b) -
                                winv(ip_munu_a, idx);
            site.g_est[mu][nu] = -num / (8.0 * pi * pi * L * L);
          }
        }
      } catch (const std::exception&) {
        site.failed = true;
      }
      if (!site.failed) {
        for (int mu = 0; mu < dims; ++mu)
          for (int nu = 0; nu < dims; ++nu) {
            const double exact = mu == nu ? site.g_exact_diag[mu] : 0.0;
            site.residual =
                std::max(site.residual, std::abs(site.g_est[mu][nu].real() - exact));
            site.imag_norm = std::max(site.imag_norm, std::abs(site.g_est[mu][nu].imag()));
          }
        out.max_residual = std::max(out.max_residual, site.residual);
      } else {
        ++out.n_failed;
      }
      out.sites.push_back(std::move(site));
      return;
    }
    const int lim = d < dims ? lattice.extents[d] - 1 : 1;
    for (idx[d] = 0; idx[d] < lim; ++idx[d]) recurse(d + 1);
    idx[d] = 0;
  };
  recurse(0);
  return out;
}

// ---------------------------------------------------------------------------
// Detector-based correlator estimates

struct SpacelikeEstimate {
  double W_est;
  bool conditioning_warning = false;  // a sine factor below 0.1
};

// Invert the monopole-correlator relation <mu_A mu_B> = 4 lambda^2 sA sB W
// for spacelike event pairs; sA/sB are the measurement-phase sine factors.
inline SpacelikeEstimate detector_estimate_spacelike(double correlator, double lambda,
                                                     double sinA = 1.0,
                                                     double sinB = 1.0) {
  if (lambda == 0.0) throw contract_error("detector_estimate_spacelike: lambda = 0");
  SpacelikeEstimate out;
  out.conditioning_warning = std::abs(sinA) < 0.1 || std::abs(sinB) < 0.1;
  if (sinA == 0.0 || sinB == 0.0)
    throw contract_error("detector_estimate_spacelike: vanishing phase factor");
  out.W_est = correlator / (4.0 * lambda * lambda * sinA * sinB);
  return out;
}

// forward model of the same relation, for synthetic data
inline double monopole_correlator(double W, double lambda, double sinA = 1.0,
                                  double sinB = 1.0) {
  return 4.0 * lambda * lambda * sinA * sinB * W;
}

struct TimelikeSetting {
  double omega_dtau;  // Omega * (tau_2 - tau_1) of the two-interaction probe
  double P12;         // excitation probability with both interactions
  double P1;          // single-interaction probabilities
  double P2;
};

// Solve the two-setting linear system
//   cos(Om dtau) Re W + sin(Om dtau) Im W = (P12 - P1 - P2)/(2 lambda^2)
// for the complex correlator between two timelike events.
inline cdouble detector_estimate_timelike(const TimelikeSetting& s1,
                                          const TimelikeSetting& s2, double lambda) {
  const double a1 = std::cos(s1.omega_dtau), b1 = std::sin(s1.omega_dtau);
  const double a2 = std::cos(s2.omega_dtau), b2 = std::sin(s2.omega_dtau);
  const double det = a1 * b2 - a2 * b1;
  if (std::abs(det) < 0.1)
    throw contract_error(
        "detector_estimate_timelike: settings nearly degenerate; offset the "
        "phases by about pi/2");
  const double r1 = (s1.P12 - s1.P1 - s1.P2) / (2.0 * lambda * lambda);
  const double r2 = (s2.P12 - s2.P1 - s2.P2) / (2.0 * lambda * lambda);
  return {(r1 * b2 - r2 * b1) / det, (a1 * r2 - a2 * r1) / det};
}

// forward model for synthetic probabilities at a given correlator value
inline double timelike_probability_shift(cdouble W, double omega_dtau, double lambda) {
  return 2.0 * lambda * lambda *
         (std::cos(omega_dtau) * W.real() + std::sin(omega_dtau) * W.imag());
}

}  // namespace lqft::metric
