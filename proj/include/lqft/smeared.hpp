#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "lqft/error.hpp"
#include "lqft/quadrature.hpp"
#include "lqft/specfun.hpp"

// Closed-form evaluation of the seven bi-distributions W, H, E, G_R, G_A,
// Delta, G_F of a massless scalar field smeared against Gaussian spacetime
// profiles, together with independent quadrature oracles (momentum space for
// the W family, real space for the retarded family) and the rules that turn
// amplitude correlators into field-momentum correlators.
//
// Every exponential below is assembled so that its real part is provably
// non-positive (a Cauchy-Schwarz bound on the frequency terms), which keeps
// the evaluators finite deep into regimes where the textbook expressions
// overflow (large gap-time products, large separations).

namespace lqft::smeared {

using cdouble = std::complex<double>;
using specfun::pi;
using specfun::sqrt_pi;

// One detector's spacetime coupling profile,
//   f(x) = exp(-|x-c|^2/(2 sigma^2)) / (2 pi sigma^2)^{3/2}
//           * exp(-(t-t_c)^2/(2 T^2)) * exp(i Omega t).
struct GaussianSmearing {
  double T = 1.0;       // time width, > 0
  double t_c = 0.0;     // center time
  double Omega = 0.0;   // phase frequency
  double sigma = 0.1;   // spatial width, > 0
  std::array<double, 3> center{0.0, 0.0, 0.0};

  void validate() const {
    if (!(T > 0.0) || !std::isfinite(T) || !(sigma > 0.0) || !std::isfinite(sigma) ||
        !std::isfinite(t_c) || !std::isfinite(Omega))
      throw contract_error("GaussianSmearing: T > 0, sigma > 0 and finite fields required");
  }
};

enum class BiKind { Wightman, Hadamard, Causal, Retarded, Advanced, Symmetric, Feynman };

inline const char* to_string(BiKind k) {
  switch (k) {
    case BiKind::Wightman: return "W";
    case BiKind::Hadamard: return "H";
    case BiKind::Causal: return "E";
    case BiKind::Retarded: return "GR";
    case BiKind::Advanced: return "GA";
    case BiKind::Symmetric: return "Delta";
    case BiKind::Feynman: return "GF";
  }
  return "?";
}

inline bool is_retarded_family(BiKind k) {
  return k == BiKind::Retarded || k == BiKind::Advanced || k == BiKind::Symmetric ||
         k == BiKind::Feynman;
}

struct PropagatorValue {
  cdouble value{0.0, 0.0};
  bool oracle_fallback = false;  // set when unequal sigmas forced quadrature
};

namespace detail {

struct PairGeometry {
  double T1, t1, O1, s1;
  double T2, t2, O2, s2;
  double L;       // |center1 - center2|
  double S;       // T1^2+T2^2+s1^2+s2^2
  double Q;       // T1^2+T2^2
  double t0;      // t1 - t2
  double D;       // O1 T1^2 - O2 T2^2
  double E0;      // (O1^2 T1^2 + O2^2 T2^2)/2
  cdouble phase;  // exp(i(O1 t1 + O2 t2))
};

inline PairGeometry geometry(const GaussianSmearing& f1, const GaussianSmearing& f2) {
  f1.validate();
  f2.validate();
  PairGeometry g;
  g.T1 = f1.T; g.t1 = f1.t_c; g.O1 = f1.Omega; g.s1 = f1.sigma;
  g.T2 = f2.T; g.t2 = f2.t_c; g.O2 = f2.Omega; g.s2 = f2.sigma;
  const double dx = f1.center[0] - f2.center[0];
  const double dy = f1.center[1] - f2.center[1];
  const double dz = f1.center[2] - f2.center[2];
  g.L = std::sqrt(dx * dx + dy * dy + dz * dz);
  g.S = g.T1 * g.T1 + g.T2 * g.T2 + g.s1 * g.s1 + g.s2 * g.s2;
  g.Q = g.T1 * g.T1 + g.T2 * g.T2;
  g.t0 = g.t1 - g.t2;
  g.D = g.O1 * g.T1 * g.T1 - g.O2 * g.T2 * g.T2;
  g.E0 = 0.5 * (g.O1 * g.O1 * g.T1 * g.T1 + g.O2 * g.O2 * g.T2 * g.T2);
  g.phase = std::exp(cdouble{0.0, g.O1 * g.t1 + g.O2 * g.t2});
  if (g.E0 > 2000.0)
    throw overflow_domain_error("smeared: Omega*T too large for double-precision evaluation");
  return g;
}

inline cdouble safe_exp(cdouble z) {
  if (z.real() > 1.0) throw numerical_error("smeared: positive exponent, unreachable regime");
  return std::exp(cdouble{std::min(z.real(), 0.0), z.imag()});
}

// Scaled Faddeeva stack: s_n = exp(-E0) w^{(n)}(-x), finite for every input
// reachable from valid smearings.
struct ScaledW {
  cdouble s0, s1, s2;
};

inline cdouble scaled_w0(cdouble z, double E0) {
  // exp(-E0) w(z)
  const double eE0 = std::exp(-E0);
  if (z.imag() >= 0.0) return eE0 * specfun::detail::faddeeva_upper(z);
  return 2.0 * safe_exp(-E0 + (-z) * (-z) * (-1.0)) -
         eE0 * specfun::detail::faddeeva_upper(-z);
}

inline ScaledW scaled_w(cdouble x, double E0) {
  ScaledW r;
  r.s0 = scaled_w0(-x, E0);
  const cdouble c{0.0, 2.0 / sqrt_pi * std::exp(-E0)};
  r.s1 = 2.0 * x * r.s0 + c;        // exp(-E0) w'(-x)
  r.s2 = -2.0 * r.s0 + 2.0 * x * r.s1;  // exp(-E0) w''(-x)
  return r;
}

// exp(-E0 - x^2) erf(A), fused through the Faddeeva function so the
// intermediate factors never overflow. `gauss` must equal safe_exp(-E0-x^2).
inline cdouble scaled_erf_product(cdouble gauss, cdouble x2, double E0, cdouble A) {
  double sign = 1.0;
  if (A.real() < 0.0) {
    A = -A;
    sign = -1.0;
  }
  const cdouble iA{-A.imag(), A.real()};
  const cdouble fused = safe_exp(-E0 - x2 - A * A) * specfun::detail::faddeeva_upper(iA);
  return sign * (gauss - fused);
}

inline double small_L_switch(const PairGeometry& g) {
  return 1e-3 * std::sqrt(0.5 * g.S);
}

// ---- W family ---------------------------------------------------------------

// W, H and E from their own printed closed forms, so the algebraic identities
// between the kinds stay genuine cross-checks.
struct WHE {
  cdouble W, H, E;
};

inline WHE closed_whe(const PairGeometry& g) {
  const double rt2S = std::sqrt(2.0 * g.S);
  const cdouble iD{0.0, g.D};
  WHE out;
  if (g.L > small_L_switch(g)) {
    const cdouble xp = (g.t0 + g.L + iD) / rt2S;
    const cdouble xm = (g.t0 - g.L + iD) / rt2S;
    const cdouble P0 = g.T1 * g.T2 * g.phase /
                       (4.0 * std::sqrt(2.0 * pi) * g.L * std::sqrt(g.S));
    const ScaledW wp = scaled_w(xp, g.E0);
    const ScaledW wm = scaled_w(xm, g.E0);
    out.W = P0 * cdouble{0.0, 1.0} * (wp.s0 - wm.s0);

    const cdouble gp = safe_exp(-g.E0 - xp * xp);
    const cdouble gm = safe_exp(-g.E0 - xm * xm);
    out.E = 2.0 * P0 * (gp - gm);

    // H = 2 P0 [exp(-xm^2) erfi(-xm) + exp(-xp^2) erfi(+xp)] with the fused
    // identity exp(-z^2) erfi(z) = -i (exp(-z^2) - w(-z)):
    const cdouble term_m = cdouble{0.0, -1.0} * (gm - scaled_w0(xm, g.E0));
    const cdouble term_p = cdouble{0.0, -1.0} * (gp - wp.s0);
    out.H = 2.0 * P0 * (term_m + term_p);
    return out;
  }

  // |L| -> 0: the brackets are odd in L; expand to third order and cancel the
  // 1/L prefactor analytically.
  const cdouble c = (g.t0 + iD) / rt2S;
  const double u = 1.0 / rt2S;
  const cdouble P0L = g.T1 * g.T2 * g.phase /
                      (4.0 * std::sqrt(2.0 * pi) * std::sqrt(g.S));
  const double L2 = g.L * g.L;

  // W bracket: w(-c-uL) - w(-c+uL) = -2[ uL w'(-c) + (uL)^3 w'''(-c)/6 ]
  const ScaledW wc = scaled_w(c, g.E0);
  const cdouble w3 = -4.0 * wc.s1 + 2.0 * c * wc.s2;  // exp(-E0) w'''(-c)
  out.W = P0L * cdouble{0.0, 1.0} * (-2.0) * (u * wc.s1 + u * u * u * w3 * L2 / 6.0);

  // E bracket: p(L) - p(-L), p(L) = exp(-E0 - (c+uL)^2)
  const cdouble g0 = safe_exp(-g.E0 - c * c);
  const cdouble p1 = -2.0 * u * c * g0;
  const cdouble p3 = (-8.0 * u * u * u * c * c * c + 12.0 * u * u * u * c) * g0;
  out.E = 2.0 * P0L * (2.0 * p1 + p3 * L2 / 3.0);

  out.H = 2.0 * out.W - cdouble{0.0, 1.0} * out.E;
  return out;
}

// ---- retarded family --------------------------------------------------------

struct RetardedSet {
  cdouble GR, GA, Delta;
};

// Closed forms; require sigma1 == sigma2.
inline RetardedSet closed_retarded(const PairGeometry& g) {
  if (std::abs(g.s1 - g.s2) > 1e-12 * std::max(g.s1, g.s2))
    throw unsupported_configuration("retarded-family closed forms require sigma1 == sigma2");
  const double s = g.s1;
  const double S2 = g.Q + 2.0 * s * s;
  const double rt2S = std::sqrt(2.0 * S2);
  const cdouble iD{0.0, g.D};
  const cdouble tD = g.t0 + iD;
  const double b = std::sqrt(g.Q) / (2.0 * s * std::sqrt(S2));
  const cdouble a = s * tD / (std::sqrt(g.Q) * std::sqrt(S2));

  RetardedSet out;
  if (g.L > 1e-3 * std::sqrt(0.5 * S2)) {
    const cdouble xp = (tD + g.L) / rt2S;
    const cdouble xm = (tD - g.L) / rt2S;
    const cdouble Ap = a + b * g.L;
    const cdouble Am = -a + b * g.L;
    const cdouble gm = safe_exp(-g.E0 - xm * xm);
    const cdouble gp = safe_exp(-g.E0 - xp * xp);
    const cdouble em_erf = scaled_erf_product(gm, xm * xm, g.E0, Ap);
    const cdouble ep_erf = scaled_erf_product(gp, xp * xp, g.E0, Am);
    const cdouble C = -g.T1 * g.T2 * g.phase /
                      (4.0 * std::sqrt(2.0 * pi) * g.L * std::sqrt(S2));
    out.GR = C * ((gm + em_erf) + (-gp + ep_erf));
    out.GA = C * ((-gm + em_erf) + (gp + ep_erf));
    out.Delta = 2.0 * C * (em_erf + ep_erf);
    return out;
  }

  // |L| -> 0 branch: bracket(L) = p(L) - p(-L) with
  //   p(L) = exp(-E0 - (tD - L)^2/(2 S2)) (kappa + erf(a + bL)).
  const cdouble c = tD / rt2S;
  const double u = 1.0 / rt2S;
  const cdouble g0 = safe_exp(-g.E0 - c * c);
  const cdouble q1 = 2.0 * u * c;   // (d/dL) log-gaussian at 0
  const double q2 = -2.0 * u * u;
  const cdouble Eh = safe_exp(-g.E0 - c * c - a * a);
  const cdouble H1 = 2.0 * b / sqrt_pi * Eh;             // g0 h'(0)
  const cdouble H2 = -2.0 * b * a * H1;                  // g0 h''(0)
  const cdouble H3 = (4.0 * a * a - 2.0) * b * b * H1;   // g0 h'''(0)
  const cdouble g0_erf_a = scaled_erf_product(g0, c * c, g.E0, a);

  auto bracket = [&](double kappa) -> cdouble {
    const cdouble gh0 = kappa * g0 + g0_erf_a;  // g0 h(0)
    const cdouble p1 = q1 * gh0 + H1;
    const cdouble p3 = (q1 * q1 * q1 + 3.0 * q1 * q2) * gh0 +
                       3.0 * (q1 * q1 + q2) * H1 + 3.0 * q1 * H2 + H3;
    return 2.0 * p1 + p3 * g.L * g.L / 3.0;
  };

  const cdouble CL = -g.T1 * g.T2 * g.phase /
                     (4.0 * std::sqrt(2.0 * pi) * std::sqrt(S2));
  out.GR = CL * bracket(1.0);
  out.GA = CL * bracket(-1.0);
  out.Delta = 2.0 * CL * bracket(0.0);
  return out;
}

// ---- oracles ------------------------------------------------------------------

// Momentum-space radial integral for W.
inline cdouble oracle_W(const PairGeometry& g, const QuadOptions& opt) {
  const double Dt = g.O2 * g.T2 * g.T2 - g.O1 * g.T1 * g.T1;  // -D
  const double kpeak = std::max(0.0, -Dt / g.S);
  const double kmax = kpeak + 42.0 / std::sqrt(g.S);
  auto integrand = [&](double k) -> cdouble {
    return std::sin(k * g.L) *
           safe_exp(cdouble{-g.E0 - 0.5 * g.S * k * k - k * Dt, -k * g.t0});
  };
  std::vector<double> pts{0.0};
  if (kpeak > 0.0 && kpeak < kmax) pts.push_back(kpeak);
  pts.push_back(kmax);
  const auto r = integrate_segments(integrand, pts, opt);
  return g.T1 * g.T2 * g.phase / (2.0 * pi * g.L) * r.value;
}

// Real-space oracle for G_R, valid for any sigma pair:
//   G_R(f1,f2) = -(1/((2 pi)^{3/2} ss L)) Int_0^inf dr
//       (1/2)[e^{-(r-L)^2/(2 ss^2)} - e^{-(r+L)^2/(2 ss^2)}] I_t(r),
// with ss^2 = s1^2 + s2^2 and I_t the completed-square time integral of the
// two switching Gaussians at retarded delay r.
inline cdouble oracle_GR(const PairGeometry& g, const QuadOptions& opt) {
  const double ss2 = g.s1 * g.s1 + g.s2 * g.s2;
  const double ss = std::sqrt(ss2);
  const double T1 = g.T1, T2 = g.T2, Q = g.Q;
  const double Tbar2 = T1 * T1 * T2 * T2 / Q;
  const double Osum = g.O1 + g.O2;
  const double pref_t = std::sqrt(2.0 * pi * Tbar2);
  auto integrand = [&](double r) -> cdouble {
    const double em = -0.5 * (r - g.L) * (r - g.L) / ss2;
    const double ep = -0.5 * (r + g.L) * (r + g.L) / ss2;
    const double gau = 0.5 * (std::exp(em) - std::exp(ep));
    const double tbar = (g.t1 * T2 * T2 + (r + g.t2) * T1 * T1) / Q;
    const cdouble expo{-0.5 * (g.t0 - r) * (g.t0 - r) / Q - 0.5 * Osum * Osum * Tbar2,
                       Osum * tbar - g.O2 * r};
    return gau * pref_t * safe_exp(expo);
  };
  const double lo = std::max(0.0, std::min(g.L - 14.0 * ss, g.t0 - 14.0 * std::sqrt(Q)));
  const double hi = std::max(g.L + 14.0 * ss, g.t0 + 14.0 * std::sqrt(Q));
  std::vector<double> pts{lo, hi};
  if (g.L > lo && g.L < hi) pts.push_back(g.L);
  if (g.t0 > lo && g.t0 < hi) pts.push_back(g.t0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const auto r = integrate_segments(integrand, pts, opt);
  return -r.value / (std::pow(2.0 * pi, 1.5) * ss * g.L);
}

inline PairGeometry swapped(const PairGeometry& g) {
  PairGeometry s = g;
  std::swap(s.T1, s.T2);
  std::swap(s.t1, s.t2);
  std::swap(s.O1, s.O2);
  std::swap(s.s1, s.s2);
  s.t0 = -g.t0;
  s.D = -g.D;
  return s;  // L, S, Q, E0, phase are symmetric
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline PropagatorValue bidistribution_oracle(BiKind kind, const GaussianSmearing& f1,
                                             const GaussianSmearing& f2,
                                             const QuadOptions& opt = {}) {
  const auto g = detail::geometry(f1, f2);
  if (g.L <= 0.0)
    throw unsupported_configuration("oracle needs |center1 - center2| > 0");
  PropagatorValue out;
  const cdouble i{0.0, 1.0};
  switch (kind) {
    case BiKind::Wightman:
      out.value = detail::oracle_W(g, opt);
      return out;
    case BiKind::Hadamard:
      out.value = detail::oracle_W(g, opt) + detail::oracle_W(detail::swapped(g), opt);
      return out;
    case BiKind::Causal:
      out.value =
          (detail::oracle_W(g, opt) - detail::oracle_W(detail::swapped(g), opt)) / i;
      return out;
    case BiKind::Retarded:
      out.value = detail::oracle_GR(g, opt);
      return out;
    case BiKind::Advanced:
      out.value = detail::oracle_GR(detail::swapped(g), opt);
      return out;
    case BiKind::Symmetric:
      out.value = detail::oracle_GR(g, opt) + detail::oracle_GR(detail::swapped(g), opt);
      return out;
    case BiKind::Feynman: {
      const cdouble H =
          detail::oracle_W(g, opt) + detail::oracle_W(detail::swapped(g), opt);
      const cdouble Delta =
          detail::oracle_GR(g, opt) + detail::oracle_GR(detail::swapped(g), opt);
      out.value = 0.5 * H + 0.5 * i * Delta;
      return out;
    }
  }
  throw contract_error("unknown bi-distribution kind");
}

inline PropagatorValue bidistribution_closed(BiKind kind, const GaussianSmearing& f1,
                                             const GaussianSmearing& f2) {
  const auto g = detail::geometry(f1, f2);
  PropagatorValue out;
  switch (kind) {
    case BiKind::Wightman:
      out.value = detail::closed_whe(g).W;
      return out;
    case BiKind::Hadamard:
      out.value = detail::closed_whe(g).H;
      return out;
    case BiKind::Causal:
      out.value = detail::closed_whe(g).E;
      return out;
    default:
      break;
  }
  if (std::abs(g.s1 - g.s2) > 1e-12 * std::max(g.s1, g.s2)) {
    out = bidistribution_oracle(kind, f1, f2);
    out.oracle_fallback = true;
    return out;
  }
  const auto r = detail::closed_retarded(g);
  switch (kind) {
    case BiKind::Retarded: out.value = r.GR; break;
    case BiKind::Advanced: out.value = r.GA; break;
    case BiKind::Symmetric: out.value = r.Delta; break;
    case BiKind::Feynman:
      out.value = 0.5 * detail::closed_whe(g).H + cdouble{0.0, 0.5} * r.Delta;
      break;
    default: break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Field-momentum correlators: pi = d_t phi enters through
//   w(pi(f1) phi(f2)) = -(i/T1^2) dA/dOmega1 - (t1/T1^2 + i O1) A,
// and the mirrored rule on the second argument.

namespace detail {

struct ValueAndDerivs {
  cdouble A, d1, d2, d12;
};

// Analytic Omega derivatives of the W-family closed forms.
inline ValueAndDerivs whe_analytic_derivs(BiKind kind, const PairGeometry& g) {
  const double rt2S = std::sqrt(2.0 * g.S);
  const cdouble iD{0.0, g.D};
  const cdouble xp = (g.t0 + g.L + iD) / rt2S;
  const cdouble xm = (g.t0 - g.L + iD) / rt2S;
  const cdouble dx1{0.0, g.T1 * g.T1 / rt2S};
  const cdouble dx2{0.0, -g.T2 * g.T2 / rt2S};
  const double e1 = g.O1 * g.T1 * g.T1;
  const double e2 = g.O2 * g.T2 * g.T2;
  const cdouble it1{0.0, g.t1}, it2{0.0, g.t2};
  const cdouble i{0.0, 1.0};
  const cdouble P0 = g.T1 * g.T2 * g.phase /
                     (4.0 * std::sqrt(2.0 * pi) * g.L * std::sqrt(g.S));

  ValueAndDerivs W, E;
  {
    const ScaledW wp = scaled_w(xp, g.E0);
    const ScaledW wm = scaled_w(xm, g.E0);
    const cdouble F = wp.s0 - wm.s0;
    const cdouble S1 = wp.s1 - wm.s1;
    const cdouble S2 = wp.s2 - wm.s2;
    const cdouble F1 = -e1 * F - S1 * dx1;
    const cdouble F2 = -e2 * F - S1 * dx2;
    const cdouble F12 = -e1 * F2 + e2 * S1 * dx1 + S2 * dx1 * dx2;
    W.A = P0 * i * F;
    W.d1 = it1 * W.A + P0 * i * F1;
    W.d2 = it2 * W.A + P0 * i * F2;
    W.d12 = it1 * W.d2 + it2 * (P0 * i * F1) + P0 * i * F12;
  }
  {
    const cdouble up = safe_exp(-g.E0 - xp * xp);
    const cdouble um = safe_exp(-g.E0 - xm * xm);
    const cdouble a1p = -e1 - 2.0 * xp * dx1, a2p = -e2 - 2.0 * xp * dx2;
    const cdouble a1m = -e1 - 2.0 * xm * dx1, a2m = -e2 - 2.0 * xm * dx2;
    const cdouble F = up - um;
    const cdouble F1 = up * a1p - um * a1m;
    const cdouble F2 = up * a2p - um * a2m;
    const cdouble F12 = up * (a1p * a2p - 2.0 * dx1 * dx2) -
                        um * (a1m * a2m - 2.0 * dx1 * dx2);
    E.A = 2.0 * P0 * F;
    E.d1 = it1 * E.A + 2.0 * P0 * F1;
    E.d2 = it2 * E.A + 2.0 * P0 * F2;
    E.d12 = it1 * E.d2 + it2 * (2.0 * P0 * F1) + 2.0 * P0 * F12;
  }
  switch (kind) {
    case BiKind::Wightman: return W;
    case BiKind::Causal: return E;
    default: {
      ValueAndDerivs H;
      H.A = 2.0 * W.A - i * E.A;
      H.d1 = 2.0 * W.d1 - i * E.d1;
      H.d2 = 2.0 * W.d2 - i * E.d2;
      H.d12 = 2.0 * W.d12 - i * E.d12;
      return H;
    }
  }
}

// 5-point central stencils in Omega (used for the retarded family and near
// coincidence, where the Taylor branch is smooth in Omega anyway).
inline ValueAndDerivs stencil_derivs(BiKind kind, const GaussianSmearing& f1,
                                     const GaussianSmearing& f2) {
  auto fv = [&](double o1, double o2) {
    GaussianSmearing a = f1, b = f2;
    a.Omega = o1;
    b.Omega = o2;
    return bidistribution_closed(kind, a, b).value;
  };
  const double h1 = 1e-5 / f1.T, h2 = 1e-5 / f2.T;
  auto d_o1 = [&](double o2) {
    return (-fv(f1.Omega + 2 * h1, o2) + 8.0 * fv(f1.Omega + h1, o2) -
            8.0 * fv(f1.Omega - h1, o2) + fv(f1.Omega - 2 * h1, o2)) /
           (12.0 * h1);
  };
  ValueAndDerivs r;
  r.A = fv(f1.Omega, f2.Omega);
  r.d1 = d_o1(f2.Omega);
  r.d2 = (-fv(f1.Omega, f2.Omega + 2 * h2) + 8.0 * fv(f1.Omega, f2.Omega + h2) -
          8.0 * fv(f1.Omega, f2.Omega - h2) + fv(f1.Omega, f2.Omega - 2 * h2)) /
         (12.0 * h2);
  r.d12 = (-d_o1(f2.Omega + 2 * h2) + 8.0 * d_o1(f2.Omega + h2) -
           8.0 * d_o1(f2.Omega - h2) + d_o1(f2.Omega - 2 * h2)) /
          (12.0 * h2);
  return r;
}

}  // namespace detail

// Correlators with the field momentum in either slot; deriv1/deriv2 flag a
// time derivative on the corresponding argument. force_stencil exists for
// the finite-difference-vs-analytic self test.
inline PropagatorValue momentum_smeared(BiKind kind, const GaussianSmearing& f1,
                                        const GaussianSmearing& f2, int deriv1,
                                        int deriv2, bool force_stencil = false) {
  if ((deriv1 != 0 && deriv1 != 1) || (deriv2 != 0 && deriv2 != 1))
    throw contract_error("momentum_smeared: derivative flags must be 0 or 1");
  if (deriv1 == 0 && deriv2 == 0) return bidistribution_closed(kind, f1, f2);

  const auto g = detail::geometry(f1, f2);
  detail::ValueAndDerivs v;
  if (!force_stencil && !is_retarded_family(kind) && g.L > detail::small_L_switch(g)) {
    v = detail::whe_analytic_derivs(kind, g);
  } else {
    v = detail::stencil_derivs(kind, f1, f2);
  }
  const cdouble i{0.0, 1.0};
  const double T1sq = f1.T * f1.T, T2sq = f2.T * f2.T;
  const cdouble op1 = -(f1.t_c / T1sq + i * f1.Omega);
  const cdouble op2 = -(f2.t_c / T2sq + i * f2.Omega);
  PropagatorValue out;
  if (deriv1 && !deriv2) {
    out.value = -i / T1sq * v.d1 + op1 * v.A;
  } else if (!deriv1 && deriv2) {
    out.value = -i / T2sq * v.d2 + op2 * v.A;
  } else {
    out.value = (-i / T1sq) * (-i / T2sq) * v.d12 + (-i / T1sq) * op2 * v.d1 +
                op1 * (-i / T2sq) * v.d2 + op1 * op2 * v.A;
  }
  return out;
}

// Smeared self-pair constants of an Omega = 0 detector profile (|L| = 0
// limit): W(Lam,Lam) = 1/(4 pi alpha^2) and, under this kernel convention,
// G_R(Lam,Lam) = -(T/sigma)/(4 pi alpha^2) with alpha^2 = 1 + sigma^2/T^2.
struct SelfPair {
  double W;
  double GR;
};

inline SelfPair self_pair_constants(double T, double sigma) {
  GaussianSmearing f;
  f.T = T;
  f.sigma = sigma;
  f.Omega = 0.0;
  const auto g = detail::geometry(f, f);
  return SelfPair{detail::closed_whe(g).W.real(),
                  detail::closed_retarded(g).GR.real()};
}

}  // namespace lqft::smeared
