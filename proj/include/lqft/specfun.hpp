#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "lqft/error.hpp"

// Special-function kernel used by every closed form in the library:
// Faddeeva function, complex error function, scaled erfi, Bessel/Hankel
// evaluators, the Gauss hypergeometric function near its z=1 point, and a
// few small helpers (digamma, spherical Bessel).

namespace lqft::specfun {

using cdouble = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt_pi = 1.7724538509055160273;

namespace detail {

// Weideman (1994) rational approximation of the Faddeeva function on the
// closed upper half plane. Coefficients are computed once from a direct DFT.
template <int N>
const std::array<double, N>& weideman_coeffs() {
  static const std::array<double, N> coeffs = [] {
    constexpr int M = 2 * N;
    constexpr int M2 = 2 * M;
    const double L = std::sqrt(N / std::sqrt(2.0));
    // sample f(theta) = exp(-t^2)(L^2 + t^2), t = L tan(theta/2)
    std::array<double, M2> f{};
    f[0] = 0.0;
    for (int j = 1; j < M2; ++j) {
      const int k = j - M;  // k in [-M+1, M-1]
      const double theta = k * pi / M;
      const double t = L * std::tan(0.5 * theta);
      f[j] = std::exp(-t * t) * (L * L + t * t);
    }
    // g = fftshift(f)
    std::array<double, M2> g{};
    for (int j = 0; j < M2; ++j) g[j] = f[(j + M) % M2];
    std::array<double, N> a{};
    for (int k = 1; k <= N; ++k) {
      double re = 0.0;
      for (int n = 0; n < M2; ++n)
        re += g[n] * std::cos(2.0 * pi * k * n / M2);
      a[k - 1] = re / M2;
    }
    return a;
  }();
  return coeffs;
}

inline cdouble faddeeva_upper(cdouble z) {
  // asymptotic expansion for large |z| (relative error < 1e-14 at |z| >= 12)
  const double az2 = std::norm(z);
  if (az2 >= 144.0) {
    const cdouble iz2 = 0.5 / (z * z);
    cdouble term{1.0, 0.0}, sum{1.0, 0.0};
    for (int m = 1; m <= 12; ++m) {
      term *= static_cast<double>(2 * m - 1) * iz2;
      sum += term;
      if (std::norm(term) < 1e-32 * std::norm(sum)) break;
    }
    return cdouble{0.0, 1.0} / (sqrt_pi * z) * sum;
  }
  constexpr int N = 48;
  const auto& a = weideman_coeffs<N>();
  const double L = std::sqrt(N / std::sqrt(2.0));
  const cdouble iz{-z.imag(), z.real()};  // i*z
  const cdouble d = L - iz;
  const cdouble Z = (L + iz) / d;
  cdouble p{0.0, 0.0};
  for (int k = N - 1; k >= 0; --k) p = p * Z + a[k];
  return 2.0 * p / (d * d) + (1.0 / sqrt_pi) / d;
}

}  // namespace detail

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), any z. The reflection to the
// lower half plane uses w(z) = 2 exp(-z^2) - w(-z) and throws when the
// exp(-z^2) factor overflows double range.
inline cdouble faddeeva_w(cdouble z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw domain_error("faddeeva_w: non-finite argument");
  if (z.imag() >= 0.0) return detail::faddeeva_upper(z);
  const cdouble mz2 = -z * z;
  if (mz2.real() > 700.0)
    throw overflow_domain_error("faddeeva_w: exp(-z^2) overflows in lower half plane");
  return 2.0 * std::exp(mz2) - detail::faddeeva_upper(-z);
}

// Scaled complementary error function erfcx(x) = exp(x^2) erfc(x), real x.
inline double erfcx(double x) {
  if (x >= 0.0) return detail::faddeeva_upper(cdouble{0.0, x}).real();
  if (x < -26.5) throw overflow_domain_error("erfcx overflows for x < -26.5");
  return 2.0 * std::exp(x * x) - detail::faddeeva_upper(cdouble{0.0, -x}).real();
}

// Dawson integral F(x) = exp(-x^2) int_0^x exp(t^2) dt.
inline double dawson(double x) {
  return 0.5 * sqrt_pi * detail::faddeeva_upper(cdouble{x, 0.0}).imag();
}

// erf for complex arguments. Maclaurin series for |z| <= 1, elsewhere the
// Faddeeva route erf(z) = 1 - exp(-z^2) w(iz) (with odd reflection).
inline cdouble complex_erf(cdouble z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw domain_error("complex_erf: non-finite argument");
  if (std::abs(z) > 1e6) throw domain_error("complex_erf: |z| > 1e6");
  const double az = std::abs(z);
  if (az <= 1.0) {
    const cdouble z2 = z * z;
    cdouble term = z, sum = z;
    for (int n = 1; n < 40; ++n) {
      term *= -z2 / static_cast<double>(n);
      const cdouble add = term / static_cast<double>(2 * n + 1);
      sum += add;
      if (std::norm(add) < 1e-34 * std::norm(sum)) break;
    }
    return 2.0 / sqrt_pi * sum;
  }
  if (z.real() < 0.0) return -complex_erf(-z);
  const cdouble mz2 = -z * z;
  if (mz2.real() > 700.0)
    throw overflow_domain_error("complex_erf overflows: Im(z)^2 - Re(z)^2 > 700");
  const cdouble iz{-z.imag(), z.real()};
  return 1.0 - std::exp(mz2) * detail::faddeeva_upper(iz);
}

inline cdouble complex_erfc(cdouble z) { return 1.0 - complex_erf(z); }

// Imaginary error function, real argument. Valid for |x| <= 26 or so before
// exp(x^2) overflows; use erfi_scaled beyond that.
inline double erfi(double x) {
  if (!std::isfinite(x)) throw domain_error("erfi: non-finite argument");
  if (std::abs(x) > 25.0) throw domain_error("erfi: |x| > 25, use erfi_scaled");
  return 2.0 / sqrt_pi * std::exp(x * x) * dawson(x);
}

// exp(-x^2) erfi(x) = (2/sqrt(pi)) F(x); valid for all real x.
inline double erfi_scaled(double x) {
  if (!std::isfinite(x)) throw domain_error("erfi_scaled: non-finite argument");
  return 2.0 / sqrt_pi * dawson(x);
}

// ---------------------------------------------------------------------------
// Bessel evaluators

namespace detail {

inline cdouble j1_series(cdouble z) {
  const cdouble q = -0.25 * z * z;
  cdouble term = 0.5 * z, sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= q / static_cast<double>(k * (k + 1));
    sum += term;
    if (std::norm(term) < 1e-34 * std::norm(sum)) break;
  }
  return sum;
}

inline double digamma_int(int n) {
  // psi(n) for small positive integers
  double s = -0.57721566490153286061;
  for (int k = 1; k < n; ++k) s += 1.0 / k;
  return s;
}

inline cdouble y1_series(cdouble z) {
  // A&S 9.1.11 with n = 1; principal log
  const cdouble lz = std::log(0.5 * z);
  const cdouble q = -0.25 * z * z;
  cdouble term = 0.5 * z;  // (z/2)^{2k+1} / (k! (k+1)!) at k=0
  cdouble sum = term * (digamma_int(1) + digamma_int(2));
  for (int k = 1; k < 60; ++k) {
    term *= q / static_cast<double>(k * (k + 1));
    const cdouble add = term * (digamma_int(k + 1) + digamma_int(k + 2));
    sum += add;
    if (std::norm(add) < 1e-34 * std::norm(sum)) break;
  }
  return 2.0 / pi * lz * j1_series(z) - 2.0 / (pi * z) - sum / pi;
}

// Asymptotic Hankel H1^{(1)}/H1^{(2)} for |z| >= 12, |arg z| < pi.
inline cdouble hankel1_asym(cdouble z, int kind) {
  const double sgn = (kind == 1) ? 1.0 : -1.0;
  const cdouble omega = z - 0.75 * pi;
  cdouble sum{1.0, 0.0}, ak{1.0, 0.0};
  const double mu = 4.0;  // 4 nu^2 for nu = 1
  for (int k = 1; k <= 14; ++k) {
    const double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
    ak *= cdouble{0.0, sgn} * num / (8.0 * k * z);
    sum += ak;
    if (std::norm(ak) < 1e-30 * std::norm(sum)) break;
  }
  const cdouble phase = std::exp(cdouble{0.0, sgn} * omega);
  return std::sqrt(2.0 / (pi * z)) * phase * sum;
}

}  // namespace detail

inline double bessel_j1(double x) {
  const double ax = std::abs(x);
  if (ax <= 12.0) return detail::j1_series(cdouble{x, 0}).real();
  const cdouble h = detail::hankel1_asym(cdouble{ax, 0.0}, 1);
  double v = h.real();  // J1 = Re H1^{(1)} for real argument
  return x < 0 ? -v : v;
}

inline double bessel_y1(double x) {
  if (x <= 0.0) throw singular_input_error("bessel_y1 requires x > 0");
  if (x <= 12.0) return detail::y1_series(cdouble{x, 0}).real();
  return detail::hankel1_asym(cdouble{x, 0.0}, 1).imag();
}

// Hankel function of the second kind H1^{(2)}(x) = J1(x) - i Y1(x), x > 0.
inline cdouble hankel1_2(double x) {
  if (x == 0.0) throw singular_input_error("hankel1_2 diverges at x = 0");
  if (x < 0.0) throw domain_error("hankel1_2: negative real argument is on the Y1 cut");
  if (x <= 12.0)
    return detail::j1_series(cdouble{x, 0}) -
           cdouble{0, 1} * detail::y1_series(cdouble{x, 0});
  return detail::hankel1_asym(cdouble{x, 0.0}, 2);
}

// Complex-argument H1^{(2)}, principal branch (cut on the negative real
// axis), used by the curved-space Wightman kernels.
inline cdouble hankel1_2_c(cdouble z) {
  if (std::abs(z) == 0.0) throw singular_input_error("hankel1_2_c diverges at z = 0");
  if (z.real() < 0.0 && z.imag() == 0.0)
    throw domain_error("hankel1_2_c: argument on the branch cut");
  if (std::abs(z) <= 12.0)
    return detail::j1_series(z) - cdouble{0, 1} * detail::y1_series(z);
  return detail::hankel1_asym(z, 2);
}

// I1(sqrt z)/sqrt z, analytically extended: entire in z, equals 1/2 at z = 0
// and J1(sqrt(-z))/sqrt(-z) for z < 0. Series hits heavy cancellation for
// very negative z, so that side switches to the J1 evaluator.
inline double bessel_i1_ratio(double z) {
  if (!std::isfinite(z)) throw domain_error("bessel_i1_ratio: non-finite argument");
  if (std::abs(z) > 1e4) throw domain_error("bessel_i1_ratio: |z| > 1e4");
  if (z < -140.0) {
    const double x = std::sqrt(-z);
    return bessel_j1(x) / x;
  }
  double term = 0.5, sum = 0.5;
  for (int k = 1; k < 200; ++k) {
    term *= 0.25 * z / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

// Entire-function variant for complex z (used with the regularized world
// function of the massive Minkowski kernel).
inline cdouble bessel_i1_ratio_c(cdouble z) {
  if (std::abs(z) > 200.0)
    throw domain_error("bessel_i1_ratio_c: |z| > 200 outside validated range");
  cdouble term{0.5, 0.0}, sum{0.5, 0.0};
  for (int k = 1; k < 200; ++k) {
    term *= 0.25 * z / static_cast<double>(k * (k + 1));
    sum += term;
    if (std::norm(term) < 1e-34 * std::norm(sum)) break;
  }
  return sum;
}

// Spherical Bessel j_n for n <= 10: power series near the origin, upward
// trigonometric recurrence elsewhere.
inline double spherical_bessel_j(int n, double x) {
  if (n < 0 || n > 10) throw contract_error("spherical_bessel_j: order out of range");
  const double ax = std::abs(x);
  if (ax < 0.5 * (n + 1) || ax < 1e-2) {
    // x^n / (2n+1)!! * sum_k (-x^2/2)^k / (k! (2n+2k+1)!!) ... series form
    double dfact = 1.0;
    for (int k = 1; k <= 2 * n + 1; k += 2) dfact *= k;
    double pref = std::pow(x, n) / dfact;
    double term = 1.0, sum = 1.0;
    const double x2 = x * x;
    for (int k = 1; k < 40; ++k) {
      term *= -0.5 * x2 / (k * (2.0 * n + 2.0 * k + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return pref * sum;
  }
  double jm1 = std::sin(x) / x;                       // j0
  if (n == 0) return jm1;
  double j = jm1 / x - std::cos(x) / x;               // j1
  for (int k = 1; k < n; ++k) {
    const double jn = (2.0 * k + 1.0) / x * j - jm1;
    jm1 = j;
    j = jn;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Digamma and the Gauss hypergeometric function

inline double digamma(double x) {
  if (!std::isfinite(x)) throw domain_error("digamma: non-finite argument");
  if (x <= 0.0 && x == std::floor(x))
    throw singular_input_error("digamma pole at non-positive integer");
  if (x < 0.0) return digamma(1.0 - x) - pi / std::tan(pi * x);
  double result = 0.0;
  while (x < 12.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
                    inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 -
                    inv2 * (691.0 / 32760.0))))));
  return result;
}

namespace detail {

inline cdouble hyp_series(double a, double b, double c, cdouble z) {
  cdouble term{1.0, 0.0}, sum{1.0, 0.0};
  for (int n = 0; n < 600; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (std::norm(term) < 1e-32 * std::norm(sum)) return sum;
  }
  throw numerical_error("gauss_2f1: series did not converge");
}

inline bool near_int(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) < tol;
}

// Connection at z = 1 for c - a - b = m, a non-negative integer (DLMF
// 15.8.10 / 15.8.12), principal branch of log(1-z).
inline cdouble hyp_z1_integer(double a, double b, int m, cdouble w /* = 1-z */) {
  const double c = a + b + m;
  const cdouble logw = std::log(w);
  cdouble sum1{0.0, 0.0};
  if (m > 0) {
    // Gamma(m) Gamma(c) / (Gamma(a+m) Gamma(b+m)) sum_{k<m} ...
    double poch_a = 1.0, poch_b = 1.0, kfact = 1.0, poch_1m = 1.0;
    cdouble wk{1.0, 0.0};
    for (int k = 0; k < m; ++k) {
      sum1 += poch_a * poch_b / (kfact * poch_1m) * wk;
      poch_a *= (a + k);
      poch_b *= (b + k);
      kfact *= (k + 1.0);
      poch_1m *= (1.0 - m + k);
      wk *= w;
    }
    sum1 *= std::tgamma(static_cast<double>(m)) * std::tgamma(c) /
            (std::tgamma(a + m) * std::tgamma(b + m));
  }
  // logarithmic series
  cdouble sum2{0.0, 0.0};
  double poch_am = 1.0, poch_bm = 1.0, kfact = 1.0, kmfact = 1.0;
  for (int j = 1; j <= m; ++j) kmfact *= j;
  cdouble wk{1.0, 0.0};
  for (int k = 0; k < 400; ++k) {
    const double psi_part = digamma(k + 1.0) + digamma(k + m + 1.0) -
                            digamma(a + k + m) - digamma(b + k + m);
    const cdouble add = poch_am * poch_bm / (kfact * kmfact) * wk * (psi_part - logw);
    sum2 += add;
    if (k > 4 && std::norm(add) < 1e-32 * std::norm(sum2)) break;
    poch_am *= (a + m + k);
    poch_bm *= (b + m + k);
    kfact *= (k + 1.0);
    kmfact *= (m + k + 1.0);
    wk *= w;
  }
  cdouble wm{1.0, 0.0};
  for (int j = 0; j < m; ++j) wm *= -w;  // (z-1)^m = (-w)^m
  sum2 *= std::tgamma(c) / (std::tgamma(a) * std::tgamma(b)) * wm;
  return sum1 + sum2;
}

// Connection at z = 1, c - a - b not an integer (DLMF 15.8.4).
inline cdouble hyp_z1_generic(double a, double b, double c, cdouble w) {
  const double s = c - a - b;
  const cdouble t1 = std::tgamma(c) * std::tgamma(s) /
                     (std::tgamma(c - a) * std::tgamma(c - b)) *
                     hyp_series(a, b, 1.0 - s, w);
  const cdouble t2 = std::tgamma(c) * std::tgamma(-s) /
                     (std::tgamma(a) * std::tgamma(b)) * std::pow(w, s) *
                     hyp_series(c - a, c - b, 1.0 + s, w);
  return t1 + t2;
}

}  // namespace detail

// Gauss hypergeometric 2F1(a,b;c;z) for real parameters and complex z in the
// region needed here: |z| <= 0.72, a neighbourhood of z = 1 (reached through
// connection formulas, including the logarithmic integer cases), and
// negative real parts through the Pfaff transformation. Real z on the branch
// cut [1,inf) must carry an explicit imaginary side.
inline cdouble gauss_2f1(double a, double b, double c, cdouble z, int depth = 0) {
  if (c <= 0.0 && detail::near_int(c))
    throw domain_error("gauss_2f1: c is a non-positive integer");
  if (depth > 3) throw numerical_error("gauss_2f1: transformation loop");
  if (z == cdouble{0.0, 0.0}) return {1.0, 0.0};
  if (z.imag() == 0.0 && z.real() >= 1.0)
    throw domain_error("gauss_2f1: z on the branch cut [1,inf); pass an explicit +/-i eps side");
  // terminating polynomial cases are safe everywhere
  if ((a <= 0.0 && detail::near_int(a)) || (b <= 0.0 && detail::near_int(b))) {
    const int n = static_cast<int>(-std::round(std::min(a, b) <= 0 ? (detail::near_int(a) && a <= 0 ? a : b) : b));
    cdouble term{1.0, 0.0}, sum{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
      term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
      sum += term;
    }
    return sum;
  }
  if (std::abs(z) <= 0.72) return detail::hyp_series(a, b, c, z);
  const cdouble w = 1.0 - z;
  if (std::abs(w) <= 0.6) {
    const double s = c - a - b;
    if (detail::near_int(s)) {
      const int m = static_cast<int>(std::round(s));
      if (m >= 0) return detail::hyp_z1_integer(a, b, m, w);
      // Euler transformation lifts negative integer s to positive
      return std::pow(w, s) * gauss_2f1(c - a, c - b, c, z, depth + 1);
    }
    return detail::hyp_z1_generic(a, b, c, w);
  }
  if (z.real() < 0.0) {
    // Pfaff: maps the left half plane toward the unit disc
    return std::pow(w, -a) * gauss_2f1(a, c - b, c, z / (z - 1.0), depth + 1);
  }
  throw domain_error("gauss_2f1: argument outside the implemented region");
}

}  // namespace lqft::specfun
