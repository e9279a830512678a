#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "lqft/error.hpp"
#include "lqft/quadrature.hpp"
#include "lqft/specfun.hpp"

// Field-mode entanglement in the Minkowski vacuum: covariance matrices of
// localized canonical modes built from compactly supported bump profiles,
// symplectic Gram-Schmidt for multi-time mode sets, logarithmic negativity
// from the partially transposed symplectic spectrum, and the extraction of
// the local mode pairs that carry each negativity contribution.

namespace lqft::gaussian_modes {

using specfun::pi;
using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Region { A, B };

// A canonical mode (Phi_t(F), Pi_t(F)) built from the compact bump
//   F(x) = N_delta (1 - |x|^2/R^2)^delta inside |x| < R,
// placed at `center` on the constant-time slice `slice_time`.
struct ModeSpec {
  Region region = Region::A;
  double R = 1.0;
  int delta = 2;  // smoothness exponent, >= 1
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double slice_time = 0.0;

  void validate() const {
    if (!(R > 0.0) || delta < 1)
      throw contract_error("ModeSpec: need R > 0 and delta >= 1");
  }
};

namespace detail {

inline double dist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline double norm_delta(double R, int delta) {
  return 1.0 / (std::pow(pi, 0.75) * std::pow(R, 1.5)) *
         std::sqrt(std::tgamma(2.5 + 2.0 * delta) / std::tgamma(1.0 + 2.0 * delta));
}

// Radial Fourier transform of the bump profile,
//   Fhat(k) = 4 pi N R^3 Gamma(delta+1) 2^delta j_{delta+1}(kR) / (kR)^{delta+1}.
inline double fhat(double k, double R, int delta) {
  const double pref = 4.0 * pi * norm_delta(R, delta) * R * R * R *
                      std::tgamma(delta + 1.0) * std::pow(2.0, delta);
  const double x = k * R;
  if (x < 1e-8) {
    double dfact = 1.0;
    for (int j = 1; j <= 2 * delta + 3; j += 2) dfact *= j;
    return pref / dfact;
  }
  return pref * specfun::spherical_bessel_j(delta + 1, x) / std::pow(x, delta + 1);
}

enum class KernelPower { One, Two, Three };
enum class Oscillation { Cos, Sin };

// (1/2 pi^2) Int dk k^p Fhat_i Fhat_j sinc(k d) {cos,sin}(k dt)
inline double radial_correlator(const ModeSpec& mi, const ModeSpec& mj, KernelPower p,
                                Oscillation osc) {
  const double d = dist(mi.center, mj.center);
  const double dt = mi.slice_time - mj.slice_time;
  const int power = p == KernelPower::One ? 1 : (p == KernelPower::Two ? 2 : 3);
  auto sinc = [](double x) {
    return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  };
  auto integrand = [&](double k) {
    const double base = std::pow(k, power) * fhat(k, mi.R, mi.delta) *
                        fhat(k, mj.R, mj.delta) * sinc(k * d);
    return base * (osc == Oscillation::Cos ? std::cos(k * dt) : std::sin(k * dt));
  };
  // envelope tail ~ k^{power - 2 - delta_i - delta_j - ...}; push kmax until
  // the crude bound drops below tolerance
  const double Rmin = std::min(mi.R, mj.R);
  double kmax = 60.0 / Rmin;
  const double ci = 4.0 * pi * norm_delta(mi.R, mi.delta) * std::pow(mi.R, 3.0) *
                    std::tgamma(mi.delta + 1.0) * std::pow(2.0, mi.delta);
  const double cj = 4.0 * pi * norm_delta(mj.R, mj.delta) * std::pow(mj.R, 3.0) *
                    std::tgamma(mj.delta + 1.0) * std::pow(2.0, mj.delta);
  const double decay = mi.delta + mj.delta + 4 - power;  // tail exponent + 1
  for (int iter = 0; iter < 40; ++iter) {
    const double tail = ci * cj /
                        (std::pow(mi.R, mi.delta + 2.0) * std::pow(mj.R, mj.delta + 2.0)) /
                        ((decay - 1.0) * std::pow(kmax, decay - 1.0));
    if (tail < 1e-12) break;
    kmax *= 1.5;
  }
  auto r = integrate(integrand, 0.0, kmax, QuadOptions{5e-14, 1e-12, 60000});
  return r.value / (2.0 * pi * pi);
}

}  // namespace detail

// Raw second moments of a mode list: the anticommutator matrix (covariance of
// the vacuum) and the commutator matrix [X_a, X_b]/i, both over the raw
// operator ordering (Phi_0, Pi_0, Phi_1, Pi_1, ...).
struct RawCorrelators {
  MatrixXd covariance;
  MatrixXd commutator;
  int n_modes_A = 0;
};

inline RawCorrelators mode_correlators(const std::vector<ModeSpec>& modes) {
  if (modes.empty()) throw contract_error("mode_correlators: empty mode list");
  for (const auto& m : modes) m.validate();
  // region A modes must come first
  int nA = 0;
  bool seen_b = false;
  for (const auto& m : modes) {
    if (m.region == Region::A) {
      if (seen_b) throw contract_error("mode_correlators: list region-A modes first");
      ++nA;
    } else {
      seen_b = true;
    }
  }
  // causal disjointness of the A-B supports over the slice set
  double tmin = modes.front().slice_time, tmax = tmin;
  for (const auto& m : modes) {
    tmin = std::min(tmin, m.slice_time);
    tmax = std::max(tmax, m.slice_time);
  }
  for (const auto& a : modes)
    for (const auto& b : modes)
      if (a.region == Region::A && b.region == Region::B) {
        if (detail::dist(a.center, b.center) + 1e-12 < a.R + b.R + (tmax - tmin))
          throw contract_error(
              "mode_correlators: A and B supports are not causally disjoint");
      }

  const int M = static_cast<int>(modes.size());
  RawCorrelators out;
  out.covariance = MatrixXd::Zero(2 * M, 2 * M);
  out.commutator = MatrixXd::Zero(2 * M, 2 * M);
  out.n_modes_A = nA;

  using detail::KernelPower;
  using detail::Oscillation;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < M; ++i)
    for (int j = i; j < M; ++j) pairs.emplace_back(i, j);

  // each (i,j) writes a disjoint set of entries, so the pair loop can run
  // on as many threads as are available
  std::exception_ptr first_error;
  std::mutex err_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= pairs.size()) return;
      const auto [i, j] = pairs[idx];
      try {
      const double gphi =
          detail::radial_correlator(modes[i], modes[j], KernelPower::One, Oscillation::Cos);
      const double gpi =
          detail::radial_correlator(modes[i], modes[j], KernelPower::Three, Oscillation::Cos);
      const double cross =
          detail::radial_correlator(modes[i], modes[j], KernelPower::Two, Oscillation::Sin);
      const double comm_pp =
          -detail::radial_correlator(modes[i], modes[j], KernelPower::One, Oscillation::Sin);
      const double comm_phipi =
          detail::radial_correlator(modes[i], modes[j], KernelPower::Two, Oscillation::Cos);
      const double comm_pipi =
          -detail::radial_correlator(modes[i], modes[j], KernelPower::Three, Oscillation::Sin);
      // covariance <{.,.}> blocks
      out.covariance(2 * i, 2 * j) = gphi;
      out.covariance(2 * j, 2 * i) = gphi;
      out.covariance(2 * i + 1, 2 * j + 1) = gpi;
      out.covariance(2 * j + 1, 2 * i + 1) = gpi;
      out.covariance(2 * i, 2 * j + 1) = cross;
      out.covariance(2 * j + 1, 2 * i) = cross;
      // <{Pi_i, Phi_j}> = -cross(i<->j), odd in dt
      out.covariance(2 * i + 1, 2 * j) = -cross;
      out.covariance(2 * j, 2 * i + 1) = -cross;
      // commutators, antisymmetric under full index swap
      out.commutator(2 * i, 2 * j) = comm_pp;
      out.commutator(2 * j, 2 * i) = -comm_pp;
      out.commutator(2 * i, 2 * j + 1) = comm_phipi;
      out.commutator(2 * j + 1, 2 * i) = -comm_phipi;
      out.commutator(2 * i + 1, 2 * j) = -comm_phipi;
      out.commutator(2 * j, 2 * i + 1) = comm_phipi;
      out.commutator(2 * i + 1, 2 * j + 1) = comm_pipi;
      out.commutator(2 * j + 1, 2 * i + 1) = -comm_pipi;
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(pairs.size());
        return;
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(hw, pairs.size()));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < n_threads; ++t) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
  for (int i = 0; i < M; ++i) {
    out.commutator(2 * i, 2 * i) = 0.0;
    out.commutator(2 * i + 1, 2 * i + 1) = 0.0;
  }
  return out;
}

// Canonical symplectic form of n pairs: blocks [[0,1],[-1,0]].
inline MatrixXd canonical_omega(int n_pairs) {
  MatrixXd Om = MatrixXd::Zero(2 * n_pairs, 2 * n_pairs);
  for (int j = 0; j < n_pairs; ++j) {
    Om(2 * j, 2 * j + 1) = 1.0;
    Om(2 * j + 1, 2 * j) = -1.0;
  }
  return Om;
}

// A Gaussian state over a bipartition, already in canonical coordinates
// ordered (q_A1, p_A1, ..., q_An, p_An, q_B1, p_B1, ...).
struct GaussianState {
  MatrixXd sigma;    // 2N x 2N, convention sigma = <{Xi, Xi}>
  int n_pairs_A = 0;

  int n_pairs() const { return static_cast<int>(sigma.rows()) / 2; }

  // smallest eigenvalue of sigma + i Omega (>= 0 up to tolerance for states)
  double validity_margin() const {
    const int n = n_pairs();
    Eigen::MatrixXcd M = sigma.cast<std::complex<double>>() +
                         std::complex<double>{0.0, 1.0} *
                             canonical_omega(n).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    return es.eigenvalues().minCoeff();
  }
  void require_valid(double tol = -1e-8) const {
    if (validity_margin() < tol)
      throw contract_error("GaussianState: uncertainty relation violated");
  }
};

// Symplectic Gram-Schmidt: maps raw (possibly non-canonical) mode pairs to
// canonical ones region by region. Throws a degeneracy error naming the
// first mode that cannot be paired.
inline GaussianState symplectic_gram_schmidt(const RawCorrelators& raw) {
  const int M = static_cast<int>(raw.covariance.rows()) / 2;
  const int nA = raw.n_modes_A;
  const int nB = M - nA;

  // microcausality: cross-region commutators must vanish
  double cross_comm = 0.0;
  for (int i = 0; i < 2 * nA; ++i)
    for (int j = 2 * nA; j < 2 * M; ++j)
      cross_comm = std::max(cross_comm, std::abs(raw.commutator(i, j)));
  if (cross_comm > 1e-8)
    throw contract_error("symplectic_gram_schmidt: regions are not commuting");

  auto reduce_region = [&](int off, int count) -> MatrixXd {
    // Orthogonal reduction of the antisymmetric pairing: eigenpairs of the
    // Hermitian matrix iC come as (+kappa, u+iv), (-kappa, u-iv) with
    // orthonormal u, v; the rows (u, -v) scaled by sqrt(2/kappa) are then a
    // canonical pair. This stays well conditioned for the nearly dependent
    // multi-time sets where naive pivoted elimination blows up.
    const MatrixXd C = raw.commutator.block(off, off, 2 * count, 2 * count);
    const double scale = std::max(C.cwiseAbs().maxCoeff(), 1e-300);
    Eigen::MatrixXcd iC =
        std::complex<double>{0.0, 1.0} * C.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(iC);
    if (es.info() != Eigen::Success)
      throw numerical_error("symplectic_gram_schmidt: eigensolver failed");
    MatrixXd T(2 * count, 2 * count);
    int row = 0;
    for (int i = 0; i < 2 * count; ++i) {
      const double kappa = es.eigenvalues()[i];
      if (kappa <= 0.0) continue;  // keep one of each +-kappa pair
      if (kappa < 1e-10 * scale) {
        const Eigen::VectorXcd z = es.eigenvectors().col(i);
        int worst = 0;
        z.cwiseAbs().maxCoeff(&worst);
        throw contract_error(
            "symplectic_gram_schmidt: linearly dependent mode at raw index " +
            std::to_string(off / 2 + worst / 2));
      }
      const VectorXd u = es.eigenvectors().col(i).real();
      const VectorXd v = es.eigenvectors().col(i).imag();
      const double s = std::sqrt(2.0 / kappa);
      T.row(row++) = (s * u).transpose();
      T.row(row++) = (-s * v).transpose();
    }
    if (row != 2 * count)
      throw contract_error(
          "symplectic_gram_schmidt: degenerate commutator (odd pairing count)");
    return T;
  };

  const MatrixXd TA = reduce_region(0, nA);
  MatrixXd T = MatrixXd::Zero(2 * M, 2 * M);
  T.block(0, 0, 2 * nA, 2 * nA) = TA;
  if (nB > 0) {
    const MatrixXd TB = reduce_region(2 * nA, nB);
    T.block(2 * nA, 2 * nA, 2 * nB, 2 * nB) = TB;
  }

  GaussianState st;
  st.sigma = T * raw.covariance * T.transpose();
  st.sigma = 0.5 * (st.sigma + st.sigma.transpose().eval());
  st.n_pairs_A = nA;
  // balance each pair with a local squeeze (q,p) -> (q/s, p s); this is a
  // local symplectic map, so it changes no entanglement quantity, but it
  // tames the huge scale spread left by nearly dependent mode sets
  for (int j = 0; j < M; ++j) {
    const double qq = st.sigma(2 * j, 2 * j);
    const double pp = st.sigma(2 * j + 1, 2 * j + 1);
    if (qq > 0.0 && pp > 0.0) {
      const double s = std::pow(qq / pp, 0.25);
      st.sigma.row(2 * j) /= s;
      st.sigma.col(2 * j) /= s;
      st.sigma.row(2 * j + 1) *= s;
      st.sigma.col(2 * j + 1) *= s;
    }
  }
  // confirm the form came out canonical, with a tolerance that scales with
  // the conditioning of the reduction
  const double cond = T.cwiseAbs().maxCoeff();
  const double comm_scale = raw.commutator.cwiseAbs().maxCoeff();
  const MatrixXd Om = T * raw.commutator * T.transpose();
  const double defect = (Om - canonical_omega(M)).cwiseAbs().maxCoeff();
  if (defect > 1e-9 + 1e-11 * cond * cond * comm_scale)
    throw numerical_error("symplectic_gram_schmidt: form not canonical after reduction");
  return st;
}

// Positive symplectic spectrum of the partially transposed covariance
// (momenta of region B flipped).
inline std::vector<double> pt_symplectic_spectrum(const GaussianState& st) {
  const int N = st.n_pairs();
  MatrixXd T = MatrixXd::Identity(2 * N, 2 * N);
  for (int j = st.n_pairs_A; j < N; ++j) T(2 * j + 1, 2 * j + 1) = -1.0;
  const MatrixXd sig_pt = T * st.sigma * T;
  const MatrixXd K = canonical_omega(N) * sig_pt;
  Eigen::EigenSolver<MatrixXd> es(K);
  if (es.info() != Eigen::Success)
    throw numerical_error("pt_symplectic_spectrum: eigensolver failed");
  std::vector<double> nus;
  for (int i = 0; i < 2 * N; ++i) {
    const auto ev = es.eigenvalues()[i];
    if (ev.imag() > 0.0) nus.push_back(std::abs(ev));
  }
  std::sort(nus.begin(), nus.end());
  if (static_cast<int>(nus.size()) != N)
    throw numerical_error("pt_symplectic_spectrum: spectrum did not pair up");
  return nus;
}

// Logarithmic negativity E_N = sum_j max(0, -log2 nu_j^Gamma).
inline double log_negativity(const GaussianState& st) {
  double en = 0.0;
  for (double nu : pt_symplectic_spectrum(st))
    en += std::max(0.0, -std::log2(nu));
  return en;
}

// ---------------------------------------------------------------------------
// Negativity cores: the local canonical pairs carrying each contribution.

struct NegativityCore {
  int pair_index;       // 1-based, ordered by increasing nu
  double nu;            // symplectic eigenvalue of the partial transpose
  double contribution;  // max(0, -log2 nu)
};

struct NegativityCores {
  std::vector<NegativityCore> cores;  // only entries with nu < 1
  std::vector<double> nus;            // full half spectrum, ascending
  MatrixXd S_A;                       // local symplectic map on region A
  MatrixXd S_B;                       // = R S_A R
  bool degenerate = false;            // degenerate nu blocks were re-orthogonalized
};

inline NegativityCores klco_cores(const GaussianState& st) {
  const int N = st.n_pairs();
  const int nA = st.n_pairs_A;
  if (nA * 2 != N)
    throw contract_error("klco_cores: equal mode counts in A and B required");

  // enforce the equal-time block structure: no Phi-Pi cross covariance
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (std::abs(st.sigma(2 * i, 2 * j + 1)) > 1e-10)
        throw unsupported_configuration(
            "klco_cores: state has Phi-Pi cross correlations (not an equal-time set)");

  MatrixXd G(N, N), H(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      G(i, j) = st.sigma(2 * i, 2 * j);
      H(i, j) = st.sigma(2 * i + 1, 2 * j + 1);
    }
  MatrixXd CB = MatrixXd::Identity(N, N);
  for (int j = nA; j < N; ++j) CB(j, j) = -1.0;
  const MatrixXd Hg = CB * H * CB;

  Eigen::EigenSolver<MatrixXd> es(Hg * G);
  if (es.info() != Eigen::Success)
    throw numerical_error("klco_cores: eigensolver failed");

  struct Eig {
    double nu2;
    VectorXd v;
  };
  std::vector<Eig> eigs;
  for (int i = 0; i < N; ++i) {
    const auto lam = es.eigenvalues()[i];
    if (std::abs(lam.imag()) > 1e-8 * std::max(1.0, std::abs(lam)) || lam.real() <= 0.0)
      throw numerical_error("klco_cores: non-positive squared symplectic eigenvalue");
    eigs.push_back({lam.real(), es.eigenvectors().col(i).real()});
  }
  std::sort(eigs.begin(), eigs.end(),
            [](const Eig& a, const Eig& b) { return a.nu2 < b.nu2; });

  NegativityCores out;
  // G-orthonormalize inside (near-)degenerate clusters
  for (std::size_t i0 = 0; i0 < eigs.size();) {
    std::size_t i1 = i0 + 1;
    while (i1 < eigs.size() &&
           std::abs(eigs[i1].nu2 - eigs[i0].nu2) < 1e-8 * std::abs(eigs[i0].nu2))
      ++i1;
    if (i1 - i0 > 1) out.degenerate = true;
    for (std::size_t a = i0; a < i1; ++a) {
      for (std::size_t b = i0; b < a; ++b)
        eigs[a].v -= (eigs[b].v.dot(G * eigs[a].v) / eigs[b].v.dot(G * eigs[b].v)) *
                     eigs[b].v;
    }
    i0 = i1;
  }

  // normalizations: vPhi^T G vPhi = nu, vPi = G vPhi / nu
  std::vector<VectorXd> vphi(N), vpi(N);
  for (int j = 0; j < N; ++j) {
    const double nu = std::sqrt(eigs[j].nu2);
    out.nus.push_back(nu);
    VectorXd v = eigs[j].v;
    const double q = v.dot(G * v);
    if (q <= 0.0) throw numerical_error("klco_cores: G lost positivity");
    v *= std::sqrt(nu / q);
    vphi[j] = v;
    vpi[j] = G * v / nu;
    if (nu < 1.0 - 1e-12)
      out.cores.push_back({j + 1, nu, -std::log2(nu)});
  }

  // assemble S_A from the lower half of the spectrum projected onto A,
  // then symplectically orthonormalize in order
  const MatrixXd OmA = canonical_omega(nA);
  std::vector<VectorXd> rows;
  auto project_A = [&](const VectorXd& vec, bool is_phi) {
    VectorXd out_v = VectorXd::Zero(2 * nA);
    for (int m = 0; m < nA; ++m) out_v[2 * m + (is_phi ? 0 : 1)] = vec[m];
    return out_v;
  };
  auto remove_overlap = [&](VectorXd& x) {
    // subtract the symplectic projection onto every accepted canonical pair
    for (std::size_t p = 0; p + 1 < rows.size(); p += 2) {
      const VectorXd& u = rows[p];
      const VectorXd& w = rows[p + 1];
      x -= (u.dot(OmA * x)) * w - (w.dot(OmA * x)) * u;
    }
  };
  for (int j = 0; j < nA; ++j) {
    VectorXd a = project_A(vphi[j], true);
    VectorXd b = project_A(vpi[j], false);
    remove_overlap(a);
    remove_overlap(b);
    const double s = a.dot(OmA * b);
    if (std::abs(s) < 1e-12)
      throw numerical_error("klco_cores: projected pair degenerate in A");
    b /= s;
    rows.push_back(a);
    rows.push_back(b);
  }
  out.S_A = MatrixXd(2 * nA, 2 * nA);
  for (int r = 0; r < 2 * nA; ++r) out.S_A.row(r) = rows[r].transpose();

  MatrixXd R = MatrixXd::Zero(2 * nA, 2 * nA);
  for (int j = 0; j < nA; ++j) {
    R(2 * j, 2 * (nA - 1 - j)) = 1.0;
    R(2 * j + 1, 2 * (nA - 1 - j) + 1) = 1.0;
  }
  out.S_B = R * out.S_A * R;
  return out;
}

}  // namespace lqft::gaussian_modes
