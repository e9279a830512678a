#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "lqft/gaussian_modes.hpp"
#include "lqft/quadrature.hpp"

using namespace lqft;
using namespace lqft::gaussian_modes;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

ModeSpec mode(Region r, double R, int delta, double x, double t = 0.0) {
  ModeSpec m;
  m.region = r;
  m.R = R;
  m.delta = delta;
  m.center = {x, 0.0, 0.0};
  m.slice_time = t;
  return m;
}

// plain symplectic spectrum = PT spectrum with an empty B side
std::vector<double> symplectic_spectrum(const GaussianState& st) {
  GaussianState c = st;
  c.n_pairs_A = st.n_pairs();
  return pt_symplectic_spectrum(c);
}

// hand-built two-mode squeezed covariance in the sigma = <{.,.}> convention
GaussianState two_mode_squeezed(double r) {
  GaussianState st;
  st.sigma = MatrixXd::Identity(4, 4) * std::cosh(2 * r);
  st.sigma(0, 2) = st.sigma(2, 0) = std::sinh(2 * r);
  st.sigma(1, 3) = st.sigma(3, 1) = -std::sinh(2 * r);
  st.n_pairs_A = 1;
  return st;
}

// random symplectic via exp(Omega H) with H symmetric
MatrixXd random_symplectic(int n_pairs, std::mt19937& rng, double scale = 0.3) {
  std::normal_distribution<double> g(0.0, scale);
  MatrixXd H(2 * n_pairs, 2 * n_pairs);
  for (int i = 0; i < 2 * n_pairs; ++i)
    for (int j = i; j < 2 * n_pairs; ++j) H(i, j) = H(j, i) = g(rng);
  const MatrixXd A = canonical_omega(n_pairs) * H;
  // series exponential
  MatrixXd S = MatrixXd::Identity(2 * n_pairs, 2 * n_pairs);
  MatrixXd term = S;
  for (int k = 1; k < 40; ++k) {
    term = term * A / double(k);
    S += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return S;
}

}  // namespace

TEST_CASE("bump profile transforms") {
  const double R = 1.3;
  const int delta = 2;
  // Fhat(0) equals the plain volume integral of the profile
  const double N = gaussian_modes::detail::norm_delta(R, delta);
  auto vol = integrate(
      [&](double r) {
        const double u = 1.0 - r * r / (R * R);
        return 4.0 * M_PI * r * r * N * u * u;
      },
      0.0, R);
  CHECK(gaussian_modes::detail::fhat(0.0, R, delta) ==
        Catch::Approx(vol.value).epsilon(1e-10));
  // Parseval: (1/2 pi^2) Int k^2 Fhat^2 = Int F^2 = 1
  auto pars = integrate(
      [&](double k) {
        const double f = gaussian_modes::detail::fhat(k, R, delta);
        return k * k * f * f / (2.0 * M_PI * M_PI);
      },
      0.0, 200.0 / R, QuadOptions{1e-12, 1e-10, 20000});
  CHECK(pars.value == Catch::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("raw correlators of a single equal-time pair") {
  const auto raw = mode_correlators({mode(Region::A, 1.0, 2, 0.0)});
  // canonical commutator and no Phi-Pi covariance on one slice
  CHECK(raw.commutator(0, 1) == Catch::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(raw.covariance(0, 1)) < 1e-10);
  CHECK(raw.covariance(0, 0) > 0.0);
  CHECK(raw.covariance(1, 1) > 0.0);
  // uncertainty: G H >= 1 in this convention
  CHECK(raw.covariance(0, 0) * raw.covariance(1, 1) >= 1.0);
}

TEST_CASE("cross covariance against the position-space oracle") {
  // <{Phi(F_A), Phi(F_B)}> = (1/2 pi^2) Int F_A(x) F_B(x') / |x-x'|^2,
  // reduced to three nested radial quadratures
  const double R = 1.0, d = 4.0;
  const int delta = 2;
  const double N = gaussian_modes::detail::norm_delta(R, delta);
  auto prof = [&](double r) {
    const double u = 1.0 - r * r / (R * R);
    return r < R ? N * u * u : 0.0;
  };
  auto inner = [&](double s) {  // Int d^3x' F_B(x') / |x - x'|^2 at |x - c_B| = s
    return 2.0 * M_PI / s *
           integrate([&](double rp) {
             if (rp <= 0.0) return 0.0;
             return rp * prof(rp) * std::log((s + rp) / std::abs(s - rp));
           }, 0.0, R, QuadOptions{1e-12, 1e-9}).value;
  };
  auto mid = [&](double rA) {  // angular reduction around c_A
    return 1.0 / (rA * d) *
           integrate([&](double s) { return s * inner(s); }, d - rA, d + rA,
                     QuadOptions{1e-11, 1e-8}).value;
  };
  const double oracle =
      2.0 / (4.0 * M_PI * M_PI) * 2.0 * M_PI *
      integrate([&](double rA) { return rA * rA * prof(rA) * mid(rA); }, 1e-6, R,
                QuadOptions{1e-10, 1e-7}).value;

  const auto raw =
      mode_correlators({mode(Region::A, R, delta, 0.0), mode(Region::B, R, delta, d)});
  CHECK(raw.covariance(0, 2) == Catch::Approx(oracle).epsilon(1e-5));
}

TEST_CASE("microcausality across regions at the critical separation") {
  const double R = 1.0, T = 6.0;
  std::vector<ModeSpec> modes;
  for (int i = 0; i < 3; ++i)
    modes.push_back(mode(Region::A, R, 2, 0.0, -T / 2 + i * T / 2.0));
  for (int i = 0; i < 3; ++i)
    modes.push_back(mode(Region::B, R, 2, T + 2 * R, -T / 2 + i * T / 2.0));
  const auto raw = mode_correlators(modes);
  for (int i = 0; i < 6; ++i)
    for (int j = 6; j < 12; ++j)
      CHECK(std::abs(raw.commutator(i, j)) < 1e-8);
  // and the overlap guard rejects anything closer
  auto bad = modes;
  bad[3].center[0] = T + 2 * R - 0.5;
  CHECK_THROWS_AS(mode_correlators(bad), contract_error);
}

TEST_CASE("symplectic Gram-Schmidt") {
  SECTION("already canonical input is not mixed, only pair-balanced") {
    const auto raw = mode_correlators({mode(Region::A, 1.0, 2, 0.0)});
    const auto st = symplectic_gram_schmidt(raw);
    CHECK(st.n_pairs_A == 1);
    // a local squeeze may rebalance q against p, which changes nothing
    // physical: the uncertainty product and the symplectic spectrum survive
    CHECK(st.sigma(0, 0) * st.sigma(1, 1) ==
          Catch::Approx(raw.covariance(0, 0) * raw.covariance(1, 1)).epsilon(1e-8));
    CHECK(std::abs(st.sigma(0, 1)) < 1e-10);
    CHECK(symplectic_spectrum(st)[0] ==
          Catch::Approx(std::sqrt(raw.covariance(0, 0) * raw.covariance(1, 1)))
              .epsilon(1e-8));
  }
  SECTION("duplicated modes are flagged as degenerate") {
    RawCorrelators raw = mode_correlators({mode(Region::A, 1.0, 2, 0.0)});
    RawCorrelators dup;
    dup.n_modes_A = 2;
    dup.covariance = MatrixXd::Zero(4, 4);
    dup.commutator = MatrixXd::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        dup.covariance.block(2 * i, 2 * j, 2, 2) = raw.covariance;
        dup.commutator.block(2 * i, 2 * j, 2, 2) = raw.commutator;
      }
    CHECK_THROWS_AS(symplectic_gram_schmidt(dup), contract_error);
  }
  SECTION("three-slice two-region set reduces to canonical form") {
    const double R = 1.0, T = 6.0;
    std::vector<ModeSpec> modes;
    for (int i = 0; i < 3; ++i)
      modes.push_back(mode(Region::A, R, 2, 0.0, -T / 2 + i * T / 2.0));
    for (int i = 0; i < 3; ++i)
      modes.push_back(mode(Region::B, R, 2, T + 2 * R, -T / 2 + i * T / 2.0));
    const auto st = symplectic_gram_schmidt(mode_correlators(modes));
    CHECK(st.n_pairs_A == 3);
    st.require_valid();
    for (double nu : symplectic_spectrum(st)) CHECK(nu >= 1.0 - 1e-8);
  }
}

TEST_CASE("log negativity") {
  SECTION("uncorrelated pairs carry none") {
    GaussianState st;
    st.sigma = MatrixXd::Identity(4, 4);
    st.sigma(0, 0) = st.sigma(1, 1) = 1.7;  // squeezed-but-local A mode
    st.n_pairs_A = 1;
    CHECK(log_negativity(st) == 0.0);
  }
  SECTION("two-mode squeezed value") {
    for (double r : {0.3, 1.0, 2.0}) {
      const auto st = two_mode_squeezed(r);
      st.require_valid();
      CHECK(log_negativity(st) == Catch::Approx(2.0 * r / std::log(2.0)).epsilon(1e-10));
    }
  }
  SECTION("a single bump pair is never entangled at any separation") {
    for (double d : {2.5, 3.0, 4.0, 8.0}) {
      const auto st = symplectic_gram_schmidt(mode_correlators(
          {mode(Region::A, 1.0, 2, 0.0), mode(Region::B, 1.0, 2, d)}));
      st.require_valid();
      CHECK(log_negativity(st) == 0.0);
    }
  }
  SECTION("invariant under local symplectic transformations") {
    std::mt19937 rng(3);
    const auto st = two_mode_squeezed(0.8);
    const double en = log_negativity(st);
    for (int t = 0; t < 5; ++t) {
      const MatrixXd SA = random_symplectic(1, rng);
      const MatrixXd SB = random_symplectic(1, rng);
      MatrixXd S = MatrixXd::Zero(4, 4);
      S.block(0, 0, 2, 2) = SA;
      S.block(2, 2, 2, 2) = SB;
      GaussianState tr;
      tr.sigma = S * st.sigma * S.transpose();
      tr.n_pairs_A = 1;
      CHECK(log_negativity(tr) == Catch::Approx(en).epsilon(1e-8));
    }
  }
}

TEST_CASE("multi-time mode sets reproduce vacuum entanglement") {
  // modes of fixed shape on N slices spanning a light-crossing time, regions
  // separated so their causal diamonds just avoid touching
  const double R = 1.0, T = 4.0;
  auto state_for = [&](int N) {
    std::vector<ModeSpec> modes;
    for (int i = 0; i < N; ++i) {
      const double t = N == 1 ? 0.0 : -T / 2 + i * T / (N - 1.0);
      modes.push_back(mode(Region::A, R, 2, 0.0, t));
    }
    for (int i = 0; i < N; ++i) {
      const double t = N == 1 ? 0.0 : -T / 2 + i * T / (N - 1.0);
      modes.push_back(mode(Region::B, R, 2, T + 2 * R, t));
    }
    return symplectic_gram_schmidt(mode_correlators(modes));
  };
  CHECK(log_negativity(state_for(1)) == 0.0);
  double best = 0.0;
  std::vector<double> ens;
  for (int N : {3, 5, 6}) {
    const auto st = state_for(N);
    // the near-dependent multi-time reduction stretches the covariance; the
    // validity margin scales with that stretch
    st.require_valid(-1e-8 * std::max(1.0, st.sigma.cwiseAbs().maxCoeff()));
    for (double nu : symplectic_spectrum(st)) CHECK(nu >= 1.0 - 1e-7);
    ens.push_back(log_negativity(st));
    best = std::max(best, ens.back());
  }
  CHECK(ens[0] == 0.0);  // too few slices resolve no entanglement
  CHECK(best > 0.0);     // enough slices do
}

TEST_CASE("negativity cores") {
  SECTION("uncorrelated state has no cores and symplectic maps") {
    GaussianState st;
    st.sigma = MatrixXd::Identity(4, 4) * 1.2;
    st.n_pairs_A = 1;
    const auto cores = klco_cores(st);
    CHECK(cores.cores.empty());
    const MatrixXd Om = canonical_omega(1);
    CHECK((cores.S_A.transpose() * Om * cores.S_A - Om).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((cores.S_B.transpose() * Om * cores.S_B - Om).cwiseAbs().maxCoeff() < 1e-10);
  }
  SECTION("two-mode squeezed core is exactly recovered") {
    const double r = 0.7;
    const auto st = two_mode_squeezed(r);
    const auto cores = klco_cores(st);
    REQUIRE(cores.cores.size() == 1);
    CHECK(cores.cores[0].nu == Catch::Approx(std::exp(-2 * r)).epsilon(1e-10));
    double total = 0.0;
    for (const auto& c : cores.cores) total += c.contribution;
    CHECK(total == Catch::Approx(log_negativity(st)).epsilon(1e-10));
  }
  SECTION("multi-pair states: contributions sum to E_N, maps stay symplectic") {
    std::mt19937 rng(17);
    // direct sum of two squeezed pairs, dressed by G-preserving local maps
    const int n = 2;  // pairs per region
    const double rs[2] = {0.5, 0.9};
    MatrixXd G = MatrixXd::Zero(2 * n, 2 * n), H = MatrixXd::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
      const int a = j, b = 2 * n - 1 - j;  // pair j of A with mirror of B
      G(a, a) = G(b, b) = std::cosh(2 * rs[j]);
      G(a, b) = G(b, a) = std::sinh(2 * rs[j]);
      H(a, a) = H(b, b) = std::cosh(2 * rs[j]);
      H(a, b) = H(b, a) = -std::sinh(2 * rs[j]);
    }
    // dress with Phi -> M Phi, Pi -> M^{-T} Pi (keeps the sigma0 block form);
    // mirror-symmetric M so the A/B reflection symmetry survives
    MatrixXd MA = MatrixXd::Identity(n, n);
    MA(0, 1) = 0.4;
    MA(1, 0) = -0.2;
    MatrixXd Rf = MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) Rf(j, n - 1 - j) = 1.0;
    MatrixXd M = MatrixXd::Zero(2 * n, 2 * n);
    M.block(0, 0, n, n) = MA;
    M.block(n, n, n, n) = Rf * MA * Rf;
    const MatrixXd Mit = M.inverse().transpose();
    const MatrixXd Gd = M * G * M.transpose();
    const MatrixXd Hd = Mit * H * Mit.transpose();

    GaussianState st;
    st.sigma = MatrixXd::Zero(4 * n, 4 * n);
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j) {
        st.sigma(2 * i, 2 * j) = Gd(i, j);
        st.sigma(2 * i + 1, 2 * j + 1) = Hd(i, j);
      }
    st.n_pairs_A = n;
    st.require_valid();

    const auto cores = klco_cores(st);
    double total = 0.0;
    for (const auto& c : cores.cores) total += c.contribution;
    CHECK(total == Catch::Approx(log_negativity(st)).epsilon(1e-8));
    const MatrixXd Om = canonical_omega(n);
    CHECK((cores.S_A.transpose() * Om * cores.S_A - Om).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((cores.S_B.transpose() * Om * cores.S_B - Om).cwiseAbs().maxCoeff() < 1e-10);
    (void)rng;
  }
  SECTION("multi-time states are rejected (not an equal-time set)") {
    const double R = 1.0, T = 6.0;
    std::vector<ModeSpec> modes;
    for (int i = 0; i < 2; ++i) {
      modes.push_back(mode(Region::A, R, 2, 0.0, -T / 2 + i * T));
    }
    for (int i = 0; i < 2; ++i) {
      modes.push_back(mode(Region::B, R, 2, T + 2 * R, -T / 2 + i * T));
    }
    const auto st = symplectic_gram_schmidt(mode_correlators(modes));
    CHECK_THROWS_AS(klco_cores(st), unsupported_configuration);
  }
}
