#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "lqft/density_matrix.hpp"
#include "lqft/error.hpp"
#include "lqft/quadrature.hpp"
#include "lqft/smeared.hpp"

// Quantum-controlled (retarded-propagator) interactions versus full quantum
// field mediation: non-perturbative zero-gap detector pairs in both models,
// their Hilbert-Schmidt distance and its long-time asymptote, the
// perturbative two-qubit quantum-controlled channel, and the
// gravity-mediated-entanglement setup with its retarded two-body Hamiltonian.

namespace lqft::qc {

using cdouble = std::complex<double>;
using smeared::BiKind;
using smeared::GaussianSmearing;
using specfun::pi;
using Matrix4 = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3d;

// ---------------------------------------------------------------------------
// Zero-gap detector pairs

// Smeared field data driving the pair, with the coupling lambda^2 already
// included; the A_IJ convention is A_IJ = lambda^2 A(Lam_I, Lam_J).
struct GaplessPairInputs {
  double Waa = 0.0;  // local Wightman weights, >= 0
  double Wbb = 0.0;
  double Hab = 0.0;  // Hadamard cross term
  double Eab = 0.0;  // commutator cross term
  double Dab = 0.0;  // symmetric-propagator cross term
  double Gra = 0.0;  // (lambda^2/2) G_R(Lam_a, Lam_a): local phase, a global
  double Grb = 0.0;  //   phase for involutive couplings, kept for reporting

  void validate() const {
    if (Waa < 0.0 || Wbb < 0.0)
      throw contract_error("GaplessPairInputs: local Wightman weights must be >= 0");
  }
};

// Minkowski-vacuum inputs for two identical comoving Gaussian profiles at
// spatial separation L and time delay t0 (zero gap).
inline GaplessPairInputs minkowski_gapless_inputs(double lambda, double T, double sigma,
                                                  double L, double t0 = 0.0) {
  GaussianSmearing fa, fb;
  fa.T = fb.T = T;
  fa.sigma = fb.sigma = sigma;
  fb.center = {L, 0.0, 0.0};
  fb.t_c = t0;
  const double l2 = lambda * lambda;
  GaplessPairInputs in;
  const auto self = smeared::self_pair_constants(T, sigma);
  in.Waa = in.Wbb = l2 * self.W;
  in.Gra = in.Grb = 0.5 * l2 * std::abs(self.GR);
  in.Hab = l2 * smeared::bidistribution_closed(BiKind::Hadamard, fa, fb).value.real();
  in.Eab = l2 * smeared::bidistribution_closed(BiKind::Causal, fa, fb).value.real();
  in.Dab = l2 * smeared::bidistribution_closed(BiKind::Symmetric, fa, fb).value.real();
  return in;
}

// Initial state |g_a g_b> expressed in the joint +- eigenbasis of the two
// monopole couplings (mu = sigma_x for both detectors).
inline Matrix4 ground_pair_pm_basis() {
  return Matrix4::Constant(0.25);
}

// Entrywise damping and phases of the non-perturbative quantum evolution in
// the +- eigenbasis {++, +-, -+, --}.
inline Matrix4 gapless_pair_quantum(const Matrix4& rho0, const GaplessPairInputs& in) {
  in.validate();
  dm::require_state(rho0);
  const cdouble i{0.0, 1.0};
  Matrix4 f;
  const cdouble d01 = std::exp(-2.0 * in.Wbb + i * (in.Eab - in.Dab));
  const cdouble d02 = std::exp(-2.0 * in.Waa - i * (in.Eab + in.Dab));
  const double d03 = std::exp(-2.0 * (in.Waa + in.Wbb + in.Hab));
  const double d12 = std::exp(-2.0 * (in.Waa + in.Wbb - in.Hab));
  const cdouble d13 = std::exp(-2.0 * in.Waa + i * (in.Eab + in.Dab));
  const cdouble d23 = std::exp(-2.0 * in.Wbb - i * (in.Eab - in.Dab));
  f << 1.0, d01, d02, d03,
      std::conj(d01), 1.0, d12, d13,
      std::conj(d02), std::conj(d12), 1.0, d23,
      d03, std::conj(d13), std::conj(d23), 1.0;
  Matrix4 rho = rho0.cwiseProduct(f);
  rho = 0.5 * (rho + rho.adjoint().eval());
  return rho;
}

// The quantum-controlled counterpart: a pure phase on the mu_a mu_b = -1
// sectors, unitary on the pair.
inline Matrix4 gapless_pair_qc(const Matrix4& rho0, double Dab) {
  dm::require_state(rho0);
  const std::array<double, 4> s{1.0, -1.0, -1.0, 1.0};  // mu_a mu_b eigenvalues
  Matrix4 rho;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      rho(r, c) = rho0(r, c) * std::exp(cdouble{0.0, -0.5 * Dab * (s[r] - s[c])});
  return rho;
}

// Squared Hilbert-Schmidt distance between two states.
inline double hs_distance_sq(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw contract_error("hs_distance_sq: dimension mismatch");
  return (a - b).squaredNorm();
}

// Long-time limit of the squared HS distance between the quantum and
// quantum-controlled zero-gap pairs started in the ground state.
inline double hs_asymptote(double lambda) {
  const double x = lambda * lambda / pi;
  return (5.0 + std::exp(-4.0 * x) - 2.0 * std::exp(-2.0 * x) +
          4.0 * std::exp(-x) - 8.0 * std::exp(-0.5 * x)) / 8.0;
}

// ---------------------------------------------------------------------------
// Perturbative two-qubit quantum-controlled channel

struct QcPerturbative {
  cdouble Mc;         // -(i lambda^2/2) Delta(Lam_a^+, Lam_b^+)
  cdouble Nc;         // -(i lambda^2/2) Delta(Lam_a^+, Lam_b^-)
  Matrix4 rho;        // final state in {gg, ge, eg, ee}
  double negativity;  // = |Mc|
};

inline QcPerturbative qc_two_qubit_perturbative(double lambda, const GaussianSmearing& fa,
                                                const GaussianSmearing& fb) {
  const cdouble i{0.0, 1.0};
  const double l2 = lambda * lambda;
  auto delta = [&](double sa, double sb) {
    GaussianSmearing a = fa, b = fb;
    a.Omega = sa * fa.Omega;
    b.Omega = sb * fb.Omega;
    return smeared::bidistribution_closed(BiKind::Symmetric, a, b).value;
  };
  QcPerturbative out;
  out.Mc = -0.5 * i * l2 * delta(+1.0, +1.0);
  out.Nc = -0.5 * i * l2 * delta(+1.0, -1.0);
  const double m2 = std::norm(out.Mc);
  out.rho = Matrix4::Zero();
  out.rho(0, 0) = 1.0 - m2;
  out.rho(3, 3) = m2;
  out.rho(3, 0) = out.Mc;
  out.rho(0, 3) = std::conj(out.Mc);
  out.negativity = std::abs(out.Mc);
  return out;
}

// ---------------------------------------------------------------------------
// Gravity-mediated entanglement

// Time-parametrized worldline with velocity; |v| < 1 everywhere.
class Worldline {
 public:
  virtual ~Worldline() = default;
  virtual Vec3 position(double t) const = 0;
  virtual Vec3 velocity(double t) const = 0;
};

class StaticPath final : public Worldline {
 public:
  explicit StaticPath(Vec3 x) : x_(std::move(x)) {}
  Vec3 position(double) const override { return x_; }
  Vec3 velocity(double) const override { return Vec3::Zero(); }

 private:
  Vec3 x_;
};

class UniformVelocityPath final : public Worldline {
 public:
  UniformVelocityPath(Vec3 x0, Vec3 v) : x0_(std::move(x0)), v_(std::move(v)) {
    if (v_.norm() >= 1.0) throw contract_error("UniformVelocityPath: |v| >= 1");
  }
  Vec3 position(double t) const override { return x0_ + t * v_; }
  Vec3 velocity(double) const override { return v_; }

 private:
  Vec3 x0_, v_;
};

// Split-and-recombine branch: moves out along `dir` by `split` with linear
// ramps over the first and last `ramp_fraction` of [0, duration], holding in
// between. Outside [0, duration] the path rests at the base point.
class TrapezoidPath final : public Worldline {
 public:
  TrapezoidPath(Vec3 base, Vec3 dir, double split, double duration,
                double ramp_fraction = 0.25)
      : base_(std::move(base)),
        dir_(dir.normalized()),
        split_(split),
        T_(duration),
        fr_(ramp_fraction) {
    if (!(duration > 0.0) || !(ramp_fraction > 0.0) || ramp_fraction >= 0.5)
      throw contract_error("TrapezoidPath: need duration > 0, 0 < ramp_fraction < 1/2");
    if (std::abs(split) / (ramp_fraction * duration) >= 1.0)
      throw contract_error("TrapezoidPath: ramp would be superluminal");
  }
  Vec3 position(double t) const override { return base_ + profile(t) * dir_; }
  Vec3 velocity(double t) const override { return dprofile(t) * dir_; }

 private:
  double profile(double t) const {
    if (t <= 0.0 || t >= T_) return 0.0;
    const double r = fr_ * T_;
    if (t < r) return split_ * t / r;
    if (t > T_ - r) return split_ * (T_ - t) / r;
    return split_;
  }
  double dprofile(double t) const {
    if (t <= 0.0 || t >= T_) return 0.0;
    const double r = fr_ * T_;
    if (t < r) return split_ / r;
    if (t > T_ - r) return -split_ / r;
    return 0.0;
  }
  Vec3 base_, dir_;
  double split_, T_, fr_;
};

// Worldline sampled as CSV rows "t,x,y,z", Catmull-Rom cubic in between,
// clamped to the end samples outside the tabulated range.
class SampledPath final : public Worldline {
 public:
  SampledPath(std::vector<double> ts, std::vector<Vec3> xs)
      : t_(std::move(ts)), x_(std::move(xs)) {
    if (t_.size() < 2 || t_.size() != x_.size())
      throw contract_error("SampledPath: need >= 2 samples");
    for (std::size_t i = 1; i < t_.size(); ++i)
      if (!(t_[i] > t_[i - 1]))
        throw contract_error("SampledPath: times must be strictly increasing");
  }

  static SampledPath from_csv(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw contract_error("SampledPath: cannot open " + filename);
    std::vector<double> ts;
    std::vector<Vec3> xs;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ss(line);
      double t, x, y, z;
      if (ss >> t >> x >> y >> z) {
        ts.push_back(t);
        xs.push_back({x, y, z});
      }
    }
    return SampledPath(std::move(ts), std::move(xs));
  }

  Vec3 position(double t) const override { return eval(t).first; }
  Vec3 velocity(double t) const override { return eval(t).second; }

 private:
  std::pair<Vec3, Vec3> eval(double t) const {
    const std::size_t n = t_.size();
    if (t <= t_.front()) return {x_.front(), Vec3::Zero()};
    if (t >= t_.back()) return {x_.back(), Vec3::Zero()};
    std::size_t k = std::upper_bound(t_.begin(), t_.end(), t) - t_.begin() - 1;
    k = std::min(k, n - 2);
    const double h = t_[k + 1] - t_[k];
    const double u = (t - t_[k]) / h;
    // Catmull-Rom tangents (one-sided at the ends)
    const Vec3 m0 = k == 0 ? (x_[1] - x_[0]) / (t_[1] - t_[0])
                           : (x_[k + 1] - x_[k - 1]) / (t_[k + 1] - t_[k - 1]);
    const Vec3 m1 = k + 2 >= n ? (x_[n - 1] - x_[n - 2]) / (t_[n - 1] - t_[n - 2])
                               : (x_[k + 2] - x_[k]) / (t_[k + 2] - t_[k]);
    const double u2 = u * u, u3 = u2 * u;
    const Vec3 pos = (2 * u3 - 3 * u2 + 1) * x_[k] + (u3 - 2 * u2 + u) * h * m0 +
                     (-2 * u3 + 3 * u2) * x_[k + 1] + (u3 - u2) * h * m1;
    const Vec3 vel = ((6 * u2 - 6 * u) * x_[k] + (3 * u2 - 4 * u + 1) * h * m0 +
                      (-6 * u2 + 6 * u) * x_[k + 1] + (3 * u2 - 2 * u) * h * m1) /
                     h;
    return {pos, vel};
  }

  std::vector<double> t_;
  std::vector<Vec3> x_;
};

enum class Branch1 { L1, R1 };
enum class Branch2 { L2, R2 };

struct GMEPaths {
  std::shared_ptr<Worldline> zL1, zR1, zL2, zR2;
  double m1 = 1.0, m2 = 1.0;
  double duration = 1.0;   // superposition time window [0, T]
  double G_newton = 1.0;   // gravitational constant in the chosen units

  const Worldline& branch1(Branch1 b) const { return b == Branch1::L1 ? *zL1 : *zR1; }
  const Worldline& branch2(Branch2 b) const { return b == Branch2::L2 ? *zL2 : *zR2; }
  void validate() const {
    if (!zL1 || !zR1 || !zL2 || !zR2)
      throw contract_error("GMEPaths: all four branches required");
    if (!(duration > 0.0) || !(m1 > 0.0) || !(m2 > 0.0) || !(G_newton > 0.0))
      throw contract_error("GMEPaths: positive duration, masses, G required");
  }
};

struct PhaseTable {
  // indexed [branch1][branch2] with L = 0, R = 1
  std::array<std::array<double, 2>, 2> phi{};
  double& operator()(Branch1 a, Branch2 b) {
    return phi[a == Branch1::L1 ? 0 : 1][b == Branch2::L2 ? 0 : 1];
  }
  double operator()(Branch1 a, Branch2 b) const {
    return phi[a == Branch1::L1 ? 0 : 1][b == Branch2::L2 ? 0 : 1];
  }
  double combination() const {  // LL + RR - LR - RL
    return phi[0][0] + phi[1][1] - phi[0][1] - phi[1][0];
  }
};

namespace detail {

inline double pair_distance(const Worldline& a, const Worldline& b, double t) {
  const double d = (a.position(t) - b.position(t)).norm();
  if (d < 1e-12)
    throw singular_input_error("GME paths coincide: interaction diverges");
  return d;
}

}  // namespace detail

struct NewtonianResult {
  PhaseTable phases;  // Phi_{p1 p2} = -Int G m1 m2 / |z1 - z2| dt
  double negativity;  // max(0, sin(combination/2)/2)
};

inline NewtonianResult gme_newtonian(const GMEPaths& paths) {
  paths.validate();
  NewtonianResult out;
  for (Branch1 b1 : {Branch1::L1, Branch1::R1})
    for (Branch2 b2 : {Branch2::L2, Branch2::R2}) {
      const auto& z1 = paths.branch1(b1);
      const auto& z2 = paths.branch2(b2);
      auto r = integrate(
          [&](double t) {
            return -paths.G_newton * paths.m1 * paths.m2 /
                   detail::pair_distance(z1, z2, t);
          },
          0.0, paths.duration, QuadOptions{1e-12, 1e-11, 20000});
      out.phases(b1, b2) = r.value;
    }
  out.negativity = std::max(0.0, 0.5 * std::sin(0.5 * out.phases.combination()));
  return out;
}

// Retarded time: solves t - t_r = |z2(t) - z1(t_r)| by bisection; the
// defining function is strictly monotone for subluminal paths.
inline double retarded_time(const Worldline& z1, const Worldline& z2, double t) {
  auto f = [&](double tr) { return t - tr - (z2.position(t) - z1.position(tr)).norm(); };
  double lo = t - 1.0, hi = t;
  if (f(hi) > 0.0) throw contract_error("retarded_time: coincident events");
  int guard = 0;
  while (f(lo) < 0.0) {
    lo = t - 2.0 * (t - lo);
    if (++guard > 60)
      throw contract_error("retarded_time: no bracket (superluminal path data?)");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= 0.0) lo = mid; else hi = mid;
    if (hi - lo < 1e-13 * std::max(1.0, std::abs(t))) break;
  }
  return 0.5 * (lo + hi);
}

// Velocity-dependent retarded two-body energy
//   H_I(t) = 1/2 (H_12 + H_21),
//   H_12 = -G m1 m2 [ (eta(u2(t), u1(t_r)))^2 - 1/2 ]
//          / ( |z2(t)-z1(t_r)| u2^0 u1^0 (1 - rhat . v1(t_r)) ).
inline double gme_retarded_H(const GMEPaths& paths, Branch1 b1, Branch2 b2, double t) {
  paths.validate();
  const auto& z1 = paths.branch1(b1);
  const auto& z2 = paths.branch2(b2);
  auto half = [&](const Worldline& za, const Worldline& zb) {
    // zb observes the retarded field of za
    const double tr = retarded_time(za, zb, t);
    const Vec3 xb = zb.position(t), xa = za.position(tr);
    const Vec3 vb = zb.velocity(t), va = za.velocity(tr);
    const double r = (xb - xa).norm();
    if (r < 1e-12) throw singular_input_error("gme_retarded_H: coincident events");
    const Vec3 rhat = (xb - xa) / r;
    const double ga = 1.0 / std::sqrt(1.0 - va.squaredNorm());
    const double gb = 1.0 / std::sqrt(1.0 - vb.squaredNorm());
    const double udot = ga * gb * (-1.0 + vb.dot(va));  // eta_{mu nu} u_b^mu u_a^nu
    return -paths.G_newton * paths.m1 * paths.m2 * (udot * udot - 0.5) /
           (r * gb * ga * (1.0 - rhat.dot(va)));
  };
  return half(z1, z2) + half(z2, z1);
}

// lambda^2-inclusive symmetric-propagator phase of a branch pair:
// Delta_{p1 p2} = -Int_0^T H_I(t) dt (so the unitary is exp(i Delta)).
inline double gme_delta(const GMEPaths& paths, Branch1 b1, Branch2 b2) {
  paths.validate();
  auto r = integrate(
      [&](double t) { return -gme_retarded_H(paths, b1, b2, t); }, 0.0,
      paths.duration, QuadOptions{1e-12, 1e-10, 20000});
  return r.value;
}

inline PhaseTable gme_delta_table(const GMEPaths& paths) {
  PhaseTable tab;
  for (Branch1 b1 : {Branch1::L1, Branch1::R1})
    for (Branch2 b2 : {Branch2::L2, Branch2::R2})
      tab(b1, b2) = gme_delta(paths, b1, b2);
  return tab;
}

// Final two-particle state and negativities. The graviton Hadamard data
// (H table and the local/interference noise weights Lv, Li) are inputs with
// default zero; the retarded phases come from gme_delta_table.
struct GMEState {
  Matrix4 rho;      // basis {L1L2, R1L2, L1R2, R1R2}
  double N_q;       // quantum-field leading-order negativity
  double N_c;       // quantum-controlled negativity
  bool noise_flagged = false;  // set when Lv < Li (unphysical input)
};

inline GMEState gme_state(const PhaseTable& delta, const PhaseTable& hadamard,
                          double Lv = 0.0, double Li = 0.0) {
  GMEState out;
  out.noise_flagged = Lv < Li;
  const cdouble i{0.0, 1.0};
  // basis order {L1L2, R1L2, L1R2, R1R2}: index = 2*[p2] + [p1]
  const std::array<double, 4> d{delta.phi[0][0], delta.phi[1][0], delta.phi[0][1],
                                delta.phi[1][1]};
  Matrix4 rho = Matrix4::Constant(0.25);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      rho(r, c) += 0.25 * i * (d[r] - d[c]);  // delta rho_c
  const double hq = 0.25 * (hadamard.phi[0][1] + hadamard.phi[1][0] -
                            hadamard.phi[0][0] - hadamard.phi[1][1]);
  rho(0, 3) += hq;
  rho(3, 0) += hq;
  rho(1, 2) -= hq;
  rho(2, 1) -= hq;
  // the local-noise correction must suppress coherence (the printed matrix
  // carries the opposite overall sign, incompatible with the negativity
  // formula it is meant to produce)
  const double ln = -0.5 * (Lv - Li);
  const double l2n = 2.0 * ln;
  rho(0, 1) += ln; rho(1, 0) += ln;
  rho(0, 2) += ln; rho(2, 0) += ln;
  rho(0, 3) += l2n; rho(3, 0) += l2n;
  rho(1, 2) += l2n; rho(2, 1) += l2n;
  rho(1, 3) += ln; rho(3, 1) += ln;
  rho(2, 3) += ln; rho(3, 2) += ln;
  out.rho = rho;

  // G_F combination (lambda^2-inclusive): GF_p = (H_p + i Delta_p)/2
  const cdouble gf_comb =
      0.5 * (hadamard.combination() + i * delta.combination());
  // effective local noise entering the closed-form negativity; determined
  // against the dense partial-transpose spectrum (see tests)
  const double noise = 2.0 * (Lv - Li);
  out.N_q = std::max(0.0, 0.5 * std::abs(gf_comb) - 0.5 * noise);
  out.N_c = 0.25 * std::abs(delta.combination());
  return out;
}

}  // namespace lqft::qc
