#pragma once

#include <Eigen/Dense>
#include <complex>

#include "lqft/error.hpp"

// Small helpers shared by every module that emits density matrices:
// state-hygiene checks, partial transposition over a bipartition, and the
// negativity computed from the partially transposed spectrum.

namespace lqft::dm {

using Matrix = Eigen::MatrixXcd;

struct StateCheck {
  double hermiticity_defect;  // max |rho - rho^dagger|
  double trace_defect;        // |tr rho - 1|
  double min_eigenvalue;
  bool ok(double tol_herm = 1e-12, double tol_trace = 1e-12,
          double tol_psd = -1e-8) const {
    return hermiticity_defect <= tol_herm && trace_defect <= tol_trace &&
           min_eigenvalue >= tol_psd;
  }
};

inline StateCheck check_state(const Matrix& rho) {
  StateCheck c;
  c.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  c.trace_defect = std::abs(rho.trace() - std::complex<double>{1.0, 0.0});
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

inline void require_state(const Matrix& rho, double tol_herm = 1e-12,
                          double tol_trace = 1e-12, double tol_psd = -1e-8) {
  const auto c = check_state(rho);
  if (!c.ok(tol_herm, tol_trace, tol_psd))
    throw contract_error("density matrix fails hygiene checks");
}

// Partial transpose over the second factor of a dimA x dimB product space,
// indices ordered A-major: index = a * dimB + b.
inline Matrix partial_transpose(const Matrix& rho, int dimA, int dimB) {
  if (rho.rows() != dimA * dimB || rho.cols() != dimA * dimB)
    throw contract_error("partial_transpose: dimension mismatch");
  Matrix out(rho.rows(), rho.cols());
  for (int a = 0; a < dimA; ++a)
    for (int b = 0; b < dimB; ++b)
      for (int ap = 0; ap < dimA; ++ap)
        for (int bp = 0; bp < dimB; ++bp)
          out(a * dimB + bp, ap * dimB + b) = rho(a * dimB + b, ap * dimB + bp);
  return out;
}

inline Eigen::VectorXd pt_eigenvalues(const Matrix& rho, int dimA, int dimB) {
  const Matrix pt = partial_transpose(rho, dimA, dimB);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (pt + pt.adjoint()));
  return es.eigenvalues();
}

inline double min_pt_eigenvalue(const Matrix& rho, int dimA, int dimB) {
  return pt_eigenvalues(rho, dimA, dimB).minCoeff();
}

// Negativity: magnitude of the summed negative part of the PT spectrum.
inline double negativity(const Matrix& rho, int dimA, int dimB) {
  const auto ev = pt_eigenvalues(rho, dimA, dimB);
  double n = 0.0;
  for (int i = 0; i < ev.size(); ++i) n += std::max(0.0, -ev[i]);
  return n;
}

inline double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

}  // namespace lqft::dm
