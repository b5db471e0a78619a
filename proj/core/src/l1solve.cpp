#include "vbow/l1solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/QR>

namespace vbow {

namespace {

// Largest alpha in (0, 1] with x + alpha*dx >= (1 - eta) * x elementwise.
double step_length(const Vector& x, const Vector& dx, double eta) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx[i] < 0.0) alpha = std::min(alpha, -eta * x[i] / dx[i]);
  }
  return alpha;
}

// Solves the normal-equations SPD system (M diag(w) M^T + delta I) dy = rhs,
// bumping delta when the factorization fails.
Vector solve_normal(const Matrix& M, const Vector& w, Vector rhs,
                    double mu_scale) {
  const Matrix MW = M * w.asDiagonal();
  Matrix N = MW * M.transpose();
  double delta = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::LLT<Matrix> llt(N);
    if (llt.info() == Eigen::Success) return llt.solve(rhs);
    delta = (delta == 0.0) ? 1e-12 * std::max(1.0, mu_scale) : delta * 100.0;
    N.diagonal().array() += delta;
  }
  // Last resort: least-squares via QR instead of aborting the solve.
  return N.colPivHouseholderQr().solve(rhs);
}

}  // namespace

void SolverConfig::validate() const {
  if (duality_gap_tol <= 0.0 || constraint_feasibility_tol <= 0.0) {
    throw ConfigError("solver tolerances must be positive");
  }
  if (max_iterations < 1) {
    throw ConfigError("solver max_iterations must be >= 1");
  }
}

L1Solution basis_pursuit(const Matrix& M, const Vector& b,
                         const SolverConfig& cfg) {
  cfg.validate();
  const Eigen::Index m = M.rows();
  const Eigen::Index p = M.cols();
  if (m < 1 || p < m) {
    throw DimensionMismatch("basis_pursuit requires 1 <= m <= p");
  }
  if (b.size() != m) {
    throw DimensionMismatch("basis_pursuit rhs length must equal row count");
  }

  Eigen::ColPivHouseholderQR<Matrix> rank_qr(M);
  if (rank_qr.rank() < m) {
    throw RankDeficient("basis_pursuit constraint matrix is row rank deficient");
  }

  L1Solution out;
  out.z = Vector::Zero(p);
  if (b.isZero(0.0)) {
    // Zero is feasible and L1-minimal.
    out.converged = true;
    return out;
  }

  // LP after the split z = u - v: A = [M, -M], c = 1, x = (u; v) >= 0.
  // A f = M f_u - M f_v throughout; the 2p-column block matrix is never
  // materialized.
  const Eigen::Index nv = 2 * p;
  const double bnorm = b.norm();

  auto apply_A = [&](const Vector& x) -> Vector {
    return M * (x.head(p) - x.tail(p));
  };
  auto apply_At = [&](const Vector& y) -> Vector {
    Vector out2(nv);
    out2.head(p) = M.transpose() * y;
    out2.tail(p) = -out2.head(p);
    return out2;
  };

  // Mehrotra starting point.
  const Matrix MMt2 = 2.0 * (M * M.transpose());
  Eigen::LDLT<Matrix> mmt_ldlt(MMt2);
  Vector x = apply_At(mmt_ldlt.solve(b));
  Vector s = Vector::Ones(nv);  // c - A^T (AA^T)^{-1} A c = c here
  Vector y = Vector::Zero(m);
  {
    const double dx = std::max(-1.5 * x.minCoeff(), 0.0);
    x.array() += dx;
    const double xs = x.dot(s);
    x.array() += 0.5 * xs / s.sum();
    s.array() += 0.5 * xs / x.sum();
  }

  const Vector c = Vector::Ones(nv);
  bool converged = false;
  int iterations = 0;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    iterations = it;
    const Vector r_b = apply_A(x) - b;
    const Vector r_c = apply_At(y) + s - c;
    const double mu = x.dot(s) / static_cast<double>(nv);

    const double primal_obj = c.dot(x);
    const double dual_obj = b.dot(y);
    const double gap = std::abs(primal_obj - dual_obj) /
                       (1.0 + std::abs(primal_obj));
    const double primal_feas = r_b.norm() / (1.0 + bnorm);
    const double dual_feas = r_c.norm() / (1.0 + std::sqrt((double)nv));
    if (primal_feas <= cfg.constraint_feasibility_tol &&
        dual_feas <= 1e-8 && gap <= cfg.duality_gap_tol) {
      converged = true;
      break;
    }

    const Vector d2 = x.cwiseQuotient(s);  // X S^{-1}
    // Collapsed weights for the normal equations: A D^2 A^T = M (d_u + d_v) M^T.
    const Vector w = d2.head(p) + d2.tail(p);

    // Affine predictor: r_xs = -X S e.
    Vector r_xs = -x.cwiseProduct(s);
    Vector tmp = d2.cwiseProduct(r_c) + r_xs.cwiseQuotient(s);
    Vector rhs = -r_b - (M * (tmp.head(p) - tmp.tail(p)));
    Vector dy = solve_normal(M, w, rhs, mu);
    Vector dx = d2.cwiseProduct(apply_At(dy) + r_c) + r_xs.cwiseQuotient(s);
    Vector ds = (r_xs - s.cwiseProduct(dx)).cwiseQuotient(x);

    const double alpha_p_aff = step_length(x, dx, 1.0);
    const double alpha_d_aff = step_length(s, ds, 1.0);
    const double mu_aff = (x + alpha_p_aff * dx).dot(s + alpha_d_aff * ds) /
                          static_cast<double>(nv);
    double sigma = std::pow(mu_aff / mu, 3);
    sigma = std::clamp(sigma, 0.0, 0.999);

    // Corrector with centering, reusing the same normal matrix.
    r_xs = -x.cwiseProduct(s) - dx.cwiseProduct(ds);
    r_xs.array() += sigma * mu;
    tmp = d2.cwiseProduct(r_c) + r_xs.cwiseQuotient(s);
    rhs = -r_b - (M * (tmp.head(p) - tmp.tail(p)));
    dy = solve_normal(M, w, rhs, mu);
    dx = d2.cwiseProduct(apply_At(dy) + r_c) + r_xs.cwiseQuotient(s);
    ds = (r_xs - s.cwiseProduct(dx)).cwiseQuotient(x);

    const double eta = 0.995;
    const double alpha_p = std::min(1.0, eta * step_length(x, dx, 1.0));
    const double alpha_d = std::min(1.0, eta * step_length(s, ds, 1.0));
    x += alpha_p * dx;
    y += alpha_d * dy;
    s += alpha_d * ds;
  }

  Vector z = x.head(p) - x.tail(p);
  // Feasibility restoration: least-norm correction onto {Mz = b}.
  const Vector residual = b - M * z;
  z += M.transpose() * mmt_ldlt.solve(2.0 * residual);

  out.z = std::move(z);
  out.objective = out.z.lpNorm<1>();
  out.residual_norm = (M * out.z - b).norm();
  out.converged = converged;
  out.iterations = iterations;
  return out;
}

}  // namespace vbow
