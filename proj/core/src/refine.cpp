#include "vbow/refine.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "vbow/laplacian.hpp"
#include "vbow/parallel.hpp"

namespace vbow {

namespace {

constexpr Eigen::Index kDenseSolveLimit = 5000;

void check_dims(const BowMatrix& Y, const ImageGraph& W) {
  if (Y.rows() != W.size()) {
    throw DimensionMismatch("refine: Y rows must match graph size");
  }
}

BowMatrix as_bow(Matrix F, const BowMatrix& Y) {
  // The exact solution is entrywise nonnegative; clear solver dust.
  F = F.cwiseMax(0.0);
  return BowMatrix(std::move(F), Y.feature_ids());
}

}  // namespace

RefineConfig RefineConfig::with_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ConfigError("refine alpha must lie in [0, 1)");
  }
  RefineConfig cfg;
  cfg.alpha = alpha;
  return cfg;
}

RefineConfig RefineConfig::with_lambda(double lambda) {
  if (lambda < 0.0) throw ConfigError("refine lambda must be >= 0");
  RefineConfig cfg;
  cfg.alpha = lambda / (1.0 + lambda);
  return cfg;
}

SparseMatrix compute_s(const ImageGraph& W) {
  return degree_normalize(W.weights());
}

Matrix compute_s(const Matrix& W) { return degree_normalize(W); }

Matrix compute_s(const AffinityMatrix& W) { return degree_normalize(W.values()); }

RefineResult refine_closed_form(const BowMatrix& Y, const ImageGraph& W,
                                const RefineConfig& cfg) {
  check_dims(Y, W);
  if (Y.rows() > kDenseSolveLimit) {
    throw ConfigError("closed-form refinement is gated to n <= 5000");
  }
  const double lambda = cfg.lambda();
  const Laplacian L = normalized_laplacian(W);
  Matrix system = lambda * L.matrix;
  system.diagonal().array() += 1.0;
  Eigen::LLT<Matrix> llt(system);  // I + lambda L is SPD
  if (llt.info() != Eigen::Success) {
    throw Error("refine_closed_form factorization failed");
  }
  RefineResult result;
  result.refined = as_bow(llt.solve(Y.values()), Y);
  result.converged = true;
  return result;
}

RefineResult refine_iterative(const BowMatrix& Y, const ImageGraph& W,
                              const RefineConfig& cfg) {
  check_dims(Y, W);
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw ConfigError("refine_iterative requires alpha in (0, 1)");
  }
  if (cfg.tol <= 0.0 || cfg.max_iterations < 1) {
    throw ConfigError("refine_iterative requires tol > 0 and max_iterations >= 1");
  }

  const SparseMatrix S = compute_s(W);
  const double alpha = cfg.alpha;
  const Matrix& y = Y.values();
  Matrix F = y;
  Matrix F_next(F.rows(), F.cols());
  // Per-column squared change, combined in fixed order so the convergence
  // decision is identical for every thread count.
  Vector col_sq(F.cols());

  RefineResult result;
  result.converged = false;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    parallel_blocks(F.cols(), [&](Eigen::Index begin, Eigen::Index end) {
      for (Eigen::Index c = begin; c < end; ++c) {
        F_next.col(c) = alpha * (S * F.col(c)) + (1.0 - alpha) * y.col(c);
        col_sq[c] = (F_next.col(c) - F.col(c)).squaredNorm();
      }
    });
    const double change = std::sqrt(col_sq.sum());
    result.step_changes.push_back(change);
    const double base = F.norm();
    F.swap(F_next);
    result.iterations = it + 1;
    if (change <= cfg.tol * (base > 0.0 ? base : 1.0)) {
      result.converged = true;
      break;
    }
  }
  result.refined = as_bow(std::move(F), Y);
  return result;
}

RefineResult refine(const BowMatrix& Y, const ImageGraph& W,
                    const RefineConfig& cfg) {
  return cfg.mode == RefineMode::closed_form ? refine_closed_form(Y, W, cfg)
                                             : refine_iterative(Y, W, cfg);
}

}  // namespace vbow
