#pragma once

#include <vector>

#include "vbow/types.hpp"

namespace vbow {

enum class RefineMode { iterative, closed_form };

/// Diffusion strength is given either as alpha in (0,1) or as the ridge
/// lambda >= 0; the two are tied by alpha = lambda / (1 + lambda).
struct RefineConfig {
  double alpha = 0.995;
  double tol = 1e-6;  // relative Frobenius change threshold
  int max_iterations = 1000;
  RefineMode mode = RefineMode::iterative;

  static RefineConfig with_alpha(double alpha);
  static RefineConfig with_lambda(double lambda);
  double lambda() const { return alpha / (1.0 - alpha); }
};

/// S = D^{-1/2} W D^{-1/2}, zero-degree rows zero.
SparseMatrix compute_s(const ImageGraph& W);
Matrix compute_s(const Matrix& W);
Matrix compute_s(const AffinityMatrix& W);

struct RefineResult {
  BowMatrix refined;
  int iterations = 0;
  bool converged = true;
  // ||F(t+1) - F(t)||_F per iteration; contracts by at least alpha per step.
  std::vector<double> step_changes;
};

/// F* = (I + lambda L)^{-1} Y via one dense factorization; guarded to
/// n <= 5000.
RefineResult refine_closed_form(const BowMatrix& Y, const ImageGraph& W,
                                const RefineConfig& cfg = {});

/// Iterates F(t+1) = alpha S F(t) + (1 - alpha) Y from F(0) = Y until the
/// relative Frobenius change drops below cfg.tol. Converges to
/// (1 - alpha)(I - alpha S)^{-1} Y, which equals the closed form.
RefineResult refine_iterative(const BowMatrix& Y, const ImageGraph& W,
                              const RefineConfig& cfg = {});

/// Dispatches on cfg.mode.
RefineResult refine(const BowMatrix& Y, const ImageGraph& W,
                    const RefineConfig& cfg = {});

}  // namespace vbow
