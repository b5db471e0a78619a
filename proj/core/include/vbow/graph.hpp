#pragma once

#include "vbow/l1solve.hpp"
#include "vbow/types.hpp"

namespace vbow {

/// Eigendecomposition of a small symmetric PSD matrix with eigenvalues
/// sorted ascending and tiny negatives clamped to zero.
struct EigenFactor {
  Matrix V;            // orthonormal, columns are eigenvectors
  Vector eigenvalues;  // ascending, >= 0 after clamping

  /// Sigma^{1/2} V^T; satisfies factor^T factor = L up to 1e-8 max-norm.
  Matrix sqrt_factor() const;
};

EigenFactor laplacian_sqrt_factor(const Laplacian& L);

/// Kernelized reconstruction data for one image restricted to its
/// k-neighborhood, plus the solution blocks once solved.
struct LocalProblem {
  int image_index = -1;
  std::vector<int> neighbors;  // N_k(i)
  Vector y;        // affinities A(j, i) for j in N_k(i)
  Matrix C;        // A restricted to N_k(i) x N_k(i)
  Matrix C_tilde;  // Sigma^{1/2} V^T of the neighborhood Laplacian; empty for SR

  Vector alpha;  // reconstruction coefficients
  Vector zeta;   // reconstruction noise
  Vector xi;     // regularization noise (empty for SR)
  bool converged = false;
};

LocalProblem make_local_problem(const AffinityMatrix& A, const NeighborList& nl,
                                int image_index);

/// Attaches the L1-norm Laplacian regularizer built from the visual rows of
/// the neighborhood. With l2_normalize_rows the rows are unit-scaled before
/// the linear kernel.
void add_manifold_regularizer(LocalProblem& p, const BowMatrix& Y,
                              bool l2_normalize_rows = false);

/// Solves min ||[alpha; zeta(; xi)]||_1 subject to the reconstruction (and,
/// when C_tilde is present and nonzero, regularization) constraints, filling
/// the solution blocks. A zero C_tilde reduces to the plain SR system so both
/// paths produce identical coefficients.
L1Solution solve_local_problem(LocalProblem& p, const SolverConfig& cfg = {});

/// L_i = I - D_i^{-1/2} Y_i Y_i^T D_i^{-1/2} over the selected rows of Y.
Laplacian neighborhood_laplacian(const BowMatrix& Y,
                                 const std::vector<int>& neighbors,
                                 bool l2_normalize_rows = false);

struct SsrOptions {
  // Unit-scale the visual rows before the neighborhood linear kernel.
  bool l2_normalize_rows = false;
};

/// Keep A(i, j) for j in N_k(i), zero elsewhere, then W <- (W + W^T)/2 with
/// zero diagonal.
ImageGraph build_knn_graph(const AffinityMatrix& A, int k);

/// L1-graph: per image solve the kernelized sparse reconstruction over its
/// k-neighborhood and use |alpha| as outgoing weights, then symmetrize.
ImageGraph sparse_repr_graph(const AffinityMatrix& A, int k,
                             const SolverConfig& cfg = {});

/// Structured variant: augments each local system with the L1-norm Laplacian
/// regularization rows derived from the visual BOW neighborhood.
ImageGraph structured_sparse_graph(const AffinityMatrix& A, const BowMatrix& Y,
                                   int k, const SolverConfig& cfg = {},
                                   const SsrOptions& opts = {});

}  // namespace vbow
