#include "vbow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include <Eigen/Eigenvalues>

#include "vbow/laplacian.hpp"
#include "vbow/neighbors.hpp"
#include "vbow/parallel.hpp"

namespace vbow {

namespace {

constexpr double kEigClamp = -1e-10;

// Builds the symmetrized sparse graph from per-image outgoing weight rows.
// Assembly order is fixed by image index, so the result is independent of
// how the rows were computed.
ImageGraph assemble_graph(
    Eigen::Index n, const std::vector<std::vector<int>>& neighbors,
    const std::vector<Vector>& row_weights) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& nbrs = neighbors[i];
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
      const double w = 0.5 * row_weights[i][static_cast<Eigen::Index>(j)];
      if (w != 0.0 && nbrs[j] != i) {
        triplets.emplace_back(static_cast<int>(i), nbrs[j], w);
        triplets.emplace_back(nbrs[j], static_cast<int>(i), w);
      }
    }
  }
  SparseMatrix W(n, n);
  W.setFromTriplets(triplets.begin(), triplets.end());
  W.prune(0.0, 0.0);
  return ImageGraph(std::move(W));
}

}  // namespace

Matrix EigenFactor::sqrt_factor() const {
  return eigenvalues.cwiseSqrt().asDiagonal() * V.transpose();
}

EigenFactor laplacian_sqrt_factor(const Laplacian& L) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(L.matrix);
  if (solver.info() != Eigen::Success) {
    throw Error("eigendecomposition of neighborhood Laplacian failed");
  }
  EigenFactor factor;
  factor.V = solver.eigenvectors();
  factor.eigenvalues = solver.eigenvalues().unaryExpr([](double v) {
    if (v < kEigClamp) {
      // Anything below the clamp window means the input was not PSD.
      throw Error("neighborhood Laplacian has a significantly negative eigenvalue");
    }
    return std::max(v, 0.0);
  });
  return factor;
}

LocalProblem make_local_problem(const AffinityMatrix& A, const NeighborList& nl,
                                int image_index) {
  LocalProblem p;
  p.image_index = image_index;
  p.neighbors = nl.indices.at(image_index);
  const Eigen::Index k = static_cast<Eigen::Index>(p.neighbors.size());
  p.y.resize(k);
  p.C.resize(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    p.y[a] = A(p.neighbors[a], image_index);
    for (Eigen::Index b = 0; b < k; ++b) {
      p.C(a, b) = A(p.neighbors[a], p.neighbors[b]);
    }
  }
  return p;
}

Laplacian neighborhood_laplacian(const BowMatrix& Y,
                                 const std::vector<int>& neighbors,
                                 bool l2_normalize_rows) {
  if (neighbors.empty()) {
    throw ConfigError("neighborhood_laplacian requires a nonempty neighborhood");
  }
  const Eigen::Index k = static_cast<Eigen::Index>(neighbors.size());
  Matrix rows(k, Y.cols());
  for (Eigen::Index a = 0; a < k; ++a) {
    rows.row(a) = Y.values().row(neighbors[a]);
    if (l2_normalize_rows) {
      const double norm = rows.row(a).norm();
      if (norm > 0.0) rows.row(a) /= norm;
    }
  }
  const Matrix gram = rows * rows.transpose();
  return normalized_laplacian(gram);
}

void add_manifold_regularizer(LocalProblem& p, const BowMatrix& Y,
                              bool l2_normalize_rows) {
  const Laplacian L = neighborhood_laplacian(Y, p.neighbors, l2_normalize_rows);
  p.C_tilde = laplacian_sqrt_factor(L).sqrt_factor();
}

L1Solution solve_local_problem(LocalProblem& p, const SolverConfig& cfg) {
  const Eigen::Index k = p.y.size();
  const bool structured = p.C_tilde.size() > 0 && !p.C_tilde.isZero(0.0);

  Matrix system;
  Vector rhs;
  if (structured) {
    // [[C, I, 0], [C~, 0, I]] with rhs [y; 0]; identity blocks keep the
    // system full row rank.
    system = Matrix::Zero(2 * k, 3 * k);
    system.topLeftCorner(k, k) = p.C;
    system.block(0, k, k, k) = Matrix::Identity(k, k);
    system.bottomLeftCorner(k, k) = p.C_tilde;
    system.block(k, 2 * k, k, k) = Matrix::Identity(k, k);
    rhs = Vector::Zero(2 * k);
    rhs.head(k) = p.y;
  } else {
    system = Matrix::Zero(k, 2 * k);
    system.leftCols(k) = p.C;
    system.rightCols(k) = Matrix::Identity(k, k);
    rhs = p.y;
  }

  L1Solution solution = basis_pursuit(system, rhs, cfg);
  p.alpha = solution.z.head(k);
  p.zeta = solution.z.segment(k, k);
  p.xi = structured ? Vector(solution.z.tail(k)) : Vector::Zero(k);
  p.converged = solution.converged;
  return solution;
}

ImageGraph build_knn_graph(const AffinityMatrix& A, int k) {
  const NeighborList nl = knn_neighbors(A, k);
  const Eigen::Index n = A.size();
  std::vector<Vector> rows(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& nbrs = nl.indices[i];
    rows[i].resize(static_cast<Eigen::Index>(nbrs.size()));
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
      rows[i][static_cast<Eigen::Index>(j)] = A(i, nbrs[j]);
    }
  }
  return assemble_graph(n, nl.indices, rows);
}

namespace {

ImageGraph l1_graph(const AffinityMatrix& A, const BowMatrix* Y, int k,
                    const SolverConfig& cfg, bool l2_normalize_rows) {
  const NeighborList nl = knn_neighbors(A, k);
  const Eigen::Index n = A.size();
  std::vector<Vector> rows(n);
  std::vector<char> failed(n, 0);

  parallel_for(n, [&](Eigen::Index i) {
    LocalProblem p = make_local_problem(A, nl, static_cast<int>(i));
    const Eigen::Index kk = p.y.size();
    if (p.y.isZero(0.0)) {
      // Textually unrelated to every neighbor: zero row is optimal.
      rows[i] = Vector::Zero(kk);
      return;
    }
    if (Y != nullptr) add_manifold_regularizer(p, *Y, l2_normalize_rows);
    solve_local_problem(p, cfg);
    if (!p.converged) failed[i] = 1;
    rows[i] = p.alpha.cwiseAbs();
  });

  for (Eigen::Index i = 0; i < n; ++i) {
    if (failed[i]) {
      std::cerr << "[vbow] warning: L1 solve for image " << i
                << " hit the iteration cap; keeping best iterate\n";
    }
  }
  return assemble_graph(n, nl.indices, rows);
}

}  // namespace

ImageGraph sparse_repr_graph(const AffinityMatrix& A, int k,
                             const SolverConfig& cfg) {
  if (k >= A.size()) {
    throw ConfigError("sparse_repr_graph requires k < n");
  }
  return l1_graph(A, nullptr, k, cfg, false);
}

ImageGraph structured_sparse_graph(const AffinityMatrix& A, const BowMatrix& Y,
                                   int k, const SolverConfig& cfg,
                                   const SsrOptions& opts) {
  if (Y.rows() != A.size()) {
    throw DimensionMismatch("structured_sparse_graph: Y and A image counts differ");
  }
  if (k >= A.size()) {
    throw ConfigError("structured_sparse_graph requires k < n");
  }
  return l1_graph(A, &Y, k, cfg, opts.l2_normalize_rows);
}

}  // namespace vbow
