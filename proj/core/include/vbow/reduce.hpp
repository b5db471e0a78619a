#pragma once

#include <cstdint>
#include <vector>

#include "vbow/types.hpp"

namespace vbow {

enum class ReductionVariant { ssc1, ssc2 };

/// Feature-feature similarity graph over the mid-level vocabulary.
struct ReductionGraph {
  Matrix weights;  // M_v x M_v, symmetric nonnegative, zero diagonal
  ReductionVariant variant = ReductionVariant::ssc1;
};

struct ColumnStats {
  Vector mu;
  Vector sigma;  // n - 1 denominator
};

ColumnStats column_stats(const BowMatrix& m);

/// Clipped Pearson correlation between refined columns:
/// w_ij = max(0, corr(F*_{.i}, F*_{.j})), zero diagonal, zero rows/columns
/// for constant features.
ReductionGraph ppm_weights(const BowMatrix& f_star);

/// W_s = (F*)^T A F* with zeroed diagonal.
ReductionGraph semantic_weights(const BowMatrix& f_star,
                                const AffinityMatrix& A);

struct EmbeddingMatrix {
  Matrix E;            // M_v x K
  Vector eigenvalues;  // retained eigenvalues, ascending
  bool rows_normalized = false;
};

/// Eigendecomposes the normalized Laplacian of G, discards trivial
/// eigenpairs (eigenvalue < 1e-10, one per connected component), keeps the
/// next K eigenvectors and unit-normalizes each nonzero row. Throws
/// InsufficientSpectrum when fewer than K nontrivial pairs exist.
EmbeddingMatrix spectral_embed(const ReductionGraph& G, int K);

/// Binary K x M_v partition of mid-level features into high-level clusters.
struct MembershipMatrix {
  int K = 0;
  std::vector<int> assignment;     // cluster id per feature
  std::vector<int> cluster_sizes;  // length K, all > 0 after repair

  Eigen::MatrixXi matrix() const;  // materialized U
};

/// k-means++ seeded Lloyd iterations on the embedding rows until the
/// assignment reaches a fixpoint (at most 300 rounds). Empty clusters are
/// repaired by seizing the point farthest from its centroid.
MembershipMatrix kmeans_cluster(const EmbeddingMatrix& E, int K,
                                std::uint64_t seed);

/// Y* = F* U^T: per image, sums the refined values of each cluster.
BowMatrix reduce_bow(const BowMatrix& f_star, const MembershipMatrix& U);

}  // namespace vbow
