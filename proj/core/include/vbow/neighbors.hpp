#pragma once

#include "vbow/types.hpp"

namespace vbow {

/// For each image i, the k columns j != i with largest A(i, j), ordered by
/// descending affinity and ties broken by smaller index. k >= n is clamped
/// to n - 1 with a warning on stderr.
NeighborList knn_neighbors(const AffinityMatrix& A, int k);

}  // namespace vbow
