#pragma once

#include "vbow/types.hpp"

namespace vbow {

/// L = I - D^{-1/2} W D^{-1/2} with D = diag(row sums of W). Vertices with
/// zero degree get a unit-vector row, which keeps L positive semi-definite.
Laplacian normalized_laplacian(const Matrix& W);
Laplacian normalized_laplacian(const AffinityMatrix& W);
Laplacian normalized_laplacian(const ImageGraph& W);

/// D^{-1/2} applied symmetrically without the identity shift:
/// S = D^{-1/2} W D^{-1/2}. Spectral radius is at most 1.
Matrix degree_normalize(const Matrix& W);
SparseMatrix degree_normalize(const SparseMatrix& W);

}  // namespace vbow
