#pragma once

#include <span>

#include "vbow/types.hpp"

namespace vbow {

/// Gram matrix of the rows of X. With row_normalize, rows are first scaled
/// to unit Euclidean norm (zero rows are left as zero), bounding the result
/// in [0, 1].
AffinityMatrix linear_kernel(const BowMatrix& X, bool row_normalize = true);

/// Histogram intersection: sum_d min(x_d, y_d).
double hik_similarity(std::span<const double> x, std::span<const double> y);
double hik_similarity(const Vector& x, const Vector& y);

}  // namespace vbow
