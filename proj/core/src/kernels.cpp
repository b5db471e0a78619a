#include "vbow/kernels.hpp"

#include <algorithm>

namespace vbow {

AffinityMatrix linear_kernel(const BowMatrix& X, bool row_normalize) {
  Matrix rows = X.values();
  if (row_normalize) {
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      const double norm = rows.row(i).norm();
      if (norm > 0.0) rows.row(i) /= norm;
    }
  }
  Matrix gram = rows * rows.transpose();
  gram = ((gram + gram.transpose()) * 0.5).eval();
  // Products of nonnegative rows stay nonnegative; scrub fp dust anyway.
  gram = gram.cwiseMax(0.0);
  return AffinityMatrix(std::move(gram));
}

double hik_similarity(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DimensionMismatch("hik_similarity requires equal-length histograms");
  }
  double acc = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    acc += std::min(x[d], y[d]);
  }
  return acc;
}

double hik_similarity(const Vector& x, const Vector& y) {
  return hik_similarity(std::span<const double>(x.data(), x.size()),
                        std::span<const double>(y.data(), y.size()));
}

}  // namespace vbow
