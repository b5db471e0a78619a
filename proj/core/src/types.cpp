#include "vbow/types.hpp"

#include <utility>

namespace vbow {

namespace {

constexpr double kSymmetryTol = 1e-12;

}  // namespace

BowMatrix::BowMatrix(Matrix values, std::vector<std::string> feature_ids)
    : values_(std::move(values)), feature_ids_(std::move(feature_ids)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw DimensionMismatch("BowMatrix must have positive rows and cols");
  }
  if ((values_.array() < 0.0).any()) {
    throw Error("BowMatrix entries must be nonnegative");
  }
  if (!feature_ids_.empty() &&
      static_cast<Eigen::Index>(feature_ids_.size()) != values_.cols()) {
    throw DimensionMismatch("feature_ids length must match column count");
  }
}

AffinityMatrix::AffinityMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols() || values_.rows() == 0) {
    throw DimensionMismatch("AffinityMatrix must be square and nonempty");
  }
  const double scale = std::max(1.0, values_.cwiseAbs().maxCoeff());
  if ((values_ - values_.transpose()).cwiseAbs().maxCoeff() >
      kSymmetryTol * scale) {
    throw Error("AffinityMatrix must be symmetric within 1e-12");
  }
  if ((values_.array() < 0.0).any()) {
    throw Error("AffinityMatrix entries must be nonnegative");
  }
}

ImageGraph::ImageGraph(SparseMatrix weights) : weights_(std::move(weights)) {
  if (weights_.rows() != weights_.cols()) {
    throw DimensionMismatch("ImageGraph weights must be square");
  }
  weights_.makeCompressed();
}

}  // namespace vbow
