#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "vbow/errors.hpp"

namespace vbow {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Images-by-features count/frequency matrix. Rows are images, columns are
/// visual words or tags; entries must be nonnegative. Column labels are
/// optional and carried through file round-trips.
class BowMatrix {
 public:
  BowMatrix() = default;
  explicit BowMatrix(Matrix values, std::vector<std::string> feature_ids = {});

  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  const Matrix& values() const { return values_; }
  const std::vector<std::string>& feature_ids() const { return feature_ids_; }
  double operator()(Eigen::Index i, Eigen::Index j) const {
    return values_(i, j);
  }

 private:
  Matrix values_;
  std::vector<std::string> feature_ids_;
};

/// Symmetric nonnegative image-image similarity matrix, stored dense.
class AffinityMatrix {
 public:
  AffinityMatrix() = default;
  explicit AffinityMatrix(Matrix values);

  Eigen::Index size() const { return values_.rows(); }
  const Matrix& values() const { return values_; }
  double operator()(Eigen::Index i, Eigen::Index j) const {
    return values_(i, j);
  }

 private:
  Matrix values_;
};

/// Symmetric nonnegative image graph with sparse weights: rows have at most
/// a few times k nonzeros, so coordinate storage is used throughout.
class ImageGraph {
 public:
  ImageGraph() = default;
  explicit ImageGraph(SparseMatrix weights);

  Eigen::Index size() const { return weights_.rows(); }
  Eigen::Index nonzeros() const { return weights_.nonZeros(); }
  const SparseMatrix& weights() const { return weights_; }
  Matrix dense() const { return Matrix(weights_); }

 private:
  SparseMatrix weights_;
};

/// Normalized graph Laplacian L = I - D^{-1/2} W D^{-1/2} together with the
/// degree vector it was built from. Rows with zero degree are unit vectors.
struct Laplacian {
  Matrix matrix;
  Vector degrees;
};

/// Per-image nearest-neighbor index lists ordered by descending affinity,
/// self excluded, ties broken by smaller index.
struct NeighborList {
  int k = 0;
  std::vector<std::vector<int>> indices;
};

}  // namespace vbow
