#include "vbow/laplacian.hpp"

#include <cmath>

namespace vbow {

namespace {

Vector inv_sqrt_degrees(const Vector& degrees) {
  return degrees.unaryExpr(
      [](double d) { return d > 0.0 ? 1.0 / std::sqrt(d) : 0.0; });
}

}  // namespace

Laplacian normalized_laplacian(const Matrix& W) {
  const Vector degrees = W.rowwise().sum();
  const Vector dinv = inv_sqrt_degrees(degrees);
  Matrix L = (-dinv.asDiagonal() * W * dinv.asDiagonal()).eval();
  L.diagonal().array() += 1.0;  // zero-degree rows become unit vectors
  L = ((L + L.transpose()) * 0.5).eval();
  return {std::move(L), degrees};
}

Laplacian normalized_laplacian(const AffinityMatrix& W) {
  return normalized_laplacian(W.values());
}

Laplacian normalized_laplacian(const ImageGraph& W) {
  return normalized_laplacian(W.dense());
}

Matrix degree_normalize(const Matrix& W) {
  const Vector dinv = inv_sqrt_degrees(W.rowwise().sum());
  return dinv.asDiagonal() * W * dinv.asDiagonal();
}

SparseMatrix degree_normalize(const SparseMatrix& W) {
  Vector degrees = Vector::Zero(W.rows());
  for (int j = 0; j < W.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(W, j); it; ++it) {
      degrees[it.row()] += it.value();
    }
  }
  const Vector dinv = inv_sqrt_degrees(degrees);
  SparseMatrix S = W;
  for (int j = 0; j < S.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(S, j); it; ++it) {
      it.valueRef() *= dinv[it.row()] * dinv[it.col()];
    }
  }
  return S;
}

}  // namespace vbow
