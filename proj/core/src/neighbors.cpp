#include "vbow/neighbors.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>

namespace vbow {

NeighborList knn_neighbors(const AffinityMatrix& A, int k) {
  if (k < 1) throw ConfigError("knn_neighbors requires k >= 1");
  const int n = static_cast<int>(A.size());
  if (k >= n) {
    std::cerr << "[vbow] warning: k=" << k << " clamped to n-1=" << (n - 1)
              << "\n";
    k = n - 1;
  }

  NeighborList out;
  out.k = k;
  out.indices.resize(n);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    order.erase(order.begin() + i);
    const auto& row = A.values();
    auto better = [&](int a, int b) {
      if (row(i, a) != row(i, b)) return row(i, a) > row(i, b);
      return a < b;
    };
    std::partial_sort(order.begin(), order.begin() + k, order.end(), better);
    out.indices[i].assign(order.begin(), order.begin() + k);
  }
  return out;
}

}  // namespace vbow
