#include "vbow/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "vbow/laplacian.hpp"
#include "vbow/parallel.hpp"

namespace vbow {

namespace {

constexpr double kTrivialEigenvalue = 1e-10;

void check_symmetric_nonneg(const Matrix& W) {
  const double scale = std::max(1.0, W.cwiseAbs().maxCoeff());
  if ((W - W.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error("reduction graph weights must be symmetric within 1e-10");
  }
}

}  // namespace

ColumnStats column_stats(const BowMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n < 2) throw ConfigError("column_stats requires at least two images");
  ColumnStats stats;
  stats.mu = m.values().colwise().mean();
  const Matrix centered = m.values().rowwise() - stats.mu.transpose();
  stats.sigma =
      (centered.colwise().squaredNorm() / static_cast<double>(n - 1))
          .cwiseSqrt();
  return stats;
}

ReductionGraph ppm_weights(const BowMatrix& f_star) {
  const Eigen::Index n = f_star.rows();
  if (n < 2) throw ConfigError("ppm_weights requires at least two images");
  const Eigen::Index mv = f_star.cols();

  Matrix centered = f_star.values().rowwise() -
                    f_star.values().colwise().mean();
  Vector norms = centered.colwise().norm();
  for (Eigen::Index j = 0; j < mv; ++j) {
    if (norms[j] > 0.0) {
      centered.col(j) /= norms[j];
    } else {
      centered.col(j).setZero();  // constant feature: zero weights
    }
  }
  Matrix W = centered.transpose() * centered;
  W = ((W + W.transpose()) * 0.5).eval();
  W = W.cwiseMax(0.0).cwiseMin(1.0);  // negative correlation clips to 0
  W.diagonal().setZero();

  ReductionGraph G;
  G.weights = std::move(W);
  G.variant = ReductionVariant::ssc1;
  return G;
}

ReductionGraph semantic_weights(const BowMatrix& f_star,
                                const AffinityMatrix& A) {
  if (A.size() != f_star.rows()) {
    throw DimensionMismatch("semantic_weights: A must be n x n for the n rows of F*");
  }
  Matrix W = f_star.values().transpose() * A.values() * f_star.values();
  W = ((W + W.transpose()) * 0.5).eval();
  W.diagonal().setZero();

  ReductionGraph G;
  G.weights = std::move(W);
  G.variant = ReductionVariant::ssc2;
  return G;
}

EmbeddingMatrix spectral_embed(const ReductionGraph& G, int K) {
  const Eigen::Index mv = G.weights.rows();
  if (K < 1 || K >= mv) {
    throw ConfigError("spectral_embed requires 1 <= K < M_v");
  }
  check_symmetric_nonneg(G.weights);

  const Laplacian L = normalized_laplacian(G.weights);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(L.matrix);
  if (solver.info() != Eigen::Success) {
    throw Error("spectral_embed eigendecomposition failed");
  }
  const Vector& eigenvalues = solver.eigenvalues();  // ascending

  Eigen::Index trivial = 0;
  while (trivial < mv && eigenvalues[trivial] < kTrivialEigenvalue) ++trivial;
  if (mv - trivial < K) {
    throw InsufficientSpectrum(
        "spectral_embed: only " + std::to_string(mv - trivial) +
        " nontrivial eigenpairs available, need " + std::to_string(K) +
        "; reduce K");
  }

  EmbeddingMatrix embedding;
  embedding.E = solver.eigenvectors().middleCols(trivial, K);
  embedding.eigenvalues = eigenvalues.segment(trivial, K);
  for (Eigen::Index i = 0; i < mv; ++i) {
    const double norm = embedding.E.row(i).norm();
    if (norm > 0.0) embedding.E.row(i) /= norm;
  }
  embedding.rows_normalized = true;
  return embedding;
}

namespace {

// Deterministic [0, 1) draw.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<int> kmeanspp_seeds(const Matrix& points, int K,
                                std::mt19937_64& rng) {
  const Eigen::Index m = points.rows();
  std::vector<int> seeds;
  seeds.reserve(K);
  seeds.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(m)));

  Vector dist_sq = (points.rowwise() - points.row(seeds[0]))
                       .rowwise()
                       .squaredNorm();
  while (static_cast<int>(seeds.size()) < K) {
    const double total = dist_sq.sum();
    int chosen = -1;
    if (total > 0.0) {
      const double target = uniform01(rng) * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        acc += dist_sq[i];
        if (dist_sq[i] > 0.0 && acc >= target) {
          chosen = static_cast<int>(i);
          break;
        }
      }
      if (chosen < 0) chosen = static_cast<int>(m - 1);
    } else {
      // All remaining points duplicate a seed; take the first non-seed.
      for (Eigen::Index i = 0; i < m; ++i) {
        if (std::find(seeds.begin(), seeds.end(), static_cast<int>(i)) ==
            seeds.end()) {
          chosen = static_cast<int>(i);
          break;
        }
      }
    }
    seeds.push_back(chosen);
    dist_sq = dist_sq.cwiseMin(
        (points.rowwise() - points.row(chosen)).rowwise().squaredNorm());
  }
  return seeds;
}

}  // namespace

MembershipMatrix kmeans_cluster(const EmbeddingMatrix& E, int K,
                                std::uint64_t seed) {
  const Matrix& points = E.E;
  const Eigen::Index m = points.rows();
  if (K < 1 || K > m) {
    throw ConfigError("kmeans_cluster requires 1 <= K <= number of rows");
  }
  {
    std::vector<Eigen::Index> order(m);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    auto row_less = [&](Eigen::Index a, Eigen::Index b) {
      for (Eigen::Index j = 0; j < points.cols(); ++j) {
        if (points(a, j) != points(b, j)) return points(a, j) < points(b, j);
      }
      return false;
    };
    std::sort(order.begin(), order.end(), row_less);
    Eigen::Index distinct = m == 0 ? 0 : 1;
    for (Eigen::Index i = 1; i < m; ++i) {
      if (row_less(order[i - 1], order[i])) ++distinct;
    }
    if (K > distinct) {
      throw ConfigError("kmeans_cluster: K exceeds the number of distinct rows");
    }
  }

  std::mt19937_64 rng(seed);
  const std::vector<int> seeds = kmeanspp_seeds(points, K, rng);
  Matrix centroids(K, points.cols());
  for (int c = 0; c < K; ++c) centroids.row(c) = points.row(seeds[c]);

  std::vector<int> assignment(m, -1);
  std::vector<int> sizes(K, 0);
  constexpr int kMaxRounds = 300;

  for (int round = 0; round < kMaxRounds; ++round) {
    // Assign: nearest centroid, ties to the smaller cluster index.
    bool changed = false;
    std::vector<int> next(m);
    parallel_for(m, [&](Eigen::Index i) {
      int best = 0;
      double best_d = (points.row(i) - centroids.row(0)).squaredNorm();
      for (int c = 1; c < K; ++c) {
        const double d = (points.row(i) - centroids.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      next[i] = best;
    });

    std::fill(sizes.begin(), sizes.end(), 0);
    for (Eigen::Index i = 0; i < m; ++i) sizes[next[i]]++;

    // Empty-cluster repair: seize the point farthest from its centroid.
    for (int c = 0; c < K; ++c) {
      while (sizes[c] == 0) {
        int victim = -1;
        double worst = -1.0;
        for (Eigen::Index i = 0; i < m; ++i) {
          if (sizes[next[i]] <= 1) continue;
          const double d =
              (points.row(i) - centroids.row(next[i])).squaredNorm();
          if (d > worst) {
            worst = d;
            victim = static_cast<int>(i);
          }
        }
        if (victim < 0) break;
        sizes[next[victim]]--;
        next[victim] = c;
        sizes[c]++;
      }
    }

    for (Eigen::Index i = 0; i < m; ++i) {
      if (next[i] != assignment[i]) {
        changed = true;
        break;
      }
    }
    assignment = std::move(next);
    if (!changed && round > 0) break;

    // Update step stays sequential so results are thread-count independent.
    centroids.setZero();
    for (Eigen::Index i = 0; i < m; ++i) {
      centroids.row(assignment[i]) += points.row(i);
    }
    for (int c = 0; c < K; ++c) {
      if (sizes[c] > 0) centroids.row(c) /= static_cast<double>(sizes[c]);
    }
  }

  MembershipMatrix membership;
  membership.K = K;
  membership.assignment = std::move(assignment);
  membership.cluster_sizes = std::move(sizes);
  return membership;
}

Eigen::MatrixXi MembershipMatrix::matrix() const {
  Eigen::MatrixXi U = Eigen::MatrixXi::Zero(
      K, static_cast<Eigen::Index>(assignment.size()));
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    U(assignment[j], static_cast<Eigen::Index>(j)) = 1;
  }
  return U;
}

BowMatrix reduce_bow(const BowMatrix& f_star, const MembershipMatrix& U) {
  if (static_cast<Eigen::Index>(U.assignment.size()) != f_star.cols()) {
    throw DimensionMismatch("reduce_bow: U columns must match F* columns");
  }
  const Eigen::Index n = f_star.rows();
  Matrix reduced = Matrix::Zero(n, U.K);
  // Accumulate in increasing feature order: Y* = F* U^T.
  for (Eigen::Index j = 0; j < f_star.cols(); ++j) {
    reduced.col(U.assignment[j]) += f_star.values().col(j);
  }
  std::vector<std::string> ids;
  ids.reserve(U.K);
  for (int c = 0; c < U.K; ++c) {
    ids.push_back("h" + std::to_string(c));
  }
  return BowMatrix(std::move(reduced), std::move(ids));
}

}  // namespace vbow
