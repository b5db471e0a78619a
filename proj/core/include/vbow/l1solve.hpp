#pragma once

#include "vbow/types.hpp"

namespace vbow {

struct SolverConfig {
  double duality_gap_tol = 1e-6;
  int max_iterations = 200;
  double constraint_feasibility_tol = 1e-8;

  void validate() const;
};

struct L1Solution {
  Vector z;
  double objective = 0.0;      // sum_j |z_j|
  double residual_norm = 0.0;  // ||M z - b||_2 of the returned z
  bool converged = false;
  int iterations = 0;
};

/// Basis pursuit: minimize ||z||_1 subject to M z = b, for M with m rows,
/// p >= m columns and full row rank.
///
/// The problem is solved as a linear program after the split z = u - v with
/// u, v >= 0, by a Mehrotra-style primal-dual interior-point iteration on
///   min 1'(u; v)  s.t.  [M, -M](u; v) = b,  (u; v) >= 0,
/// followed by a least-norm feasibility restoration of the returned iterate.
///
/// Throws RankDeficient when the row rank of M is below m. When the
/// iteration budget runs out the best iterate is returned with
/// converged = false.
L1Solution basis_pursuit(const Matrix& M, const Vector& b,
                         const SolverConfig& cfg = {});

}  // namespace vbow
