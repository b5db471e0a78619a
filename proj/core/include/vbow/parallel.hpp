#pragma once

#include <functional>

#include <Eigen/Core>

namespace vbow {

/// Worker count: VBOW_THREADS env override, else hardware concurrency.
int thread_count();

/// Runs fn(begin, end) over contiguous chunks of [0, n) on worker threads.
/// Callers must make per-index work independent so results do not depend on
/// the chunking.
void parallel_blocks(Eigen::Index n,
                     const std::function<void(Eigen::Index, Eigen::Index)>& fn);

/// Per-index convenience wrapper over parallel_blocks.
void parallel_for(Eigen::Index n, const std::function<void(Eigen::Index)>& fn);

}  // namespace vbow
