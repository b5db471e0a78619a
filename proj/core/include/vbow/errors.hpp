#pragma once

#include <stdexcept>

namespace vbow {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// The constraint matrix of an equality-constrained L1 problem lost row rank;
// the caller is expected to repair the system (the graph builders always
// append identity blocks, so this signals misuse).
struct RankDeficient : Error {
  using Error::Error;
};

// Fewer nontrivial Laplacian eigenpairs than the requested embedding size.
struct InsufficientSpectrum : Error {
  using Error::Error;
};

struct NoPositives : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace vbow
