#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vbow/types.hpp"

namespace vbow {

// Dense CSV: one header row of column ids, then one row per image. Values
// are written with enough digits to round-trip within 1e-12 relative.
void write_csv(const std::string& path, const Matrix& values,
               const std::vector<std::string>& header);
std::pair<Matrix, std::vector<std::string>> read_csv(const std::string& path);

void write_bow_csv(const std::string& path, const BowMatrix& m,
                   const std::string& id_prefix = "f");
BowMatrix read_bow_csv(const std::string& path);

void write_affinity_csv(const std::string& path, const AffinityMatrix& m);
AffinityMatrix read_affinity_csv(const std::string& path);

// Matrix-market coordinate format ("matrix coordinate real general"),
// 1-based indices, nonzeros only.
void write_matrix_market(const std::string& path, const SparseMatrix& m);
void write_matrix_market(const std::string& path, const Matrix& m);
SparseMatrix read_matrix_market(const std::string& path);

BowMatrix read_bow_matrix_market(const std::string& path);

/// Reads .csv or .mtx/.mm by extension.
BowMatrix read_bow_auto(const std::string& path);

}  // namespace vbow
