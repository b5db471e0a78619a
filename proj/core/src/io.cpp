#include "vbow/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace vbow {

namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_value(std::string_view token, const std::string& path) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw IoError("bad numeric value '" + std::string(token) + "' in " + path);
  }
  return v;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open for reading: " + path);
  return f;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

std::vector<std::string> index_ids(const std::string& prefix, Eigen::Index n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%04lld", prefix.c_str(),
                  static_cast<long long>(j));
    ids.emplace_back(buf);
  }
  return ids;
}

}  // namespace

void write_csv(const std::string& path, const Matrix& values,
               const std::vector<std::string>& header) {
  if (static_cast<Eigen::Index>(header.size()) != values.cols()) {
    throw DimensionMismatch("csv header length must match column count");
  }
  auto f = open_out(path);
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) f << ',';
    f << header[j];
  }
  f << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j) f << ',';
      f << format_value(values(i, j));
    }
    f << '\n';
  }
}

std::pair<Matrix, std::vector<std::string>> read_csv(const std::string& path) {
  auto f = open_in(path);
  std::string line;
  if (!std::getline(f, line)) throw IoError("empty csv: " + path);
  const std::vector<std::string> header = split_line(strip_cr(line));
  const std::size_t cols = header.size();

  std::vector<double> data;
  std::size_t rows = 0;
  while (std::getline(f, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != cols) {
      throw IoError("ragged csv row in " + path);
    }
    for (const auto& field : fields) data.push_back(parse_value(field, path));
    ++rows;
  }
  Matrix values(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) values(i, j) = data[i * cols + j];
  }
  return {std::move(values), header};
}

void write_bow_csv(const std::string& path, const BowMatrix& m,
                   const std::string& id_prefix) {
  const auto ids = m.feature_ids().empty() ? index_ids(id_prefix, m.cols())
                                           : m.feature_ids();
  write_csv(path, m.values(), ids);
}

BowMatrix read_bow_csv(const std::string& path) {
  auto [values, header] = read_csv(path);
  return BowMatrix(std::move(values), std::move(header));
}

void write_affinity_csv(const std::string& path, const AffinityMatrix& m) {
  write_csv(path, m.values(), index_ids("im", m.size()));
}

AffinityMatrix read_affinity_csv(const std::string& path) {
  auto [values, header] = read_csv(path);
  return AffinityMatrix(std::move(values));
}

void write_matrix_market(const std::string& path, const SparseMatrix& m) {
  auto f = open_out(path);
  f << "%%MatrixMarket matrix coordinate real general\n";
  f << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (int j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      f << (it.row() + 1) << ' ' << (it.col() + 1) << ' '
        << format_value(it.value()) << '\n';
    }
  }
}

void write_matrix_market(const std::string& path, const Matrix& m) {
  write_matrix_market(path, SparseMatrix(m.sparseView()));
}

SparseMatrix read_matrix_market(const std::string& path) {
  auto f = open_in(path);
  std::string line;
  if (!std::getline(f, line) ||
      line.rfind("%%MatrixMarket", 0) != 0 ||
      line.find("coordinate") == std::string::npos) {
    throw IoError("not a matrix-market coordinate file: " + path);
  }
  const bool symmetric = line.find("symmetric") != std::string::npos;
  do {
    if (!std::getline(f, line)) throw IoError("truncated header: " + path);
  } while (!line.empty() && line[0] == '%');

  std::istringstream dims(line);
  Eigen::Index rows = 0, cols = 0;
  std::size_t nnz = 0;
  if (!(dims >> rows >> cols >> nnz)) {
    throw IoError("bad size line in " + path);
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(symmetric ? 2 * nnz : nnz);
  for (std::size_t e = 0; e < nnz; ++e) {
    Eigen::Index i = 0, j = 0;
    double v = 0.0;
    if (!(f >> i >> j >> v)) throw IoError("truncated entries in " + path);
    triplets.emplace_back(i - 1, j - 1, v);
    if (symmetric && i != j) triplets.emplace_back(j - 1, i - 1, v);
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

BowMatrix read_bow_matrix_market(const std::string& path) {
  return BowMatrix(Matrix(read_matrix_market(path)));
}

BowMatrix read_bow_auto(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return read_bow_csv(path);
  }
  return read_bow_matrix_market(path);
}

}  // namespace vbow
