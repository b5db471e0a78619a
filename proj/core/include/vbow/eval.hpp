#pragma once

#include <map>
#include <string>
#include <vector>

#include "vbow/types.hpp"

namespace vbow {

/// n x C binary multi-label ground truth.
struct LabelMatrix {
  Eigen::MatrixXi labels;
  std::vector<std::string> class_names;

  Eigen::Index rows() const { return labels.rows(); }
  Eigen::Index classes() const { return labels.cols(); }
};

/// Exponentiated chi-squared kernel between the rows of X1 and X2:
/// k(x, y) = exp(-gamma sum_d (x_d - y_d)^2 / (x_d + y_d + 1e-12)) with rows
/// L1-normalized internally. gamma <= 0 selects 1 / mean pairwise chi^2
/// distance on X1.
Matrix chi2_kernel(const BowMatrix& X1, const BowMatrix& X2,
                   double gamma = 0.0);
double chi2_auto_gamma(const BowMatrix& X1);

/// One-vs-rest kernel ridge regression scores:
/// K_cross (K_train + ridge I)^{-1} labels.
Matrix krr_classify(const Matrix& K_train, const Matrix& K_cross,
                    const LabelMatrix& labels, double ridge);

/// Non-interpolated average precision: sort by score descending (ties by
/// smaller index), mean of precision at each positive rank. Throws
/// NoPositives when relevance has no 1s.
double average_precision(const Vector& scores,
                         const Eigen::VectorXi& relevance);

struct EvalReport {
  std::vector<std::string> class_names;
  std::vector<double> per_class_ap;
  double map = 0.0;
  std::map<std::string, double> wall_time_seconds;
};

struct TrainTestSplit {
  std::vector<int> train;
  std::vector<int> test;
};

/// First ceil(n * train_fraction) indices train, the rest test.
TrainTestSplit half_split(int n, double train_fraction = 0.5);

struct EvalConfig {
  double ridge = 1e-2;
  double gamma = 0.0;  // <= 0: auto bandwidth on the train block
};

/// chi^2 kernel + one-vs-rest KRR + per-class AP on the test rows. Classes
/// without a test positive are skipped with a warning. Stage wall times are
/// recorded in the report.
EvalReport evaluate_model(const BowMatrix& model, const LabelMatrix& labels,
                          const TrainTestSplit& split,
                          const EvalConfig& cfg = {});

}  // namespace vbow
