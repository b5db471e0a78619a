#include "vbow/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

#include <Eigen/Cholesky>

#include "vbow/parallel.hpp"

namespace vbow {

namespace {

constexpr double kChi2Eps = 1e-12;

Matrix l1_normalized_rows(const Matrix& X) {
  Matrix out = X;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double total = out.row(i).sum();
    if (total > 0.0) out.row(i) /= total;
  }
  return out;
}

double chi2_distance(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                     const Eigen::Ref<const Eigen::RowVectorXd>& y) {
  double acc = 0.0;
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    const double diff = x[d] - y[d];
    acc += diff * diff / (x[d] + y[d] + kChi2Eps);
  }
  return acc;
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

double chi2_auto_gamma(const BowMatrix& X1) {
  const Matrix rows = l1_normalized_rows(X1.values());
  const Eigen::Index n = rows.rows();
  if (n < 2) return 1.0;
  double total = 0.0;
  std::size_t pairs = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      total += chi2_distance(rows.row(i), rows.row(j));
      ++pairs;
    }
  }
  const double mean = total / static_cast<double>(pairs);
  return mean > 0.0 ? 1.0 / mean : 1.0;
}

Matrix chi2_kernel(const BowMatrix& X1, const BowMatrix& X2, double gamma) {
  if (X1.cols() != X2.cols()) {
    throw DimensionMismatch("chi2_kernel inputs must share the column count");
  }
  if (gamma <= 0.0) gamma = chi2_auto_gamma(X1);

  const Matrix a = l1_normalized_rows(X1.values());
  const Matrix b = l1_normalized_rows(X2.values());
  Matrix K(a.rows(), b.rows());
  parallel_for(a.rows(), [&](Eigen::Index i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      K(i, j) = std::exp(-gamma * chi2_distance(a.row(i), b.row(j)));
    }
  });
  return K;
}

Matrix krr_classify(const Matrix& K_train, const Matrix& K_cross,
                    const LabelMatrix& labels, double ridge) {
  if (ridge <= 0.0) throw ConfigError("krr ridge must be positive");
  if (K_train.rows() != K_train.cols()) {
    throw DimensionMismatch("krr K_train must be square");
  }
  if (K_cross.cols() != K_train.rows()) {
    throw DimensionMismatch("krr K_cross columns must match K_train size");
  }
  if (labels.rows() != K_train.rows()) {
    throw DimensionMismatch("krr labels must match K_train rows");
  }
  Matrix system = K_train;
  system.diagonal().array() += ridge;
  const Eigen::LDLT<Matrix> ldlt(system);
  const Matrix coef = ldlt.solve(labels.labels.cast<double>());
  return K_cross * coef;
}

double average_precision(const Vector& scores,
                         const Eigen::VectorXi& relevance) {
  if (scores.size() != relevance.size()) {
    throw DimensionMismatch("average_precision inputs must have equal length");
  }
  const Eigen::Index n = scores.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Descending score; stable keeps the smaller index first on ties.
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });

  double positives_seen = 0.0;
  double ap_sum = 0.0;
  for (Eigen::Index rank = 0; rank < n; ++rank) {
    if (relevance[order[rank]] > 0) {
      positives_seen += 1.0;
      ap_sum += positives_seen / static_cast<double>(rank + 1);
    }
  }
  if (positives_seen == 0.0) {
    throw NoPositives("average_precision requires at least one positive");
  }
  return ap_sum / positives_seen;
}

TrainTestSplit half_split(int n, double train_fraction) {
  if (n < 2 || train_fraction <= 0.0 || train_fraction >= 1.0) {
    throw ConfigError("half_split needs n >= 2 and fraction in (0, 1)");
  }
  const int n_train = static_cast<int>(std::ceil(n * train_fraction));
  TrainTestSplit split;
  for (int i = 0; i < n_train; ++i) split.train.push_back(i);
  for (int i = n_train; i < n; ++i) split.test.push_back(i);
  if (split.test.empty()) throw ConfigError("half_split produced empty test set");
  return split;
}

namespace {

template <typename Derived>
typename Derived::PlainObject take_rows(const Eigen::MatrixBase<Derived>& values,
                                        const std::vector<int>& rows) {
  typename Derived::PlainObject out(static_cast<Eigen::Index>(rows.size()),
                                    values.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = values.row(rows[i]);
  }
  return out;
}

}  // namespace

EvalReport evaluate_model(const BowMatrix& model, const LabelMatrix& labels,
                          const TrainTestSplit& split, const EvalConfig& cfg) {
  if (labels.rows() != model.rows()) {
    throw DimensionMismatch("evaluate_model labels must match model rows");
  }

  const BowMatrix train(take_rows(model.values(), split.train));
  const BowMatrix test(take_rows(model.values(), split.test));
  const Eigen::MatrixXi train_labels = take_rows(labels.labels, split.train);
  const Eigen::MatrixXi test_labels = take_rows(labels.labels, split.test);

  EvalReport report;
  report.class_names = labels.class_names;

  double t0 = now_seconds();
  const double gamma = cfg.gamma > 0.0 ? cfg.gamma : chi2_auto_gamma(train);
  const Matrix K_train = chi2_kernel(train, train, gamma);
  const Matrix K_cross = chi2_kernel(test, train, gamma);
  report.wall_time_seconds["kernel"] = now_seconds() - t0;

  t0 = now_seconds();
  LabelMatrix train_label_matrix{train_labels, labels.class_names};
  const Matrix scores = krr_classify(K_train, K_cross, train_label_matrix,
                                     cfg.ridge);
  report.wall_time_seconds["classify"] = now_seconds() - t0;

  t0 = now_seconds();
  double ap_total = 0.0;
  int ap_count = 0;
  for (Eigen::Index c = 0; c < labels.classes(); ++c) {
    if (test_labels.col(c).maxCoeff() <= 0) {
      std::cerr << "[vbow] warning: class "
                << (c < static_cast<Eigen::Index>(labels.class_names.size())
                        ? labels.class_names[c]
                        : std::to_string(c))
                << " has no test positives, skipped\n";
      report.per_class_ap.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double ap = average_precision(scores.col(c), test_labels.col(c));
    report.per_class_ap.push_back(ap);
    ap_total += ap;
    ++ap_count;
  }
  if (ap_count == 0) throw NoPositives("no class has test positives");
  report.map = ap_total / ap_count;
  report.wall_time_seconds["ap"] = now_seconds() - t0;
  report.wall_time_seconds["total"] = report.wall_time_seconds["kernel"] +
                                      report.wall_time_seconds["classify"] +
                                      report.wall_time_seconds["ap"];
  return report;
}

}  // namespace vbow
