#include "graphlearn/evaluation.hpp"

#include <cmath>
#include <string>

namespace graphlearn {

SupportMetrics metrics_from_counts(Eigen::Index tp, Eigen::Index fp,
                                   Eigen::Index fn) {
  SupportMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  const double sum = m.precision + m.recall;
  m.f_measure = sum > 0.0 ? 2.0 * m.precision * m.recall / sum : 0.0;
  return m;
}

EdgeMetrics edge_metrics(const Graph& learned, const Graph& truth) {
  if (learned.size() != truth.size())
    throw Error(ErrorCode::DimensionMismatch,
                "learned graph has " + std::to_string(learned.size()) +
                    " vertices, truth has " + std::to_string(truth.size()));
  Eigen::Index tp = 0, fp = 0, fn = 0;
  const Matrix& a = learned.weights();
  const Matrix& b = truth.weights();
  for (Eigen::Index j = 1; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const bool predicted = a(i, j) > 0.0;
      const bool actual = b(i, j) > 0.0;
      tp += predicted && actual;
      fp += predicted && !actual;
      fn += !predicted && actual;
    }
  }
  return metrics_from_counts(tp, fp, fn);
}

CodeMetrics code_metrics(const Matrix& learned, const Matrix& truth) {
  if (learned.rows() != truth.rows() || learned.cols() != truth.cols())
    throw Error(ErrorCode::DimensionMismatch, "code matrices differ in shape");
  const auto predicted = (learned.array().abs() > kCodeSupportTol);
  const auto actual = (truth.array().abs() > kCodeSupportTol);
  const Eigen::Index tp = (predicted && actual).count();
  const Eigen::Index fp = (predicted && !actual).count();
  const Eigen::Index fn = (!predicted && actual).count();
  return metrics_from_counts(tp, fp, fn);
}

CodeMetrics code_metrics(const SparseCodeMatrix& learned,
                         const SparseCodeMatrix& truth) {
  return code_metrics(learned.codes(), truth.codes());
}

MetricSummary aggregate(std::span<const SupportMetrics> metrics) {
  if (metrics.empty()) throw Error(ErrorCode::EmptyList, "no metrics to aggregate");
  const double n = static_cast<double>(metrics.size());
  auto stats = [&](auto field, double& mean, double& sd) {
    double sum = 0.0;
    for (const auto& m : metrics) sum += field(m);
    mean = sum / n;
    double ss = 0.0;
    for (const auto& m : metrics) ss += (field(m) - mean) * (field(m) - mean);
    sd = metrics.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  };
  MetricSummary s;
  s.count = metrics.size();
  stats([](const SupportMetrics& m) { return m.precision; }, s.mean_precision,
        s.std_precision);
  stats([](const SupportMetrics& m) { return m.recall; }, s.mean_recall,
        s.std_recall);
  stats([](const SupportMetrics& m) { return m.f_measure; }, s.mean_f, s.std_f);
  return s;
}

}  // namespace graphlearn
