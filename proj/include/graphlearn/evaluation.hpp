#pragma once

#include <span>

#include "graphlearn/codes.hpp"
#include "graphlearn/graph.hpp"

namespace graphlearn {

// Code entries at or below this magnitude count as zero.
inline constexpr double kCodeSupportTol = 1e-10;

/// Support-recovery scores. precision is 0 when nothing was predicted and
/// recall is 0 when the truth is empty; f_measure is 0 when P + R = 0.
struct SupportMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  Eigen::Index tp = 0;
  Eigen::Index fp = 0;
  Eigen::Index fn = 0;
};

using EdgeMetrics = SupportMetrics;
using CodeMetrics = SupportMetrics;

SupportMetrics metrics_from_counts(Eigen::Index tp, Eigen::Index fp,
                                   Eigen::Index fn);

/// Edges are pairs i < j with positive weight.
EdgeMetrics edge_metrics(const Graph& learned, const Graph& truth);

/// Supports are (atom, signal) pairs with |value| > kCodeSupportTol.
CodeMetrics code_metrics(const Matrix& learned, const Matrix& truth);
CodeMetrics code_metrics(const SparseCodeMatrix& learned,
                         const SparseCodeMatrix& truth);

struct MetricSummary {
  double mean_precision = 0.0, std_precision = 0.0;
  double mean_recall = 0.0, std_recall = 0.0;
  double mean_f = 0.0, std_f = 0.0;
  std::size_t count = 0;
};

/// Componentwise mean and sample standard deviation (0 for a single item).
/// Throws EmptyList.
MetricSummary aggregate(std::span<const SupportMetrics> metrics);

}  // namespace graphlearn
