#pragma once

#include <string>

#include "wgcpd/types.hpp"

namespace wgcpd {

// All supported semi-metrics.  SqEuclidean, FrobeniusSq and L2Functional are
// of negative type (squared L2 distances); DeltaCon's negative-type status
// is unverified, so permutation p-values are recommended for it.
enum class MetricKind { SqEuclidean, FrobeniusSq, L2Functional, DeltaCon };

struct Metric {
  MetricKind kind = MetricKind::SqEuclidean;
  double interval_length = 0.0;  // L2Functional only; must be > 0

  static Metric sq_euclidean();
  static Metric frobenius_sq();
  static Metric l2_functional(double interval_length);
  static Metric deltacon();
};

const char* metric_name(MetricKind kind);
Metric metric_from_name(const std::string& name, double interval_length);

double pairwise(const Metric& metric, const Observation& a, const Observation& b);

// DELTACON affinity matrix Q = (I + eps^2 U - eps A)^{-1} with
// eps = 1/(1 + max node degree) and U = diag(degrees).  Entries in
// [-1e-12, 0) are clamped to zero; anything more negative is an error.
Eigen::MatrixXd deltacon_affinity(const Observation& graph);

DistanceMatrix build_distance_matrix(const Metric& metric, const Sequence& seq);

}  // namespace wgcpd
