#include "wgcpd/distances.hpp"

#include <Eigen/LU>
#include <cmath>
#include <vector>

namespace wgcpd {

namespace {

constexpr double kAffinityClamp = 1e-12;

ObservationKind expected_kind(MetricKind kind) {
  switch (kind) {
    case MetricKind::SqEuclidean: return ObservationKind::Vector;
    case MetricKind::FrobeniusSq: return ObservationKind::Graph;
    case MetricKind::L2Functional: return ObservationKind::FunctionSample;
    case MetricKind::DeltaCon: return ObservationKind::Graph;
  }
  return ObservationKind::Vector;
}

void require_kind(const Metric& metric, const Observation& obs) {
  if (obs.kind != expected_kind(metric.kind)) {
    throw_error(ErrorCode::KindMismatch,
                std::string(metric_name(metric.kind)) +
                    " metric cannot be applied to " +
                    observation_kind_name(obs.kind) + " observations");
  }
}

Eigen::MatrixXd sqrt_affinity(const Observation& graph) {
  return deltacon_affinity(graph).array().sqrt().matrix();
}

double matusita_from_roots(const Eigen::MatrixXd& ra, const Eigen::MatrixXd& rb) {
  return std::sqrt((ra - rb).squaredNorm());
}

}  // namespace

Metric Metric::sq_euclidean() { return Metric{MetricKind::SqEuclidean, 0.0}; }
Metric Metric::frobenius_sq() { return Metric{MetricKind::FrobeniusSq, 0.0}; }
Metric Metric::l2_functional(double interval_length) {
  if (!(interval_length > 0.0)) {
    throw_error(ErrorCode::ConfigError, "l2fun interval length must be > 0");
  }
  return Metric{MetricKind::L2Functional, interval_length};
}
Metric Metric::deltacon() { return Metric{MetricKind::DeltaCon, 0.0}; }

const char* metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::SqEuclidean: return "sqeuclidean";
    case MetricKind::FrobeniusSq: return "frobenius";
    case MetricKind::L2Functional: return "l2fun";
    case MetricKind::DeltaCon: return "deltacon";
  }
  return "unknown";
}

Metric metric_from_name(const std::string& name, double interval_length) {
  if (name == "sqeuclidean") return Metric::sq_euclidean();
  if (name == "frobenius") return Metric::frobenius_sq();
  if (name == "l2fun") return Metric::l2_functional(interval_length);
  if (name == "deltacon") return Metric::deltacon();
  throw_error(ErrorCode::ConfigError, "unknown metric '" + name + "'");
}

double pairwise(const Metric& metric, const Observation& a, const Observation& b) {
  require_kind(metric, a);
  require_kind(metric, b);
  if (a.dim() != b.dim()) {
    throw_error(ErrorCode::KindMismatch, "observations have different sizes");
  }
  switch (metric.kind) {
    case MetricKind::SqEuclidean:
      return (a.values - b.values).squaredNorm();
    case MetricKind::FrobeniusSq:
      return (a.adjacency - b.adjacency).squaredNorm();
    case MetricKind::L2Functional: {
      // left Riemann sum over the uniform grid
      const double step = metric.interval_length / static_cast<double>(a.dim());
      return step * (a.values - b.values).squaredNorm();
    }
    case MetricKind::DeltaCon:
      return matusita_from_roots(sqrt_affinity(a), sqrt_affinity(b));
  }
  throw_error(ErrorCode::ConfigError, "unknown metric kind");
}

Eigen::MatrixXd deltacon_affinity(const Observation& graph) {
  if (graph.kind != ObservationKind::Graph) {
    throw_error(ErrorCode::KindMismatch, "deltacon needs graph observations");
  }
  const Eigen::MatrixXd& a = graph.adjacency;
  const Index m = static_cast<Index>(a.rows());
  const Eigen::VectorXd degrees = a.rowwise().sum();
  const double eps = 1.0 / (1.0 + degrees.maxCoeff());
  Eigen::MatrixXd system = -eps * a;
  for (Index k = 0; k < m; ++k) system(k, k) += 1.0 + eps * eps * degrees(k);

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  // rcond-style guard: a pivot at float noise scale means the solve is junk
  const double max_abs = lu.matrixLU().diagonal().cwiseAbs().maxCoeff();
  const double min_abs = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_abs > max_abs * 1e-14)) {
    throw_error(ErrorCode::SingularSystem, "deltacon system is numerically singular");
  }
  Eigen::MatrixXd q = lu.solve(Eigen::MatrixXd::Identity(m, m));
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (q(i, j) < -kAffinityClamp) {
        throw_error(ErrorCode::NegativeAffinity,
                    "deltacon affinity below -1e-12 at (" + std::to_string(i) +
                        "," + std::to_string(j) + ")");
      }
      if (q(i, j) < 0.0) q(i, j) = 0.0;
    }
  }
  return q;
}

DistanceMatrix build_distance_matrix(const Metric& metric, const Sequence& seq) {
  const Index n = seq.n();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  if (metric.kind == MetricKind::DeltaCon) {
    // one affinity solve per observation, then all pairs from the roots
    std::vector<Eigen::MatrixXd> roots;
    roots.reserve(static_cast<std::size_t>(n));
    for (const auto& obs : seq.items) {
      require_kind(metric, obs);
      roots.push_back(sqrt_affinity(obs));
    }
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const double value = matusita_from_roots(roots[static_cast<std::size_t>(i)],
                                                 roots[static_cast<std::size_t>(j)]);
        d(i, j) = value;
        d(j, i) = value;
      }
    }
    return DistanceMatrix::unchecked(std::move(d));
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double value = pairwise(metric, seq.items[static_cast<std::size_t>(i)],
                                    seq.items[static_cast<std::size_t>(j)]);
      d(i, j) = value;
      d(j, i) = value;
    }
  }
  return DistanceMatrix::unchecked(std::move(d));
}

}  // namespace wgcpd
