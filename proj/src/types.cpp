#include "wgcpd/types.hpp"

#include <cmath>
#include <sstream>

namespace wgcpd {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MixedKinds: return "MixedKinds";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AsymmetricAdjacency: return "AsymmetricAdjacency";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::AsymmetryBeyondTolerance: return "AsymmetryBeyondTolerance";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NegativeAffinity: return "NegativeAffinity";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::EmptySpectrum: return "EmptySpectrum";
    case ErrorCode::DegenerateDispersion: return "DegenerateDispersion";
    case ErrorCode::SubintervalTooShort: return "SubintervalTooShort";
    case ErrorCode::PartitionInvalid: return "PartitionInvalid";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotSorted: return "NotSorted";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

const char* observation_kind_name(ObservationKind kind) {
  switch (kind) {
    case ObservationKind::Vector: return "vector";
    case ObservationKind::Graph: return "graph";
    case ObservationKind::FunctionSample: return "function";
  }
  return "unknown";
}

Observation Observation::vector(Eigen::VectorXd v) {
  Observation obs;
  obs.kind = ObservationKind::Vector;
  obs.values = std::move(v);
  return obs;
}

Observation Observation::graph(Eigen::MatrixXd a) {
  Observation obs;
  obs.kind = ObservationKind::Graph;
  obs.adjacency = std::move(a);
  return obs;
}

Observation Observation::function_sample(Eigen::VectorXd v) {
  Observation obs;
  obs.kind = ObservationKind::FunctionSample;
  obs.values = std::move(v);
  return obs;
}

namespace {

void validate_adjacency(const Eigen::MatrixXd& a, Index position) {
  if (a.rows() != a.cols()) {
    throw_error(ErrorCode::AsymmetricAdjacency,
                "observation " + std::to_string(position) +
                    ": adjacency matrix is not square");
  }
  for (Index i = 0; i < a.rows(); ++i) {
    if (a(i, i) != 0.0) {
      throw_error(ErrorCode::AsymmetricAdjacency,
                  "observation " + std::to_string(position) +
                      ": adjacency diagonal must be zero");
    }
    for (Index j = i + 1; j < a.cols(); ++j) {
      const double x = a(i, j);
      if (x != a(j, i)) {
        throw_error(ErrorCode::AsymmetricAdjacency,
                    "observation " + std::to_string(position) +
                        ": adjacency is not symmetric at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (x != 0.0 && x != 1.0) {
        throw_error(ErrorCode::AsymmetricAdjacency,
                    "observation " + std::to_string(position) +
                        ": adjacency entries must be 0 or 1");
      }
    }
  }
}

}  // namespace

const Sequence& validate_sequence(const Sequence& seq) {
  if (seq.n() < 4) {
    throw_error(ErrorCode::TooShort,
                "sequence has n=" + std::to_string(seq.n()) +
                    " observations; at least 4 are required");
  }
  const ObservationKind kind = seq.items.front().kind;
  const Index dim = seq.items.front().dim();
  for (Index i = 0; i < seq.n(); ++i) {
    const Observation& obs = seq.items[static_cast<std::size_t>(i)];
    if (obs.kind != kind) {
      throw_error(ErrorCode::MixedKinds,
                  "observation " + std::to_string(i) + " is " +
                      observation_kind_name(obs.kind) + " but sequence is " +
                      observation_kind_name(kind));
    }
    if (obs.dim() != dim) {
      throw_error(ErrorCode::DimensionMismatch,
                  "observation " + std::to_string(i) + " has size " +
                      std::to_string(obs.dim()) + ", expected " +
                      std::to_string(dim));
    }
    if (obs.kind == ObservationKind::Graph) validate_adjacency(obs.adjacency, i);
  }
  return seq;
}

DistanceMatrix DistanceMatrix::checked(Eigen::MatrixXd d) {
  if (d.rows() != d.cols()) {
    throw_error(ErrorCode::NotSquare, "distance matrix is not square");
  }
  const Index n = static_cast<Index>(d.rows());
  auto check_pair = [&](Index i, Index j) {
    if (d(i, j) != d(j, i)) {
      throw_error(ErrorCode::AsymmetryBeyondTolerance,
                  "distance matrix asymmetric at (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
    }
    if (d(i, j) < 0.0) {
      throw_error(ErrorCode::NegativeEntry,
                  "negative distance at (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
    }
  };
  for (Index i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) {
      throw_error(ErrorCode::NonzeroDiagonal,
                  "nonzero diagonal at " + std::to_string(i));
    }
  }
  if (n <= 500) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) check_pair(i, j);
  } else {
    // deterministic sample: stride-based sweep over off-diagonal pairs
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    for (int k = 0; k < 250000; ++k) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      const Index i = static_cast<Index>((state >> 33) % static_cast<std::uint64_t>(n));
      const Index j = static_cast<Index>((state >> 13) % static_cast<std::uint64_t>(n));
      if (i != j) check_pair(i, j);
    }
  }
  return DistanceMatrix(std::move(d));
}

DistanceMatrix DistanceMatrix::unchecked(Eigen::MatrixXd d) {
  return DistanceMatrix(std::move(d));
}

DistanceMatrix DistanceMatrix::scaled(double factor) const {
  return DistanceMatrix(factor * d_);
}

DistanceMatrix DistanceMatrix::submatrix(Index lo, Index hi) const {
  const Index m = hi - lo + 1;
  return DistanceMatrix(d_.block(lo, lo, m, m));
}

DistanceMatrix DistanceMatrix::permuted(const std::vector<int>& perm) const {
  const Index n = this->n();
  Eigen::MatrixXd out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      out(i, j) = d_(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return DistanceMatrix(std::move(out));
}

ScanWindow ScanWindow::from_fractions(Index n, double rho0, double rho1) {
  if (!(rho0 > 0.0 && rho0 <= 0.5)) {
    throw_error(ErrorCode::ConfigError, "rho0 must lie in (0, 0.5]");
  }
  if (!(rho1 >= rho0 && rho1 < 1.0)) {
    throw_error(ErrorCode::ConfigError, "rho1 must lie in [rho0, 1)");
  }
  if (n < 4) {
    throw_error(ErrorCode::TooShort,
                "scan window needs n >= 4, got n=" + std::to_string(n));
  }
  ScanWindow w;
  w.rho0 = rho0;
  w.rho1 = rho1;
  w.n0 = std::max<Index>(2, static_cast<Index>(std::ceil(n * rho0)));
  w.n1 = std::min<Index>(n - 2, static_cast<Index>(std::ceil(n * rho1)));
  if (w.n0 > w.n1) {
    throw_error(ErrorCode::ConfigError,
                "empty scan window for n=" + std::to_string(n));
  }
  return w;
}

}  // namespace wgcpd
