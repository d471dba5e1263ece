#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "wgcpd/errors.hpp"

namespace wgcpd {

using Index = int;

enum class ObservationKind { Vector, Graph, FunctionSample };

const char* observation_kind_name(ObservationKind kind);

// One element of a sequence: a d-dimensional vector, a symmetric 0/1
// adjacency matrix with zero diagonal, or a function sampled on an implicit
// equally spaced grid.  All observations in a sequence share kind and size.
struct Observation {
  ObservationKind kind = ObservationKind::Vector;
  Eigen::VectorXd values;    // Vector / FunctionSample payload
  Eigen::MatrixXd adjacency; // Graph payload

  static Observation vector(Eigen::VectorXd v);
  static Observation graph(Eigen::MatrixXd a);
  static Observation function_sample(Eigen::VectorXd v);

  // dimension, node count, or grid length depending on kind
  Index dim() const {
    return kind == ObservationKind::Graph ? static_cast<Index>(adjacency.rows())
                                          : static_cast<Index>(values.size());
  }
};

struct Sequence {
  std::vector<Observation> items;

  Index n() const { return static_cast<Index>(items.size()); }
  ObservationKind kind() const { return items.front().kind; }
  Index dim() const { return items.front().dim(); }
};

// Checks every sequence invariant (n >= 4, homogeneous kind and size, valid
// adjacencies) and returns the sequence unchanged.
const Sequence& validate_sequence(const Sequence& seq);

// Symmetric nonnegative pairwise distances with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  // Validates symmetry, zero diagonal and nonnegativity (exhaustively for
  // n <= 500, on a deterministic sample of pairs otherwise).
  static DistanceMatrix checked(Eigen::MatrixXd d);

  // For matrices produced internally where the invariants hold by
  // construction.
  static DistanceMatrix unchecked(Eigen::MatrixXd d);

  Index n() const { return static_cast<Index>(d_.rows()); }
  double operator()(Index i, Index j) const { return d_(i, j); }
  const Eigen::MatrixXd& matrix() const { return d_; }

  DistanceMatrix scaled(double factor) const;
  DistanceMatrix submatrix(Index lo, Index hi) const;  // inclusive 0-based
  DistanceMatrix permuted(const std::vector<int>& perm) const;

 private:
  explicit DistanceMatrix(Eigen::MatrixXd d) : d_(std::move(d)) {}
  Eigen::MatrixXd d_;
};

// Candidate change points are restricted to t in [n0, n1], where t counts
// the observations in phase I.  Bounds are clamped into [2, n-2] so that
// every divisor t-1, n-t-1 in the scan statistics stays positive.
struct ScanWindow {
  double rho0 = 0.1;
  double rho1 = 0.9;
  Index n0 = 0;
  Index n1 = 0;

  static ScanWindow from_fractions(Index n, double rho0, double rho1);

  Index size() const { return n1 - n0 + 1; }
};

}  // namespace wgcpd
