#pragma once

#include <vector>

#include "wgcpd/types.hpp"

namespace wgcpd {

// Double-centered Gram matrix of the distance-induced kernel.  Row and
// column sums are zero and the matrix does not depend on the anchor used to
// build the uncentered kernel.
struct CenteredGram {
  Eigen::MatrixXd ktilde;

  Index n() const { return static_cast<Index>(ktilde.rows()); }
};

struct TruncationPolicy {
  double trace_fraction = 0.99;  // keep eigenvalues until this share of the positive trace
  Index max_kept = 100;
};

// Eigenvalues of Ktilde/n: negatives floored at zero, sorted descending.
// `kept` is the truncation point used by the S1 null simulation.
struct EigenSpectrum {
  std::vector<double> lambdas;
  Index kept = 0;
  double trace_fraction = 1.0;

  double kept_sum() const;
};

// K[i][j] = (d(y_i, y_a) + d(y_j, y_a) - d(y_i, y_j)) / 2 for anchor a.
Eigen::MatrixXd distance_induced_kernel(const DistanceMatrix& d, Index anchor);

// Ktilde = H K H computed by row/column/grand mean subtraction.
CenteredGram center_gram(const Eigen::MatrixXd& k);

// diag(Ktilde) computed from distances alone: dbar_i - dbar/2.
Eigen::VectorXd diag_centered_from_distances(const DistanceMatrix& d);

EigenSpectrum estimate_eigenvalues(const DistanceMatrix& d,
                                   const TruncationPolicy& policy = {});

// Squared distance between the mean feature maps of the first t and the
// remaining n-t observations; equals the T1-tilde scan statistic exactly.
double mean_embedding_gap_sq(const CenteredGram& gram, Index t);

}  // namespace wgcpd
