#include "wgcpd/kernel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace wgcpd {

double EigenSpectrum::kept_sum() const {
  return std::accumulate(lambdas.begin(), lambdas.begin() + kept, 0.0);
}

Eigen::MatrixXd distance_induced_kernel(const DistanceMatrix& d, Index anchor) {
  const Index n = d.n();
  if (anchor < 0 || anchor >= n) {
    throw_error(ErrorCode::OutOfRange, "kernel anchor out of range");
  }
  Eigen::MatrixXd k(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      k(i, j) = 0.5 * (d(i, anchor) + d(j, anchor) - d(i, j));
    }
  }
  return k;
}

CenteredGram center_gram(const Eigen::MatrixXd& k) {
  const Index n = static_cast<Index>(k.rows());
  const Eigen::VectorXd row_means = k.rowwise().mean();
  const Eigen::VectorXd col_means = k.colwise().mean();
  const double grand_mean = k.mean();
  Eigen::MatrixXd out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      out(i, j) = k(i, j) - row_means(i) - col_means(j) + grand_mean;
    }
  }
  return CenteredGram{std::move(out)};
}

Eigen::VectorXd diag_centered_from_distances(const DistanceMatrix& d) {
  const Eigen::VectorXd row_means = d.matrix().rowwise().mean();
  const double grand_mean = d.matrix().mean();
  return row_means.array() - 0.5 * grand_mean;
}

EigenSpectrum estimate_eigenvalues(const DistanceMatrix& d,
                                   const TruncationPolicy& policy) {
  const Index n = d.n();
  if (n < 2) throw_error(ErrorCode::TooShort, "need n >= 2 for eigenvalues");
  const CenteredGram gram = center_gram(distance_induced_kernel(d, 0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram.ktilde / n,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw_error(ErrorCode::EigenFailure, "symmetric eigensolver did not converge");
  }
  EigenSpectrum spectrum;
  spectrum.lambdas.assign(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + n);
  for (double& value : spectrum.lambdas) value = std::max(0.0, value);
  std::sort(spectrum.lambdas.begin(), spectrum.lambdas.end(), std::greater<>());

  const double total =
      std::accumulate(spectrum.lambdas.begin(), spectrum.lambdas.end(), 0.0);
  if (total <= 0.0) {
    spectrum.kept = 0;
    spectrum.trace_fraction = 1.0;
    return spectrum;
  }
  const Index cap = std::min(n, policy.max_kept);
  double cumulative = 0.0;
  Index kept = 0;
  while (kept < cap) {
    cumulative += spectrum.lambdas[static_cast<std::size_t>(kept)];
    ++kept;
    if (cumulative >= policy.trace_fraction * total) break;
  }
  spectrum.kept = kept;
  spectrum.trace_fraction = cumulative / total;
  return spectrum;
}

double mean_embedding_gap_sq(const CenteredGram& gram, Index t) {
  const Index n = gram.n();
  if (t < 1 || t > n - 1) {
    throw_error(ErrorCode::OutOfRange, "split index out of range");
  }
  const auto& k = gram.ktilde;
  const double left = k.topLeftCorner(t, t).sum();
  const double right = k.bottomRightCorner(n - t, n - t).sum();
  const double cross = k.topRightCorner(t, n - t).sum();
  const double tt = static_cast<double>(t);
  const double nt = static_cast<double>(n - t);
  return left / (tt * tt) + right / (nt * nt) - 2.0 * cross / (tt * nt);
}

}  // namespace wgcpd
