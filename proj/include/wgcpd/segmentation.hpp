#pragma once

#include <cstdint>
#include <vector>

#include "wgcpd/nullmodel.hpp"
#include "wgcpd/scan.hpp"
#include "wgcpd/types.hpp"

namespace wgcpd {

struct SegmentationConfig {
  double alpha = 0.05;
  Index n_min = 20;
  StatName statistic = StatName::S1;
  EngineConfig engine{PValueMethod::AsymptoticMC};
  double rho0 = 0.1;
  double rho1 = 0.9;
  std::uint64_t seed = 0;
  int threads = 1;
};

// One recursion node of the bisection.  Intervals are stored as 1-based
// inclusive [l, r]; the candidate k is the last index of the left segment,
// so an accepted node recurses into [l, k] and [k+1, r].
struct SegNode {
  Index l = 0;
  Index r = 0;
  double stat = 0.0;
  double pvalue = 1.0;
  Index k = 0;
  bool accepted = false;
  bool degenerate = false;
  std::vector<int> children;
};

struct SegmentationTree {
  std::vector<SegNode> nodes;           // empty when n < max(2 n_min, 5)
  std::vector<Index> change_points;     // sorted accepted k's (1-based)
};

SegmentationTree binary_segment(const DistanceMatrix& d,
                                const SegmentationConfig& cfg);

// Re-applies a (possibly smaller) threshold to an existing tree's cached
// p-values; pruning respects ancestor acceptance.
std::vector<Index> detected_at(const SegmentationTree& tree, double alpha);

// A partition of 1..n into disjoint covering clusters.
struct Partition {
  std::vector<std::vector<Index>> clusters;

  Index n() const;
};

Partition changepoints_to_partition(const std::vector<Index>& change_points,
                                    Index n);

// Fraction of the C(n,2) observation pairs on which the two partitions
// agree (same cluster in both, or different cluster in both).
double rand_index(const Partition& u, const Partition& v);

}  // namespace wgcpd
