#include "wgcpd/segmentation.hpp"

#include <algorithm>

#include "wgcpd/rng.hpp"

namespace wgcpd {

namespace {

struct Bisection {
  const DistanceMatrix& d;
  const SegmentationConfig& cfg;
  SegmentationTree tree;

  // lo, hi are 0-based inclusive
  int recurse(Index lo, Index hi) {
    const Index m = hi - lo + 1;
    if (m < std::max<Index>(2 * cfg.n_min, 5)) return -1;

    const int node_index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[static_cast<std::size_t>(node_index)].l = lo + 1;
    tree.nodes[static_cast<std::size_t>(node_index)].r = hi + 1;

    const SubintervalScan scan =
        scan_subinterval(d, lo, hi, cfg.rho0, cfg.rho1);
    StatValue stat;
    PValue pvalue;
    bool degenerate = false;
    try {
      stat = statistic_S(scan.profile, scan.moments, cfg.statistic);
      const std::uint64_t node_seed =
          mix_seed(mix_seed(cfg.seed, rng_tag::kSegment),
                   (static_cast<std::uint64_t>(lo) << 32) ^
                       static_cast<std::uint64_t>(hi));
      pvalue = compute_pvalue(scan.sub, scan.profile, scan.moments, stat,
                              cfg.engine, node_seed, cfg.threads);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::DegenerateDispersion) throw;
      degenerate = true;
      stat.name = cfg.statistic;
      stat.value = 0.0;
      stat.argmax_t = scan.profile.window.n0;
      pvalue.value = 1.0;
    }

    const Index k0 = lo + stat.argmax_t - 1;  // 0-based last index of phase I
    const Index k1 = k0 + 1;                  // 1-based change point
    const bool accepted = !degenerate && pvalue.value <= cfg.alpha &&
                          k0 - lo >= cfg.n_min && hi - k0 >= cfg.n_min;

    {
      SegNode& node = tree.nodes[static_cast<std::size_t>(node_index)];
      node.stat = stat.value;
      node.pvalue = pvalue.value;
      node.k = k1;
      node.accepted = accepted;
      node.degenerate = degenerate;
    }
    if (accepted) {
      tree.change_points.push_back(k1);
      const int left = recurse(lo, k0);
      const int right = recurse(k0 + 1, hi);
      SegNode& node = tree.nodes[static_cast<std::size_t>(node_index)];
      if (left >= 0) node.children.push_back(left);
      if (right >= 0) node.children.push_back(right);
    }
    return node_index;
  }
};

}  // namespace

SegmentationTree binary_segment(const DistanceMatrix& d,
                                const SegmentationConfig& cfg) {
  if (cfg.n_min < 2) {
    throw_error(ErrorCode::ConfigError, "n_min must be at least 2");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw_error(ErrorCode::ConfigError, "alpha must lie in (0, 1)");
  }
  Bisection bisection{d, cfg, {}};
  bisection.recurse(0, d.n() - 1);
  std::sort(bisection.tree.change_points.begin(),
            bisection.tree.change_points.end());
  return bisection.tree;
}

std::vector<Index> detected_at(const SegmentationTree& tree, double alpha) {
  std::vector<Index> detected;
  if (tree.nodes.empty()) return detected;
  // walk from the root, descending only through re-accepted nodes
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const SegNode& node = tree.nodes[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    const bool pass = node.accepted && node.pvalue <= alpha;
    if (!pass) continue;
    detected.push_back(node.k);
    for (int child : node.children) stack.push_back(child);
  }
  std::sort(detected.begin(), detected.end());
  return detected;
}

Index Partition::n() const {
  Index total = 0;
  for (const auto& cluster : clusters) total += static_cast<Index>(cluster.size());
  return total;
}

Partition changepoints_to_partition(const std::vector<Index>& change_points,
                                    Index n) {
  for (std::size_t i = 0; i < change_points.size(); ++i) {
    if (change_points[i] < 1 || change_points[i] > n - 1) {
      throw_error(ErrorCode::OutOfRange,
                  "change point " + std::to_string(change_points[i]) +
                      " outside [1, n-1]");
    }
    if (i > 0 && change_points[i] <= change_points[i - 1]) {
      throw_error(ErrorCode::NotSorted,
                  "change points must be strictly increasing");
    }
  }
  Partition partition;
  Index start = 1;
  for (Index cp : change_points) {
    std::vector<Index> cluster;
    for (Index i = start; i <= cp; ++i) cluster.push_back(i);
    partition.clusters.push_back(std::move(cluster));
    start = cp + 1;
  }
  std::vector<Index> tail;
  for (Index i = start; i <= n; ++i) tail.push_back(i);
  partition.clusters.push_back(std::move(tail));
  return partition;
}

namespace {

std::vector<int> labels_of(const Partition& p, Index n) {
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < p.clusters.size(); ++c) {
    for (Index item : p.clusters[c]) {
      if (item < 1 || item > n) {
        throw_error(ErrorCode::PartitionInvalid,
                    "partition element " + std::to_string(item) +
                        " outside 1..n");
      }
      if (labels[static_cast<std::size_t>(item - 1)] != -1) {
        throw_error(ErrorCode::PartitionInvalid,
                    "element " + std::to_string(item) + " appears twice");
      }
      labels[static_cast<std::size_t>(item - 1)] = static_cast<int>(c);
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (labels[static_cast<std::size_t>(i)] == -1) {
      throw_error(ErrorCode::PartitionInvalid,
                  "element " + std::to_string(i + 1) + " missing");
    }
  }
  return labels;
}

}  // namespace

double rand_index(const Partition& u, const Partition& v) {
  const Index n = u.n();
  if (v.n() != n) {
    throw_error(ErrorCode::PartitionInvalid, "partitions cover different n");
  }
  if (n < 2) {
    throw_error(ErrorCode::PartitionInvalid, "rand index needs n >= 2");
  }
  const std::vector<int> lu = labels_of(u, n);
  const std::vector<int> lv = labels_of(v, n);
  long long agreements = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const bool same_u = lu[static_cast<std::size_t>(i)] == lu[static_cast<std::size_t>(j)];
      const bool same_v = lv[static_cast<std::size_t>(i)] == lv[static_cast<std::size_t>(j)];
      if (same_u == same_v) ++agreements;
    }
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(agreements) / pairs;
}

}  // namespace wgcpd
