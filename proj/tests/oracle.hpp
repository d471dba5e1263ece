// Brute-force reference implementations, written straight from the set
// definitions and formulas with no shared code paths with the library.
// Deliberately O(n^3)-ish; only used on small inputs.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "wgcpd/scan.hpp"
#include "wgcpd/types.hpp"

namespace oracle {

using wgcpd::DistanceMatrix;
using wgcpd::Index;

struct Sums {
  double da = 0.0;
  double db1 = 0.0;
  double db2 = 0.0;
};

// A(t) = {(i,j): i <= t < j}, B1(t) = {(i,j): i,j <= t, i != j},
// B2(t) = {(i,j): i,j > t, i != j}; indices 1-based in the definitions.
inline Sums sums_at(const DistanceMatrix& d, Index t) {
  const Index n = d.n();
  Sums s;
  for (Index i = 1; i <= n; ++i) {
    for (Index j = 1; j <= n; ++j) {
      if (i == j) continue;
      const double value = d(i - 1, j - 1);
      if (i <= t && j > t) s.da += value;
      if (i <= t && j <= t) s.db1 += value;
      if (i > t && j > t) s.db2 += value;
    }
  }
  return s;
}

inline double t1(const DistanceMatrix& d, Index t) {
  const Index n = d.n();
  const Sums s = sums_at(d, t);
  const double a = static_cast<double>(t) * (n - t);
  const double b1 = static_cast<double>(t) * (t - 1);
  const double b2 = static_cast<double>(n - t) * (n - t - 1);
  return s.da / a - 0.5 * s.db1 / b1 - 0.5 * s.db2 / b2;
}

inline double t1_tilde(const DistanceMatrix& d, Index t) {
  const Index n = d.n();
  const Sums s = sums_at(d, t);
  return s.da / (static_cast<double>(t) * (n - t)) -
         s.db1 / (2.0 * t * static_cast<double>(t)) -
         s.db2 / (2.0 * static_cast<double>(n - t) * (n - t));
}

inline double t2(const DistanceMatrix& d, Index t) {
  const Index n = d.n();
  const Sums s = sums_at(d, t);
  return std::abs(s.db1 / (static_cast<double>(t) * (t - 1)) -
                  s.db2 / (static_cast<double>(n - t) * (n - t - 1)));
}

struct Mom {
  double m2 = 0.0, m4 = 0.0, m6 = 0.0, s_hat = 0.0;
};

inline Mom moments(const DistanceMatrix& d) {
  const Index n = d.n();
  Mom m;
  double total = 0.0;
  std::vector<double> row_bar(static_cast<std::size_t>(n), 0.0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      row_bar[static_cast<std::size_t>(i)] += d(i, j);
      total += d(i, j);
    }
    row_bar[static_cast<std::size_t>(i)] /= n;
  }
  const double dbar = total / (static_cast<double>(n) * n);
  m.m2 = 0.5 * dbar;
  double s2 = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double c = 2.0 * row_bar[static_cast<std::size_t>(i)] - dbar;
    m.m4 += c * c;
    m.m6 += c * c * c;
    s2 += row_bar[static_cast<std::size_t>(i)] * row_bar[static_cast<std::size_t>(i)];
  }
  m.m4 /= 4.0 * n;
  m.m6 /= 8.0 * n;
  m.s_hat = std::sqrt(std::max(0.0, s2 / n - dbar * dbar));
  return m;
}

inline double t2_tilde(const DistanceMatrix& d, Index t) {
  const Index n = d.n();
  const Sums s = sums_at(d, t);
  const double rho = static_cast<double>(t) / n;
  const double shift = 2.0 * moments(d).m2 / std::sqrt(n * rho * (1.0 - rho)) *
                       (2.0 * static_cast<double>(t) / n - 1.0);
  return std::abs(s.db1 / (static_cast<double>(t) * (t - 1)) -
                  s.db2 / (static_cast<double>(n - t) * (n - t - 1)) - shift);
}

inline double score(const DistanceMatrix& d, wgcpd::StatName which, Index t) {
  const Index n = d.n();
  const double w = static_cast<double>(t) * (n - t) / n;
  const Mom m = moments(d);
  switch (which) {
    case wgcpd::StatName::S1: return w * t1(d, t);
    case wgcpd::StatName::S1Tilde: return w * t1_tilde(d, t);
    case wgcpd::StatName::S2: return std::sqrt(w) * t2(d, t) / (2.0 * m.s_hat);
    case wgcpd::StatName::S2Tilde:
      return std::sqrt(w) * t2_tilde(d, t) / (2.0 * m.s_hat);
    case wgcpd::StatName::S3: {
      const double a = t1(d, t);
      const double b = t2(d, t);
      return w * (4.0 * a * a + b * b) / (4.0 * m.s_hat * m.s_hat);
    }
  }
  std::abort();
}

struct Max {
  double value;
  Index argmax;
};

inline Max max_score(const DistanceMatrix& d, wgcpd::StatName which, Index n0,
                     Index n1) {
  Max best{score(d, which, n0), n0};
  for (Index t = n0 + 1; t <= n1; ++t) {
    const double v = score(d, which, t);
    if (v > best.value) best = Max{v, t};
  }
  return best;
}

inline double relative_gap(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
  return std::abs(a - b) / scale;
}

}  // namespace oracle
