#pragma once

#include <string>
#include <vector>

#include "wgcpd/types.hpp"

namespace wgcpd {

enum class StatName { S1, S1Tilde, S2, S2Tilde, S3 };

const char* stat_name(StatName which);
StatName stat_from_name(const std::string& name);

// Distance-only moment estimators entering the scaled statistics and the
// skewness-corrected tail: m2 = dbar/2, m4 and m6 are the centered second
// and third power means of the row averages, and s_hat the dispersion scale
// (s_hat^2 = m4 - m2^2, clamped at zero).
struct Moments {
  double m2 = 0.0;
  double m4 = 0.0;
  double m6 = 0.0;
  double s_hat = 0.0;
};

Moments compute_moments(const DistanceMatrix& d);

// Within/between-phase distance sums at every candidate split.  Sums follow
// the ordered-pair convention for B1/B2 (|B1(t)| = t(t-1)) and count each
// cross pair once for A (|A(t)| = t(n-t)), so
// d_b1(t) + d_b2(t) + 2 d_a(t) = d_total at every t.
struct ScanProfile {
  Index n = 0;
  ScanWindow window;
  double d_total = 0.0;            // ordered off-diagonal sum
  std::vector<double> d_a;         // indexed t-1 for t in [1, n-1]
  std::vector<double> d_b1;
  std::vector<double> d_b2;

  double da(Index t) const { return d_a[static_cast<std::size_t>(t - 1)]; }
  double db1(Index t) const { return d_b1[static_cast<std::size_t>(t - 1)]; }
  double db2(Index t) const { return d_b2[static_cast<std::size_t>(t - 1)]; }
};

// O(n^2) incremental computation of all three sum arrays.
ScanProfile scan_sums(const DistanceMatrix& d, const ScanWindow& window);

// Same sums on the matrix reindexed by perm, without materializing it.
ScanProfile scan_sums_permuted(const DistanceMatrix& d, const ScanWindow& window,
                               const std::vector<int>& perm);

double statistic_T1(const ScanProfile& profile, Index t);
double statistic_T1_tilde(const ScanProfile& profile, Index t);
double statistic_T2(const ScanProfile& profile, Index t);
double statistic_T2_tilde(const ScanProfile& profile, const Moments& moments, Index t);

// Score behind max in the named statistic, at split t.
double statistic_score(const ScanProfile& profile, const Moments& moments,
                       StatName which, Index t);

struct StatValue {
  StatName name = StatName::S1;
  double value = 0.0;
  Index argmax_t = 0;  // smallest maximizing t, counting phase-I observations
};

// Maximum of the score over the scan window, ties broken toward smallest t.
// Throws DegenerateDispersion when an s_hat-scaled statistic is requested
// and s_hat <= 1e-12.
StatValue statistic_S(const ScanProfile& profile, const Moments& moments,
                      StatName which);

// Scan of the subsequence y_lo..y_hi (0-based inclusive): identical to
// extracting the submatrix and running the full scan on it, so candidate
// indices are local; global split = offset + local t.
struct SubintervalScan {
  ScanProfile profile;
  Moments moments;
  Index offset = 0;
  DistanceMatrix sub;
};

SubintervalScan scan_subinterval(const DistanceMatrix& d, Index lo, Index hi,
                                 double rho0, double rho1);

inline constexpr double kDispersionFloor = 1e-12;

}  // namespace wgcpd
