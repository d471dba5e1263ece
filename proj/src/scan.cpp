#include "wgcpd/scan.hpp"

#include <cmath>

namespace wgcpd {

const char* stat_name(StatName which) {
  switch (which) {
    case StatName::S1: return "S1";
    case StatName::S1Tilde: return "S1t";
    case StatName::S2: return "S2";
    case StatName::S2Tilde: return "S2t";
    case StatName::S3: return "S3";
  }
  return "unknown";
}

StatName stat_from_name(const std::string& name) {
  if (name == "S1") return StatName::S1;
  if (name == "S1t") return StatName::S1Tilde;
  if (name == "S2") return StatName::S2;
  if (name == "S2t") return StatName::S2Tilde;
  if (name == "S3") return StatName::S3;
  throw_error(ErrorCode::ConfigError, "unknown statistic '" + name + "'");
}

Moments compute_moments(const DistanceMatrix& d) {
  const Index n = d.n();
  const Eigen::VectorXd row_means = d.matrix().rowwise().mean();
  const double dbar = row_means.mean();
  Moments m;
  m.m2 = 0.5 * dbar;
  double sum_sq = 0.0;
  double sum_cu = 0.0;
  double sum_rm_sq = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double centered = 2.0 * row_means(i) - dbar;
    sum_sq += centered * centered;
    sum_cu += centered * centered * centered;
    sum_rm_sq += row_means(i) * row_means(i);
  }
  m.m4 = sum_sq / (4.0 * n);
  m.m6 = sum_cu / (8.0 * n);
  m.s_hat = std::sqrt(std::max(0.0, sum_rm_sq / n - dbar * dbar));
  return m;
}

namespace {

template <typename Lookup>
ScanProfile scan_sums_impl(const DistanceMatrix& d, const ScanWindow& window,
                           Lookup at) {
  const Index n = d.n();
  ScanProfile profile;
  profile.n = n;
  profile.window = window;
  profile.d_a.assign(static_cast<std::size_t>(n - 1), 0.0);
  profile.d_b1.assign(static_cast<std::size_t>(n - 1), 0.0);
  profile.d_b2.assign(static_cast<std::size_t>(n - 1), 0.0);

  // d_b1(t) grows by the distances from the new element to the t-1 old ones;
  // d_b2 symmetric from the right.  Each incremental pass is O(n^2) total.
  double acc = 0.0;
  for (Index t = 2; t <= n; ++t) {
    double added = 0.0;
    for (Index i = 0; i < t - 1; ++i) added += at(i, t - 1);
    acc += 2.0 * added;
    if (t <= n - 1) profile.d_b1[static_cast<std::size_t>(t - 1)] = acc;
  }
  profile.d_total = acc;  // d_b1(n) covers every ordered off-diagonal pair
  acc = 0.0;
  for (Index t = n - 2; t >= 1; --t) {
    double added = 0.0;
    for (Index j = t + 1; j < n; ++j) added += at(t, j);
    acc += 2.0 * added;
    profile.d_b2[static_cast<std::size_t>(t - 1)] = acc;
  }
  for (Index t = 1; t <= n - 1; ++t) {
    profile.d_a[static_cast<std::size_t>(t - 1)] =
        0.5 * (profile.d_total - profile.db1(t) - profile.db2(t));
  }
  return profile;
}

}  // namespace

ScanProfile scan_sums(const DistanceMatrix& d, const ScanWindow& window) {
  return scan_sums_impl(d, window, [&d](Index i, Index j) { return d(i, j); });
}

ScanProfile scan_sums_permuted(const DistanceMatrix& d, const ScanWindow& window,
                               const std::vector<int>& perm) {
  return scan_sums_impl(d, window, [&](Index i, Index j) {
    return d(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  });
}

double statistic_T1(const ScanProfile& profile, Index t) {
  const double tt = static_cast<double>(t);
  const double nt = static_cast<double>(profile.n - t);
  return profile.da(t) / (tt * nt) - profile.db1(t) / (2.0 * tt * (tt - 1.0)) -
         profile.db2(t) / (2.0 * nt * (nt - 1.0));
}

double statistic_T1_tilde(const ScanProfile& profile, Index t) {
  const double tt = static_cast<double>(t);
  const double nt = static_cast<double>(profile.n - t);
  return profile.da(t) / (tt * nt) - profile.db1(t) / (2.0 * tt * tt) -
         profile.db2(t) / (2.0 * nt * nt);
}

double statistic_T2(const ScanProfile& profile, Index t) {
  const double tt = static_cast<double>(t);
  const double nt = static_cast<double>(profile.n - t);
  return std::abs(profile.db1(t) / (tt * (tt - 1.0)) -
                  profile.db2(t) / (nt * (nt - 1.0)));
}

double statistic_T2_tilde(const ScanProfile& profile, const Moments& moments,
                          Index t) {
  const double tt = static_cast<double>(t);
  const double n = static_cast<double>(profile.n);
  const double nt = n - tt;
  const double rho = tt / n;
  const double correction =
      2.0 * moments.m2 / std::sqrt(n * rho * (1.0 - rho)) * (2.0 * tt / n - 1.0);
  return std::abs(profile.db1(t) / (tt * (tt - 1.0)) -
                  profile.db2(t) / (nt * (nt - 1.0)) - correction);
}

double statistic_score(const ScanProfile& profile, const Moments& moments,
                       StatName which, Index t) {
  const double tt = static_cast<double>(t);
  const double n = static_cast<double>(profile.n);
  const double weight = tt * (n - tt) / n;
  switch (which) {
    case StatName::S1:
      return weight * statistic_T1(profile, t);
    case StatName::S1Tilde:
      return weight * statistic_T1_tilde(profile, t);
    case StatName::S2:
      return std::sqrt(weight) * statistic_T2(profile, t) / (2.0 * moments.s_hat);
    case StatName::S2Tilde:
      return std::sqrt(weight) * statistic_T2_tilde(profile, moments, t) /
             (2.0 * moments.s_hat);
    case StatName::S3: {
      const double t1 = statistic_T1(profile, t);
      const double t2 = statistic_T2(profile, t);
      return weight * (4.0 * t1 * t1 + t2 * t2) /
             (4.0 * moments.s_hat * moments.s_hat);
    }
  }
  throw_error(ErrorCode::ConfigError, "unknown statistic");
}

namespace {

bool needs_dispersion(StatName which) {
  return which == StatName::S2 || which == StatName::S2Tilde ||
         which == StatName::S3;
}

}  // namespace

StatValue statistic_S(const ScanProfile& profile, const Moments& moments,
                      StatName which) {
  if (needs_dispersion(which) && moments.s_hat <= kDispersionFloor) {
    throw_error(ErrorCode::DegenerateDispersion,
                std::string("degenerate dispersion: s_hat <= 1e-12 for ") +
                    stat_name(which));
  }
  StatValue result;
  result.name = which;
  result.argmax_t = profile.window.n0;
  result.value = statistic_score(profile, moments, which, profile.window.n0);
  for (Index t = profile.window.n0 + 1; t <= profile.window.n1; ++t) {
    const double score = statistic_score(profile, moments, which, t);
    if (score > result.value) {
      result.value = score;
      result.argmax_t = t;
    }
  }
  return result;
}

SubintervalScan scan_subinterval(const DistanceMatrix& d, Index lo, Index hi,
                                 double rho0, double rho1) {
  if (lo < 0 || hi >= d.n() || hi - lo < 4) {
    throw_error(ErrorCode::SubintervalTooShort,
                "subinterval [" + std::to_string(lo) + ", " + std::to_string(hi) +
                    "] must contain at least 5 observations");
  }
  SubintervalScan scan;
  scan.offset = lo;
  scan.sub = d.submatrix(lo, hi);
  const ScanWindow window = ScanWindow::from_fractions(scan.sub.n(), rho0, rho1);
  scan.profile = scan_sums(scan.sub, window);
  scan.moments = compute_moments(scan.sub);
  return scan;
}

}  // namespace wgcpd
