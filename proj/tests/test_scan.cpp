#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "test_helpers.hpp"
#include "wgcpd/kernel.hpp"
#include "wgcpd/scan.hpp"

using namespace wgcpd;

TEST_CASE("scan sums on the all-ones matrix count pairs") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(4, 4, 1.0);
  m.diagonal().setZero();
  const DistanceMatrix d = DistanceMatrix::unchecked(m);
  const ScanWindow window = ScanWindow::from_fractions(4, 0.1, 0.9);
  const ScanProfile profile = scan_sums(d, window);
  CHECK(profile.db1(2) == 2.0);
  CHECK(profile.db2(2) == 2.0);
  CHECK(profile.da(2) == 4.0);
}

TEST_CASE("scan sums match the brute-force set definitions") {
  const DistanceMatrix d = helpers::random_distance_matrix(12, 41);
  const ScanWindow window = ScanWindow::from_fractions(12, 0.1, 0.9);
  const ScanProfile profile = scan_sums(d, window);
  for (Index t = 1; t <= 11; ++t) {
    const oracle::Sums sums = oracle::sums_at(d, t);
    CHECK(profile.da(t) == doctest::Approx(sums.da).epsilon(1e-12));
    CHECK(profile.db1(t) == doctest::Approx(sums.db1).epsilon(1e-12));
    CHECK(profile.db2(t) == doctest::Approx(sums.db2).epsilon(1e-12));
    // partition of ordered pairs
    CHECK(profile.db1(t) + profile.db2(t) + 2.0 * profile.da(t) ==
          doctest::Approx(profile.d_total).epsilon(1e-12));
  }
  // monotone within-phase sums
  for (Index t = 2; t <= 11; ++t) {
    CHECK(profile.db1(t) >= profile.db1(t - 1));
    CHECK(profile.db2(t) <= profile.db2(t - 1));
  }
}

TEST_CASE("T statistics on special sequences") {
  SUBCASE("constant data: T1 and T1-tilde vanish") {
    const DistanceMatrix d =
        DistanceMatrix::unchecked(Eigen::MatrixXd::Zero(10, 10));
    const ScanProfile profile =
        scan_sums(d, ScanWindow::from_fractions(10, 0.1, 0.9));
    for (Index t = 2; t <= 8; ++t) {
      CHECK(statistic_T1(profile, t) == 0.0);
      CHECK(statistic_T1_tilde(profile, t) == 0.0);
    }
  }
  SUBCASE("two-cluster data: T1 = T1-tilde = squared gap at the split") {
    const int n = 12, tstar = 5;
    Sequence seq;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd v(2);
      if (i < tstar) {
        v << 1.0, 2.0;
      } else {
        v << 4.0, 6.0;
      }
      seq.items.push_back(Observation::vector(v));
    }
    const DistanceMatrix d = build_distance_matrix(Metric::sq_euclidean(), seq);
    const ScanProfile profile =
        scan_sums(d, ScanWindow::from_fractions(n, 0.1, 0.9));
    const double gap_sq = 25.0;  // ||(3,4)||^2
    CHECK(statistic_T1(profile, tstar) == doctest::Approx(gap_sq));
    CHECK(statistic_T1_tilde(profile, tstar) == doctest::Approx(gap_sq));
  }
  SUBCASE("T1-tilde is nonnegative everywhere") {
    for (int trial = 0; trial < 10; ++trial) {
      const DistanceMatrix d =
          helpers::gaussian_sqeuclid_matrix(20, 2, 500 + trial);
      const ScanWindow window = ScanWindow::from_fractions(20, 0.1, 0.9);
      const ScanProfile profile = scan_sums(d, window);
      for (Index t = window.n0; t <= window.n1; ++t) {
        CHECK(statistic_T1_tilde(profile, t) >= -1e-12);
      }
    }
  }
}

TEST_CASE("T2 equals twice the gap in unbiased sample variances") {
  const Sequence seq = helpers::gaussian_sequence(30, 1, 67);
  const DistanceMatrix d = build_distance_matrix(Metric::sq_euclidean(), seq);
  const ScanWindow window = ScanWindow::from_fractions(30, 0.1, 0.9);
  const ScanProfile profile = scan_sums(d, window);
  auto unbiased_var = [&](Index lo, Index hi) {
    double mean = 0.0;
    for (Index i = lo; i < hi; ++i) mean += seq.items[i].values(0);
    mean /= (hi - lo);
    double ss = 0.0;
    for (Index i = lo; i < hi; ++i) {
      const double c = seq.items[i].values(0) - mean;
      ss += c * c;
    }
    return ss / (hi - lo - 1);
  };
  for (Index t = window.n0; t <= window.n1; ++t) {
    const double expect = 2.0 * std::abs(unbiased_var(0, t) - unbiased_var(t, 30));
    CHECK(statistic_T2(profile, t) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("T2-tilde stays within the correction bound") {
  const DistanceMatrix d = helpers::gaussian_sqeuclid_matrix(40, 3, 71);
  const ScanWindow window = ScanWindow::from_fractions(40, 0.1, 0.9);
  const ScanProfile profile = scan_sums(d, window);
  const Moments moments = compute_moments(d);
  for (Index t = window.n0; t <= window.n1; ++t) {
    const double rho = static_cast<double>(t) / 40.0;
    const double bound = 2.0 * moments.m2 / std::sqrt(40.0 * rho * (1.0 - rho));
    CHECK(std::abs(statistic_T2(profile, t) -
                   statistic_T2_tilde(profile, moments, t)) <= bound + 1e-12);
    // exact midpoint: the correction term vanishes
  }
  const ScanProfile profile20 = scan_sums(helpers::random_distance_matrix(20, 3),
                                          ScanWindow::from_fractions(20, 0.1, 0.9));
  const Moments m20 = compute_moments(helpers::random_distance_matrix(20, 3));
  CHECK(statistic_T2_tilde(profile20, m20, 10) ==
        doctest::Approx(statistic_T2(profile20, 10)).epsilon(1e-12));
}

TEST_CASE("moments match the definitions and the kernel identity") {
  SUBCASE("constant data") {
    const Moments m =
        compute_moments(DistanceMatrix::unchecked(Eigen::MatrixXd::Zero(6, 6)));
    CHECK(m.m2 == 0.0);
    CHECK(m.m4 == 0.0);
    CHECK(m.m6 == 0.0);
    CHECK(m.s_hat == 0.0);
  }
  SUBCASE("two-point hand example") {
    Eigen::MatrixXd d2(2, 2);
    d2 << 0, 4, 4, 0;
    const Moments m = compute_moments(DistanceMatrix::unchecked(d2));
    CHECK(m.m2 == doctest::Approx(1.0));
    CHECK(m.m4 == doctest::Approx(1.0));
    CHECK(m.s_hat == doctest::Approx(0.0));
  }
  SUBCASE("s_hat^2 equals the variance of the centered gram diagonal") {
    const DistanceMatrix d = helpers::random_distance_matrix(30, 83);
    const Moments m = compute_moments(d);
    const Eigen::VectorXd diag = diag_centered_from_distances(d);
    const double mean = diag.mean();
    const double var = (diag.array() - mean).square().mean();
    CHECK(m.s_hat * m.s_hat == doctest::Approx(var).epsilon(1e-10));
    CHECK(m.s_hat * m.s_hat ==
          doctest::Approx(m.m4 - m.m2 * m.m2).epsilon(1e-10));
  }
}

TEST_CASE("statistic_S maximizes with deterministic tie breaking") {
  SUBCASE("constant data: S1 is zero at the window start") {
    const DistanceMatrix d =
        DistanceMatrix::unchecked(Eigen::MatrixXd::Zero(10, 10));
    const ScanProfile profile =
        scan_sums(d, ScanWindow::from_fractions(10, 0.1, 0.9));
    const Moments moments = compute_moments(d);
    const StatValue s1 = statistic_S(profile, moments, StatName::S1);
    CHECK(s1.value == 0.0);
    CHECK(s1.argmax_t == profile.window.n0);
    CHECK_THROWS_AS(statistic_S(profile, moments, StatName::S2), Error);
    try {
      statistic_S(profile, moments, StatName::S3);
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::DegenerateDispersion);
    }
  }
  SUBCASE("large mean shift localizes within +/-2") {
    const Sequence seq = helpers::mean_shift_sequence(100, 33, 10.0, 2025);
    const DistanceMatrix d = build_distance_matrix(Metric::sq_euclidean(), seq);
    const ScanProfile profile =
        scan_sums(d, ScanWindow::from_fractions(100, 0.1, 0.9));
    const StatValue s1 = statistic_S(profile, compute_moments(d), StatName::S1);
    CHECK(std::abs(s1.argmax_t - 33) <= 2);
  }
}

TEST_CASE("every statistic matches the brute-force reference on small matrices") {
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 6 + static_cast<int>(trial % 10);
    const DistanceMatrix d = helpers::random_distance_matrix(n, 900 + trial);
    const ScanWindow window = ScanWindow::from_fractions(n, 0.1, 0.9);
    const ScanProfile profile = scan_sums(d, window);
    const Moments moments = compute_moments(d);
    const oracle::Mom om = oracle::moments(d);
    CHECK(oracle::relative_gap(moments.m2, om.m2) <= 1e-9);
    CHECK(oracle::relative_gap(moments.m4, om.m4) <= 1e-9);
    CHECK(oracle::relative_gap(moments.m6, om.m6) <= 1e-9);
    CHECK(oracle::relative_gap(moments.s_hat, om.s_hat) <= 1e-9);
    for (StatName which : {StatName::S1, StatName::S1Tilde, StatName::S2,
                           StatName::S2Tilde, StatName::S3}) {
      const StatValue got = statistic_S(profile, moments, which);
      const oracle::Max expect = oracle::max_score(d, which, window.n0, window.n1);
      CHECK(oracle::relative_gap(got.value, expect.value) <= 1e-9);
      CHECK(got.argmax_t == expect.argmax);
    }
  }
}

TEST_CASE("moments are invariant under relabeling") {
  const DistanceMatrix d = helpers::random_distance_matrix(15, 4242);
  const Moments base = compute_moments(d);
  RngStream rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const DistanceMatrix shuffled = d.permuted(rng.permutation(15));
    const Moments m = compute_moments(shuffled);
    CHECK(m.m2 == doctest::Approx(base.m2).epsilon(1e-12));
    CHECK(m.m4 == doctest::Approx(base.m4).epsilon(1e-12));
    CHECK(m.m6 == doctest::Approx(base.m6).epsilon(1e-12));
    CHECK(m.s_hat == doctest::Approx(base.s_hat).epsilon(1e-12));
  }
}

TEST_CASE("scaling the matrix scales or preserves each statistic") {
  const DistanceMatrix d = helpers::gaussian_sqeuclid_matrix(40, 3, 321);
  const ScanWindow window = ScanWindow::from_fractions(40, 0.1, 0.9);
  const ScanProfile base_profile = scan_sums(d, window);
  const Moments base_moments = compute_moments(d);
  for (double c : {0.01, 1.0, 37.0}) {
    const DistanceMatrix scaled = d.scaled(c);
    const ScanProfile profile = scan_sums(scaled, window);
    const Moments moments = compute_moments(scaled);
    CHECK(moments.m2 == doctest::Approx(c * base_moments.m2).epsilon(1e-9));
    CHECK(moments.m4 == doctest::Approx(c * c * base_moments.m4).epsilon(1e-9));
    CHECK(moments.m6 ==
          doctest::Approx(c * c * c * base_moments.m6).epsilon(1e-9));
    CHECK(moments.s_hat == doctest::Approx(c * base_moments.s_hat).epsilon(1e-9));
    for (Index t = window.n0; t <= window.n1; t += 7) {
      CHECK(statistic_T1(profile, t) ==
            doctest::Approx(c * statistic_T1(base_profile, t)).epsilon(1e-9));
      CHECK(statistic_T1_tilde(profile, t) ==
            doctest::Approx(c * statistic_T1_tilde(base_profile, t)).epsilon(1e-9));
    }
    for (StatName which : {StatName::S1, StatName::S1Tilde, StatName::S2,
                           StatName::S2Tilde, StatName::S3}) {
      const StatValue got = statistic_S(profile, moments, which);
      const StatValue ref = statistic_S(base_profile, base_moments, which);
      const bool scales = which == StatName::S1 || which == StatName::S1Tilde;
      CHECK(got.value ==
            doctest::Approx((scales ? c : 1.0) * ref.value).epsilon(1e-9));
      CHECK(got.argmax_t == ref.argmax_t);
    }
  }
}

TEST_CASE("reversing the sequence mirrors the S2 score array") {
  const int n = 20;
  const DistanceMatrix d = helpers::gaussian_sqeuclid_matrix(n, 1, 777);
  std::vector<int> reversal(n);
  for (int i = 0; i < n; ++i) reversal[static_cast<std::size_t>(i)] = n - 1 - i;
  const DistanceMatrix reversed = d.permuted(reversal);
  const ScanWindow window = ScanWindow::from_fractions(n, 0.2, 0.8);
  REQUIRE(window.n0 + window.n1 == n);  // symmetric window
  const ScanProfile fwd = scan_sums(d, window);
  const ScanProfile bwd = scan_sums(reversed, window);
  const Moments moments = compute_moments(d);
  for (Index t = window.n0; t <= window.n1; ++t) {
    CHECK(statistic_score(fwd, moments, StatName::S2, t) ==
          doctest::Approx(statistic_score(bwd, moments, StatName::S2, n - t))
              .epsilon(1e-9));
  }
  const StatValue f = statistic_S(fwd, moments, StatName::S2);
  const StatValue b = statistic_S(bwd, moments, StatName::S2);
  // unique maximizer assumed for continuous data
  CHECK(b.argmax_t == n - f.argmax_t);
}

TEST_CASE("subinterval scans equal fresh scans of the subsequence") {
  const DistanceMatrix d = helpers::gaussian_sqeuclid_matrix(40, 2, 555);
  SUBCASE("the full interval reproduces the full profile") {
    const SubintervalScan sub = scan_subinterval(d, 0, 39, 0.1, 0.9);
    const ScanWindow window = ScanWindow::from_fractions(40, 0.1, 0.9);
    const ScanProfile full = scan_sums(d, window);
    CHECK(sub.profile.window.n0 == full.window.n0);
    CHECK(sub.profile.window.n1 == full.window.n1);
    for (Index t = 1; t <= 39; ++t) {
      CHECK(sub.profile.da(t) == doctest::Approx(full.da(t)).epsilon(1e-12));
      CHECK(sub.profile.db1(t) == doctest::Approx(full.db1(t)).epsilon(1e-12));
      CHECK(sub.profile.db2(t) == doctest::Approx(full.db2(t)).epsilon(1e-12));
    }
  }
  SUBCASE("dual route: submatrix vs rebuilt sequence") {
    const Sequence seq = helpers::gaussian_sequence(40, 2, 555);
    const Index lo = 7, hi = 31;
    Sequence subseq;
    for (Index i = lo; i <= hi; ++i) subseq.items.push_back(seq.items[i]);
    const DistanceMatrix direct =
        build_distance_matrix(Metric::sq_euclidean(), subseq);
    const DistanceMatrix whole =
        build_distance_matrix(Metric::sq_euclidean(), seq);
    const SubintervalScan sub = scan_subinterval(whole, lo, hi, 0.1, 0.9);
    const ScanProfile fresh =
        scan_sums(direct, ScanWindow::from_fractions(direct.n(), 0.1, 0.9));
    const Moments fresh_moments = compute_moments(direct);
    for (Index t = sub.profile.window.n0; t <= sub.profile.window.n1; ++t) {
      CHECK(statistic_score(sub.profile, sub.moments, StatName::S1, t) ==
            doctest::Approx(statistic_score(fresh, fresh_moments, StatName::S1, t))
                .epsilon(1e-10));
    }
    CHECK(sub.moments.s_hat == doctest::Approx(fresh_moments.s_hat).epsilon(1e-12));
  }
  SUBCASE("too-short subintervals are rejected") {
    CHECK_THROWS_AS(scan_subinterval(d, 3, 6, 0.1, 0.9), Error);
    try {
      scan_subinterval(d, 0, 3, 0.1, 0.9);
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::SubintervalTooShort);
    }
  }
}
