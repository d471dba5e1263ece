#include "wgcpd/nullmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wgcpd/parallel.hpp"
#include "wgcpd/rng.hpp"

namespace wgcpd {

namespace {

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) * 0.3989422804014326779399461;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

double add_one_tail(const std::vector<double>& sorted, double observed) {
  const auto first_ge = std::lower_bound(sorted.begin(), sorted.end(), observed);
  const auto count_ge = static_cast<double>(sorted.end() - first_ge);
  return (1.0 + count_ge) / (static_cast<double>(sorted.size()) + 1.0);
}

void require_reps(int reps) {
  if (reps < 100) {
    throw_error(ErrorCode::ConfigError,
                "Monte-Carlo and permutation engines need at least 100 replicates");
  }
}

}  // namespace

const char* pvalue_method_name(PValueMethod method) {
  switch (method) {
    case PValueMethod::AsymptoticMC: return "asymptotic";
    case PValueMethod::AnalyticCorrection: return "corrected";
    case PValueMethod::Permutation: return "permutation";
  }
  return "unknown";
}

const char* correction_variant_name(CorrectionVariant variant) {
  return variant == CorrectionVariant::MainText ? "main" : "appendix";
}

double nu_function(double z) {
  if (z < 1e-8) return 1.0;
  const double half = 0.5 * z;
  const double numerator = (2.0 / z) * (normal_cdf(half) - 0.5);
  const double denominator = half * normal_cdf(half) + normal_pdf(half);
  return numerator / denominator;
}

NullModel simulate_null_S1(const EigenSpectrum& spectrum, Index n,
                           const ScanWindow& window, int reps,
                           std::uint64_t seed, StatName which, int threads) {
  if (which != StatName::S1 && which != StatName::S1Tilde) {
    throw_error(ErrorCode::ConfigError, "S1 null simulates S1 or S1t only");
  }
  if (spectrum.kept < 1) {
    throw_error(ErrorCode::EmptySpectrum,
                "no positive eigenvalues: data look constant");
  }
  require_reps(reps);
  NullModel model;
  model.method = PValueMethod::AsymptoticMC;
  model.stat = which;
  model.reps = reps;
  model.seed = seed;
  model.n = n;
  model.window = window;
  model.samples.assign(static_cast<std::size_t>(reps), 0.0);

  const Index kept = spectrum.kept;
  const double kept_trace = spectrum.kept_sum();
  const bool shift = which == StatName::S1;
  const double increment_sd = std::sqrt(1.0 / static_cast<double>(n));
  const Index width = window.size();

  parallel_for(reps, threads, [&](int rep) {
    RngStream rng = RngStream::derive(
        seed, {rng_tag::kNullS1, static_cast<std::uint64_t>(rep)});
    std::vector<double> acc(static_cast<std::size_t>(width), 0.0);
    std::vector<double> bridge(static_cast<std::size_t>(width), 0.0);
    for (Index l = 0; l < kept; ++l) {
      double walk = 0.0;
      Index slot = 0;
      for (Index t = 1; t <= n; ++t) {
        walk += increment_sd * rng.gaussian();
        if (t >= window.n0 && t <= window.n1) {
          bridge[static_cast<std::size_t>(slot++)] = walk;
        }
      }
      const double w1 = walk;
      const double lambda = spectrum.lambdas[static_cast<std::size_t>(l)];
      for (Index s = 0; s < width; ++s) {
        const double rho =
            static_cast<double>(window.n0 + s) / static_cast<double>(n);
        const double b = bridge[static_cast<std::size_t>(s)] - rho * w1;
        acc[static_cast<std::size_t>(s)] += lambda * b * b;
      }
    }
    double best = -std::numeric_limits<double>::infinity();
    for (Index s = 0; s < width; ++s) {
      const double rho =
          static_cast<double>(window.n0 + s) / static_cast<double>(n);
      const double scale = rho * (1.0 - rho);
      const double value =
          (acc[static_cast<std::size_t>(s)] - (shift ? kept_trace * scale : 0.0)) /
          scale;
      best = std::max(best, value);
    }
    model.samples[static_cast<std::size_t>(rep)] = best;
  });
  std::sort(model.samples.begin(), model.samples.end());
  return model;
}

NullModel simulate_null_S2(Index n, const ScanWindow& window, int reps,
                           std::uint64_t seed, int threads) {
  require_reps(reps);
  NullModel model;
  model.method = PValueMethod::AsymptoticMC;
  model.stat = StatName::S2;
  model.reps = reps;
  model.seed = seed;
  model.n = n;
  model.window = window;
  model.samples.assign(static_cast<std::size_t>(reps), 0.0);

  const double increment_sd = std::sqrt(1.0 / static_cast<double>(n));
  const Index width = window.size();

  parallel_for(reps, threads, [&](int rep) {
    RngStream rng = RngStream::derive(
        seed, {rng_tag::kNullS2, static_cast<std::uint64_t>(rep)});
    std::vector<double> walk_at(static_cast<std::size_t>(width), 0.0);
    double walk = 0.0;
    Index slot = 0;
    for (Index t = 1; t <= n; ++t) {
      walk += increment_sd * rng.gaussian();
      if (t >= window.n0 && t <= window.n1) {
        walk_at[static_cast<std::size_t>(slot++)] = walk;
      }
    }
    double best = 0.0;
    for (Index s = 0; s < width; ++s) {
      const double rho =
          static_cast<double>(window.n0 + s) / static_cast<double>(n);
      const double b = walk_at[static_cast<std::size_t>(s)] - rho * walk;
      best = std::max(best, std::abs(b) / std::sqrt(rho * (1.0 - rho)));
    }
    model.samples[static_cast<std::size_t>(rep)] = best;
  });
  std::sort(model.samples.begin(), model.samples.end());
  return model;
}

NullModel simulate_null_S3(Index n, const ScanWindow& window, int reps,
                           std::uint64_t seed, int threads) {
  NullModel model = simulate_null_S2(n, window, reps, seed, threads);
  model.stat = StatName::S3;
  for (double& sample : model.samples) sample *= sample;
  return model;
}

PValue pvalue_from_null(const NullModel& model, double observed) {
  PValue p;
  p.method = model.method;
  p.reps = model.reps;
  p.value = add_one_tail(model.samples, observed);
  p.mc_stderr = std::sqrt(p.value * (1.0 - p.value) / model.reps);
  return p;
}

PValue pvalue_S2_corrected(double observed, const Moments& moments, Index n,
                           const ScanWindow& window, CorrectionVariant variant) {
  if (moments.s_hat <= kDispersionFloor) {
    throw_error(ErrorCode::DegenerateDispersion,
                "degenerate dispersion: s_hat <= 1e-12");
  }
  PValue p;
  p.method = PValueMethod::AnalyticCorrection;
  p.reps = 0;
  if (!(observed > 0.0)) {
    p.value = 1.0;
    return p;
  }
  const double x = observed;
  const double skewness =
      (moments.m6 - 3.0 * moments.m2 * moments.m4 +
       2.0 * moments.m2 * moments.m2 * moments.m2) /
      (moments.s_hat * moments.s_hat * moments.s_hat);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double u_lo = static_cast<double>(window.n0) / static_cast<double>(n);
  const double u_hi = static_cast<double>(window.n1) / static_cast<double>(n);

  const auto integrand = [&](double u) {
    const double spread = u * (1.0 - u);
    const double v = (1.0 - 2.0 * u) / std::sqrt(spread) * skewness;
    const double edgeworth = 1.0 + v * x * (x * x - 3.0) / (6.0 * sqrt_n);
    const double arg = variant == CorrectionVariant::MainText
                           ? std::sqrt(x / (spread * static_cast<double>(n)))
                           : x / std::sqrt(spread * static_cast<double>(n));
    return edgeworth / spread * nu_function(arg);
  };

  // composite Simpson rule, 512 panels
  constexpr int kPanels = 512;
  const double h = (u_hi - u_lo) / kPanels;
  double integral = integrand(u_lo) + integrand(u_hi);
  for (int i = 1; i < kPanels; ++i) {
    integral += (i % 2 == 1 ? 4.0 : 2.0) * integrand(u_lo + i * h);
  }
  integral *= h / 3.0;

  double tail = x * normal_pdf(x) * integral;
  if (variant == CorrectionVariant::AppendixDerived) tail *= 2.0;
  p.value = std::min(1.0, std::max(tail, 1e-300));
  return p;
}

PValue permutation_pvalue(const DistanceMatrix& d, StatName which,
                          const ScanWindow& window, int permutations,
                          std::uint64_t seed, int threads) {
  return permutation_pvalues(d, {which}, window, permutations, seed, threads)
      .front();
}

std::vector<PValue> permutation_pvalues(const DistanceMatrix& d,
                                        const std::vector<StatName>& which,
                                        const ScanWindow& window,
                                        int permutations, std::uint64_t seed,
                                        int threads) {
  require_reps(permutations);
  const Moments moments = compute_moments(d);  // permutation-invariant
  const ScanProfile observed_profile = scan_sums(d, window);
  std::vector<double> observed;
  observed.reserve(which.size());
  for (StatName stat : which) {
    observed.push_back(statistic_S(observed_profile, moments, stat).value);
  }
  const Index n = d.n();
  std::vector<std::vector<double>> perm_stats(
      which.size(), std::vector<double>(static_cast<std::size_t>(permutations)));
  parallel_for(permutations, threads, [&](int j) {
    RngStream rng = RngStream::derive(
        seed, {rng_tag::kPermutation, static_cast<std::uint64_t>(j)});
    const std::vector<int> perm = rng.permutation(n);
    const ScanProfile profile = scan_sums_permuted(d, window, perm);
    for (std::size_t s = 0; s < which.size(); ++s) {
      perm_stats[s][static_cast<std::size_t>(j)] =
          statistic_S(profile, moments, which[s]).value;
    }
  });
  std::vector<PValue> out;
  out.reserve(which.size());
  for (std::size_t s = 0; s < which.size(); ++s) {
    int count_ge = 0;
    for (double stat : perm_stats[s]) {
      if (stat >= observed[s]) ++count_ge;
    }
    PValue p;
    p.method = PValueMethod::Permutation;
    p.reps = permutations;
    p.value = (1.0 + count_ge) / (permutations + 1.0);
    p.mc_stderr = std::sqrt(p.value * (1.0 - p.value) / permutations);
    out.push_back(p);
  }
  return out;
}

std::string EngineConfig::label() const {
  std::string out = pvalue_method_name(method);
  if (method == PValueMethod::AnalyticCorrection) {
    out += std::string("-") + correction_variant_name(variant);
  }
  return out;
}

PValue compute_pvalue(const DistanceMatrix& d, const ScanProfile& profile,
                      const Moments& moments, const StatValue& stat,
                      const EngineConfig& engine, std::uint64_t seed,
                      int threads) {
  const ScanWindow& window = profile.window;
  switch (engine.method) {
    case PValueMethod::Permutation:
      return permutation_pvalue(d, stat.name, window, engine.effective_reps(),
                                seed, threads);
    case PValueMethod::AnalyticCorrection: {
      if (stat.name != StatName::S2Tilde) {
        throw_error(ErrorCode::ConfigError,
                    "the analytic correction applies to S2t only");
      }
      return pvalue_S2_corrected(stat.value, moments, profile.n, window,
                                 engine.variant);
    }
    case PValueMethod::AsymptoticMC: {
      const int reps = engine.effective_reps();
      switch (stat.name) {
        case StatName::S1:
        case StatName::S1Tilde: {
          const EigenSpectrum spectrum = estimate_eigenvalues(d);
          if (spectrum.kept == 0) {
            PValue p;
            p.method = PValueMethod::AsymptoticMC;
            p.reps = 0;
            p.value = 1.0;
            return p;
          }
          const NullModel model = simulate_null_S1(spectrum, profile.n, window,
                                                   reps, seed, stat.name, threads);
          return pvalue_from_null(model, stat.value);
        }
        case StatName::S2:
        case StatName::S2Tilde: {
          const NullModel model =
              simulate_null_S2(profile.n, window, reps, seed, threads);
          return pvalue_from_null(model, stat.value);
        }
        case StatName::S3: {
          const NullModel model =
              simulate_null_S3(profile.n, window, reps, seed, threads);
          return pvalue_from_null(model, stat.value);
        }
      }
      throw_error(ErrorCode::ConfigError, "unknown statistic");
    }
  }
  throw_error(ErrorCode::ConfigError, "unknown p-value engine");
}

}  // namespace wgcpd
