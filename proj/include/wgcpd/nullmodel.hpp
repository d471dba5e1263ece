#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wgcpd/kernel.hpp"
#include "wgcpd/scan.hpp"
#include "wgcpd/types.hpp"

namespace wgcpd {

enum class PValueMethod { AsymptoticMC, AnalyticCorrection, Permutation };
enum class CorrectionVariant { MainText, AppendixDerived };

const char* pvalue_method_name(PValueMethod method);
const char* correction_variant_name(CorrectionVariant variant);

// Monte-Carlo sample of the asymptotic null maximum, evaluated on the same
// integer grid t in [n0, n1] as the scan itself.  Samples are sorted.
struct NullModel {
  PValueMethod method = PValueMethod::AsymptoticMC;
  StatName stat = StatName::S1;
  std::vector<double> samples;
  int reps = 0;
  std::uint64_t seed = 0;
  Index n = 0;
  ScanWindow window;
};

struct PValue {
  double value = 1.0;
  PValueMethod method = PValueMethod::AsymptoticMC;
  int reps = 0;
  double mc_stderr = 0.0;
};

// Weighted sum of squared Brownian bridges for S1 (shifted by the kept
// trace) or S1-tilde (unshifted).  Each replicate builds its bridges as
// W(rho) - rho W(1) from cumulative iid N(0, 1/n) increments on the full
// n-point grid and records the maximum over the window.
NullModel simulate_null_S1(const EigenSpectrum& spectrum, Index n,
                           const ScanWindow& window, int reps,
                           std::uint64_t seed, StatName which = StatName::S1,
                           int threads = 1);

// max |W0(rho)| / sqrt(rho(1-rho)) for S2/S2-tilde.
NullModel simulate_null_S2(Index n, const ScanWindow& window, int reps,
                           std::uint64_t seed, int threads = 1);

// The S3 null is the square of the S2 null.
NullModel simulate_null_S3(Index n, const ScanWindow& window, int reps,
                           std::uint64_t seed, int threads = 1);

// Add-one empirical tail probability against a simulated null.
PValue pvalue_from_null(const NullModel& model, double observed);

// Analytic skewness-corrected tail for the S2-tilde maximum.  Both printed
// forms of the boundary-crossing approximation are available; they differ in
// the overshoot argument and a two-sidedness factor of 2.
PValue pvalue_S2_corrected(double observed, const Moments& moments, Index n,
                           const ScanWindow& window,
                           CorrectionVariant variant = CorrectionVariant::AppendixDerived);

// Seeded permutation test; the statistic is recomputed on the reindexed
// distance matrix, never on recomputed distances.
PValue permutation_pvalue(const DistanceMatrix& d, StatName which,
                          const ScanWindow& window, int permutations,
                          std::uint64_t seed, int threads = 1);

// Shared-permutation variant: one scan per permutation, one p-value per
// requested statistic.
std::vector<PValue> permutation_pvalues(const DistanceMatrix& d,
                                        const std::vector<StatName>& which,
                                        const ScanWindow& window,
                                        int permutations, std::uint64_t seed,
                                        int threads = 1);

// Overshoot correction factor nu(z) from boundary-crossing approximations.
double nu_function(double z);

// One bundle of p-value settings, shared by the CLI, the segmentation
// recursion and the simulation harness.  reps = 0 selects the defaults
// (2000 Monte-Carlo draws, 1000 permutations).
struct EngineConfig {
  PValueMethod method = PValueMethod::Permutation;
  CorrectionVariant variant = CorrectionVariant::AppendixDerived;
  int reps = 0;

  int effective_reps() const {
    if (reps > 0) return reps;
    return method == PValueMethod::Permutation ? 1000 : 2000;
  }
  std::string label() const;
};

// Dispatches to the matching engine for an already-scanned statistic.
// Constant data under S1/S1t (empty spectrum) yields p = 1.
PValue compute_pvalue(const DistanceMatrix& d, const ScanProfile& profile,
                      const Moments& moments, const StatValue& stat,
                      const EngineConfig& engine, std::uint64_t seed,
                      int threads = 1);

}  // namespace wgcpd
