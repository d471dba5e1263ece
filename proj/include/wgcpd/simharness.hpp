#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wgcpd/distances.hpp"
#include "wgcpd/nullmodel.hpp"
#include "wgcpd/scan.hpp"
#include "wgcpd/types.hpp"

namespace wgcpd {

enum class GeneratorKind {
  GaussMeanShift,
  GaussScaleShift,
  GaussBoth,
  PoissonShift,
  ErdosRenyi,
  FunctionalPhase,
};

// Per-phase distribution parameters; which fields matter depends on the
// generator.  p_within < 0 means no community (background edge probability
// everywhere).
struct PhaseSpec {
  double mu = 0.0;
  double sigma = 1.0;
  double lambda = 2.0;
  double p_within = -1.0;
  double shift = 0.0;
};

// One (statistic, p-value engine) column of a results table.
struct Arm {
  StatName stat = StatName::S1;
  EngineConfig engine;
};

struct ScenarioSpec {
  std::string name;
  GeneratorKind generator = GeneratorKind::GaussMeanShift;
  Index dim = 1;  // vector dimension, node count, or grid length
  double p0 = 0.1;
  Index community_size = 3;
  double noise_sd = 0.5;
  double grid_start = 0.0;
  double grid_end = 6.283185307179586;
  Index n = 100;
  std::vector<Index> change_points;  // 1-based counts; empty = null scenario
  std::vector<PhaseSpec> phases;     // one per segment
  Metric metric = Metric::sq_euclidean();
  double rho0 = 0.1;
  double rho1 = 0.9;
  double alpha = 0.05;
  bool segmentation = false;
  Index n_min = 20;
  std::vector<Arm> arms;
  int reps = 100;
  std::uint64_t seed = 20260810ULL;
};

Sequence generate(const ScenarioSpec& spec, int rep_index);

struct ArmResult {
  std::string scenario;
  std::string statistic;
  std::string engine;
  int reps = 0;
  int failures = 0;
  double power = 0.0;
  double power_se = 0.0;
  double loc_err = 0.0;    // NaN when not applicable
  double loc_err_se = 0.0;
  double rand = 0.0;       // NaN when not applicable
  double rand_se = 0.0;
  double seconds = 0.0;
};

struct ExperimentReport {
  std::vector<ArmResult> rows;
  std::uint64_t seed = 0;
};

// Runs every replicate of one scenario; the distance matrix is built once
// per replicate and shared across arms.  Per-replicate seeds derive from
// (spec.seed, purpose tag, replicate index), so results do not depend on
// the thread count.
std::vector<ArmResult> run_scenario(const ScenarioSpec& spec, int threads = 1);

ExperimentReport run_experiment(const std::vector<ScenarioSpec>& scenarios,
                                int threads = 1);

// CSV columns: scenario,statistic,engine,reps,power,power_se,loc_err,
// loc_err_se,rand,rand_se,seconds.  include_timing=false writes 0.000
// seconds so reruns are byte-identical.
void report_to_csv(const ExperimentReport& report, std::ostream& out,
                   bool include_timing = true);
void report_to_csv(const ExperimentReport& report, const std::string& path,
                   bool include_timing = true);
void report_to_json(const ExperimentReport& report, std::ostream& out,
                    bool include_timing = true);
void report_to_json(const ExperimentReport& report, const std::string& path,
                    bool include_timing = true);
ExperimentReport report_from_json(std::istream& in);

// Scenario presets mirroring the synthetic study designs; reps/seed
// overridable by the caller.
std::vector<std::string> preset_names();
std::vector<ScenarioSpec> preset_scenarios(const std::string& name);

}  // namespace wgcpd
