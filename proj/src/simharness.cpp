#include "wgcpd/simharness.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "wgcpd/parallel.hpp"
#include "wgcpd/rng.hpp"
#include "wgcpd/segmentation.hpp"

namespace wgcpd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int phase_of(const std::vector<Index>& change_points, Index i /*0-based*/) {
  int phase = 0;
  for (Index cp : change_points) {
    if (i + 1 > cp) ++phase;
  }
  return phase;
}

const PhaseSpec& phase_params(const ScenarioSpec& spec, Index i) {
  return spec.phases[static_cast<std::size_t>(phase_of(spec.change_points, i))];
}

}  // namespace

Sequence generate(const ScenarioSpec& spec, int rep_index) {
  if (spec.phases.size() != spec.change_points.size() + 1) {
    throw_error(ErrorCode::ConfigError,
                "scenario needs one phase spec per segment");
  }
  RngStream rng = RngStream::derive(
      spec.seed, {rng_tag::kGenerate, static_cast<std::uint64_t>(rep_index)});
  Sequence seq;
  seq.items.reserve(static_cast<std::size_t>(spec.n));
  switch (spec.generator) {
    case GeneratorKind::GaussMeanShift:
    case GeneratorKind::GaussScaleShift:
    case GeneratorKind::GaussBoth: {
      for (Index i = 0; i < spec.n; ++i) {
        const PhaseSpec& phase = phase_params(spec, i);
        Eigen::VectorXd v(spec.dim);
        for (Index j = 0; j < spec.dim; ++j) {
          v(j) = phase.mu + phase.sigma * rng.gaussian();
        }
        seq.items.push_back(Observation::vector(std::move(v)));
      }
      break;
    }
    case GeneratorKind::PoissonShift: {
      for (Index i = 0; i < spec.n; ++i) {
        const PhaseSpec& phase = phase_params(spec, i);
        Eigen::VectorXd v(1);
        v(0) = static_cast<double>(rng.poisson(phase.lambda));
        seq.items.push_back(Observation::vector(std::move(v)));
      }
      break;
    }
    case GeneratorKind::ErdosRenyi: {
      for (Index i = 0; i < spec.n; ++i) {
        const PhaseSpec& phase = phase_params(spec, i);
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(spec.dim, spec.dim);
        for (Index k = 0; k < spec.dim; ++k) {
          for (Index l = k + 1; l < spec.dim; ++l) {
            const bool in_community = phase.p_within >= 0.0 &&
                                      k < spec.community_size &&
                                      l < spec.community_size;
            const double p = in_community ? phase.p_within : spec.p0;
            const double edge = rng.uniform01() <= p ? 1.0 : 0.0;
            a(k, l) = edge;
            a(l, k) = edge;
          }
        }
        seq.items.push_back(Observation::graph(std::move(a)));
      }
      break;
    }
    case GeneratorKind::FunctionalPhase: {
      const double step = (spec.grid_end - spec.grid_start) / spec.dim;
      for (Index i = 0; i < spec.n; ++i) {
        const PhaseSpec& phase = phase_params(spec, i);
        Eigen::VectorXd v(spec.dim);
        for (Index g = 0; g < spec.dim; ++g) {
          const double x = spec.grid_start + g * step;
          v(g) = std::sin(x + phase.shift) + spec.noise_sd * rng.gaussian();
        }
        seq.items.push_back(Observation::function_sample(std::move(v)));
      }
      break;
    }
  }
  return seq;
}

namespace {

struct RepOutcome {
  bool valid = false;
  bool rejected = false;
  double loc_err = kNaN;
  double rand = kNaN;
};

void run_amoc_rep(const ScenarioSpec& spec, int rep,
                  std::vector<std::vector<RepOutcome>>& outcomes) {
  const Sequence seq = generate(spec, rep);
  const DistanceMatrix d = build_distance_matrix(spec.metric, seq);
  const ScanWindow window = ScanWindow::from_fractions(spec.n, spec.rho0, spec.rho1);
  const ScanProfile profile = scan_sums(d, window);
  const Moments moments = compute_moments(d);
  const std::uint64_t rep_seed = mix_seed(
      mix_seed(spec.seed, rng_tag::kPValue), static_cast<std::uint64_t>(rep));

  // permutation arms share one set of permutation scans
  std::vector<std::size_t> perm_arms;
  std::vector<StatName> perm_stats;
  for (std::size_t a = 0; a < spec.arms.size(); ++a) {
    if (spec.arms[a].engine.method == PValueMethod::Permutation) {
      perm_arms.push_back(a);
      perm_stats.push_back(spec.arms[a].stat);
    }
  }
  std::vector<PValue> perm_pvalues;
  if (!perm_arms.empty()) {
    try {
      perm_pvalues = permutation_pvalues(
          d, perm_stats, window, spec.arms[perm_arms.front()].engine.effective_reps(),
          rep_seed, 1);
    } catch (const Error&) {
      perm_pvalues.clear();  // per-arm failure recorded below
    }
  }

  for (std::size_t a = 0; a < spec.arms.size(); ++a) {
    const Arm& arm = spec.arms[a];
    RepOutcome& outcome = outcomes[a][static_cast<std::size_t>(rep)];
    try {
      const StatValue stat = statistic_S(profile, moments, arm.stat);
      PValue p;
      const auto perm_slot =
          std::find(perm_arms.begin(), perm_arms.end(), a) - perm_arms.begin();
      if (arm.engine.method == PValueMethod::Permutation &&
          static_cast<std::size_t>(perm_slot) < perm_pvalues.size()) {
        p = perm_pvalues[static_cast<std::size_t>(perm_slot)];
      } else {
        p = compute_pvalue(d, profile, moments, stat, arm.engine, rep_seed, 1);
      }
      outcome.valid = true;
      outcome.rejected = p.value <= spec.alpha;
      if (!spec.change_points.empty()) {
        outcome.loc_err = std::abs(static_cast<double>(stat.argmax_t) -
                                   static_cast<double>(spec.change_points.front()));
      }
    } catch (const Error&) {
      outcome.valid = false;
    }
  }
}

void run_segmentation_rep(const ScenarioSpec& spec, int rep,
                          std::vector<std::vector<RepOutcome>>& outcomes) {
  const Sequence seq = generate(spec, rep);
  const DistanceMatrix d = build_distance_matrix(spec.metric, seq);
  const Partition truth = changepoints_to_partition(spec.change_points, spec.n);
  for (std::size_t a = 0; a < spec.arms.size(); ++a) {
    const Arm& arm = spec.arms[a];
    RepOutcome& outcome = outcomes[a][static_cast<std::size_t>(rep)];
    try {
      SegmentationConfig cfg;
      cfg.alpha = spec.alpha;
      cfg.n_min = spec.n_min;
      cfg.statistic = arm.stat;
      cfg.engine = arm.engine;
      cfg.rho0 = spec.rho0;
      cfg.rho1 = spec.rho1;
      cfg.seed = mix_seed(mix_seed(spec.seed, rng_tag::kSegment),
                          static_cast<std::uint64_t>(rep) * 1315423911ULL +
                              static_cast<std::uint64_t>(a));
      cfg.threads = 1;
      const SegmentationTree tree = binary_segment(d, cfg);
      outcome.valid = true;
      outcome.rejected = !tree.change_points.empty();
      outcome.rand =
          rand_index(truth, changepoints_to_partition(tree.change_points, spec.n));
    } catch (const Error&) {
      outcome.valid = false;
    }
  }
}

ArmResult summarize(const ScenarioSpec& spec, const Arm& arm,
                    const std::vector<RepOutcome>& outcomes, double seconds) {
  ArmResult row;
  row.scenario = spec.name;
  row.statistic = stat_name(arm.stat);
  row.engine = arm.engine.label();
  row.seconds = seconds;
  int valid = 0;
  int rejected = 0;
  double loc_sum = 0.0, loc_sq = 0.0;
  int loc_count = 0;
  double rand_sum = 0.0, rand_sq = 0.0;
  int rand_count = 0;
  for (const RepOutcome& outcome : outcomes) {
    if (!outcome.valid) {
      ++row.failures;
      continue;
    }
    ++valid;
    if (outcome.rejected) ++rejected;
    if (!std::isnan(outcome.loc_err)) {
      loc_sum += outcome.loc_err;
      loc_sq += outcome.loc_err * outcome.loc_err;
      ++loc_count;
    }
    if (!std::isnan(outcome.rand)) {
      rand_sum += outcome.rand;
      rand_sq += outcome.rand * outcome.rand;
      ++rand_count;
    }
  }
  row.reps = valid;
  if (valid > 0) {
    row.power = static_cast<double>(rejected) / valid;
    row.power_se = std::sqrt(row.power * (1.0 - row.power) / valid);
  } else {
    row.power = kNaN;
    row.power_se = kNaN;
  }
  auto mean_se = [](double sum, double sq, int count, double& mean, double& se) {
    if (count == 0) {
      mean = kNaN;
      se = kNaN;
      return;
    }
    mean = sum / count;
    const double var =
        count > 1 ? std::max(0.0, (sq - count * mean * mean) / (count - 1)) : 0.0;
    se = std::sqrt(var / count);
  };
  mean_se(loc_sum, loc_sq, loc_count, row.loc_err, row.loc_err_se);
  mean_se(rand_sum, rand_sq, rand_count, row.rand, row.rand_se);
  return row;
}

}  // namespace

std::vector<ArmResult> run_scenario(const ScenarioSpec& spec, int threads) {
  if (spec.reps < 1) {
    throw_error(ErrorCode::ConfigError, "scenario needs at least one replicate");
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::vector<RepOutcome>> outcomes(
      spec.arms.size(),
      std::vector<RepOutcome>(static_cast<std::size_t>(spec.reps)));
  parallel_for(spec.reps, threads, [&](int rep) {
    if (spec.segmentation) {
      run_segmentation_rep(spec, rep, outcomes);
    } else {
      run_amoc_rep(spec, rep, outcomes);
    }
  });
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::vector<ArmResult> rows;
  rows.reserve(spec.arms.size());
  for (std::size_t a = 0; a < spec.arms.size(); ++a) {
    rows.push_back(summarize(spec, spec.arms[a], outcomes[a], seconds));
  }
  return rows;
}

ExperimentReport run_experiment(const std::vector<ScenarioSpec>& scenarios,
                                int threads) {
  ExperimentReport report;
  if (!scenarios.empty()) report.seed = scenarios.front().seed;
  for (const ScenarioSpec& spec : scenarios) {
    const auto rows = run_scenario(spec, threads);
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

namespace {

std::string csv_number(double x, const char* fmt) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), fmt, x);
  return buf;
}

}  // namespace

void report_to_csv(const ExperimentReport& report, std::ostream& out,
                   bool include_timing) {
  out << "scenario,statistic,engine,reps,power,power_se,loc_err,loc_err_se,"
         "rand,rand_se,seconds\n";
  for (const ArmResult& row : report.rows) {
    out << row.scenario << ',' << row.statistic << ',' << row.engine << ','
        << row.reps << ',' << csv_number(row.power, "%.6f") << ','
        << csv_number(row.power_se, "%.6f") << ','
        << csv_number(row.loc_err, "%.6f") << ','
        << csv_number(row.loc_err_se, "%.6f") << ','
        << csv_number(row.rand, "%.6f") << ','
        << csv_number(row.rand_se, "%.6f") << ','
        << csv_number(include_timing ? row.seconds : 0.0, "%.3f") << "\n";
  }
}

void report_to_csv(const ExperimentReport& report, const std::string& path,
                   bool include_timing) {
  std::ofstream out(path);
  if (!out) throw_error(ErrorCode::IoError, "cannot write " + path);
  report_to_csv(report, out, include_timing);
}

namespace {

nlohmann::json number_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

double number_from(const nlohmann::json& j) {
  if (j.is_null()) return kNaN;
  return j.get<double>();
}

}  // namespace

void report_to_json(const ExperimentReport& report, std::ostream& out,
                    bool include_timing) {
  nlohmann::json doc;
  doc["seed"] = report.seed;
  doc["rows"] = nlohmann::json::array();
  for (const ArmResult& row : report.rows) {
    nlohmann::json entry;
    entry["scenario"] = row.scenario;
    entry["statistic"] = row.statistic;
    entry["engine"] = row.engine;
    entry["reps"] = row.reps;
    entry["failures"] = row.failures;
    entry["power"] = number_or_null(row.power);
    entry["power_se"] = number_or_null(row.power_se);
    entry["loc_err"] = number_or_null(row.loc_err);
    entry["loc_err_se"] = number_or_null(row.loc_err_se);
    entry["rand"] = number_or_null(row.rand);
    entry["rand_se"] = number_or_null(row.rand_se);
    entry["seconds"] = include_timing ? row.seconds : 0.0;
    doc["rows"].push_back(std::move(entry));
  }
  out << doc.dump(2) << "\n";
}

void report_to_json(const ExperimentReport& report, const std::string& path,
                    bool include_timing) {
  std::ofstream out(path);
  if (!out) throw_error(ErrorCode::IoError, "cannot write " + path);
  report_to_json(report, out, include_timing);
}

ExperimentReport report_from_json(std::istream& in) {
  nlohmann::json doc;
  in >> doc;
  ExperimentReport report;
  report.seed = doc.at("seed").get<std::uint64_t>();
  for (const auto& entry : doc.at("rows")) {
    ArmResult row;
    row.scenario = entry.at("scenario").get<std::string>();
    row.statistic = entry.at("statistic").get<std::string>();
    row.engine = entry.at("engine").get<std::string>();
    row.reps = entry.at("reps").get<int>();
    row.failures = entry.at("failures").get<int>();
    row.power = number_from(entry.at("power"));
    row.power_se = number_from(entry.at("power_se"));
    row.loc_err = number_from(entry.at("loc_err"));
    row.loc_err_se = number_from(entry.at("loc_err_se"));
    row.rand = number_from(entry.at("rand"));
    row.rand_se = number_from(entry.at("rand_se"));
    row.seconds = entry.at("seconds").get<double>();
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace wgcpd
