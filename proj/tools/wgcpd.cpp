// Command-line surface: detect / segment / pvalue / simulate / distances.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "wgcpd/distances.hpp"
#include "wgcpd/io.hpp"
#include "wgcpd/kernel.hpp"
#include "wgcpd/nullmodel.hpp"
#include "wgcpd/scan.hpp"
#include "wgcpd/segmentation.hpp"
#include "wgcpd/simharness.hpp"

namespace {

using nlohmann::json;
using namespace wgcpd;

int exit_code_for(const Error& err) {
  switch (err.code()) {
    case ErrorCode::DegenerateDispersion:
      return 2;
    case ErrorCode::SingularSystem:
    case ErrorCode::EigenFailure:
      return 3;
    default:
      return 1;
  }
}

struct InputOptions {
  std::string input_path;
  std::string distance_path;
  std::string format = "csv";
  std::string metric = "sqeuclidean";
  double grid_start = 0.0;
  double grid_end = 0.0;
  bool grid_given = false;
};

void add_input_options(CLI::App* cmd, InputOptions& opts, bool allow_matrix) {
  auto* input = cmd->add_option("--input", opts.input_path,
                                "observation sequence file");
  auto* fmt = cmd->add_option("--input-format", opts.format,
                              "sequence layout: csv or graphstack")
                  ->check(CLI::IsMember({"csv", "graphstack"}));
  auto* metric =
      cmd->add_option("--metric", opts.metric,
                      "distance: sqeuclidean, frobenius, l2fun, deltacon")
          ->check(CLI::IsMember({"sqeuclidean", "frobenius", "l2fun", "deltacon"}));
  auto* gs = cmd->add_option("--grid-start", opts.grid_start,
                             "functional grid start (switches ingestion to functional)");
  auto* ge = cmd->add_option("--grid-end", opts.grid_end, "functional grid end");
  gs->needs(ge);
  ge->needs(gs);
  if (allow_matrix) {
    auto* dm = cmd->add_option("--distance-matrix", opts.distance_path,
                               "precomputed distance matrix CSV");
    dm->excludes(input);
    dm->excludes(metric);
    dm->excludes(fmt);
    input->excludes(dm);
  } else {
    input->required();
  }
  cmd->callback([&opts, gs]() { opts.grid_given = gs->count() > 0; });
}

Metric resolve_metric(const InputOptions& opts) {
  const double interval =
      opts.grid_given ? opts.grid_end - opts.grid_start : 0.0;
  if (opts.metric == "l2fun" && !opts.grid_given) {
    throw_error(ErrorCode::ConfigError,
                "l2fun needs --grid-start/--grid-end for the interval");
  }
  return metric_from_name(opts.metric, interval);
}

Sequence load_sequence(const InputOptions& opts) {
  SequenceFormat format = SequenceFormat::VectorCsv;
  if (opts.format == "graphstack") {
    format = SequenceFormat::GraphStack;
  } else if (opts.grid_given || opts.metric == "l2fun") {
    format = SequenceFormat::FunctionCsv;
  }
  return read_sequence(opts.input_path, format);
}

DistanceMatrix load_distances(const InputOptions& opts) {
  if (!opts.distance_path.empty()) return read_distance_matrix(opts.distance_path);
  return build_distance_matrix(resolve_metric(opts), load_sequence(opts));
}

struct EngineOptions {
  std::string method = "permutation";
  std::string variant = "appendix";
  int reps = 0;
  std::uint64_t seed = 20260810ULL;
  int threads = 1;
};

void add_engine_options(CLI::App* cmd, EngineOptions& opts) {
  cmd->add_option("--pvalue", opts.method,
                  "p-value engine: asymptotic, corrected, permutation")
      ->check(CLI::IsMember({"asymptotic", "corrected", "permutation"}));
  cmd->add_option("--correction-variant", opts.variant,
                  "analytic tail variant: main or appendix")
      ->check(CLI::IsMember({"main", "appendix"}));
  cmd->add_option("--reps", opts.reps,
                  "engine replicates (0 = defaults: 2000 MC / 1000 permutations)");
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_option("--threads", opts.threads, "worker cap for MC loops")
      ->check(CLI::PositiveNumber);
}

EngineConfig resolve_engine(const EngineOptions& opts) {
  EngineConfig engine;
  if (opts.method == "asymptotic") {
    engine.method = PValueMethod::AsymptoticMC;
  } else if (opts.method == "corrected") {
    engine.method = PValueMethod::AnalyticCorrection;
  } else {
    engine.method = PValueMethod::Permutation;
  }
  engine.variant = opts.variant == "main" ? CorrectionVariant::MainText
                                          : CorrectionVariant::AppendixDerived;
  engine.reps = opts.reps;
  return engine;
}

void warn_deltacon_asymptotics(const InputOptions& input,
                               const EngineConfig& engine) {
  static bool warned = false;
  if (warned) return;
  if (input.metric == "deltacon" && input.distance_path.empty() &&
      engine.method != PValueMethod::Permutation) {
    std::fprintf(stderr,
                 "warning: deltacon is not verified to be of negative type; "
                 "asymptotic and corrected p-values assume it. Permutation "
                 "p-values are recommended for this metric.\n");
    warned = true;
  }
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw_error(ErrorCode::IoError, "cannot write " + out_path);
  out << doc.dump(2) << "\n";
}

json window_json(const ScanWindow& window) {
  return json{{"rho0", window.rho0},
              {"rho1", window.rho1},
              {"n0", window.n0},
              {"n1", window.n1}};
}

// ---------------------------------------------------------------- detect --
struct DetectArgs {
  InputOptions input;
  EngineOptions engine;
  std::string statistic = "S1";
  double rho0 = 0.1, rho1 = 0.9;
  std::string out_path;
};

int run_detect(const DetectArgs& args) {
  const DistanceMatrix d = load_distances(args.input);
  const EngineConfig engine = resolve_engine(args.engine);
  warn_deltacon_asymptotics(args.input, engine);
  const StatName which = stat_from_name(args.statistic);
  const ScanWindow window = ScanWindow::from_fractions(d.n(), args.rho0, args.rho1);
  const ScanProfile profile = scan_sums(d, window);
  const Moments moments = compute_moments(d);
  const StatValue stat = statistic_S(profile, moments, which);
  const PValue p = compute_pvalue(d, profile, moments, stat, engine,
                                  args.engine.seed, args.engine.threads);
  const EigenSpectrum spectrum = estimate_eigenvalues(d);

  json doc;
  doc["statistic"] = stat_name(which);
  doc["value"] = stat.value;
  doc["tau_hat"] = stat.argmax_t;
  doc["p_value"] = p.value;
  doc["method"] = engine.label();
  doc["n"] = d.n();
  doc["window"] = window_json(window);
  doc["seed"] = args.engine.seed;
  doc["diagnostics"] = {{"s_hat", moments.s_hat},
                        {"m2", moments.m2},
                        {"kept_eigenvalues", spectrum.kept}};
  if (p.reps > 0) {
    doc["reps"] = p.reps;
    doc["mc_stderr"] = p.mc_stderr;
  }
  emit(doc, args.out_path);
  return 0;
}

// --------------------------------------------------------------- segment --
struct SegmentArgs {
  InputOptions input;
  EngineOptions engine;
  std::string statistic = "S1";
  double rho0 = 0.1, rho1 = 0.9;
  double alpha = 0.05;
  Index n_min = 20;
  std::string out_path;
};

json node_json(const SegmentationTree& tree, int index) {
  const SegNode& node = tree.nodes[static_cast<std::size_t>(index)];
  json out{{"l", node.l},       {"r", node.r},
           {"stat", node.stat}, {"p", node.pvalue},
           {"k", node.k},       {"accepted", node.accepted}};
  if (node.degenerate) out["degenerate"] = true;
  out["children"] = json::array();
  for (int child : node.children) out["children"].push_back(node_json(tree, child));
  return out;
}

int run_segment(const SegmentArgs& args) {
  const DistanceMatrix d = load_distances(args.input);
  const EngineConfig engine = resolve_engine(args.engine);
  warn_deltacon_asymptotics(args.input, engine);
  SegmentationConfig cfg;
  cfg.alpha = args.alpha;
  cfg.n_min = args.n_min;
  cfg.statistic = stat_from_name(args.statistic);
  cfg.engine = engine;
  cfg.rho0 = args.rho0;
  cfg.rho1 = args.rho1;
  cfg.seed = args.engine.seed;
  cfg.threads = args.engine.threads;
  const SegmentationTree tree = binary_segment(d, cfg);

  json doc;
  doc["statistic"] = stat_name(cfg.statistic);
  doc["method"] = engine.label();
  doc["n"] = d.n();
  doc["alpha"] = cfg.alpha;
  doc["n_min"] = cfg.n_min;
  doc["seed"] = cfg.seed;
  doc["change_points"] = tree.change_points;
  doc["tree"] = tree.nodes.empty() ? json(nullptr) : node_json(tree, 0);
  emit(doc, args.out_path);
  return 0;
}

// ---------------------------------------------------------------- pvalue --
struct PvalueArgs {
  InputOptions input;
  EngineOptions engine;
  std::string statistic = "S2";
  double observed = 0.0;
  Index n = 0;
  double rho0 = 0.1, rho1 = 0.9;
  std::string out_path;
};

int run_pvalue(const PvalueArgs& args) {
  const EngineConfig engine = resolve_engine(args.engine);
  warn_deltacon_asymptotics(args.input, engine);
  const StatName which = stat_from_name(args.statistic);
  const bool have_data =
      !args.input.input_path.empty() || !args.input.distance_path.empty();

  std::optional<DistanceMatrix> d;
  if (have_data) d = load_distances(args.input);
  const Index n = have_data ? d->n() : args.n;
  if (n < 4) {
    throw_error(ErrorCode::ConfigError,
                "pvalue needs --n (or an input file) with n >= 4");
  }
  const ScanWindow window = ScanWindow::from_fractions(n, args.rho0, args.rho1);

  PValue p;
  switch (engine.method) {
    case PValueMethod::Permutation: {
      if (!have_data) {
        throw_error(ErrorCode::ConfigError,
                    "permutation p-values need input data");
      }
      p = permutation_pvalue(*d, which, window, engine.effective_reps(),
                             args.engine.seed, args.engine.threads);
      break;
    }
    case PValueMethod::AnalyticCorrection: {
      if (which != StatName::S2Tilde) {
        throw_error(ErrorCode::ConfigError,
                    "the analytic correction applies to S2t only");
      }
      if (!have_data) {
        throw_error(ErrorCode::ConfigError,
                    "corrected p-values need input data for the moments");
      }
      p = pvalue_S2_corrected(args.observed, compute_moments(*d), n, window,
                              engine.variant);
      break;
    }
    case PValueMethod::AsymptoticMC: {
      NullModel model;
      if (which == StatName::S1 || which == StatName::S1Tilde) {
        if (!have_data) {
          throw_error(ErrorCode::ConfigError,
                      "the S1 null needs input data for the eigenvalues");
        }
        model = simulate_null_S1(estimate_eigenvalues(*d), n, window,
                                 engine.effective_reps(), args.engine.seed,
                                 which, args.engine.threads);
      } else if (which == StatName::S3) {
        model = simulate_null_S3(n, window, engine.effective_reps(),
                                 args.engine.seed, args.engine.threads);
      } else {
        model = simulate_null_S2(n, window, engine.effective_reps(),
                                 args.engine.seed, args.engine.threads);
      }
      p = pvalue_from_null(model, args.observed);
      break;
    }
  }

  json doc;
  doc["statistic"] = stat_name(which);
  doc["observed"] = args.observed;
  doc["p_value"] = p.value;
  doc["method"] = engine.label();
  doc["n"] = n;
  doc["window"] = window_json(window);
  doc["seed"] = args.engine.seed;
  if (p.reps > 0) {
    doc["reps"] = p.reps;
    doc["mc_stderr"] = p.mc_stderr;
  }
  emit(doc, args.out_path);
  return 0;
}

// -------------------------------------------------------------- simulate --
struct SimulateArgs {
  std::string scenario;
  int reps = 0;
  std::uint64_t seed = 20260810ULL;
  int threads = 1;
  std::string out_path;
  std::string format = "csv";
  bool reproducible = false;
};

int run_simulate(const SimulateArgs& args) {
  std::vector<ScenarioSpec> scenarios = preset_scenarios(args.scenario);
  for (ScenarioSpec& spec : scenarios) {
    if (args.reps > 0) spec.reps = args.reps;
    spec.seed = args.seed;
  }
  const ExperimentReport report = run_experiment(scenarios, args.threads);
  const bool timing = !args.reproducible;
  if (args.out_path.empty()) {
    if (args.format == "json") {
      report_to_json(report, std::cout, timing);
    } else {
      report_to_csv(report, std::cout, timing);
    }
  } else if (args.format == "json") {
    report_to_json(report, args.out_path, timing);
  } else {
    report_to_csv(report, args.out_path, timing);
  }
  return 0;
}

// ------------------------------------------------------------- distances --
struct DistancesArgs {
  InputOptions input;
  std::string out_path;
};

int run_distances(const DistancesArgs& args) {
  const DistanceMatrix d =
      build_distance_matrix(resolve_metric(args.input), load_sequence(args.input));
  if (args.out_path.empty()) {
    write_distance_matrix(d, std::cout);
  } else {
    write_distance_matrix(d, args.out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance-based change point detection: scan statistics, "
               "p-value engines, binary segmentation, simulation harness"};
  app.require_subcommand(1);

  DetectArgs detect_args;
  auto* detect = app.add_subcommand("detect",
                                    "test for a single change point and locate it");
  add_input_options(detect, detect_args.input, true);
  add_engine_options(detect, detect_args.engine);
  detect->add_option("--statistic", detect_args.statistic,
                     "S1, S1t, S2, S2t or S3")
      ->check(CLI::IsMember({"S1", "S1t", "S2", "S2t", "S3"}));
  detect->add_option("--rho0", detect_args.rho0, "lower scan fraction");
  detect->add_option("--rho1", detect_args.rho1, "upper scan fraction");
  detect->add_option("--out", detect_args.out_path, "output JSON path (default stdout)");

  SegmentArgs segment_args;
  auto* segment = app.add_subcommand("segment",
                                     "recursive detection of multiple change points");
  add_input_options(segment, segment_args.input, true);
  add_engine_options(segment, segment_args.engine);
  segment->add_option("--statistic", segment_args.statistic, "S1, S1t, S2, S2t or S3")
      ->check(CLI::IsMember({"S1", "S1t", "S2", "S2t", "S3"}));
  segment->add_option("--rho0", segment_args.rho0, "lower scan fraction");
  segment->add_option("--rho1", segment_args.rho1, "upper scan fraction");
  segment->add_option("--alpha", segment_args.alpha, "significance level");
  segment->add_option("--nmin", segment_args.n_min, "minimum segment length");
  segment->add_option("--out", segment_args.out_path, "output JSON path");

  PvalueArgs pvalue_args;
  auto* pvalue = app.add_subcommand("pvalue",
                                    "p-value for an observed statistic value");
  add_input_options(pvalue, pvalue_args.input, true);
  add_engine_options(pvalue, pvalue_args.engine);
  pvalue->add_option("--statistic", pvalue_args.statistic, "S1, S1t, S2, S2t or S3")
      ->check(CLI::IsMember({"S1", "S1t", "S2", "S2t", "S3"}));
  pvalue->add_option("--observed", pvalue_args.observed, "observed statistic value")
      ->required();
  pvalue->add_option("--n", pvalue_args.n, "sequence length when no input file is given");
  pvalue->add_option("--rho0", pvalue_args.rho0, "lower scan fraction");
  pvalue->add_option("--rho1", pvalue_args.rho1, "upper scan fraction");
  pvalue->add_option("--out", pvalue_args.out_path, "output JSON path");

  SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand("simulate",
                                      "run a synthetic experiment preset");
  simulate->add_option("--scenario", simulate_args.scenario,
                       "preset name (table1, table2a-mean, ..., table3-null)")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  simulate->add_option("--reps", simulate_args.reps,
                       "override replicate count (0 keeps preset defaults)");
  simulate->add_option("--seed", simulate_args.seed, "master seed");
  simulate->add_option("--threads", simulate_args.threads,
                       "parallel replicates")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--out", simulate_args.out_path, "output path (default stdout)");
  simulate->add_option("--format", simulate_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_flag("--reproducible", simulate_args.reproducible,
                     "zero the wall-time column so reruns are byte-identical");

  DistancesArgs distances_args;
  auto* distances = app.add_subcommand("distances",
                                       "compute and write the pairwise distance matrix");
  add_input_options(distances, distances_args.input, false);
  distances->add_option("--out", distances_args.out_path,
                        "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (detect->parsed()) return run_detect(detect_args);
    if (segment->parsed()) return run_segment(segment_args);
    if (pvalue->parsed()) return run_pvalue(pvalue_args);
    if (simulate->parsed()) return run_simulate(simulate_args);
    if (distances->parsed()) return run_distances(distances_args);
  } catch (const Error& err) {
    std::fprintf(stderr, "error (%s): %s\n", error_code_name(err.code()),
                 err.what());
    return exit_code_for(err);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "internal error: %s\n", err.what());
    return 3;
  }
  return 0;
}
