#include <cmath>

#include "wgcpd/simharness.hpp"

namespace wgcpd {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Arm arm(StatName stat, PValueMethod method,
        CorrectionVariant variant = CorrectionVariant::AppendixDerived) {
  Arm a;
  a.stat = stat;
  a.engine.method = method;
  a.engine.variant = variant;
  return a;
}

ScenarioSpec base_amoc(const std::string& name) {
  ScenarioSpec spec;
  spec.name = name;
  spec.n = 100;
  spec.change_points = {33};
  spec.reps = 100;
  return spec;
}

ScenarioSpec gauss_amoc(const std::string& name, Index dim, double mu1,
                        double sigma1) {
  ScenarioSpec spec = base_amoc(name);
  spec.generator = sigma1 == 1.0 ? GeneratorKind::GaussMeanShift
                   : mu1 == 0.0  ? GeneratorKind::GaussScaleShift
                                 : GeneratorKind::GaussBoth;
  spec.dim = dim;
  spec.phases = {PhaseSpec{}, PhaseSpec{.mu = mu1, .sigma = sigma1}};
  return spec;
}

ScenarioSpec base_multi(const std::string& name) {
  ScenarioSpec spec;
  spec.name = name;
  spec.n = 150;
  spec.change_points = {40, 100};
  spec.segmentation = true;
  spec.n_min = 20;
  spec.reps = 100;
  return spec;
}

std::vector<ScenarioSpec> table1() {
  std::vector<ScenarioSpec> rows;
  const std::vector<Arm> arms = {
      arm(StatName::S1, PValueMethod::AsymptoticMC),
      arm(StatName::S2Tilde, PValueMethod::AnalyticCorrection,
          CorrectionVariant::AppendixDerived),
      arm(StatName::S2Tilde, PValueMethod::AnalyticCorrection,
          CorrectionVariant::MainText),
      arm(StatName::S2, PValueMethod::AsymptoticMC),
  };
  const std::vector<std::pair<std::string, Index>> gauss_rows = {
      {"null-normal-d1", 1}, {"null-normal-d10", 10}, {"null-normal-d100", 100}};
  for (const auto& [name, dim] : gauss_rows) {
    ScenarioSpec spec;
    spec.name = name;
    spec.generator = GeneratorKind::GaussMeanShift;
    spec.dim = dim;
    spec.n = 200;
    spec.phases = {PhaseSpec{}};
    spec.arms = arms;
    spec.reps = 200;
    rows.push_back(std::move(spec));
  }
  ScenarioSpec pois;
  pois.name = "null-poisson-2";
  pois.generator = GeneratorKind::PoissonShift;
  pois.dim = 1;
  pois.n = 200;
  pois.phases = {PhaseSpec{.lambda = 2.0}};
  pois.arms = arms;
  pois.reps = 200;
  rows.push_back(std::move(pois));
  return rows;
}

std::vector<ScenarioSpec> table2a_mean() {
  const std::vector<std::pair<Index, double>> rows = {
      {1, 0.8}, {10, 0.3}, {50, 0.2}, {100, 0.2}, {500, 0.1}};
  std::vector<ScenarioSpec> out;
  for (const auto& [dim, mu] : rows) {
    ScenarioSpec spec = gauss_amoc(
        "mean-d" + std::to_string(dim) + "-mu" + std::to_string(mu).substr(0, 4),
        dim, mu, 1.0);
    spec.arms = {arm(StatName::S1, PValueMethod::Permutation),
                 arm(StatName::S2Tilde, PValueMethod::AnalyticCorrection)};
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<ScenarioSpec> table2a_scale() {
  const std::vector<std::pair<Index, double>> rows = {
      {1, 2.0}, {10, 1.2}, {50, 1.06}, {100, 1.05}, {500, 1.03}};
  std::vector<ScenarioSpec> out;
  for (const auto& [dim, sigma] : rows) {
    ScenarioSpec spec = gauss_amoc("scale-d" + std::to_string(dim), dim, 0.0, sigma);
    spec.arms = {arm(StatName::S2Tilde, PValueMethod::AnalyticCorrection),
                 arm(StatName::S2Tilde, PValueMethod::Permutation),
                 arm(StatName::S1, PValueMethod::Permutation),
                 arm(StatName::S3, PValueMethod::Permutation)};
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<ScenarioSpec> table2a_both() {
  const std::vector<std::tuple<Index, double, double>> rows = {
      {1, 2.0, 2.0}, {10, 0.6, 1.2}, {50, 0.4, 1.06}, {100, 0.4, 1.05},
      {500, 0.2, 1.03}};
  std::vector<ScenarioSpec> out;
  for (const auto& [dim, mu, sigma] : rows) {
    ScenarioSpec spec = gauss_amoc("both-d" + std::to_string(dim), dim, mu, sigma);
    spec.arms = {arm(StatName::S1, PValueMethod::Permutation),
                 arm(StatName::S2Tilde, PValueMethod::AnalyticCorrection),
                 arm(StatName::S3, PValueMethod::Permutation)};
    out.push_back(std::move(spec));
  }
  ScenarioSpec pois = base_amoc("both-poisson-2-4");
  pois.generator = GeneratorKind::PoissonShift;
  pois.phases = {PhaseSpec{.lambda = 2.0}, PhaseSpec{.lambda = 4.0}};
  pois.arms = {arm(StatName::S1, PValueMethod::Permutation),
               arm(StatName::S2Tilde, PValueMethod::AnalyticCorrection),
               arm(StatName::S3, PValueMethod::Permutation)};
  out.push_back(std::move(pois));
  return out;
}

std::vector<ScenarioSpec> table2b() {
  std::vector<ScenarioSpec> out;
  for (double p1 : {0.3, 0.4, 0.5}) {
    ScenarioSpec spec = base_amoc("network-p" + std::to_string(p1).substr(0, 3));
    spec.generator = GeneratorKind::ErdosRenyi;
    spec.dim = 10;
    spec.p0 = 0.1;
    spec.community_size = 3;
    spec.phases = {PhaseSpec{}, PhaseSpec{.p_within = p1}};
    spec.metric = Metric::frobenius_sq();
    spec.arms = {arm(StatName::S1, PValueMethod::Permutation),
                 arm(StatName::S2Tilde, PValueMethod::AnalyticCorrection),
                 arm(StatName::S3, PValueMethod::Permutation)};
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<ScenarioSpec> table2c() {
  std::vector<ScenarioSpec> out;
  for (double mu : {0.03, 0.05, 0.08, 0.10}) {
    ScenarioSpec spec = base_amoc("functional-mu" + std::to_string(mu).substr(0, 4));
    spec.generator = GeneratorKind::FunctionalPhase;
    spec.dim = 1000;
    spec.grid_start = 0.0;
    spec.grid_end = kTwoPi;
    spec.noise_sd = 0.5;
    spec.phases = {PhaseSpec{}, PhaseSpec{.shift = mu}};
    spec.metric = Metric::l2_functional(kTwoPi);
    spec.arms = {arm(StatName::S1, PValueMethod::Permutation)};
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<ScenarioSpec> table3_mean() {
  const std::vector<std::tuple<Index, double, double>> rows = {
      {1, 2.0, 1.0}, {10, 0.5, 0.2}, {50, 0.5, 0.2}, {100, 0.3, 0.1},
      {500, 0.2, 0.1}};
  std::vector<ScenarioSpec> out;
  for (const auto& [dim, mu1, mu2] : rows) {
    ScenarioSpec spec = base_multi("multi-mean-d" + std::to_string(dim));
    spec.generator = GeneratorKind::GaussMeanShift;
    spec.dim = dim;
    spec.phases = {PhaseSpec{}, PhaseSpec{.mu = mu1}, PhaseSpec{.mu = mu2}};
    spec.arms = {arm(StatName::S1, PValueMethod::AsymptoticMC)};
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<ScenarioSpec> table3_scale() {
  const std::vector<std::tuple<Index, double, double>> rows = {
      {1, 2.0, std::sqrt(2.0)}, {10, 1.2, 1.2}, {50, 1.06, 1.06},
      {100, 1.05, 1.05}, {500, 1.03, 1.03}};
  std::vector<ScenarioSpec> out;
  for (const auto& [dim, s1, s2] : rows) {
    ScenarioSpec spec = base_multi("multi-scale-d" + std::to_string(dim));
    spec.generator = GeneratorKind::GaussScaleShift;
    spec.dim = dim;
    spec.phases = {PhaseSpec{}, PhaseSpec{.sigma = s1}, PhaseSpec{.sigma = s2}};
    spec.arms = {arm(StatName::S2Tilde, PValueMethod::AnalyticCorrection)};
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<ScenarioSpec> table3_both() {
  const std::vector<std::tuple<Index, double, double, double, double>> rows = {
      {1, 2.0, 2.0, 1.0, std::sqrt(2.0)},
      {10, 0.6, 1.2, 0.3, 1.2},
      {50, 0.4, 1.06, 0.2, 1.06},
      {100, 0.4, 1.05, 0.2, 1.05},
      {500, 0.2, 1.03, 0.1, 1.03}};
  std::vector<ScenarioSpec> out;
  for (const auto& [dim, mu1, s1, mu2, s2] : rows) {
    ScenarioSpec spec = base_multi("multi-both-d" + std::to_string(dim));
    spec.generator = GeneratorKind::GaussBoth;
    spec.dim = dim;
    spec.phases = {PhaseSpec{}, PhaseSpec{.mu = mu1, .sigma = s1},
                   PhaseSpec{.mu = mu2, .sigma = s2}};
    spec.arms = {arm(StatName::S1, PValueMethod::AsymptoticMC),
                 arm(StatName::S2Tilde, PValueMethod::AnalyticCorrection),
                 arm(StatName::S3, PValueMethod::AsymptoticMC)};
    out.push_back(std::move(spec));
  }
  ScenarioSpec pois = base_multi("multi-both-poisson");
  pois.generator = GeneratorKind::PoissonShift;
  pois.phases = {PhaseSpec{.lambda = 4.0}, PhaseSpec{.lambda = 6.0},
                 PhaseSpec{.lambda = 4.0}};
  pois.arms = {arm(StatName::S1, PValueMethod::AsymptoticMC)};
  out.push_back(std::move(pois));
  return out;
}

std::vector<ScenarioSpec> table3_network() {
  std::vector<ScenarioSpec> out;
  for (double p1 : {0.3, 0.4, 0.5}) {
    ScenarioSpec spec =
        base_multi("multi-network-p" + std::to_string(p1).substr(0, 3));
    spec.generator = GeneratorKind::ErdosRenyi;
    spec.dim = 10;
    spec.p0 = 0.1;
    spec.community_size = 3;
    spec.phases = {PhaseSpec{}, PhaseSpec{.p_within = p1}, PhaseSpec{}};
    spec.metric = Metric::frobenius_sq();
    spec.arms = {arm(StatName::S1, PValueMethod::AsymptoticMC)};
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<ScenarioSpec> table3_functional() {
  std::vector<ScenarioSpec> out;
  for (double mu : {0.03, 0.05, 0.08, 0.10}) {
    ScenarioSpec spec =
        base_multi("multi-functional-mu" + std::to_string(mu).substr(0, 4));
    spec.generator = GeneratorKind::FunctionalPhase;
    spec.dim = 1000;
    spec.grid_start = 0.0;
    spec.grid_end = kTwoPi;
    spec.noise_sd = 0.5;
    spec.phases = {PhaseSpec{}, PhaseSpec{.shift = 2.0 * mu},
                   PhaseSpec{.shift = mu}};
    spec.metric = Metric::l2_functional(kTwoPi);
    spec.arms = {arm(StatName::S1, PValueMethod::AsymptoticMC)};
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<ScenarioSpec> table3_null() {
  ScenarioSpec spec;
  spec.name = "multi-null-d100";
  spec.generator = GeneratorKind::GaussMeanShift;
  spec.dim = 100;
  spec.n = 150;
  spec.segmentation = true;
  spec.n_min = 20;
  spec.phases = {PhaseSpec{}};
  spec.arms = {arm(StatName::S1, PValueMethod::AsymptoticMC)};
  spec.reps = 100;
  return {spec};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"table1",     "table2a-mean", "table2a-scale", "table2a-both",
          "table2b",    "table2c",      "table3-mean",   "table3-scale",
          "table3-both", "table3-network", "table3-functional", "table3-null"};
}

std::vector<ScenarioSpec> preset_scenarios(const std::string& name) {
  if (name == "table1") return table1();
  if (name == "table2a-mean") return table2a_mean();
  if (name == "table2a-scale") return table2a_scale();
  if (name == "table2a-both") return table2a_both();
  if (name == "table2b") return table2b();
  if (name == "table2c") return table2c();
  if (name == "table3-mean") return table3_mean();
  if (name == "table3-scale") return table3_scale();
  if (name == "table3-both") return table3_both();
  if (name == "table3-network") return table3_network();
  if (name == "table3-functional") return table3_functional();
  if (name == "table3-null") return table3_null();
  throw_error(ErrorCode::ConfigError, "unknown scenario preset '" + name + "'");
}

}  // namespace wgcpd
