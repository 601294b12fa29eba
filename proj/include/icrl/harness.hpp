// Experiment orchestration and metrics: offline suboptimality curves, online
// cumulative regret, noise-robustness sweeps, theorem-verification analyses
// and result persistence. Every output is a pure function of (config, seeds).
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "icrl/agents.hpp"
#include "icrl/envs.hpp"

namespace icrl::harness {

// --- small numerics ----------------------------------------------------------

// Sample standard error of the mean: std (n-1 denominator) / sqrt(n).
double sample_sem(std::span<const double> values);
double sample_mean(std::span<const double> values);

struct FitResult {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
};

// Least squares of y against a + b * f(x).
FitResult fit_transformed(std::span<const double> xs, std::span<const double> ys,
                          const std::function<double(double)>& transform);
FitResult fit_log(std::span<const double> xs, std::span<const double> ys);
FitResult fit_sqrt(std::span<const double> xs, std::span<const double> ys);

std::uint64_t fnv1a(const std::string& text);

// Runs fn(0..n-1) on up to `workers` threads; each index owns its output slot
// so results are identical for any worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

// --- configuration -----------------------------------------------------------

struct ExperimentConfig {
  std::string kind;
  int tasks = 200;
  int horizon = 500;
  int arms = 5;
  double sigma = 0.3;
  std::uint64_t seed = 1;
  int workers = 1;
  int thin = 1;  // keep every thin-th step in the long-form output
  std::vector<double> context_grid = {0, 1, 2, 5, 10, 25, 50, 100, 200, 500};
  std::vector<double> noise_levels = {0.0, 0.3, 0.5};
  envs::BehaviourSpec behaviour;
  // Darkroom / MDP settings.
  int grid_width = 10;
  int grid_height = 10;
  int eval_seeds = 1;
  int episodes = 500;        // theorem2
  int episode_horizon = 12;  // theorem2
  // Theorem verification settings.
  double pseudo_count = 5.0;
  double fit_lo = 50.0;
  double fit_hi = 0.0;  // 0: use the horizon
  double theorem_sigma2 = 1.0;
  evidence::TdSpec td{3, 0.9};
  nlohmann::json agents = nlohmann::json::array();
  std::string out_dir;
  nlohmann::json raw;

  static ExperimentConfig from_json(const nlohmann::json& doc);
};

// --- results -----------------------------------------------------------------

struct LongRow {
  std::string agent;
  int task = 0;
  std::uint64_t seed = 0;
  double x = 0.0;
  double value = 0.0;
};

struct CurvePoint {
  double x = 0.0;
  double mean = 0.0;
  double sem = 0.0;
};

using Curve = std::vector<CurvePoint>;

struct MetricData {
  std::vector<LongRow> rows;
  std::map<std::string, Curve> summary;  // per agent
};

struct ExperimentResult {
  std::string kind;
  std::map<std::string, MetricData> metrics;  // per metric name
  nlohmann::json report;
};

// Builds mean/SEM per x over the task axis from per-task series.
Curve summarize_curves(const std::vector<std::vector<double>>& per_task,
                       std::span<const double> xs);

// --- agent construction from config ------------------------------------------

// Constructs a bandit agent from its JSON spec. Ground-truth-reading agents are
// not constructible here; unknown types are rejected.
std::unique_ptr<agents::BanditAgent> make_bandit_agent(const nlohmann::json& spec, int arms,
                                                       double sigma,
                                                       const ExperimentConfig& cfg);

// --- runners -----------------------------------------------------------------

// The bandit task evaluated at `index` under this config.
envs::BanditTask bandit_task_for(const ExperimentConfig& cfg, int index);

// Extra agents may be injected programmatically (test/verification only; the
// factory receives the task index, so ground-truth-reading calibration agents
// are possible there and only there).
using BanditAgentFactory = std::function<std::unique_ptr<agents::BanditAgent>(int task_index)>;
using BanditAgentMap = std::map<std::string, BanditAgentFactory>;

ExperimentResult run_bandit_offline(const ExperimentConfig& cfg,
                                    const BanditAgentMap& extra_agents = {});
ExperimentResult run_bandit_online(const ExperimentConfig& cfg,
                                   const BanditAgentMap& extra_agents = {});

using GridAgentFactory = std::function<std::unique_ptr<agents::GridAgent>(int task_index)>;
using GridAgentMap = std::map<std::string, GridAgentFactory>;

// The held-out darkroom task and fixed start cell evaluated at `index`.
struct DarkroomEval {
  envs::DarkroomTask task;
  int start_x = 0;
  int start_y = 0;
};
DarkroomEval darkroom_eval_for(const ExperimentConfig& cfg, int index);
ExperimentResult run_noise_sweep(const ExperimentConfig& cfg);
ExperimentResult run_darkroom_online(const ExperimentConfig& cfg,
                                     const GridAgentMap& extra_agents = {});
ExperimentResult verify_theorem1(const ExperimentConfig& cfg);
ExperimentResult verify_theorem2(const ExperimentConfig& cfg);

// Dispatch on cfg.kind.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Writes curves_long_<metric>.csv, curves_summary_<metric>.csv, manifest.json
// and report.json/report.txt under out_dir.
void write_outputs(const ExperimentResult& result, const ExperimentConfig& cfg,
                   const std::string& out_dir);

// Renders the summary CSV for one metric (agent,t,mean,sem rows).
std::string summary_csv(const MetricData& metric);
std::string long_csv(const MetricData& metric);

// Recomputes a summary CSV from a long-form CSV (the `summarize` subcommand).
std::string summarize_long_csv(std::istream& in);

}  // namespace icrl::harness
