// The Bayesian fusion controller (offline greedy, online posterior-UCB) and
// the classical bandit baselines, behind uniform agent contracts so the
// harness treats them interchangeably. Agents never see task ground truth;
// they observe only their own transitions.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "icrl/bayes.hpp"
#include "icrl/evidence.hpp"
#include "icrl/priors.hpp"
#include "icrl/training.hpp"

namespace icrl::agents {

using bayes::TieBreak;

// Running per-arm pull counts and reward sums.
struct ArmStats {
  std::vector<double> counts;
  std::vector<double> sums;

  explicit ArmStats(int arms = 0) { reset(arms); }
  void reset(int arms);
  void update(int arm, double reward);
  int arms() const { return static_cast<int>(counts.size()); }
  double count(int arm) const { return counts[static_cast<std::size_t>(arm)]; }
  double mean(int arm) const;  // requires count > 0
};

// Decision rules from the classical baselines. Arms without pulls score +inf
// for the optimistic rules and -inf for the pessimistic one; rules that are
// undefined with no observations at all fall back to a uniform draw.
int emp_act(const ArmStats& stats, TieBreak tie_break, Rng& rng);
int ucb_hoeffding_act(const ArmStats& stats, TieBreak tie_break, Rng* rng = nullptr);
int ucb_param_act(const ArmStats& stats, double sigma, double t, TieBreak tie_break,
                  Rng* rng = nullptr);
int lcb_act(const ArmStats& stats, TieBreak tie_break, Rng& rng);
// Samples each arm's conjugate Gaussian posterior and takes the argmax.
int ts_act(const ArmStats& stats, const bayes::GaussianBelief& prior, double noise_variance,
           Rng& rng);

// Modal-label lookup table for the imitation baseline.
class ImitationTable {
 public:
  using KeyFn = std::function<long long(const std::vector<double>&)>;

  ImitationTable(int action_count, KeyFn key_fn);

  void add(const std::vector<double>& state, int action);
  void fit(const training::Dataset& dataset);  // keyed by query state
  // Modal label for the state, or -1 when the key is unseen.
  int modal(const std::vector<double>& state) const;
  int action_count() const { return action_count_; }

 private:
  int action_count_;
  KeyFn key_fn_;
  std::map<long long, std::vector<long long>> histograms_;
};

// --- bandit agents -----------------------------------------------------------

class BanditAgent {
 public:
  virtual ~BanditAgent() = default;

  virtual void reset(int arms, std::uint64_t seed) = 0;
  // Online decision at 1-based round t.
  virtual int act(int t) = 0;
  virtual void observe(int arm, double reward) = 0;
  // Single offline decision from a fixed context; never mutates agent state.
  virtual int act_offline(const evidence::Context& ctx) const = 0;
};

// Empirical-mean greedy; online it warm-starts with one pull per arm.
class EmpAgent : public BanditAgent {
 public:
  void reset(int arms, std::uint64_t seed) override;
  int act(int t) override;
  void observe(int arm, double reward) override;
  int act_offline(const evidence::Context& ctx) const override;

 private:
  ArmStats stats_;
  mutable std::optional<Rng> rng_;
};

// Hoeffding-bonus UCB (mu + sqrt(1/n)); warm-starts with one pull per arm.
class UcbHoeffdingAgent : public BanditAgent {
 public:
  void reset(int arms, std::uint64_t seed) override;
  int act(int t) override;
  void observe(int arm, double reward) override;
  int act_offline(const evidence::Context& ctx) const override;

 private:
  ArmStats stats_;
};

// Parametric UCB with bonus beta_t * sqrt(sigma^2 / n), beta_t = sqrt(2 log t).
class UcbParamAgent : public BanditAgent {
 public:
  explicit UcbParamAgent(double sigma);
  void reset(int arms, std::uint64_t seed) override;
  int act(int t) override;
  void observe(int arm, double reward) override;
  int act_offline(const evidence::Context& ctx) const override;

 private:
  double sigma_;
  ArmStats stats_;
};

// Pessimistic lower-confidence-bound rule (offline pick-one baseline).
class LcbAgent : public BanditAgent {
 public:
  void reset(int arms, std::uint64_t seed) override;
  int act(int t) override;
  void observe(int arm, double reward) override;
  int act_offline(const evidence::Context& ctx) const override;

 private:
  ArmStats stats_;
  mutable std::optional<Rng> rng_;
};

// Thompson sampling with Gaussian prior N(1/2, 1/12) and known noise variance.
class TsAgent : public BanditAgent {
 public:
  explicit TsAgent(double sigma);
  void reset(int arms, std::uint64_t seed) override;
  int act(int t) override;
  void observe(int arm, double reward) override;
  int act_offline(const evidence::Context& ctx) const override;

 private:
  double noise_variance_;
  ArmStats stats_;
  mutable std::optional<Rng> rng_;
};

class RandomBanditAgent : public BanditAgent {
 public:
  void reset(int arms, std::uint64_t seed) override;
  int act(int t) override;
  void observe(int arm, double reward) override;
  int act_offline(const evidence::Context& ctx) const override;

 private:
  int arms_ = 0;
  mutable std::optional<Rng> rng_;
};

// Plays the modal training label; uniform fallback on unseen keys.
class ImitationBanditAgent : public BanditAgent {
 public:
  explicit ImitationBanditAgent(std::shared_ptr<const ImitationTable> table);
  void reset(int arms, std::uint64_t seed) override;
  int act(int t) override;
  void observe(int arm, double reward) override;
  int act_offline(const evidence::Context& ctx) const override;

 private:
  std::shared_ptr<const ImitationTable> table_;
  int arms_ = 0;
  mutable std::optional<Rng> rng_;
};

// Configuration of the fusion controller for bandits. A null prior provider is
// the exact flat prior (pseudo-count zero per arm).
struct FusionBanditConfig {
  std::shared_ptr<const priors::PriorProvider> prior;
  double noise_variance = 0.09;
  bayes::BetaSchedule beta = bayes::BetaSchedule::bandit_log();
  TieBreak tie_break = TieBreak::kLowestIndex;
};

// Posterior-UCB online / posterior-greedy offline controller. Evidence is the
// uniform-kernel, n=1, gamma=0 extraction, accumulated incrementally; with a
// flat prior and an unpulled arm the online score is +inf (forced exploration)
// while the offline greedy score is -inf (no optimism without information).
class FusionBanditAgent : public BanditAgent {
 public:
  explicit FusionBanditAgent(FusionBanditConfig config);

  void reset(int arms, std::uint64_t seed) override;
  int act(int t) override;
  void observe(int arm, double reward) override;
  int act_offline(const evidence::Context& ctx) const override;

  // Posterior belief for one arm given evidence (count, target); nullopt when
  // there is no information at all.
  std::optional<bayes::GaussianBelief> posterior(int arm, double count, double target) const;

 private:
  int decide(const ArmStats& stats, double beta, bool optimistic_when_empty, Rng* rng) const;

  FusionBanditConfig config_;
  std::vector<double> prior_means_;
  std::vector<double> prior_pseudo_;
  ArmStats stats_;
  mutable std::optional<Rng> rng_;
};

// --- grid agents -------------------------------------------------------------

struct GridShape {
  int width = 10;
  int height = 10;
  int actions = 5;
};

class GridAgent {
 public:
  virtual ~GridAgent() = default;

  virtual void reset(const GridShape& shape, std::uint64_t seed) = 0;
  // Online decision at 1-based global step t from cell (x, y).
  virtual int act(int x, int y, int t) = 0;
  virtual void observe(const evidence::Transition& transition) = 0;
  // Marks an episode boundary in the context buffer.
  virtual void end_episode() = 0;
};

class RandomGridAgent : public GridAgent {
 public:
  void reset(const GridShape& shape, std::uint64_t seed) override;
  int act(int x, int y, int t) override;
  void observe(const evidence::Transition& transition) override;
  void end_episode() override {}

 private:
  GridShape shape_;
  std::optional<Rng> rng_;
};

class ImitationGridAgent : public GridAgent {
 public:
  explicit ImitationGridAgent(std::shared_ptr<const ImitationTable> table);
  void reset(const GridShape& shape, std::uint64_t seed) override;
  int act(int x, int y, int t) override;
  void observe(const evidence::Transition& transition) override;
  void end_episode() override {}

 private:
  std::shared_ptr<const ImitationTable> table_;
  GridShape shape_;
  std::optional<Rng> rng_;
};

// How the fusion grid agent aggregates context evidence.
enum class GridEvidence {
  kFullKernel,      // kernel-weighted extraction over the whole buffer per query
  kPerStateAction,  // exact per-(s,a) counts and TD-target averages
};

struct FusionGridConfig {
  std::shared_ptr<const priors::PriorProvider> prior;  // null = flat prior
  // Feature map applied before calling the prior provider; null = raw state.
  evidence::FeatureMap prior_features;
  evidence::KernelSpec kernel = evidence::KernelSpec::uniform();
  evidence::FeatureMap kernel_features;  // kernel space encoder (kFullKernel)
  evidence::TdSpec td{5, 0.95};
  double noise_variance = 0.09;
  bayes::BetaSchedule beta = bayes::BetaSchedule::fixed(1.0);
  TieBreak tie_break = TieBreak::kLowestIndex;
  GridEvidence mode = GridEvidence::kFullKernel;
};

// Posterior-UCB controller over grid states. The context buffer spans
// episodes; TD targets never bootstrap across an episode boundary. With
// kPerStateAction evidence, finished episodes fold into exact per-(s,a)
// running statistics and only the live episode is re-evaluated per decision,
// which is identical to full extraction under a state-equality kernel.
class FusionGridAgent : public GridAgent {
 public:
  explicit FusionGridAgent(FusionGridConfig config);

  void reset(const GridShape& shape, std::uint64_t seed) override;
  int act(int x, int y, int t) override;
  void observe(const evidence::Transition& transition) override;
  void end_episode() override;

 private:
  std::vector<double> prior_query(const std::vector<double>& state) const;
  std::vector<double> bootstrap_means(const std::vector<double>& state) const;
  long long state_key(const std::vector<double>& state) const;

  FusionGridConfig config_;
  GridShape shape_;
  evidence::Context buffer_;       // kFullKernel: all transitions
  evidence::Context live_episode_;  // kPerStateAction: current episode only
  struct Cell {
    double count = 0.0;
    double sum = 0.0;
  };
  std::map<long long, std::vector<Cell>> finalized_;
  std::optional<Rng> rng_;
};

}  // namespace icrl::agents
