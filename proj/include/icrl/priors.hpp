// Pluggable value-prior providers: an exact tabular Gaussian prior table and a
// small ensemble of value heads with frozen randomized priors. A provider maps
// a query state to one floored Gaussian belief per action.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include <json.hpp>

#include "icrl/bayes.hpp"

namespace icrl::priors {

class PriorProvider {
 public:
  virtual ~PriorProvider() = default;

  virtual int action_count() const = 0;

  // Per-action beliefs at the query state, variances already floored at v_min.
  virtual std::vector<bayes::GaussianBelief> at(const std::vector<double>& query_state) const = 0;
};

// Exact per-(state-key, action) Gaussian table. Lookups are total: unseen keys
// return the default belief.
class TabularPrior : public PriorProvider {
 public:
  using KeyFn = std::function<long long(const std::vector<double>&)>;

  TabularPrior(int action_count, bayes::GaussianBelief default_belief, double v_min,
               KeyFn key_fn);

  int action_count() const override { return action_count_; }
  std::vector<bayes::GaussianBelief> at(const std::vector<double>& query_state) const override;

  void set(long long state_key, int action, const bayes::GaussianBelief& belief);
  bayes::GaussianBelief lookup(long long state_key, int action) const;

  // All states share one key (bandits).
  static KeyFn shared_key();
  // Grid cells keyed as x*10 + y; expects a raw (x, y) state.
  static KeyFn grid_key();

 private:
  int action_count_;
  bayes::GaussianBelief default_belief_;
  double v_min_;
  KeyFn key_fn_;
  std::map<long long, bayes::GaussianBelief> table_;
};

enum class HeadArch { kLinear, kTanh1 };

struct EnsembleConfig {
  int heads = 7;
  double alpha = 1.0;  // frozen-prior scale
  int feature_dim = 1;
  int action_count = 2;
  HeadArch arch = HeadArch::kLinear;
  int hidden = 16;  // kTanh1 only
  double v_min = 1e-2;
  std::uint64_t master_seed = 0;
};

// K value heads over [features; onehot(action)]. Head k evaluates
// f_k(z) + alpha * p_k(z) where p_k is a frozen random map and f_k is
// trainable. Initial f_k parameters are stored as the anchoring target.
class EnsemblePrior : public PriorProvider {
 public:
  explicit EnsemblePrior(const EnsembleConfig& config);

  int action_count() const override { return config_.action_count; }
  std::vector<bayes::GaussianBelief> at(const std::vector<double>& query_state) const override;

  const EnsembleConfig& config() const { return config_; }
  int head_count() const { return config_.heads; }

  // Single-head value for [features; onehot(action)].
  double head_value(int k, std::span<const double> features, int action) const;

  // Ensemble mean and sample std (K-1 denominator) per action, unfloored.
  void stats(std::span<const double> features, std::vector<double>& means,
             std::vector<double>& stds) const;

  // Ensemble mean for one action.
  double mean_value(std::span<const double> features, int action) const;

  // --- training surface ---
  int params_per_head() const { return params_per_head_; }
  int trainable_size() const { return static_cast<int>(trainable_.size()); }
  std::span<const double> trainable_params() const { return trainable_; }
  std::span<const double> anchor_params() const { return anchor_; }
  void set_trainable_params(std::span<const double> params);

  // grad += coeff * d mean_value(features, action) / d trainable params.
  void accumulate_mean_grad(std::span<const double> features, int action, double coeff,
                            std::span<double> grad) const;

  // grad += coeff * d head_value(k, features, action) / d trainable params.
  void accumulate_head_grad(int k, std::span<const double> features, int action, double coeff,
                            std::span<double> grad) const;

  nlohmann::json to_json() const;
  static EnsemblePrior from_json(const nlohmann::json& j);

 private:
  EnsemblePrior() = default;

  std::vector<double> action_input(std::span<const double> features, int action) const;
  double raw_value(const double* params, std::span<const double> z) const;
  void raw_grad(const double* params, std::span<const double> z, double coeff,
                double* grad) const;

  EnsembleConfig config_;
  int input_dim_ = 0;       // feature_dim + action_count
  int params_per_head_ = 0;
  std::vector<double> trainable_;  // f_k, concatenated over heads
  std::vector<double> frozen_;     // p_k, never updated
  std::vector<double> anchor_;     // f_k at initialization
};

}  // namespace icrl::priors
