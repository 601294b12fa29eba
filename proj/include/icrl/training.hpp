// Desk-scale pretraining of the ensemble prior: TD(n) regression, Bayesian
// shrinkage, anchor regularization and the weighted policy objective. All
// gradients are written by hand and verified against finite differences.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "icrl/evidence.hpp"
#include "icrl/priors.hpp"

namespace icrl::training {

// Importance weight: clip(pi_u / pi_b, 0, c_iw) with pi_u = 1/|A|.
double weight_is(double label_behaviour_prob, int action_count, double c_iw);

// Advantage weight: clip(exp(A/tau_adv), eps, c_adv) with
// A = q[label] - mean(q).
double weight_adv(std::span<const double> q_means, int label, double tau_adv, double eps,
                  double c_adv);

// Epistemic weight: clip(1 + lambda_sigma * sigma, eps, c_epi).
double weight_epi(double sigma, double lambda_sigma, double eps, double c_epi);

struct LossWeights {
  double lambda_q = 1.0;
  double lambda_anchor = 1e-3;
  // Shrinkage prior (mu0, v0) and evidence noise sigma^2.
  double shrink_mu0 = 0.0;
  double shrink_v0 = 1.0;
  double shrink_sigma2 = 0.09;
  // Policy-weight clips and temperatures.
  double c_iw = 10.0;
  double c_adv = 10.0;
  double c_epi = 5.0;
  double eps = 1e-2;
  double tau_adv = 1.0;
  double lambda_sigma = 1.0;
  bool policy_enabled = true;

  void validate() const;
};

struct TrainingExample {
  evidence::Context context;
  std::vector<double> query_state;
  int label = 0;
  double behaviour_prob = 1.0;
};

using Dataset = std::vector<TrainingExample>;

// --- value losses over one context with precomputed targets ---

// Mean squared error between the ensemble mean on taken actions and the
// targets. Rejects an empty context.
double loss_td(const priors::EnsemblePrior& ensemble, const evidence::FeatureMap& features,
               const evidence::Context& ctx, std::span<const double> targets);
std::vector<double> grad_td(const priors::EnsemblePrior& ensemble,
                            const evidence::FeatureMap& features, const evidence::Context& ctx,
                            std::span<const double> targets);

// Per-head variant used by the SGD loop: the average over heads of each
// head's squared error (equal to the mean-based loss plus the head variance;
// same minimizer for the ensemble mean, but it lets head disagreement shrink
// where the data is dense).
double loss_td_per_head(const priors::EnsemblePrior& ensemble,
                        const evidence::FeatureMap& features, const evidence::Context& ctx,
                        std::span<const double> targets);
std::vector<double> grad_td_per_head(const priors::EnsemblePrior& ensemble,
                                     const evidence::FeatureMap& features,
                                     const evidence::Context& ctx,
                                     std::span<const double> targets);

// Shrinks the per-action context-average of the ensemble mean toward the
// conjugate posterior mean m_a = w_a mu0 + (1 - w_a) ybar_a with
// w_a = sigma^2 / (sigma^2 + c_a v0), averaged over actions with c_a > 0.
// Defined as 0 when no action is observed.
double loss_shrink(const priors::EnsemblePrior& ensemble, const evidence::FeatureMap& features,
                   const evidence::Context& ctx, std::span<const double> targets, double mu0,
                   double v0, double sigma2);
std::vector<double> grad_shrink(const priors::EnsemblePrior& ensemble,
                                const evidence::FeatureMap& features,
                                const evidence::Context& ctx, std::span<const double> targets,
                                double mu0, double v0, double sigma2);

// Sum of squared deviations of trainable parameters from their initial values.
// Frozen prior maps carry no parameters here by construction.
double loss_anchor(const priors::EnsemblePrior& ensemble);
std::vector<double> grad_anchor(const priors::EnsemblePrior& ensemble);

// Linear softmax policy head over query features, trained with the weighted
// cross-entropy. Training-only: never used for control.
class PolicyHead {
 public:
  PolicyHead(int action_count, int feature_dim, std::uint64_t seed);

  int action_count() const { return action_count_; }
  int param_size() const { return static_cast<int>(params_.size()); }
  std::span<const double> params() const { return params_; }
  void set_params(std::span<const double> params);

  std::vector<double> logits(std::span<const double> features) const;
  std::vector<double> probs(std::span<const double> features) const;

  // omega * (-log softmax(logits)[label])
  double loss(std::span<const double> features, int label, double omega) const;
  void accumulate_grad(std::span<const double> features, int label, double omega,
                       std::span<double> grad) const;

 private:
  int action_count_;
  int feature_dim_;
  std::vector<double> params_;  // per action: [w_0..w_{D-1}, b]
};

struct SgdConfig {
  double learning_rate = 0.05;
  double momentum = 0.9;
  int epochs = 50;
  int batch_size = 16;
  std::uint64_t seed = 0;
};

struct LossTraceRow {
  int epoch = 0;
  double policy = 0.0;
  double td = 0.0;
  double shrink = 0.0;
  double anchor = 0.0;
  double total = 0.0;
};

// Minibatch SGD with momentum on
//   L = L_pi + lambda_q (L_td + L_shrink) + lambda_anchor L_anchor.
// TD targets are recomputed from the current ensemble each batch
// (semi-gradient); policy weights are treated as constants. Returns the
// per-epoch loss trace evaluated on the full dataset. Throws on divergence.
std::vector<LossTraceRow> train(priors::EnsemblePrior& ensemble, PolicyHead* policy,
                                const Dataset& dataset, const evidence::FeatureMap& features,
                                const evidence::TdSpec& td, const LossWeights& weights,
                                const SgdConfig& sgd);

void save_loss_trace_csv(const std::vector<LossTraceRow>& trace, std::ostream& out);

// Dataset persistence: JSON document with one record per example; the
// generate-data tool additionally writes the flat CSV sidecars.
nlohmann::json dataset_to_json(const Dataset& dataset);
Dataset dataset_from_json(const nlohmann::json& j);
void save_dataset_file(const Dataset& dataset, const std::string& path);
Dataset load_dataset_file(const std::string& path);

}  // namespace icrl::training
