// Closed-form Normal-Normal conjugate updating, pseudo-count algebra and
// posterior-UCB scoring. All types are immutable values and every operation is
// a pure function, so anything here may be called concurrently.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "icrl/rng.hpp"

namespace icrl::bayes {

// Gaussian belief over one action value. Variance is strictly positive.
struct GaussianBelief {
  GaussianBelief(double mean, double variance);

  double mean;
  double variance;
};

// Prior strength expressed as an equivalent number of observations,
// count = noise_variance / prior_variance. Zero encodes the flat prior.
struct PseudoCount {
  explicit PseudoCount(double value);

  double value;
};

// Per-action posterior beliefs for one query state.
struct PosteriorSet {
  std::vector<GaussianBelief> beliefs;

  int action_count() const { return static_cast<int>(beliefs.size()); }
};

// Floors a raw prior variance at v_min: belief(mean, max(raw_variance, v_min)).
GaussianBelief floor_prior(double mean, double raw_variance, double v_min);

// Precision-additive fusion of a Gaussian prior with weighted evidence
// (count, weighted_target) observed under noise_variance:
//   1/v_post = 1/v_pri + count/noise_variance
//   m_post   = v_post * (mean_pri/v_pri + count*weighted_target/noise_variance)
// A zero count returns the prior unchanged.
GaussianBelief fuse(const GaussianBelief& prior, double count, double weighted_target,
                    double noise_variance);

// noise_variance / prior_variance.
PseudoCount pseudo_count(double noise_variance, double prior_variance);

// Pseudo-count form of the same posterior:
//   m_post = (N_pri*mean_pri + n*empirical_mean) / (N_pri + n)
//   v_post = noise_variance / (N_pri + n)
// Agrees with fuse() under prior_variance = noise_variance / N_pri. n_pulls is
// integer-valued in the classical statement but any nonnegative real count is
// accepted (kernel-weighted counts are fractional).
GaussianBelief fuse_by_pseudocount(double prior_mean, PseudoCount pseudo, double n_pulls,
                                   double empirical_mean, double noise_variance);

// mean + beta * sqrt(variance); beta = 0 is the greedy score.
double ucb_score(const GaussianBelief& posterior, double beta);

enum class BetaKind {
  kConstant,   // fixed optimism level
  kBanditLog,  // sqrt(2 log t)
  kMdpLog,     // c_beta * sqrt(log(S*A*T)) with c_beta = 2*sqrt(1 + n_max)
};

struct BetaSchedule {
  BetaKind kind = BetaKind::kConstant;
  double constant = 1.0;
  // kMdpLog parameters.
  double states = 0.0;
  double actions = 0.0;
  double total_steps = 0.0;
  double max_pseudo_count = 0.0;

  // Evaluates the schedule at round t >= 1 (t may be real-valued).
  double at(double t) const;

  static BetaSchedule fixed(double beta);
  static BetaSchedule bandit_log();
  static BetaSchedule mdp_log(double states, double actions, double total_steps,
                              double max_pseudo_count);
};

enum class TieBreak { kLowestIndex, kSeededRandom };

// Argmax over raw scores with the given tie policy. Scores may be +infinity
// (forced exploration of information-free arms). rng is required only for
// kSeededRandom.
int argmax_score(std::span<const double> scores, TieBreak tie_break, Rng* rng = nullptr);

// Argmax over ucb_score(posterior_a, beta).
int select_action(const PosteriorSet& posteriors, double beta, TieBreak tie_break,
                  Rng* rng = nullptr);

}  // namespace icrl::bayes
