// Seedable task generators and simulators: Gaussian multi-armed bandits with
// mixed Dirichlet/point-mass behaviour policies, and the Darkroom gridworld
// with held-out goals and weak-last labels. Everything is a pure function of
// its seed.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "icrl/evidence.hpp"
#include "icrl/rng.hpp"
#include "icrl/training.hpp"

namespace icrl::envs {

// --- bandits ---------------------------------------------------------------

struct BanditTask {
  std::vector<double> means;  // arm means in [0, 1]
  double sigma = 0.3;         // reward noise stddev

  int arms() const { return static_cast<int>(means.size()); }
  int best_arm() const;
  double best_mean() const { return means[static_cast<std::size_t>(best_arm())]; }
  double gap(int arm) const { return best_mean() - means[static_cast<std::size_t>(arm)]; }
};

// Arm means i.i.d. Unif[0, 1]; deterministic given the seed.
BanditTask sample_bandit(std::uint64_t seed, int arms, double sigma);

// reward = mu_arm + N(0, sigma^2)
double pull(const BanditTask& task, int arm, Rng& rng);

enum class LabelMode {
  kRandomArm,  // label drawn uniformly over arms
  kMixQ,       // optimal arm with probability q, else a draw from p
};

struct BehaviourSpec {
  double omega = 0.5;         // mix weight between Dirichlet(1) and the point mass
  int concentrated_arm = -1;  // point-mass arm; -1 draws it uniformly
  LabelMode label_mode = LabelMode::kRandomArm;
  double q = 0.8;             // kMixQ optimal-label probability
};

struct BanditContextData {
  evidence::Context context;
  int label = 0;
  double label_prob = 0.0;            // behaviour probability of the label arm
  std::vector<double> step_probs;     // exact sampling probability of each taken action
  std::vector<double> behaviour_p;    // the mixed distribution p over arms
};

// Samples p = (1 - omega) Dirichlet(1) + omega delta_{i*}, draws `length`
// i.i.d. context actions from p and a label per label mode. Bandit states are
// the constant feature {1}.
BanditContextData gen_bandit_context(const BanditTask& task, const BehaviourSpec& behaviour,
                                     int length, Rng& rng);

inline std::vector<double> bandit_features() { return {1.0}; }

// --- darkroom ----------------------------------------------------------------

// Deterministic gridworld; walls clamp movement; reward 1 exactly when the
// cell reached by the step is the goal. The episode never terminates at the
// goal, so the agent may re-collect until the horizon.
struct DarkroomTask {
  int width = 10;
  int height = 10;
  int goal_x = 0;
  int goal_y = 0;
  int horizon = 100;
};

// Actions: 0 up (+y), 1 down (-y), 2 left (-x), 3 right (+x), 4 stay.
inline constexpr int kDarkroomActions = 5;

struct GridStep {
  int x = 0;
  int y = 0;
  double reward = 0.0;
};

GridStep darkroom_step(const DarkroomTask& task, int x, int y, int action);

// Best one-step reward achievable from (x, y): 1 when some action reaches or
// keeps the goal, else 0.
double optimal_action_reward(const DarkroomTask& task, int x, int y);

struct DarkroomSplit {
  std::vector<std::pair<int, int>> train;     // 80 goal cells
  std::vector<std::pair<int, int>> held_out;  // 20 goal cells
};

// Disjoint exhaustive 80/20 partition of the 100 cells of the 10x10 grid.
DarkroomSplit darkroom_split(std::uint64_t master_seed);

// Uniform-random rollouts with the weak-last label (the final context action)
// and behaviour probability 1/5 per step. Context length is at least 1 so the
// label exists. The query state is a uniformly random cell.
training::Dataset gen_darkroom_dataset(std::span<const DarkroomTask> tasks,
                                       int episodes_per_task, int horizon, Rng& rng);

// Raw (x, y) state vector used inside contexts.
inline std::vector<double> darkroom_state(int x, int y) {
  return {static_cast<double>(x), static_cast<double>(y)};
}

// (x, y)/9 feature pair.
std::vector<double> darkroom_xy_features(const std::vector<double>& state);
// One-hot over the grid cells.
std::vector<double> darkroom_onehot_features(const std::vector<double>& state, int width,
                                             int height);

nlohmann::json split_to_json(const DarkroomSplit& split);

}  // namespace icrl::envs
