// Turns a raw context of transitions into per-action weighted evidence:
// kernel similarity weights, state-weighted counts/targets and n-step
// bootstrapped targets. Pure functions over immutable inputs.
#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace icrl::evidence {

// One logged (state, action, reward, next-state) tuple. episode_end marks the
// last transition of an episode inside a multi-episode buffer.
struct Transition {
  std::vector<double> state;
  int action = 0;
  double reward = 0.0;
  std::vector<double> next_state;
  bool episode_end = false;
};

// Chronologically ordered transition buffer.
using Context = std::vector<Transition>;

enum class KernelKind { kUniform, kRbf, kCosine };

struct KernelSpec {
  KernelKind kind = KernelKind::kUniform;
  double bandwidth = 1.0;  // rbf only
  bool encoded = false;    // true: apply the kernel to encoder(state), not the raw state

  static KernelSpec uniform();
  static KernelSpec rbf(double bandwidth, bool encoded = false);
  static KernelSpec cosine(bool encoded = false);
};

// Similarity weight in [0, 1] between query and context feature vectors.
//   uniform: 1
//   rbf:     exp(-||q - x||^2 / (2 tau^2))
//   cosine:  max(0, cos(q, x)); a zero vector has weight 0
double kernel_weight(const KernelSpec& spec, std::span<const double> query_features,
                     std::span<const double> context_features);

// Per-action weighted count c_a and weighted target y~_a.
struct ActionEvidence {
  std::vector<double> counts;
  std::vector<double> targets;

  int action_count() const { return static_cast<int>(counts.size()); }
};

// c_a = sum_t w_t 1[a_t = a],  y~_a = sum_t w_t 1[a_t = a] y_t / max(1, c_a).
// Actions never observed keep the conventional target 0.
ActionEvidence weighted_evidence(const Context& ctx, std::span<const double> weights,
                                 std::span<const double> targets, int action_count);

// Per-action value means at a state, used as the bootstrap for n-step targets.
using BootstrapFn = std::function<std::vector<double>(const std::vector<double>& state)>;

struct TdSpec {
  int n = 1;
  double gamma = 0.0;
};

// n-step bootstrapped target per transition:
//   y_t = sum_{i < n} gamma^i r_{t+i} + gamma^n max_a q(s_{t+n}, a)
// Reward sums truncate at episode boundaries; the bootstrap term is added only
// when transition t+n exists within the same episode. A null bootstrap is
// treated as identically zero (the bandit case n=1, gamma=0 never calls it).
std::vector<double> td_targets(const Context& ctx, int n, double gamma,
                               const BootstrapFn& bootstrap);

// Optional feature encoder for kernel space; identity when null.
using FeatureMap = std::function<std::vector<double>(const std::vector<double>& state)>;

// Composition: kernel weights per transition, TD targets, weighted evidence.
ActionEvidence extract(const Context& ctx, const std::vector<double>& query_state,
                       const KernelSpec& spec, const FeatureMap& encoder, const TdSpec& td,
                       const BootstrapFn& bootstrap, int action_count);

// --- persistence -----------------------------------------------------------
// Flat record format, one transition per line:
//   s_0,...,s_{d-1},action,reward,ns_0,...,ns_{d-1},episode_end
// A header row names the columns. The JSON mirror carries the same records.

void save_context_csv(const Context& ctx, std::ostream& out);
Context load_context_csv(std::istream& in);
void save_context_csv_file(const Context& ctx, const std::string& path);
Context load_context_csv_file(const std::string& path);

nlohmann::json context_to_json(const Context& ctx);
Context context_from_json(const nlohmann::json& j);

}  // namespace icrl::evidence
