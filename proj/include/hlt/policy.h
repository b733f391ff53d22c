#ifndef HLT_POLICY_H_
#define HLT_POLICY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hlt/net.h"
#include "hlt/rng.h"

namespace hlt {

struct NetConfig {
  int encoder_width = 128;
  int encoder_layers = 2;
  int gen_hidden = 64;
};

// Policy identity representation: per-type performance slots followed by the
// agent's own type one-hot (length 2M). Slot m carries the league member's
// win rate when type m is league-replaced and the agent itself is not of
// that type; every other slot holds the placeholder constant 1. league_beta
// is clamped to [0.01, 1] so a zero-win-rate member stays distinguishable
// from the placeholder-free case.
std::vector<double> build_identity(int own_type, int num_types, int replaced_type,
                                   double league_beta);

// Observation encoder (plain dense) with hypernetwork-generated final actor
// and critic layers conditioned on the identity vector.
struct ActorCriticNet {
  DenseNet encoder;
  HyperLayer actor_head;
  HyperLayer critic_head;

  ActorCriticNet() = default;
  ActorCriticNet(const std::string& name, int obs_dim, int num_actions, int ident_dim,
                 const NetConfig& cfg, Rng& rng);

  std::vector<Param*> params();
  std::vector<const Param*> params() const;
};

// Generated head weights for a fixed identity vector; valid for a whole
// episode, cheap to reuse across steps.
struct GeneratedHeads {
  Tensor2 actor_w, actor_b, critic_w, critic_b;
};

struct ActResult {
  int action = 0;
  double log_prob = 0.0;
  double value = 0.0;
};

// One actor-critic per agent type; parameter sets are disjoint across types.
class PolicyGroup {
 public:
  PolicyGroup() = default;
  PolicyGroup(int group_id, int num_types, int obs_dim, int num_actions, const NetConfig& cfg,
              std::uint64_t init_seed);

  ActResult act(int type, const std::vector<double>& obs, const std::vector<std::uint8_t>& mask,
                const std::vector<double>& identity, Rng& rng, bool greedy) const;
  ActResult act_with_heads(int type, const std::vector<double>& obs,
                           const std::vector<std::uint8_t>& mask, const GeneratedHeads& heads,
                           Rng& rng, bool greedy) const;
  GeneratedHeads generate_heads(int type, const std::vector<double>& identity) const;

  // Deep frozen snapshot with a fresh id and zeroed perf counters.
  PolicyGroup freeze(int new_group_id) const;

  ActorCriticNet& net(int type) { return nets_[type]; }
  const ActorCriticNet& net(int type) const { return nets_[type]; }
  int num_types() const { return static_cast<int>(nets_.size()); }

  std::vector<Param*> all_params();
  std::vector<const Param*> all_params() const;
  // Encoder + actor-generator parameters (actor optimizer scope).
  std::vector<Param*> actor_params();
  // Critic-generator parameters (critic optimizer scope).
  std::vector<Param*> critic_params();

  void save(const std::string& path) const;
  void load(const std::string& path);
  std::uint64_t checksum() const;

  int group_id = 0;
  bool frozen = false;
  long long wins = 0;
  long long games = 0;

  double win_rate() const { return games > 0 ? static_cast<double>(wins) / games : 0.0; }

 private:
  std::vector<ActorCriticNet> nets_;
};

// Stable masked softmax over logits; illegal entries get probability zero.
std::vector<double> masked_probs(const std::vector<double>& logits,
                                 const std::vector<std::uint8_t>& mask);

}  // namespace hlt

#endif  // HLT_POLICY_H_
