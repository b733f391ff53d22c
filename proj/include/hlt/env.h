#ifndef HLT_ENV_H_
#define HLT_ENV_H_

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "hlt/rng.h"

namespace hlt {

constexpr int kNumTypes = 3;
enum TypeId : int { kDrone = 0, kMissile = 1, kGun = 2 };

// Discrete action set, shared by every type; illegal entries are masked.
enum ActionId : int {
  kHold = 0,
  kMoveN = 1,
  kMoveNE = 2,
  kMoveE = 3,
  kMoveSE = 4,
  kMoveS = 5,
  kMoveSW = 6,
  kMoveW = 7,
  kMoveNW = 8,
  kEngage1 = 9,
  kEngage2 = 10,
  kEngage3 = 11,
  kRepair = 12,
};
constexpr int kNumActions = 13;
constexpr int kEngageSlots = 3;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct AgentTypeSpec {
  int type_id = 0;
  std::string name;
  double max_health = 0.0;
  double move_speed = 0.0;
  double attack_range = 0.0;
  double attack_damage = 0.0;
  bool can_attack_air = true;
  double repair_rate = 0.0;   // nonzero only for drones
  double repair_range = 0.0;
};

std::array<AgentTypeSpec, kNumTypes> default_type_specs();

struct ScenarioConfig {
  std::array<int, kNumTypes> team_counts = {2, 4, 8};  // drones, missiles, guns
  double arena_size = 40.0;
  double sensing_radius = 12.0;
  int episode_limit = 200;
  int obs_slots = 12;
  double spawn_jitter = 0.5;
  double obs_noise_std = 0.0;
  std::array<AgentTypeSpec, kNumTypes> specs = default_type_specs();

  int agents_per_team() const { return team_counts[0] + team_counts[1] + team_counts[2]; }
  void validate() const;
};

struct Agent {
  int id = 0;
  int team = 0;
  int type = 0;
  Vec2 pos;
  double health = 0.0;
  bool alive = false;
};

struct EpisodeOutcome {
  int winner = -1;  // 0 or 1; -1 for draw / not finished
  std::array<int, 2> remaining = {0, 0};
  int delta_n = 0;
  double reward = 0.0;  // r = c * delta_n with c = 0.1
  int length = 0;
};

struct StepResult {
  std::vector<double> rewards;  // per agent, zero until the terminal step
  bool done = false;
  EpisodeOutcome outcome;
};

// Two symmetric teams of three agent types in a continuous 2D arena.
// Simultaneous discrete ticks; sparse zero-sum terminal reward. An instance
// is single-threaded and owns its RNG; run many instances for parallelism.
class HeteroEnv {
 public:
  explicit HeteroEnv(ScenarioConfig cfg);

  void reset(std::uint64_t seed);
  StepResult step(const std::vector<int>& joint_action);

  std::vector<double> observe(int agent_id) const;
  std::vector<std::uint8_t> action_mask(int agent_id) const;

  int obs_dim() const { return 6 + 8 * cfg_.obs_slots; }
  int num_agents() const { return static_cast<int>(agents_.size()); }
  const Agent& agent(int id) const { return agents_[id]; }
  const std::vector<Agent>& agents() const { return agents_; }
  int tick() const { return tick_; }
  bool done() const { return done_; }
  const EpisodeOutcome& outcome() const { return outcome_; }
  const ScenarioConfig& config() const { return cfg_; }
  const AgentTypeSpec& spec_of(int agent_id) const { return cfg_.specs[agents_[agent_id].type]; }

  bool can_attack(int attacker_id, int target_id) const;
  // Living legal enemy ids within sensing radius, nearest first (ties by id).
  std::vector<int> legal_enemies_sorted(int agent_id) const;
  // Nearest damaged living ally within sensing radius, or -1.
  int repair_target(int agent_id) const;
  double dist(int a, int b) const;

  void write_replay_header(std::ostream& os) const;
  void write_replay_tick(std::ostream& os, const std::vector<int>& actions) const;
  void write_replay_outcome(std::ostream& os) const;

 private:
  void finish_episode();

  ScenarioConfig cfg_;
  std::vector<Agent> agents_;
  int tick_ = 0;
  bool done_ = false;
  EpisodeOutcome outcome_;
  std::uint64_t seed_ = 0;
  Rng rng_;
};

}  // namespace hlt

#endif  // HLT_ENV_H_
