#include "hlt/env.h"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hlt/errors.h"

namespace hlt {
namespace {

constexpr double kRewardScale = 0.1;  // r = c * delta_N
constexpr double kEps = 1e-12;

// Unit vectors for kMoveN..kMoveNW in action order.
const double kDirX[8] = {0, 0.7071067811865476, 1, 0.7071067811865476, 0, -0.7071067811865476, -1, -0.7071067811865476};
const double kDirY[8] = {1, 0.7071067811865476, 0, -0.7071067811865476, -1, -0.7071067811865476, 0, 0.7071067811865476};

}  // namespace

std::array<AgentTypeSpec, kNumTypes> default_type_specs() {
  std::array<AgentTypeSpec, kNumTypes> s;
  s[kDrone] = {kDrone, "drone", 60.0, 3.0, 4.0, 2.0, true, 4.0, 3.0};
  s[kMissile] = {kMissile, "missile", 100.0, 1.0, 10.0, 12.0, true, 0.0, 0.0};
  s[kGun] = {kGun, "gun", 220.0, 1.2, 5.0, 5.0, false, 0.0, 0.0};
  return s;
}

void ScenarioConfig::validate() const {
  for (int t = 0; t < kNumTypes; ++t) {
    if (team_counts[t] <= 0)
      throw ConfigError("scenario: zero agents of type " + specs[t].name);
    if (specs[t].max_health <= 0) throw ConfigError("scenario: non-positive max_health");
  }
  if (specs[kDrone].repair_rate <= 0) throw ConfigError("scenario: drone must have repair_rate > 0");
  if (specs[kMissile].repair_rate != 0 || specs[kGun].repair_rate != 0)
    throw ConfigError("scenario: only drones may repair");
  if (specs[kGun].can_attack_air) throw ConfigError("scenario: gun vehicles cannot attack air");
  if (arena_size <= 0 || sensing_radius <= 0 || episode_limit < 1 || obs_slots < 1)
    throw ConfigError("scenario: bad geometry or limits");
}

HeteroEnv::HeteroEnv(ScenarioConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  agents_.resize(2 * cfg_.agents_per_team());
}

void HeteroEnv::reset(std::uint64_t seed) {
  seed_ = seed;
  rng_ = Rng(seed);
  tick_ = 0;
  done_ = false;
  outcome_ = EpisodeOutcome{};

  const int per_team = cfg_.agents_per_team();
  const double arena = cfg_.arena_size;
  int id = 0;
  for (int team = 0; team < 2; ++team) {
    int slot = 0;
    for (int type = 0; type < kNumTypes; ++type) {
      for (int n = 0; n < cfg_.team_counts[type]; ++n, ++slot, ++id) {
        Agent& a = agents_[id];
        a.id = id;
        a.team = team;
        a.type = type;
        a.health = cfg_.specs[type].max_health;
        a.alive = true;
        // Mirrored line formations on opposite arena edges.
        const double base_x = 0.15 * arena;
        const double y = arena * (slot + 1) / (per_team + 1);
        a.pos.x = (team == 0) ? base_x : arena - base_x;
        a.pos.y = y;
      }
    }
  }
  // Spawn jitter is drawn per agent, not mirrored; it is what breaks the
  // mirror symmetry in scripted-vs-scripted play.
  if (cfg_.spawn_jitter > 0) {
    for (Agent& a : agents_) {
      a.pos.x = std::clamp(a.pos.x + cfg_.spawn_jitter * rng_.uniform(-1.0, 1.0), 0.0, arena);
      a.pos.y = std::clamp(a.pos.y + cfg_.spawn_jitter * rng_.uniform(-1.0, 1.0), 0.0, arena);
    }
  }
}

double HeteroEnv::dist(int a, int b) const {
  const double dx = agents_[a].pos.x - agents_[b].pos.x;
  const double dy = agents_[a].pos.y - agents_[b].pos.y;
  return std::sqrt(dx * dx + dy * dy);
}

bool HeteroEnv::can_attack(int attacker_id, int target_id) const {
  const Agent& t = agents_[target_id];
  if (t.team == agents_[attacker_id].team) return false;
  if (!spec_of(attacker_id).can_attack_air && t.type == kDrone) return false;
  return true;
}

std::vector<int> HeteroEnv::legal_enemies_sorted(int agent_id) const {
  std::vector<int> out;
  for (const Agent& e : agents_) {
    if (!e.alive || e.id == agent_id) continue;
    if (!can_attack(agent_id, e.id)) continue;
    if (dist(agent_id, e.id) <= cfg_.sensing_radius) out.push_back(e.id);  // closed ball
  }
  std::sort(out.begin(), out.end(), [&](int x, int y) {
    const double dx = dist(agent_id, x), dy = dist(agent_id, y);
    if (dx != dy) return dx < dy;
    return x < y;
  });
  return out;
}

int HeteroEnv::repair_target(int agent_id) const {
  if (agents_[agent_id].type != kDrone) return -1;
  int best = -1;
  double best_d = 0.0;
  for (const Agent& a : agents_) {
    if (!a.alive || a.id == agent_id || a.team != agents_[agent_id].team) continue;
    if (a.health >= cfg_.specs[a.type].max_health) continue;
    const double d = dist(agent_id, a.id);
    if (d > cfg_.sensing_radius) continue;
    if (best < 0 || d < best_d || (d == best_d && a.id < best)) {
      best = a.id;
      best_d = d;
    }
  }
  return best;
}

std::vector<std::uint8_t> HeteroEnv::action_mask(int agent_id) const {
  std::vector<std::uint8_t> mask(kNumActions, 0);
  mask[kHold] = 1;
  for (int m = kMoveN; m <= kMoveNW; ++m) mask[m] = 1;
  const int enemies = static_cast<int>(legal_enemies_sorted(agent_id).size());
  for (int k = 0; k < kEngageSlots; ++k) mask[kEngage1 + k] = (enemies > k) ? 1 : 0;
  mask[kRepair] = (repair_target(agent_id) >= 0) ? 1 : 0;
  return mask;
}

std::vector<double> HeteroEnv::observe(int agent_id) const {
  const Agent& self = agents_[agent_id];
  if (!self.alive) throw ContractError("observe: agent " + std::to_string(agent_id) + " is dead");

  std::vector<double> obs(obs_dim(), 0.0);
  obs[0] = self.pos.x / cfg_.arena_size;
  obs[1] = self.pos.y / cfg_.arena_size;
  obs[2] = self.health / cfg_.specs[self.type].max_health;
  obs[3 + self.type] = 1.0;

  struct Vis {
    int id;
    double d;
  };
  std::vector<Vis> vis;
  for (const Agent& e : agents_) {
    if (!e.alive || e.id == agent_id) continue;
    const double d = dist(agent_id, e.id);
    if (d <= cfg_.sensing_radius) vis.push_back({e.id, d});
  }
  std::sort(vis.begin(), vis.end(), [](const Vis& a, const Vis& b) {
    if (a.d != b.d) return a.d < b.d;
    return a.id < b.id;
  });

  const int slots = std::min<int>(cfg_.obs_slots, static_cast<int>(vis.size()));
  for (int s = 0; s < slots; ++s) {
    const Agent& e = agents_[vis[s].id];
    double rx = e.pos.x - self.pos.x;
    double ry = e.pos.y - self.pos.y;
    if (cfg_.obs_noise_std > 0) {
      // Stateless noise stream keyed by (seed, tick, observer, slot) so that
      // observation calls never perturb the trajectory RNG.
      Rng noise(seed_combine(seed_, mix64((static_cast<std::uint64_t>(tick_) << 32) ^
                                          (static_cast<std::uint64_t>(agent_id) << 8) ^ s)));
      rx += cfg_.obs_noise_std * noise.normal();
      ry += cfg_.obs_noise_std * noise.normal();
    }
    double* slot = &obs[6 + 8 * s];
    slot[0] = 1.0;  // validity
    slot[1] = rx / cfg_.sensing_radius;
    slot[2] = ry / cfg_.sensing_radius;
    slot[3] = e.health / cfg_.specs[e.type].max_health;
    slot[4 + e.type] = 1.0;
    slot[7] = (e.team != self.team) ? 1.0 : 0.0;
  }
  return obs;
}

StepResult HeteroEnv::step(const std::vector<int>& joint_action) {
  if (done_) throw ContractError("step: episode already finished");
  if (static_cast<int>(joint_action.size()) != num_agents())
    throw ContractError("step: joint action length mismatch");

  struct Intent {
    bool has_move = false;
    Vec2 move{};
    int attack_target = -1;
    int repair_target = -1;
  };
  std::vector<Intent> intents(agents_.size());

  // Decisions are made on the pre-move state, consistent with the
  // observations the actions were chosen from.
  for (const Agent& a : agents_) {
    if (!a.alive) continue;
    const int act = joint_action[a.id];
    if (act < 0 || act >= kNumActions)
      throw ContractError("step: agent " + std::to_string(a.id) + " action out of range");
    const AgentTypeSpec& spec = cfg_.specs[a.type];
    Intent& in = intents[a.id];
    if (act == kHold) continue;
    if (act >= kMoveN && act <= kMoveNW) {
      in.has_move = true;
      in.move = {spec.move_speed * kDirX[act - 1], spec.move_speed * kDirY[act - 1]};
      continue;
    }
    if (act >= kEngage1 && act <= kEngage3) {
      const int k = act - kEngage1;
      const std::vector<int> enemies = legal_enemies_sorted(a.id);
      if (k >= static_cast<int>(enemies.size()))
        throw ContractError("step: agent " + std::to_string(a.id) + " submitted masked action " +
                            std::to_string(act));
      const int target = enemies[k];
      if (dist(a.id, target) <= spec.attack_range) {
        in.attack_target = target;
      } else {
        const double dx = agents_[target].pos.x - a.pos.x;
        const double dy = agents_[target].pos.y - a.pos.y;
        const double n = std::sqrt(dx * dx + dy * dy) + kEps;
        in.has_move = true;
        in.move = {spec.move_speed * dx / n, spec.move_speed * dy / n};
      }
      continue;
    }
    // kRepair
    const int target = repair_target(a.id);
    if (target < 0)
      throw ContractError("step: agent " + std::to_string(a.id) + " submitted masked action " +
                          std::to_string(act));
    if (dist(a.id, target) <= spec.repair_range) {
      in.repair_target = target;
    } else {
      const double dx = agents_[target].pos.x - a.pos.x;
      const double dy = agents_[target].pos.y - a.pos.y;
      const double n = std::sqrt(dx * dx + dy * dy) + kEps;
      in.has_move = true;
      in.move = {spec.move_speed * dx / n, spec.move_speed * dy / n};
    }
  }

  // Movement.
  for (Agent& a : agents_) {
    if (!a.alive || !intents[a.id].has_move) continue;
    a.pos.x = std::clamp(a.pos.x + intents[a.id].move.x, 0.0, cfg_.arena_size);
    a.pos.y = std::clamp(a.pos.y + intents[a.id].move.y, 0.0, cfg_.arena_size);
  }

  // Attacks, simultaneous: damage lands even if both combatants die.
  std::vector<double> damage(agents_.size(), 0.0);
  for (const Agent& a : agents_) {
    if (!a.alive) continue;
    const int t = intents[a.id].attack_target;
    if (t >= 0) damage[t] += cfg_.specs[a.type].attack_damage;
  }
  for (Agent& a : agents_) {
    if (a.alive) a.health -= damage[a.id];
  }

  // Repairs, then deaths.
  for (const Agent& a : agents_) {
    if (!a.alive) continue;
    const int t = intents[a.id].repair_target;
    if (t >= 0 && agents_[t].health > 0) {
      agents_[t].health = std::min(agents_[t].health + cfg_.specs[a.type].repair_rate,
                                   cfg_.specs[agents_[t].type].max_health);
    }
  }
  for (Agent& a : agents_) {
    if (a.alive && a.health <= 0) {
      a.alive = false;
      a.health = 0.0;
    }
  }

  ++tick_;
  std::array<int, 2> remaining = {0, 0};
  for (const Agent& a : agents_)
    if (a.alive) ++remaining[a.team];

  StepResult res;
  res.rewards.assign(agents_.size(), 0.0);
  done_ = (remaining[0] == 0 || remaining[1] == 0 || tick_ >= cfg_.episode_limit);
  if (done_) {
    outcome_.remaining = remaining;
    outcome_.length = tick_;
    if (remaining[0] == remaining[1]) {
      outcome_.winner = -1;
      outcome_.delta_n = 0;
      outcome_.reward = 0.0;
    } else {
      outcome_.winner = (remaining[0] > remaining[1]) ? 0 : 1;
      outcome_.delta_n = std::abs(remaining[0] - remaining[1]);
      outcome_.reward = kRewardScale * outcome_.delta_n;
      // The team-level scalar is assigned uniformly to every agent of the
      // team, dead or alive.
      for (const Agent& a : agents_)
        res.rewards[a.id] = (a.team == outcome_.winner) ? outcome_.reward : -outcome_.reward;
    }
    res.outcome = outcome_;
  }
  res.done = done_;
  return res;
}

void HeteroEnv::write_replay_header(std::ostream& os) const {
  nlohmann::json j;
  j["arena"] = cfg_.arena_size;
  j["team_counts"] = cfg_.team_counts;
  j["episode_limit"] = cfg_.episode_limit;
  j["seed"] = seed_;
  os << j.dump() << "\n";
}

void HeteroEnv::write_replay_tick(std::ostream& os, const std::vector<int>& actions) const {
  nlohmann::json j;
  j["t"] = tick_;
  nlohmann::json arr = nlohmann::json::array();
  for (const Agent& a : agents_) {
    if (!a.alive) continue;
    arr.push_back({a.id, a.team, a.type, a.pos.x, a.pos.y, a.health, actions[a.id]});
  }
  j["agents"] = std::move(arr);
  os << j.dump() << "\n";
}

void HeteroEnv::write_replay_outcome(std::ostream& os) const {
  nlohmann::json j;
  j["winner"] = outcome_.winner;
  j["remaining"] = outcome_.remaining;
  j["delta_n"] = outcome_.delta_n;
  j["reward"] = outcome_.reward;
  j["length"] = outcome_.length;
  os << j.dump() << "\n";
}

}  // namespace hlt
