#include "hlt/scripted.h"

#include <algorithm>
#include <cmath>

namespace hlt {
namespace {

constexpr double kRepairTrigger = 0.7;

int quantized_move(double dx, double dy) {
  // Highest dot product with the 8 compass unit vectors; ties pick the
  // lowest action index.
  static const double ux[8] = {0, 0.7071067811865476, 1, 0.7071067811865476, 0, -0.7071067811865476, -1, -0.7071067811865476};
  static const double uy[8] = {1, 0.7071067811865476, 0, -0.7071067811865476, -1, -0.7071067811865476, 0, 0.7071067811865476};
  int best = 0;
  double best_dot = -1e300;
  for (int i = 0; i < 8; ++i) {
    const double dot = dx * ux[i] + dy * uy[i];
    if (dot > best_dot) {
      best_dot = dot;
      best = i;
    }
  }
  return kMoveN + best;
}

// Max-threat enemy for a group centroid, restricted to enemies the asking
// agent may legally attack (or unrestricted when agent_id < 0).
int max_threat_enemy(const HeteroEnv& env, int team, Vec2 centroid, int agent_id) {
  int best = -1;
  double best_score = -1e300;
  for (const Agent& e : env.agents()) {
    if (!e.alive || e.team == team) continue;
    if (agent_id >= 0 && !env.can_attack(agent_id, e.id)) continue;
    const AgentTypeSpec& spec = env.config().specs[e.type];
    const double hx = e.pos.x - centroid.x;
    const double hy = e.pos.y - centroid.y;
    const double d = std::sqrt(hx * hx + hy * hy);
    const double score = spec.attack_damage * (e.health / spec.max_health) / (1.0 + d);
    if (score > best_score) {  // ties keep the lowest id (iteration order)
      best_score = score;
      best = e.id;
    }
  }
  return best;
}

}  // namespace

std::vector<int> scripted_expert(const HeteroEnv& env, int team) {
  std::vector<int> actions(env.num_agents(), kHold);

  std::vector<int> leaders;
  std::vector<int> rest;
  for (const Agent& a : env.agents()) {
    if (!a.alive || a.team != team) continue;
    if (a.type == kDrone)
      leaders.push_back(a.id);
    else
      rest.push_back(a.id);
  }
  if (leaders.empty() && rest.empty()) return actions;

  // All drones dead: the whole team forms one leaderless group.
  std::vector<std::vector<int>> groups;
  if (leaders.empty()) {
    groups.push_back(rest);
  } else {
    groups.resize(leaders.size());
    for (std::size_t g = 0; g < leaders.size(); ++g) groups[g].push_back(leaders[g]);
    for (std::size_t i = 0; i < rest.size(); ++i) groups[i % groups.size()].push_back(rest[i]);
  }

  for (const std::vector<int>& group : groups) {
    Vec2 centroid;
    for (int id : group) {
      centroid.x += env.agent(id).pos.x;
      centroid.y += env.agent(id).pos.y;
    }
    centroid.x /= group.size();
    centroid.y /= group.size();

    const int group_target = max_threat_enemy(env, team, centroid, -1);
    if (group_target < 0) continue;  // no enemies left; episode is over anyway

    for (int id : group) {
      const Agent& a = env.agent(id);

      if (a.type == kDrone) {
        bool hurt_ally = false;
        for (const Agent& ally : env.agents()) {
          if (ally.alive && ally.team == team && ally.id != id &&
              ally.health < kRepairTrigger * env.config().specs[ally.type].max_health) {
            hurt_ally = true;
            break;
          }
        }
        if (hurt_ally && env.repair_target(id) >= 0) {
          actions[id] = kRepair;
          continue;
        }
      }

      int target = group_target;
      if (!env.can_attack(id, target)) {
        target = max_threat_enemy(env, team, centroid, id);
      }
      if (target < 0) {
        // Nothing this agent can ever hit (e.g. gun vs last drones); advance
        // with the group.
        actions[id] = quantized_move(env.agent(group_target).pos.x - a.pos.x,
                                     env.agent(group_target).pos.y - a.pos.y);
        continue;
      }

      const std::vector<int> nearest = env.legal_enemies_sorted(id);
      int slot = -1;
      for (int k = 0; k < std::min<int>(kEngageSlots, static_cast<int>(nearest.size())); ++k) {
        if (nearest[k] == target) {
          slot = k;
          break;
        }
      }
      if (slot >= 0) {
        actions[id] = kEngage1 + slot;
      } else {
        actions[id] = quantized_move(env.agent(target).pos.x - a.pos.x,
                                     env.agent(target).pos.y - a.pos.y);
      }
    }
  }
  return actions;
}

}  // namespace hlt
