#ifndef HLT_SCRIPTED_H_
#define HLT_SCRIPTED_H_

#include <vector>

#include "hlt/env.h"

namespace hlt {

// Centralized full-observation expert controller. Living drones each lead an
// attack group; remaining agents are distributed round-robin by id. Each
// group engages the enemy with the highest threat score
// (attack_damage * health_fraction) / (1 + distance to group centroid),
// ties going to the lowest enemy id. Drones issue repairs when an ally drops
// below 70% health. Returns a full joint action vector (other team's entries
// are kHold); every returned action is legal under the env masks.
std::vector<int> scripted_expert(const HeteroEnv& env, int team);

}  // namespace hlt

#endif  // HLT_SCRIPTED_H_
