#include "hlt/league.h"

#include <algorithm>
#include <cmath>

#include "hlt/errors.h"

namespace hlt {
namespace {

// Cumulative counters are halved past this many games so stale estimates
// keep tracking the current frontier.
constexpr long long kDecayThreshold = 512;

void maybe_decay(long long& wins, long long& games) {
  if (games > kDecayThreshold) {
    wins /= 2;
    games /= 2;
  }
}

}  // namespace

double priority_factor(const BetaAggregates& agg, int replaced_type, double psi) {
  if (replaced_type < 0) return 1.0;
  if (!agg.overall_defined) return 1.0;
  if (replaced_type >= static_cast<int>(agg.defined.size()) || !agg.defined[replaced_type])
    return 1.0;
  return (psi + agg.overall) / (psi + agg.per_type[replaced_type]);
}

League::League(int capacity, int num_types) : capacity_(capacity), num_types_(num_types) {
  if (capacity < 1 || num_types < 1) throw ConfigError("league: capacity and types must be >= 1");
}

const LeagueMember* League::find(int group_id) const {
  for (const LeagueMember& m : members_)
    if (m.group_id == group_id) return &m;
  return nullptr;
}

MixedCombination League::sample_combination(Rng& rng, double p_pure) const {
  MixedCombination combo;
  if (members_.empty()) return combo;
  if (rng.uniform() < p_pure) return combo;
  const LeagueMember& m = members_[rng.uniform_int(size())];
  combo.group_id = m.group_id;
  combo.replaced_type = rng.uniform_int(num_types_);
  combo.member_beta = m.beta();
  return combo;
}

void League::record_outcome(const MixedCombination& combo, bool won) {
  if (combo.pure()) {
    frontier_games += 1;
    frontier_wins += won ? 1 : 0;
    maybe_decay(frontier_wins, frontier_games);
    return;
  }
  for (LeagueMember& m : members_) {
    if (m.group_id != combo.group_id) continue;
    m.games += 1;
    m.wins += won ? 1 : 0;
    maybe_decay(m.wins, m.games);
    BetaCell& cell = m.cells[combo.replaced_type];
    cell.games += 1;
    cell.wins += won ? 1 : 0;
    maybe_decay(cell.wins, cell.games);
    sort_members();
    return;
  }
  // Member already evicted; the episode still counted for the frontier-side
  // metrics upstream, nothing to book here.
}

League::UpdateResult League::league_update(std::shared_ptr<const PolicyGroup> candidate,
                                           long long seed_wins, long long seed_games) {
  UpdateResult res;
  const bool full = size() >= capacity_;
  if (full && seed_wins < 1) return res;  // gate: degenerate snapshot rejected

  LeagueMember m;
  m.group_id = candidate ? candidate->group_id : 0;
  m.group = std::move(candidate);
  if (m.group) m.group_id = m.group->group_id;
  m.wins = seed_wins;
  m.games = seed_games;
  m.cells.assign(num_types_, BetaCell{});
  members_.push_back(std::move(m));
  res.admitted = true;
  sort_members();

  if (size() > capacity_) {
    // Minimal |delta beta| over the sorted list occurs at an adjacent pair;
    // ties pick the pair nearest the head, and the newer group goes.
    int best_pair = 0;
    double best_gap = 1e300;
    for (int i = 0; i + 1 < size(); ++i) {
      const double gap = std::abs(members_[i].beta() - members_[i + 1].beta());
      if (gap < best_gap) {
        best_gap = gap;
        best_pair = i;
      }
    }
    const int evict_pos = (members_[best_pair].group_id > members_[best_pair + 1].group_id)
                              ? best_pair
                              : best_pair + 1;
    res.evicted_group_id = members_[evict_pos].group_id;
    members_.erase(members_.begin() + evict_pos);
  }
  return res;
}

BetaAggregates League::aggregates() const {
  BetaAggregates agg;
  agg.per_type.assign(num_types_, 0.0);
  agg.defined.assign(num_types_, false);
  int defined_types = 0;
  for (int t = 0; t < num_types_; ++t) {
    double sum = 0.0;
    int n = 0;
    for (const LeagueMember& m : members_) {
      if (m.cells[t].games > 0) {
        sum += m.cells[t].rate();
        ++n;
      }
    }
    if (n > 0) {
      agg.per_type[t] = sum / n;
      agg.defined[t] = true;
      agg.overall += agg.per_type[t];
      ++defined_types;
    }
  }
  if (defined_types > 0) {
    agg.overall /= defined_types;
    agg.overall_defined = true;
  }
  return agg;
}

void League::restore_member(LeagueMember member) {
  if (static_cast<int>(member.cells.size()) != num_types_)
    member.cells.resize(num_types_, BetaCell{});
  members_.push_back(std::move(member));
  sort_members();
  if (size() > capacity_) throw ContractError("league: restore exceeded capacity");
}

void League::restore_frontier_counters(long long wins, long long games) {
  frontier_wins = wins;
  frontier_games = games;
}

void League::sort_members() {
  std::stable_sort(members_.begin(), members_.end(), [](const LeagueMember& a, const LeagueMember& b) {
    if (a.beta() != b.beta()) return a.beta() > b.beta();
    return a.group_id < b.group_id;
  });
}

}  // namespace hlt
