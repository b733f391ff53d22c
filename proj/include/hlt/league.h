#ifndef HLT_LEAGUE_H_
#define HLT_LEAGUE_H_

#include <memory>
#include <vector>

#include "hlt/policy.h"
#include "hlt/rng.h"

namespace hlt {

// Per-episode policy assignment: one type runs a league member's policy,
// all other types run the frontier. group_id < 0 means pure-frontier.
struct MixedCombination {
  int group_id = -1;
  int replaced_type = -1;
  double member_beta = 0.0;  // league member win rate at episode start

  bool pure() const { return group_id < 0; }
};

struct BetaCell {
  long long wins = 0;
  long long games = 0;

  double rate() const { return games > 0 ? static_cast<double>(wins) / games : 0.0; }
};

struct LeagueMember {
  int group_id = 0;
  std::shared_ptr<const PolicyGroup> group;  // null in pure bookkeeping tests
  long long wins = 0;
  long long games = 0;
  std::vector<BetaCell> cells;  // per replaced type

  double beta() const { return games > 0 ? static_cast<double>(wins) / games : 0.0; }
};

// Uniform-mean win rates: per_type[m] averages cell rates over members with
// data for type m; overall averages the defined per-type values.
struct BetaAggregates {
  std::vector<double> per_type;
  std::vector<bool> defined;
  double overall = 0.0;
  bool overall_defined = false;
};

// Advantage prioritization factor (psi + beta_overall) / (psi + beta_type).
// Falls back to 1 for pure-frontier samples or undefined aggregates.
double priority_factor(const BetaAggregates& agg, int replaced_type, double psi);

// Bounded container of frozen policy group snapshots, sorted by win rate
// descending. Reads are plain; all mutation happens on the coordinator
// between rollout batches.
class League {
 public:
  League(int capacity, int num_types);

  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  int capacity() const { return capacity_; }
  int num_types() const { return num_types_; }
  const std::vector<LeagueMember>& members() const { return members_; }
  const LeagueMember* find(int group_id) const;

  // With probability p_pure (or always, when empty) returns pure-frontier;
  // otherwise the member and replaced type are uniform draws.
  MixedCombination sample_combination(Rng& rng, double p_pure) const;

  // Books a finished episode vs the scripted opponent. Pure episodes update
  // the frontier counters; mixed episodes update the member and its cell.
  void record_outcome(const MixedCombination& combo, bool won);

  struct UpdateResult {
    bool admitted = false;
    int evicted_group_id = -1;
  };
  // Gate: admitted when the league is not full, or when the candidate won at
  // least one of its seeding games. On overflow the sorted-adjacent pair
  // with minimal |delta beta| is found (ties toward the list head) and the
  // newer group of that pair is evicted.
  UpdateResult league_update(std::shared_ptr<const PolicyGroup> candidate, long long seed_wins,
                             long long seed_games);

  BetaAggregates aggregates() const;

  double frontier_win_rate() const {
    return frontier_games > 0 ? static_cast<double>(frontier_wins) / frontier_games : 0.0;
  }

  // Direct insertion, for tests and checkpoint restore.
  void restore_member(LeagueMember member);
  void restore_frontier_counters(long long wins, long long games);

  long long frontier_wins = 0;
  long long frontier_games = 0;

 private:
  void sort_members();

  int capacity_;
  int num_types_;
  std::vector<LeagueMember> members_;
};

}  // namespace hlt

#endif  // HLT_LEAGUE_H_
