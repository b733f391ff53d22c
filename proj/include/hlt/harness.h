#ifndef HLT_HARNESS_H_
#define HLT_HARNESS_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hlt/env.h"
#include "hlt/league.h"
#include "hlt/learner.h"
#include "hlt/policy.h"

namespace hlt {

struct RunConfig {
  ScenarioConfig scenario;
  LearnerConfig learner;
  NetConfig net;
  int league_capacity = 10;
  double p_pure = 0.1;
  int eval_gate_games = 32;
  int iterations = 100;
  int eval_episodes = 320;
  std::uint64_t seed = 0;
  int parallel_envs = 16;
  bool log_timing = false;  // off by default so metrics streams are bit-reproducible
  std::string out_dir = "out";

  void validate() const;
  static RunConfig from_json_file(const std::string& path);
  std::string to_json() const;
};

struct MetricsRecord {
  int iteration = 0;
  long long episodes_seen = 0;
  double frontier_win_rate = 0.0;
  double iter_win_rate = 0.0;  // wins this iteration / episodes this iteration
  std::optional<double> beta_overall;
  std::vector<std::optional<double>> beta_per_type;
  int league_size = 0;
  LossReport loss;
  double wall_ms = 0.0;
};

enum class EvalMode { kPure, kFrontierInclusive, kFrontierExclusive };
EvalMode eval_mode_from_string(const std::string& s);

struct EvalResult {
  int episodes = 0;
  int wins = 0;
  double win_rate = 0.0;
  double ci_lo = 0.0;  // Wilson 95% interval
  double ci_hi = 0.0;
};

EvalResult wilson_interval(int wins, int episodes);

// Per-episode policy assignment for the learning team: policies[t] is the
// group controlling type t (frontier or a frozen league member).
struct TeamAssignment {
  std::vector<const PolicyGroup*> policies;
  std::vector<std::vector<double>> identities;  // per type
};

struct EpisodeRecord {
  bool won = false;
  EpisodeOutcome outcome;
  std::vector<Sample> samples;  // frontier-controlled steps only, GAE not yet applied
};

// Plays one episode of the assigned team (team 0) against the scripted
// expert (team 1). When collect is false, no samples are gathered.
EpisodeRecord play_episode(const ScenarioConfig& scenario, const TeamAssignment& team,
                           const PolicyGroup& frontier, const LearnerConfig& lc,
                           std::uint64_t episode_seed, bool greedy, bool collect,
                           std::ostream* replay = nullptr);

// Six-stage training loop: sample combinations, roll out, book outcomes,
// prioritize advantages, PPO update, periodic league update + checkpoint.
class Trainer {
 public:
  explicit Trainer(RunConfig cfg);

  void iterate();  // one full iteration
  void run();      // cfg.iterations iterations, metrics + checkpoints to out_dir

  void save_checkpoint(const std::string& dir) const;
  void load_checkpoint(const std::string& dir);

  const PolicyGroup& frontier() const { return *frontier_; }
  League& league() { return league_; }
  const League& league_const() const { return league_; }
  int iteration() const { return iteration_; }
  long long episodes_seen() const { return episodes_seen_; }
  const std::vector<MetricsRecord>& metrics() const { return metrics_; }
  const RunConfig& config() const { return cfg_; }

  static std::string metrics_to_json(const MetricsRecord& rec, bool with_timing);

 private:
  void league_update_step();

  RunConfig cfg_;
  std::unique_ptr<PolicyGroup> frontier_;
  League league_;
  std::unique_ptr<Learner> learner_;
  Rng coordinator_rng_;
  int iteration_ = 0;
  long long episodes_seen_ = 0;
  int next_group_id_ = 1;
  int league_updates_ = 0;
  std::vector<MetricsRecord> metrics_;
};

// Loads a checkpoint and measures greedy win rate vs the scripted expert.
EvalResult evaluate_checkpoint(const std::string& checkpoint_dir, EvalMode mode, int episodes,
                               std::uint64_t seed);

// Re-runs one greedy pure-frontier episode from a checkpoint and writes the
// replay stream to out_path.
void replay_from_checkpoint(const std::string& checkpoint_dir, std::uint64_t episode_seed,
                            const std::string& out_path);

}  // namespace hlt

#endif  // HLT_HARNESS_H_
