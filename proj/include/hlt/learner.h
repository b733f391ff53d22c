#ifndef HLT_LEARNER_H_
#define HLT_LEARNER_H_

#include <cstdint>
#include <vector>

#include "hlt/adam.h"
#include "hlt/policy.h"

namespace hlt {

struct LearnerConfig {
  double gamma = 0.99;
  double lambda = 0.98;  // reward propagation discount, used as the GAE lambda
  double clip_eps = 0.2;
  double dual_clip = 3.0;
  double psi = 0.5;
  double entropy_coef = 0.0005;
  double critic_lr = 0.004;
  double actor_lr = 0.0004;
  double value_loss_coef = 1.0;
  double max_grad_norm = 10.0;
  int episodes_per_iter = 32;
  int ppo_epochs = 24;
  int league_update_every = 100;

  void validate() const;
};

// One agent-step training record. Only steps taken under frontier policies
// are collected; league-controlled agents have no gradient path.
struct Sample {
  int type = 0;
  int replaced_type = -1;  // combination tag, -1 for pure-frontier episodes
  std::vector<double> obs;
  std::vector<double> identity;
  std::vector<std::uint8_t> mask;
  int action = 0;
  double log_prob_old = 0.0;
  double value = 0.0;
  double ret = 0.0;
  double adv = 0.0;     // normalized GAE times the prioritization factor
  double a_beta = 1.0;  // prioritization factor, kept for diagnostics
};

// Backward-recursive generalized advantage estimation. values must hold one
// more entry than rewards (the bootstrap, zero at terminal states).
// returns[t] = advantages[t] + values[t].
void gae(const std::vector<double>& rewards, const std::vector<double>& values, double gamma,
         double lambda, std::vector<double>& advantages, std::vector<double>& returns);

// Standardizes to zero mean / unit variance (population std); a
// zero-variance batch is only mean-shifted. Requires at least two entries.
void normalize_advantages(std::vector<double>& advantages);

struct LossReport {
  double surrogate_loss = 0.0;
  double critic_loss = 0.0;
  double entropy = 0.0;
  double mean_a_beta = 1.0;
  double grad_norm = 0.0;
  double clip_fraction = 0.0;
  int samples = 0;
};

// Dual-clip PPO over a frontier policy group, with separate actor and critic
// optimizer states (the critic generator gets its own learning rate).
class Learner {
 public:
  Learner(PolicyGroup* frontier, LearnerConfig cfg);

  LossReport ppo_update(const std::vector<Sample>& batch);

  Adam& actor_optimizer() { return actor_opt_; }
  Adam& critic_optimizer() { return critic_opt_; }
  const LearnerConfig& config() const { return cfg_; }

 private:
  PolicyGroup* frontier_;
  LearnerConfig cfg_;
  Adam actor_opt_;
  Adam critic_opt_;
};

}  // namespace hlt

#endif  // HLT_LEARNER_H_
