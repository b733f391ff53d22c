#include "hlt/learner.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "hlt/errors.h"
#include "hlt/tape.h"

namespace hlt {

void LearnerConfig::validate() const {
  if (!(psi > 0.0 && psi < 1.0)) throw ConfigError("learner: psi must be in (0,1)");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("learner: gamma must be in (0,1]");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw ConfigError("learner: lambda must be in (0,1]");
  if (!(clip_eps > 0.0 && clip_eps < 1.0)) throw ConfigError("learner: clip_eps must be in (0,1)");
  if (dual_clip <= 1.0) throw ConfigError("learner: dual_clip must exceed 1");
  if (episodes_per_iter < 1 || ppo_epochs < 1 || league_update_every < 1)
    throw ConfigError("learner: counts must be >= 1");
}

void gae(const std::vector<double>& rewards, const std::vector<double>& values, double gamma,
         double lambda, std::vector<double>& advantages, std::vector<double>& returns) {
  const std::size_t t_max = rewards.size();
  if (values.size() != t_max + 1)
    throw ContractError("gae: need |values| = |rewards| + 1 (bootstrap appended)");
  advantages.assign(t_max, 0.0);
  returns.assign(t_max, 0.0);
  double acc = 0.0;
  for (std::size_t t = t_max; t-- > 0;) {
    const double delta = rewards[t] + gamma * values[t + 1] - values[t];
    acc = delta + gamma * lambda * acc;
    advantages[t] = acc;
    returns[t] = acc + values[t];
  }
}

void normalize_advantages(std::vector<double>& advantages) {
  if (advantages.size() < 2) throw ContractError("normalize_advantages: need >= 2 samples");
  double mean = 0.0;
  for (double a : advantages) mean += a;
  mean /= advantages.size();
  double var = 0.0;
  for (double a : advantages) var += (a - mean) * (a - mean);
  var /= advantages.size();
  const double std_dev = std::sqrt(var);
  for (double& a : advantages) {
    a -= mean;
    if (std_dev > 0.0) a /= std_dev;
  }
}

Learner::Learner(PolicyGroup* frontier, LearnerConfig cfg)
    : frontier_(frontier), cfg_(cfg) {
  cfg_.validate();
  if (frontier_->frozen) throw ContractError("learner: frontier group is frozen");
  actor_opt_ = Adam(frontier_->actor_params(), cfg_.actor_lr);
  critic_opt_ = Adam(frontier_->critic_params(), cfg_.critic_lr);
}

LossReport Learner::ppo_update(const std::vector<Sample>& batch) {
  LossReport report;
  report.samples = static_cast<int>(batch.size());
  if (batch.empty()) return report;

  // Group samples by agent type, and within a type by identity vector, so
  // each group shares one generated head.
  struct Group {
    std::vector<int> sample_idx;
  };
  std::map<std::pair<int, std::vector<double>>, Group> groups;
  for (std::size_t i = 0; i < batch.size(); ++i)
    groups[{batch[i].type, batch[i].identity}].sample_idx.push_back(static_cast<int>(i));

  const int total = static_cast<int>(batch.size());
  const double lo = 1.0 - cfg_.clip_eps;
  const double hi = 1.0 + cfg_.clip_eps;

  std::vector<Param*> trainable = frontier_->all_params();
  double mean_abeta = 0.0;
  for (const Sample& s : batch) mean_abeta += s.a_beta;
  report.mean_a_beta = mean_abeta / total;

  for (int epoch = 0; epoch < cfg_.ppo_epochs; ++epoch) {
    Tape tape;
    int loss = -1;
    double obj_sum_v = 0.0, ent_sum_v = 0.0, crit_sum_v = 0.0;
    int clipped = 0;

    for (auto& [key, group] : groups) {
      const int type = key.first;
      const int g = static_cast<int>(group.sample_idx.size());
      const int obs_dim = static_cast<int>(batch[group.sample_idx[0]].obs.size());

      Tensor2 obs(g, obs_dim);
      Tensor2 mask(g, static_cast<int>(batch[group.sample_idx[0]].mask.size()));
      std::vector<int> actions(g);
      Tensor2 logp_old(g, 1), adv(g, 1), ret(g, 1), pos(g, 1), neg(g, 1), dual(g, 1);
      for (int r = 0; r < g; ++r) {
        const Sample& s = batch[group.sample_idx[r]];
        std::copy(s.obs.begin(), s.obs.end(), obs.data.begin() + static_cast<std::size_t>(r) * obs_dim);
        for (int c = 0; c < mask.cols; ++c) mask.at(r, c) = s.mask[c] ? 1.0 : 0.0;
        actions[r] = s.action;
        logp_old.at(r, 0) = s.log_prob_old;
        adv.at(r, 0) = s.adv;
        ret.at(r, 0) = s.ret;
        pos.at(r, 0) = s.adv >= 0.0 ? 1.0 : 0.0;
        neg.at(r, 0) = s.adv >= 0.0 ? 0.0 : 1.0;
        dual.at(r, 0) = cfg_.dual_clip * s.adv;
      }

      ActorCriticNet& net = frontier_->net(type);
      const int x = tape.constant(std::move(obs));
      const int h = net.encoder.forward(tape, x);
      const int cond = tape.constant(
          Tensor2::from_rows(1, static_cast<int>(key.second.size()), key.second));

      const int logits = net.actor_head.forward(tape, cond, h);
      const int ls = tape.masked_log_softmax(logits, mask);
      const int logp = tape.gather_cols(ls, actions);
      const int ratio = tape.exp_(tape.sub(logp, tape.constant(logp_old)));

      const int adv_c = tape.constant(adv);
      const int s1 = tape.mul(ratio, adv_c);
      const int lo_c = tape.constant(Tensor2(g, 1, lo));
      const int hi_c = tape.constant(Tensor2(g, 1, hi));
      const int clipped_ratio = tape.min_(tape.max_(ratio, lo_c), hi_c);
      const int s2 = tape.mul(clipped_ratio, adv_c);
      const int m = tape.min_(s1, s2);
      // Dual-clip floor, active only for negative advantages.
      const int floored = tape.max_(m, tape.constant(dual));
      const int obj = tape.add(tape.mul(m, tape.constant(pos)), tape.mul(floored, tape.constant(neg)));
      const int obj_sum = tape.sum_all(obj);

      const int ent_elems = tape.mul(tape.exp_(ls), ls);  // masked entries are exactly 0
      const int ent_sum = tape.sum_all(ent_elems);

      const int v = net.critic_head.forward(tape, cond, h);
      const int verr = tape.sub(v, tape.constant(ret));
      const int crit_sum = tape.sum_all(tape.square(verr));

      obj_sum_v += tape.value(obj_sum).data[0];
      ent_sum_v += tape.value(ent_sum).data[0];
      crit_sum_v += tape.value(crit_sum).data[0];
      for (int r = 0; r < g; ++r)
        if (std::abs(tape.value(ratio).at(r, 0) - 1.0) > cfg_.clip_eps) ++clipped;

      // loss += -obj_sum/B + vf*crit_sum/B + ent_coef*ent_sum/B
      // (entropy bonus: entropy = -ent_sum/B, so +ent_coef*ent_sum maximizes it)
      int piece = tape.add(tape.scale(obj_sum, -1.0 / total),
                           tape.scale(crit_sum, cfg_.value_loss_coef / total));
      piece = tape.add(piece, tape.scale(ent_sum, cfg_.entropy_coef / total));
      loss = (loss < 0) ? piece : tape.add(loss, piece);
    }

    const double loss_v = tape.value(loss).data[0];
    if (!std::isfinite(loss_v))
      throw DivergenceError("ppo_update: non-finite loss (surrogate=" +
                            std::to_string(-obj_sum_v / total) +
                            ", critic=" + std::to_string(crit_sum_v / total) + ")");

    tape.backward(loss);
    report.grad_norm = clip_global_norm(trainable, cfg_.max_grad_norm);
    actor_opt_.step();
    critic_opt_.step();

    report.surrogate_loss = -obj_sum_v / total;
    report.critic_loss = crit_sum_v / total;
    report.entropy = -ent_sum_v / total;
    report.clip_fraction = static_cast<double>(clipped) / total;
  }
  return report;
}

}  // namespace hlt
