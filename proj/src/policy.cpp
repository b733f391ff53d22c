#include "hlt/policy.h"

#include <algorithm>
#include <cmath>

#include "hlt/checkpoint.h"
#include "hlt/errors.h"

namespace hlt {

std::vector<double> build_identity(int own_type, int num_types, int replaced_type,
                                   double league_beta) {
  if (own_type < 0 || own_type >= num_types)
    throw ContractError("build_identity: unknown agent type " + std::to_string(own_type));
  if (replaced_type >= num_types)
    throw ContractError("build_identity: unknown replaced type " + std::to_string(replaced_type));
  const double beta = std::clamp(league_beta, 0.01, 1.0);
  std::vector<double> f(2 * num_types, 0.0);
  for (int d = 0; d < num_types; ++d) {
    const bool replaced_slot = (replaced_type >= 0 && d == replaced_type && own_type != replaced_type);
    f[d] = replaced_slot ? beta : 1.0;
  }
  f[num_types + own_type] = 1.0;
  return f;
}

ActorCriticNet::ActorCriticNet(const std::string& name, int obs_dim, int num_actions,
                               int ident_dim, const NetConfig& cfg, Rng& rng) {
  std::vector<int> sizes;
  sizes.push_back(obs_dim);
  for (int l = 0; l < cfg.encoder_layers; ++l) sizes.push_back(cfg.encoder_width);
  encoder = DenseNet(name + ".enc", sizes, Activation::kTanh, rng);
  actor_head = HyperLayer(name + ".actor", ident_dim, cfg.gen_hidden, cfg.encoder_width,
                          num_actions, rng);
  critic_head = HyperLayer(name + ".critic", ident_dim, cfg.gen_hidden, cfg.encoder_width, 1, rng);
}

std::vector<Param*> ActorCriticNet::params() {
  std::vector<Param*> out = encoder.params();
  for (Param* p : actor_head.params()) out.push_back(p);
  for (Param* p : critic_head.params()) out.push_back(p);
  return out;
}

std::vector<const Param*> ActorCriticNet::params() const {
  std::vector<const Param*> out = encoder.params();
  for (const Param* p : actor_head.params()) out.push_back(p);
  for (const Param* p : critic_head.params()) out.push_back(p);
  return out;
}

PolicyGroup::PolicyGroup(int id, int num_types, int obs_dim, int num_actions,
                         const NetConfig& cfg, std::uint64_t init_seed)
    : group_id(id) {
  for (int t = 0; t < num_types; ++t) {
    Rng rng(seed_combine(init_seed, static_cast<std::uint64_t>(t)));
    nets_.emplace_back("d" + std::to_string(t), obs_dim, num_actions, 2 * num_types, cfg, rng);
  }
}

std::vector<double> masked_probs(const std::vector<double>& logits,
                                 const std::vector<std::uint8_t>& mask) {
  if (logits.size() != mask.size()) throw DimensionError("masked_probs: size mismatch");
  double mx = -1e300;
  bool any = false;
  for (std::size_t i = 0; i < logits.size(); ++i)
    if (mask[i]) {
      any = true;
      mx = std::max(mx, logits[i]);
    }
  if (!any) throw ContractError("masked_probs: all actions masked");
  std::vector<double> p(logits.size(), 0.0);
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i)
    if (mask[i]) {
      p[i] = std::exp(logits[i] - mx);
      z += p[i];
    }
  for (double& v : p) v /= z;
  return p;
}

GeneratedHeads PolicyGroup::generate_heads(int type, const std::vector<double>& identity) const {
  const ActorCriticNet& net = nets_[type];
  Tensor2 f = Tensor2::from_rows(1, static_cast<int>(identity.size()), identity);
  GeneratedHeads heads;
  auto aw = net.actor_head.generate_nograd(f);
  heads.actor_w = std::move(aw.first);
  heads.actor_b = std::move(aw.second);
  auto cw = net.critic_head.generate_nograd(f);
  heads.critic_w = std::move(cw.first);
  heads.critic_b = std::move(cw.second);
  return heads;
}

ActResult PolicyGroup::act_with_heads(int type, const std::vector<double>& obs,
                                      const std::vector<std::uint8_t>& mask,
                                      const GeneratedHeads& heads, Rng& rng, bool greedy) const {
  const ActorCriticNet& net = nets_[type];
  Tensor2 x = Tensor2::from_rows(1, static_cast<int>(obs.size()), obs);
  Tensor2 h = net.encoder.forward_nograd(x);

  Tensor2 logits = matmul(h, heads.actor_w);
  for (int c = 0; c < logits.cols; ++c) logits.data[c] += heads.actor_b.data[c];

  const std::vector<double> probs = masked_probs(logits.data, mask);

  int action = 0;
  if (greedy) {
    double best = -1.0;
    for (std::size_t i = 0; i < probs.size(); ++i)
      if (mask[i] && probs[i] > best) {  // ties keep the lowest index
        best = probs[i];
        action = static_cast<int>(i);
      }
  } else {
    action = rng.categorical(probs);
  }

  Tensor2 v = matmul(h, heads.critic_w);
  ActResult res;
  res.action = action;
  res.log_prob = std::log(probs[action]);
  res.value = v.data[0] + heads.critic_b.data[0];
  return res;
}

ActResult PolicyGroup::act(int type, const std::vector<double>& obs,
                           const std::vector<std::uint8_t>& mask,
                           const std::vector<double>& identity, Rng& rng, bool greedy) const {
  return act_with_heads(type, obs, mask, generate_heads(type, identity), rng, greedy);
}

PolicyGroup PolicyGroup::freeze(int new_group_id) const {
  PolicyGroup snap = *this;
  snap.group_id = new_group_id;
  snap.frozen = true;
  snap.wins = 0;
  snap.games = 0;
  return snap;
}

std::vector<Param*> PolicyGroup::all_params() {
  std::vector<Param*> out;
  for (ActorCriticNet& n : nets_)
    for (Param* p : n.params()) out.push_back(p);
  return out;
}

std::vector<const Param*> PolicyGroup::all_params() const {
  std::vector<const Param*> out;
  for (const ActorCriticNet& n : nets_)
    for (const Param* p : n.params()) out.push_back(p);
  return out;
}

std::vector<Param*> PolicyGroup::actor_params() {
  std::vector<Param*> out;
  for (ActorCriticNet& n : nets_) {
    for (Param* p : n.encoder.params()) out.push_back(p);
    for (Param* p : n.actor_head.params()) out.push_back(p);
  }
  return out;
}

std::vector<Param*> PolicyGroup::critic_params() {
  std::vector<Param*> out;
  for (ActorCriticNet& n : nets_)
    for (Param* p : n.critic_head.params()) out.push_back(p);
  return out;
}

void PolicyGroup::save(const std::string& path) const { save_params(path, all_params()); }

void PolicyGroup::load(const std::string& path) {
  std::vector<Param*> params;
  for (ActorCriticNet& n : nets_)
    for (Param* p : n.params()) params.push_back(p);
  load_params(path, params);
}

std::uint64_t PolicyGroup::checksum() const { return params_checksum(all_params()); }

}  // namespace hlt
