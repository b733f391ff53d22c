#include "hlt/harness.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "hlt/checkpoint.h"
#include "hlt/errors.h"
#include "hlt/scripted.h"

namespace hlt {
namespace {

using nlohmann::json;

constexpr std::uint64_t kEpisodeStream = 0x45505349ULL;   // training episodes
constexpr std::uint64_t kGateStream = 0x47415445ULL;      // league admission games
constexpr std::uint64_t kEvalStream = 0x4556414cULL;      // evaluation episodes
constexpr std::uint64_t kInitStream = 0x494e4954ULL;      // parameter init

std::uint64_t episode_seed(std::uint64_t run_seed, std::uint64_t stream, std::uint64_t a,
                           std::uint64_t b) {
  return seed_combine(run_seed, seed_combine(stream, seed_combine(a, b)));
}

void apply_spec_overrides(AgentTypeSpec& spec, const json& j) {
  spec.max_health = j.value("max_health", spec.max_health);
  spec.move_speed = j.value("move_speed", spec.move_speed);
  spec.attack_range = j.value("attack_range", spec.attack_range);
  spec.attack_damage = j.value("attack_damage", spec.attack_damage);
  spec.can_attack_air = j.value("can_attack_air", spec.can_attack_air);
  spec.repair_rate = j.value("repair_rate", spec.repair_rate);
  spec.repair_range = j.value("repair_range", spec.repair_range);
}

json spec_to_json(const AgentTypeSpec& s) {
  return json{{"max_health", s.max_health},       {"move_speed", s.move_speed},
              {"attack_range", s.attack_range},   {"attack_damage", s.attack_damage},
              {"can_attack_air", s.can_attack_air}, {"repair_rate", s.repair_rate},
              {"repair_range", s.repair_range}};
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  if (j.contains("scenario")) {
    const json& s = j["scenario"];
    cfg.scenario.team_counts[kDrone] = s.value("drones", cfg.scenario.team_counts[kDrone]);
    cfg.scenario.team_counts[kMissile] = s.value("missiles", cfg.scenario.team_counts[kMissile]);
    cfg.scenario.team_counts[kGun] = s.value("guns", cfg.scenario.team_counts[kGun]);
    cfg.scenario.arena_size = s.value("arena_size", cfg.scenario.arena_size);
    cfg.scenario.sensing_radius = s.value("sensing_radius", cfg.scenario.sensing_radius);
    cfg.scenario.episode_limit = s.value("episode_limit", cfg.scenario.episode_limit);
    cfg.scenario.obs_slots = s.value("obs_slots", cfg.scenario.obs_slots);
    cfg.scenario.spawn_jitter = s.value("spawn_jitter", cfg.scenario.spawn_jitter);
    cfg.scenario.obs_noise_std = s.value("obs_noise_std", cfg.scenario.obs_noise_std);
    if (s.contains("abilities")) {
      const json& ab = s["abilities"];
      const char* names[kNumTypes] = {"drone", "missile", "gun"};
      for (int t = 0; t < kNumTypes; ++t)
        if (ab.contains(names[t])) apply_spec_overrides(cfg.scenario.specs[t], ab[names[t]]);
    }
  }
  if (j.contains("learner")) {
    const json& l = j["learner"];
    LearnerConfig& lc = cfg.learner;
    lc.gamma = l.value("gamma", lc.gamma);
    lc.lambda = l.value("lambda", lc.lambda);
    lc.clip_eps = l.value("clip_eps", lc.clip_eps);
    lc.dual_clip = l.value("dual_clip", lc.dual_clip);
    lc.psi = l.value("psi", lc.psi);
    lc.entropy_coef = l.value("entropy_coef", lc.entropy_coef);
    lc.critic_lr = l.value("critic_lr", lc.critic_lr);
    lc.actor_lr = l.value("actor_lr", lc.actor_lr);
    lc.value_loss_coef = l.value("value_loss_coef", lc.value_loss_coef);
    lc.max_grad_norm = l.value("max_grad_norm", lc.max_grad_norm);
    lc.episodes_per_iter = l.value("episodes_per_iter", lc.episodes_per_iter);
    lc.ppo_epochs = l.value("ppo_epochs", lc.ppo_epochs);
    lc.league_update_every = l.value("league_update_every", lc.league_update_every);
  }
  if (j.contains("net")) {
    const json& n = j["net"];
    cfg.net.encoder_width = n.value("encoder_width", cfg.net.encoder_width);
    cfg.net.encoder_layers = n.value("encoder_layers", cfg.net.encoder_layers);
    cfg.net.gen_hidden = n.value("gen_hidden", cfg.net.gen_hidden);
  }
  cfg.league_capacity = j.value("league_capacity", cfg.league_capacity);
  cfg.p_pure = j.value("p_pure", cfg.p_pure);
  cfg.eval_gate_games = j.value("eval_gate_games", cfg.eval_gate_games);
  cfg.iterations = j.value("iterations", cfg.iterations);
  cfg.eval_episodes = j.value("eval_episodes", cfg.eval_episodes);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.parallel_envs = j.value("parallel_envs", cfg.parallel_envs);
  cfg.log_timing = j.value("log_timing", cfg.log_timing);
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["scenario"] = {{"drones", cfg.scenario.team_counts[kDrone]},
                   {"missiles", cfg.scenario.team_counts[kMissile]},
                   {"guns", cfg.scenario.team_counts[kGun]},
                   {"arena_size", cfg.scenario.arena_size},
                   {"sensing_radius", cfg.scenario.sensing_radius},
                   {"episode_limit", cfg.scenario.episode_limit},
                   {"obs_slots", cfg.scenario.obs_slots},
                   {"spawn_jitter", cfg.scenario.spawn_jitter},
                   {"obs_noise_std", cfg.scenario.obs_noise_std},
                   {"abilities",
                    {{"drone", spec_to_json(cfg.scenario.specs[kDrone])},
                     {"missile", spec_to_json(cfg.scenario.specs[kMissile])},
                     {"gun", spec_to_json(cfg.scenario.specs[kGun])}}}};
  j["learner"] = {{"gamma", cfg.learner.gamma},
                  {"lambda", cfg.learner.lambda},
                  {"clip_eps", cfg.learner.clip_eps},
                  {"dual_clip", cfg.learner.dual_clip},
                  {"psi", cfg.learner.psi},
                  {"entropy_coef", cfg.learner.entropy_coef},
                  {"critic_lr", cfg.learner.critic_lr},
                  {"actor_lr", cfg.learner.actor_lr},
                  {"value_loss_coef", cfg.learner.value_loss_coef},
                  {"max_grad_norm", cfg.learner.max_grad_norm},
                  {"episodes_per_iter", cfg.learner.episodes_per_iter},
                  {"ppo_epochs", cfg.learner.ppo_epochs},
                  {"league_update_every", cfg.learner.league_update_every}};
  j["net"] = {{"encoder_width", cfg.net.encoder_width},
              {"encoder_layers", cfg.net.encoder_layers},
              {"gen_hidden", cfg.net.gen_hidden}};
  j["league_capacity"] = cfg.league_capacity;
  j["p_pure"] = cfg.p_pure;
  j["eval_gate_games"] = cfg.eval_gate_games;
  j["iterations"] = cfg.iterations;
  j["eval_episodes"] = cfg.eval_episodes;
  j["seed"] = cfg.seed;
  j["parallel_envs"] = cfg.parallel_envs;
  j["log_timing"] = cfg.log_timing;
  j["out_dir"] = cfg.out_dir;
  return j;
}

// Identity vector under a general assignment: slot d_x carries the league
// member's win rate when type d_x is league-controlled and differs from the
// agent's own type; otherwise the placeholder 1.
std::vector<double> assignment_identity(int own_type, const std::vector<std::uint8_t>& league_types,
                                        double member_beta) {
  const int m = static_cast<int>(league_types.size());
  const double beta = std::clamp(member_beta, 0.01, 1.0);
  std::vector<double> f(2 * m, 0.0);
  for (int d = 0; d < m; ++d) f[d] = (league_types[d] && d != own_type) ? beta : 1.0;
  f[m + own_type] = 1.0;
  return f;
}

TeamAssignment make_assignment(const PolicyGroup& frontier, const LeagueMember* member,
                               const std::vector<std::uint8_t>& league_types) {
  TeamAssignment team;
  const double beta = member ? member->beta() : 1.0;
  for (int t = 0; t < kNumTypes; ++t) {
    const bool from_league = member != nullptr && league_types[t];
    team.policies.push_back(from_league ? member->group.get() : &frontier);
    team.identities.push_back(assignment_identity(t, league_types, beta));
  }
  return team;
}

TeamAssignment make_assignment(const PolicyGroup& frontier, const League& league,
                               const MixedCombination& combo) {
  std::vector<std::uint8_t> league_types(kNumTypes, 0);
  const LeagueMember* member = nullptr;
  if (!combo.pure()) {
    member = league.find(combo.group_id);
    if (member == nullptr) throw ContractError("assignment: unknown league member");
    league_types[combo.replaced_type] = 1;
  }
  return make_assignment(frontier, member, league_types);
}

void save_optimizer(const std::string& path, const Adam& opt) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  const std::uint64_t step = static_cast<std::uint64_t>(opt.step_count());
  const std::uint64_t n = opt.first_moment().size();
  os.write(reinterpret_cast<const char*>(&step), sizeof(step));
  os.write(reinterpret_cast<const char*>(&n), sizeof(n));
  os.write(reinterpret_cast<const char*>(opt.first_moment().data()), n * sizeof(double));
  os.write(reinterpret_cast<const char*>(opt.second_moment().data()), n * sizeof(double));
}

void load_optimizer(const std::string& path, Adam& opt) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path);
  std::uint64_t step = 0, n = 0;
  is.read(reinterpret_cast<char*>(&step), sizeof(step));
  is.read(reinterpret_cast<char*>(&n), sizeof(n));
  std::vector<double> m(n), v(n);
  is.read(reinterpret_cast<char*>(m.data()), n * sizeof(double));
  is.read(reinterpret_cast<char*>(v.data()), n * sizeof(double));
  if (!is) throw IoError("truncated optimizer state: " + path);
  opt.restore(static_cast<long long>(step), std::move(m), std::move(v));
}

}  // namespace

void RunConfig::validate() const {
  scenario.validate();
  learner.validate();
  if (league_capacity < 1 || eval_gate_games < 1 || iterations < 1 || eval_episodes < 1 ||
      parallel_envs < 1)
    throw ConfigError("run config: counts must be >= 1");
  if (p_pure < 0.0 || p_pure > 1.0) throw ConfigError("run config: p_pure must be in [0,1]");
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  RunConfig cfg = config_from_json(j);
  cfg.validate();
  return cfg;
}

std::string RunConfig::to_json() const { return config_to_json(*this).dump(2); }

EvalMode eval_mode_from_string(const std::string& s) {
  if (s == "pure") return EvalMode::kPure;
  if (s == "frontier_inclusive") return EvalMode::kFrontierInclusive;
  if (s == "frontier_exclusive") return EvalMode::kFrontierExclusive;
  throw ConfigError("unknown eval mode: " + s);
}

EvalResult wilson_interval(int wins, int episodes) {
  EvalResult r;
  r.wins = wins;
  r.episodes = episodes;
  if (episodes == 0) return r;
  const double z = 1.959963984540054;  // 95%
  const double p = static_cast<double>(wins) / episodes;
  const double n = episodes;
  const double denom = 1.0 + z * z / n;
  const double center = p + z * z / (2 * n);
  const double margin = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  r.win_rate = p;
  r.ci_lo = (wins == 0) ? 0.0 : std::max(0.0, (center - margin) / denom);
  r.ci_hi = (wins == episodes) ? 1.0 : std::min(1.0, (center + margin) / denom);
  return r;
}

EpisodeRecord play_episode(const ScenarioConfig& scenario, const TeamAssignment& team,
                           const PolicyGroup& frontier, const LearnerConfig& lc,
                           std::uint64_t ep_seed, bool greedy, bool collect,
                           std::ostream* replay) {
  HeteroEnv env(scenario);
  env.reset(ep_seed);
  Rng action_rng(seed_combine(ep_seed, 0xAC7104ULL));

  std::vector<GeneratedHeads> heads(kNumTypes);
  for (int t = 0; t < kNumTypes; ++t)
    heads[t] = team.policies[t]->generate_heads(t, team.identities[t]);

  struct Traj {
    std::vector<Sample> steps;
    std::vector<double> values;
  };
  std::vector<Traj> trajs(env.num_agents());
  std::vector<double> final_rewards(env.num_agents(), 0.0);

  if (replay) env.write_replay_header(*replay);

  while (!env.done()) {
    std::vector<int> actions = scripted_expert(env, 1);
    for (int id = 0; id < env.num_agents(); ++id) {
      const Agent& a = env.agent(id);
      if (!a.alive || a.team != 0) continue;
      const std::vector<double> obs = env.observe(id);
      const std::vector<std::uint8_t> mask = env.action_mask(id);
      const PolicyGroup* pg = team.policies[a.type];
      const ActResult ar = pg->act_with_heads(a.type, obs, mask, heads[a.type], action_rng, greedy);
      actions[id] = ar.action;
      if (collect && pg == &frontier) {
        Sample s;
        s.type = a.type;
        s.obs = obs;
        s.identity = team.identities[a.type];
        s.mask = mask;
        s.action = ar.action;
        s.log_prob_old = ar.log_prob;
        s.value = ar.value;
        trajs[id].steps.push_back(std::move(s));
        trajs[id].values.push_back(ar.value);
      }
    }
    if (replay) env.write_replay_tick(*replay, actions);
    const StepResult res = env.step(actions);
    if (res.done) final_rewards = res.rewards;
  }
  if (replay) env.write_replay_outcome(*replay);

  EpisodeRecord rec;
  rec.outcome = env.outcome();
  rec.won = (env.outcome().winner == 0);
  if (!collect) return rec;

  for (int id = 0; id < env.num_agents(); ++id) {
    Traj& traj = trajs[id];
    if (traj.steps.empty()) continue;
    // The team's terminal scalar is credited on the agent's last recorded
    // step (its death tick, or the episode end).
    std::vector<double> rewards(traj.steps.size(), 0.0);
    rewards.back() = final_rewards[id];
    std::vector<double> values = traj.values;
    values.push_back(0.0);
    std::vector<double> adv, ret;
    gae(rewards, values, lc.gamma, lc.lambda, adv, ret);
    for (std::size_t t = 0; t < traj.steps.size(); ++t) {
      traj.steps[t].adv = adv[t];
      traj.steps[t].ret = ret[t];
      rec.samples.push_back(std::move(traj.steps[t]));
    }
  }
  return rec;
}

Trainer::Trainer(RunConfig cfg)
    : cfg_(std::move(cfg)),
      league_(cfg_.league_capacity, kNumTypes),
      coordinator_rng_(seed_combine(cfg_.seed, 0xC0C0ULL)) {
  cfg_.validate();
  HeteroEnv probe(cfg_.scenario);
  frontier_ = std::make_unique<PolicyGroup>(0, kNumTypes, probe.obs_dim(), kNumActions, cfg_.net,
                                            seed_combine(cfg_.seed, kInitStream));
  learner_ = std::make_unique<Learner>(frontier_.get(), cfg_.learner);
}

void Trainer::iterate() {
  const auto t0 = std::chrono::steady_clock::now();
  const BetaAggregates agg = league_.aggregates();
  const int n_e = cfg_.learner.episodes_per_iter;

  std::vector<MixedCombination> combos(n_e);
  for (int e = 0; e < n_e; ++e)
    combos[e] = league_.sample_combination(coordinator_rng_, cfg_.p_pure);

  std::vector<EpisodeRecord> records(n_e);
  auto run_episode = [&](int e) {
    const TeamAssignment team = make_assignment(*frontier_, league_, combos[e]);
    records[e] = play_episode(cfg_.scenario, team, *frontier_, cfg_.learner,
                              episode_seed(cfg_.seed, kEpisodeStream, iteration_, e),
                              /*greedy=*/false, /*collect=*/true);
    for (Sample& s : records[e].samples) s.replaced_type = combos[e].replaced_type;
  };
  const int workers = std::min(cfg_.parallel_envs, n_e);
  if (workers <= 1) {
    for (int e = 0; e < n_e; ++e) run_episode(e);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int e = w; e < n_e; e += workers) run_episode(e);
      });
    for (std::thread& th : pool) th.join();
  }

  int wins = 0;
  for (int e = 0; e < n_e; ++e) {
    league_.record_outcome(combos[e], records[e].won);
    wins += records[e].won ? 1 : 0;
  }
  episodes_seen_ += n_e;

  std::vector<Sample> batch;
  for (EpisodeRecord& rec : records)
    for (Sample& s : rec.samples) batch.push_back(std::move(s));

  std::vector<double> adv(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) adv[i] = batch[i].adv;
  if (adv.size() >= 2) normalize_advantages(adv);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double a_beta = priority_factor(agg, batch[i].replaced_type, cfg_.learner.psi);
    batch[i].a_beta = a_beta;
    batch[i].adv = adv[i] * a_beta;
  }

  const LossReport loss = learner_->ppo_update(batch);
  ++iteration_;

  MetricsRecord rec;
  rec.iteration = iteration_;
  rec.episodes_seen = episodes_seen_;
  rec.frontier_win_rate = league_.frontier_win_rate();
  rec.iter_win_rate = static_cast<double>(wins) / n_e;
  const BetaAggregates now = league_.aggregates();
  if (now.overall_defined) rec.beta_overall = now.overall;
  rec.beta_per_type.resize(kNumTypes);
  for (int t = 0; t < kNumTypes; ++t)
    if (now.defined[t]) rec.beta_per_type[t] = now.per_type[t];
  rec.league_size = league_.size();
  rec.loss = loss;
  rec.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  metrics_.push_back(rec);

  if (iteration_ % cfg_.learner.league_update_every == 0) league_update_step();
}

void Trainer::league_update_step() {
  auto snap = std::make_shared<PolicyGroup>(frontier_->freeze(next_group_id_++));
  std::vector<std::uint8_t> no_league(kNumTypes, 0);
  const TeamAssignment team = make_assignment(*snap, nullptr, no_league);
  long long wins = 0;
  for (int g = 0; g < cfg_.eval_gate_games; ++g) {
    const EpisodeRecord rec =
        play_episode(cfg_.scenario, team, *snap, cfg_.learner,
                     episode_seed(cfg_.seed, kGateStream, league_updates_, g),
                     /*greedy=*/true, /*collect=*/false);
    wins += rec.won ? 1 : 0;
  }
  league_.league_update(std::move(snap), wins, cfg_.eval_gate_games);
  ++league_updates_;
}

std::string Trainer::metrics_to_json(const MetricsRecord& rec, bool with_timing) {
  json j;
  j["iteration"] = rec.iteration;
  j["episodes"] = rec.episodes_seen;
  j["frontier_win_rate"] = rec.frontier_win_rate;
  j["iter_win_rate"] = rec.iter_win_rate;
  j["beta_overall"] = rec.beta_overall ? json(*rec.beta_overall) : json(nullptr);
  json per_type = json::array();
  for (const auto& b : rec.beta_per_type) per_type.push_back(b ? json(*b) : json(nullptr));
  j["beta_per_type"] = std::move(per_type);
  j["league_size"] = rec.league_size;
  j["surrogate_loss"] = rec.loss.surrogate_loss;
  j["critic_loss"] = rec.loss.critic_loss;
  j["entropy"] = rec.loss.entropy;
  j["mean_a_beta"] = rec.loss.mean_a_beta;
  j["grad_norm"] = rec.loss.grad_norm;
  j["clip_fraction"] = rec.loss.clip_fraction;
  j["samples"] = rec.loss.samples;
  if (with_timing) j["wall_ms"] = rec.wall_ms;
  return j.dump();
}

void Trainer::run() {
  namespace fs = std::filesystem;
  fs::create_directories(cfg_.out_dir);
  const bool resuming = iteration_ > 0;
  std::ofstream metrics(cfg_.out_dir + "/metrics.jsonl",
                        resuming ? std::ios::app : std::ios::trunc);
  if (!metrics) throw IoError("cannot open metrics stream in " + cfg_.out_dir);

  while (iteration_ < cfg_.iterations) {
    const int before_updates = league_updates_;
    iterate();
    metrics << metrics_to_json(metrics_.back(), cfg_.log_timing) << "\n";
    metrics.flush();
    if (league_updates_ != before_updates) save_checkpoint(cfg_.out_dir + "/checkpoint");
  }
  save_checkpoint(cfg_.out_dir + "/checkpoint");
}

void Trainer::save_checkpoint(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  frontier_->save(dir + "/frontier.bin");
  save_optimizer(dir + "/opt_actor.bin", learner_->actor_optimizer());
  save_optimizer(dir + "/opt_critic.bin", learner_->critic_optimizer());

  json j;
  j["version"] = 1;
  j["config"] = config_to_json(cfg_);
  j["iteration"] = iteration_;
  j["episodes_seen"] = episodes_seen_;
  j["next_group_id"] = next_group_id_;
  j["league_updates"] = league_updates_;
  j["coordinator_rng"] = coordinator_rng_.serialize();
  j["frontier_group_id"] = frontier_->group_id;
  json members = json::array();
  for (const LeagueMember& m : league_.members()) {
    json cells = json::array();
    for (const BetaCell& c : m.cells) cells.push_back({c.wins, c.games});
    members.push_back({{"group_id", m.group_id}, {"wins", m.wins}, {"games", m.games},
                       {"cells", std::move(cells)}});
    if (m.group) m.group->save(dir + "/member_" + std::to_string(m.group_id) + ".bin");
  }
  j["league"] = {{"capacity", league_.capacity()},
                 {"frontier_wins", league_.frontier_wins},
                 {"frontier_games", league_.frontier_games},
                 {"members", std::move(members)}};

  std::ofstream os(dir + "/state.json");
  if (!os) throw IoError("cannot write checkpoint state in " + dir);
  os << j.dump(2) << "\n";
}

void Trainer::load_checkpoint(const std::string& dir) {
  std::ifstream is(dir + "/state.json");
  if (!is) throw IoError("missing checkpoint state: " + dir + "/state.json");
  json j;
  is >> j;

  iteration_ = j.at("iteration").get<int>();
  episodes_seen_ = j.at("episodes_seen").get<long long>();
  next_group_id_ = j.at("next_group_id").get<int>();
  league_updates_ = j.at("league_updates").get<int>();
  coordinator_rng_.deserialize(j.at("coordinator_rng").get<std::string>());

  frontier_->load(dir + "/frontier.bin");
  frontier_->group_id = j.at("frontier_group_id").get<int>();
  load_optimizer(dir + "/opt_actor.bin", learner_->actor_optimizer());
  load_optimizer(dir + "/opt_critic.bin", learner_->critic_optimizer());

  HeteroEnv probe(cfg_.scenario);
  league_ = League(j.at("league").at("capacity").get<int>(), kNumTypes);
  league_.restore_frontier_counters(j.at("league").at("frontier_wins").get<long long>(),
                                    j.at("league").at("frontier_games").get<long long>());
  for (const json& mj : j.at("league").at("members")) {
    LeagueMember m;
    m.group_id = mj.at("group_id").get<int>();
    m.wins = mj.at("wins").get<long long>();
    m.games = mj.at("games").get<long long>();
    for (const json& cj : mj.at("cells")) {
      BetaCell c;
      c.wins = cj.at(0).get<long long>();
      c.games = cj.at(1).get<long long>();
      m.cells.push_back(c);
    }
    auto group = std::make_shared<PolicyGroup>(m.group_id, kNumTypes, probe.obs_dim(), kNumActions,
                                               cfg_.net, 0);
    group->load(dir + "/member_" + std::to_string(m.group_id) + ".bin");
    group->frozen = true;
    group->wins = m.wins;
    group->games = m.games;
    m.group = std::move(group);
    league_.restore_member(std::move(m));
  }
}

EvalResult evaluate_checkpoint(const std::string& checkpoint_dir, EvalMode mode, int episodes,
                               std::uint64_t seed) {
  std::ifstream is(checkpoint_dir + "/state.json");
  if (!is) throw IoError("missing checkpoint: " + checkpoint_dir);
  json j;
  is >> j;
  RunConfig cfg = config_from_json(j.at("config"));
  Trainer trainer(cfg);
  trainer.load_checkpoint(checkpoint_dir);
  const League& league = trainer.league_const();

  Rng rng(seed_combine(seed, kEvalStream));
  int wins = 0;
  for (int ep = 0; ep < episodes; ++ep) {
    std::vector<std::uint8_t> league_types(kNumTypes, 0);
    const LeagueMember* member = nullptr;
    if (mode != EvalMode::kPure && !league.empty()) {
      member = &league.members()[rng.uniform_int(league.size())];
      const int chosen = rng.uniform_int(kNumTypes);
      if (mode == EvalMode::kFrontierExclusive) {
        league_types[chosen] = 1;  // one type runs the past policy
      } else {
        for (int t = 0; t < kNumTypes; ++t) league_types[t] = (t != chosen) ? 1 : 0;
      }
    }
    const TeamAssignment team = make_assignment(trainer.frontier(), member, league_types);
    const EpisodeRecord rec =
        play_episode(cfg.scenario, team, trainer.frontier(), cfg.learner,
                     episode_seed(seed, kEvalStream, 1, ep), /*greedy=*/true, /*collect=*/false);
    wins += rec.won ? 1 : 0;
  }
  return wilson_interval(wins, episodes);
}

void replay_from_checkpoint(const std::string& checkpoint_dir, std::uint64_t episode_seed_value,
                            const std::string& out_path) {
  std::ifstream is(checkpoint_dir + "/state.json");
  if (!is) throw IoError("missing checkpoint: " + checkpoint_dir);
  json j;
  is >> j;
  RunConfig cfg = config_from_json(j.at("config"));
  Trainer trainer(cfg);
  trainer.load_checkpoint(checkpoint_dir);

  std::ofstream os(out_path);
  if (!os) throw IoError("cannot write replay: " + out_path);
  std::vector<std::uint8_t> no_league(kNumTypes, 0);
  const TeamAssignment team = make_assignment(trainer.frontier(), nullptr, no_league);
  play_episode(cfg.scenario, team, trainer.frontier(), cfg.learner, episode_seed_value,
               /*greedy=*/true, /*collect=*/false, &os);
}

}  // namespace hlt
