// Acceptance harness: one numbered criterion per invocation, one PASS/FAIL
// line each. Run as `acceptance <n>` with n in 1..9, or with no argument to
// run everything.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "hlt/env.h"
#include "hlt/harness.h"
#include "hlt/league.h"
#include "hlt/learner.h"
#include "hlt/net.h"
#include "hlt/policy.h"
#include "hlt/rng.h"
#include "hlt/scripted.h"
#include "hlt/tape.h"

using namespace hlt;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// ---------------------------------------------------------------------------
// 1. Formula oracles: GAE recursion vs double sum; priority factor vs direct
//    evaluation on a parameter grid.

void gae_double_sum(const std::vector<double>& rewards, const std::vector<double>& values,
                    double gamma, double lambda, std::vector<double>& adv) {
  const std::size_t t_max = rewards.size();
  adv.assign(t_max, 0.0);
  for (std::size_t t = 0; t < t_max; ++t)
    for (std::size_t l = 0; t + l < t_max; ++l)
      adv[t] += std::pow(gamma * lambda, static_cast<double>(l)) *
                (rewards[t + l] + gamma * values[t + l + 1] - values[t + l]);
}

Check criterion_1() {
  Check c;
  const double t0 = now_seconds();
  Rng rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int t_max = 1 + rng.uniform_int(50);
    std::vector<double> rewards(t_max), values(t_max + 1);
    for (double& r : rewards) r = rng.uniform(-2.0, 2.0);
    for (double& v : values) v = rng.uniform(-2.0, 2.0);
    const double gamma = rng.uniform(0.5, 1.0), lambda = rng.uniform(0.5, 1.0);
    std::vector<double> adv, ret, want;
    gae(rewards, values, gamma, lambda, adv, ret);
    gae_double_sum(rewards, values, gamma, lambda, want);
    for (int t = 0; t < t_max; ++t) worst = std::max(worst, std::abs(adv[t] - want[t]));
  }
  if (worst > 1e-10) c.fail("GAE max deviation " + std::to_string(worst));

  int grid = 0;
  for (int i = 0; i < 10; ++i) {
    const double psi = 0.05 + 0.09 * i;
    for (int j = 0; j < 10; ++j) {
      const double beta_overall = j / 9.0;
      for (int k = 0; k < 10; ++k) {
        const double beta_type = k / 9.0;
        BetaAggregates agg;
        agg.per_type = {beta_type};
        agg.defined = {true};
        agg.overall = beta_overall;
        agg.overall_defined = true;
        if (priority_factor(agg, 0, psi) != (psi + beta_overall) / (psi + beta_type))
          c.fail("priority factor mismatch at grid point");
        ++grid;
      }
    }
  }
  const double dt = now_seconds() - t0;
  if (dt >= 5.0) c.fail("runtime " + std::to_string(dt) + "s >= 5s");
  c.detail = "1000 GAE trajectories (max dev " + std::to_string(worst) + "), " +
             std::to_string(grid) + " grid points, " + std::to_string(dt) + "s";
  return c;
}

// ---------------------------------------------------------------------------
// 2. Identity representation worked example, M = 4.

Check criterion_2() {
  Check c;
  const double beta = 0.42;
  const std::vector<std::vector<double>> want = {
      {1.0, beta, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0},   // agent of type 1 of 4
      {1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0},    // agent OF the replaced type
      {1.0, beta, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0}};  // agent of type 3 of 4
  for (int i = 0; i < 3; ++i) {
    if (build_identity(i, 4, 1, beta) != want[i])
      c.fail("identity pattern mismatch for agent type " + std::to_string(i));
  }
  c.detail = "three worked-example patterns, M=4, replaced type index 1";
  return c;
}

// ---------------------------------------------------------------------------
// 3. Gradient correctness on random small actor-critic instances.

Check criterion_3() {
  Check c;
  const double t0 = now_seconds();
  int instances = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    Rng rng(seed_combine(303, seed));
    NetConfig net;
    net.encoder_width = 4 + rng.uniform_int(6);
    net.encoder_layers = 1 + rng.uniform_int(2);
    net.gen_hidden = 3 + rng.uniform_int(5);
    const int obs_dim = 2 + rng.uniform_int(4);
    const int num_actions = 2 + rng.uniform_int(4);
    const int m = 2 + rng.uniform_int(3);
    Rng init(seed_combine(42, seed));
    ActorCriticNet acn("a", obs_dim, num_actions, 2 * m, net, init);

    Tensor2 x(2, obs_dim);
    for (double& v : x.data) v = rng.uniform(-1.0, 1.0);
    Tensor2 cond(1, 2 * m);
    for (double& v : cond.data) v = rng.uniform(0.0, 1.0);

    Tape tape;
    {
      const int xi = tape.constant(x);
      const int ci = tape.constant(cond);
      const int h = acn.encoder.forward(tape, xi);
      const int logits = acn.actor_head.forward(tape, ci, h);
      const int v = acn.critic_head.forward(tape, ci, h);
      tape.backward(
          tape.add(tape.sum_all(tape.square(tape.tanh_(logits))), tape.sum_all(tape.square(v))));
    }
    const double h = 1e-5;
    for (Param* p : acn.params()) {
      for (std::size_t i = 0; i < p->value.data.size(); ++i) {
        const double keep = p->value.data[i];
        p->value.data[i] = keep + h;
        double up;
        {
          Tape t2;
          const int xi = t2.constant(x);
          const int ci = t2.constant(cond);
          const int hh = acn.encoder.forward(t2, xi);
          const int logits = acn.actor_head.forward(t2, ci, hh);
          const int v = acn.critic_head.forward(t2, ci, hh);
          up = t2.value(t2.add(t2.sum_all(t2.square(t2.tanh_(logits))),
                               t2.sum_all(t2.square(v))))
                   .data[0];
        }
        p->value.data[i] = keep - h;
        double dn;
        {
          Tape t2;
          const int xi = t2.constant(x);
          const int ci = t2.constant(cond);
          const int hh = acn.encoder.forward(t2, xi);
          const int logits = acn.actor_head.forward(t2, ci, hh);
          const int v = acn.critic_head.forward(t2, ci, hh);
          dn = t2.value(t2.add(t2.sum_all(t2.square(t2.tanh_(logits))),
                               t2.sum_all(t2.square(v))))
                   .data[0];
        }
        p->value.data[i] = keep;
        const double fd = (up - dn) / (2.0 * h);
        const double an = p->grad.data[i];
        const double err = std::abs(fd - an) / std::max({1.0, std::abs(fd), std::abs(an)});
        worst = std::max(worst, err);
        if (err > 1e-4) c.fail("gradient mismatch in " + p->name);
      }
    }
    ++instances;
  }
  const double dt = now_seconds() - t0;
  if (dt >= 30.0) c.fail("runtime " + std::to_string(dt) + "s >= 30s");
  c.detail = std::to_string(instances) + " instances, worst rel err " + std::to_string(worst) +
             ", " + std::to_string(dt) + "s";
  return c;
}

// ---------------------------------------------------------------------------
// 4. League laws over randomized operation sequences.

LeagueMember synth_member(int id, long long wins, long long games) {
  LeagueMember m;
  m.group_id = id;
  m.wins = wins;
  m.games = games;
  m.cells.assign(3, BetaCell{});
  return m;
}

int brute_force_evict(std::vector<LeagueMember> ms) {
  std::stable_sort(ms.begin(), ms.end(), [](const LeagueMember& a, const LeagueMember& b) {
    if (a.beta() != b.beta()) return a.beta() > b.beta();
    return a.group_id < b.group_id;
  });
  int bi = 0, bj = 1;
  double best = 1e300;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      const double gap = std::abs(ms[i].beta() - ms[j].beta());
      if (gap < best) {
        best = gap;
        bi = static_cast<int>(i);
        bj = static_cast<int>(j);
      }
    }
  return std::max(ms[bi].group_id, ms[bj].group_id);
}

Check criterion_4() {
  Check c;
  Rng rng(404);
  long long evictions = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    const int capacity = 1 + rng.uniform_int(5);
    League league(capacity, 3);
    int next_id = 1;
    const int ops = 1 + rng.uniform_int(10);
    for (int op = 0; op < ops; ++op) {
      if (rng.uniform() < 0.7 || league.empty()) {
        const long long games = 1 + rng.uniform_int(20);
        const long long wins = rng.uniform_int(static_cast<int>(games) + 1);
        std::vector<LeagueMember> before(league.members().begin(), league.members().end());
        auto snap = std::make_shared<PolicyGroup>();
        snap->group_id = next_id++;
        before.push_back(synth_member(snap->group_id, wins, games));
        const bool overflow = static_cast<int>(league.members().size()) >= capacity;
        const auto res = league.league_update(snap, wins, games);
        if (league.size() > capacity) {
          c.fail("capacity exceeded");
          break;
        }
        if (res.admitted && overflow) {
          ++evictions;
          if (res.evicted_group_id != brute_force_evict(before)) {
            c.fail("adjacent-pair eviction disagrees with brute force");
            break;
          }
        }
      } else {
        Rng tmp(rng.next_u64());
        league.record_outcome(league.sample_combination(tmp, 0.1), tmp.uniform() < 0.5);
      }
    }
    if (!c.ok) break;
  }

  // Candidate inside the closest pair is itself evicted.
  League league(3, 3);
  league.restore_member(synth_member(1, 10, 100));
  league.restore_member(synth_member(2, 45, 100));
  league.restore_member(synth_member(3, 90, 100));
  auto snap = std::make_shared<PolicyGroup>();
  snap->group_id = 4;
  const auto res = league.league_update(snap, 50, 100);
  if (!res.admitted || res.evicted_group_id != 4)
    c.fail("candidate-in-closest-pair case did not evict the candidate");

  c.detail = "100000 op sequences, " + std::to_string(evictions) +
             " evictions checked against brute force";
  return c;
}

// ---------------------------------------------------------------------------
// 5. Sampler cell frequencies.

Check criterion_5() {
  Check c;
  League league(10, 3);
  for (int k = 1; k <= 5; ++k) league.restore_member(synth_member(k, k, 10));
  Rng rng(505);
  const int draws = 100000;
  std::vector<std::vector<int>> counts(6, std::vector<int>(3, 0));
  for (int i = 0; i < draws; ++i) {
    const MixedCombination combo = league.sample_combination(rng, 0.0);
    if (combo.pure()) {
      c.fail("pure combination at p_pure = 0 with a non-empty league");
      return c;
    }
    ++counts[combo.group_id][combo.replaced_type];
  }
  double worst = 0.0;
  for (int k = 1; k <= 5; ++k)
    for (int d = 0; d < 3; ++d)
      worst = std::max(worst,
                       std::abs(counts[k][d] / static_cast<double>(draws) - 1.0 / 15));
  if (worst > 0.01) c.fail("cell frequency deviation " + std::to_string(worst) + " > 0.01");
  c.detail = "K=5, M=3, 1e5 draws, worst |freq - 1/15| = " + std::to_string(worst);
  return c;
}

// ---------------------------------------------------------------------------
// 6. Environment laws and scripted mirror fairness.

Check criterion_6() {
  Check c;
  const double t0 = now_seconds();
  ScenarioConfig cfg;
  cfg.team_counts = {1, 1, 2};
  cfg.episode_limit = 100;

  auto run_episode = [&](std::uint64_t seed, std::uint64_t* hash_out) {
    HeteroEnv env(cfg);
    env.reset(seed);
    Rng rng(seed_combine(seed, 606));
    std::uint64_t hash = 0;
    double terminal_sum = 0.0;
    while (!env.done()) {
      std::vector<int> actions(env.num_agents(), kHold);
      for (const Agent& a : env.agents()) {
        if (!a.alive) continue;
        const auto mask = env.action_mask(a.id);
        std::vector<int> legal;
        for (int u = 0; u < kNumActions; ++u)
          if (mask[u]) legal.push_back(u);
        actions[a.id] = legal[rng.uniform_int(static_cast<int>(legal.size()))];
      }
      const StepResult res = env.step(actions);  // throws on any mask bug
      for (double r : res.rewards) {
        if (!res.done && r != 0.0) c.fail("non-terminal reward");
        terminal_sum += r;
      }
      for (const Agent& a : env.agents()) {
        std::uint64_t bits;
        std::memcpy(&bits, &a.health, sizeof(bits));
        hash = seed_combine(hash, bits ^ (a.alive ? 1 : 0));
      }
    }
    if (std::abs(terminal_sum) > 1e-12) c.fail("terminal rewards are not zero-sum");
    if (hash_out) *hash_out = hash;
  };

  for (std::uint64_t seed = 0; seed < 10000 && c.ok; ++seed) {
    std::uint64_t hash = 0;
    try {
      run_episode(seed, &hash);
    } catch (const std::exception& e) {
      c.fail(std::string("mask soundness violated: ") + e.what());
      break;
    }
    if (seed % 50 == 0) {  // determinism spot checks
      std::uint64_t again = 0;
      run_episode(seed, &again);
      if (again != hash) c.fail("trajectory not deterministic");
    }
  }

  int wins[2] = {0, 0};
  int draws = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    HeteroEnv env(cfg);
    env.reset(seed_combine(606, seed));
    StepResult res;
    while (!env.done()) {
      std::vector<int> joint = scripted_expert(env, 0);
      const auto a1 = scripted_expert(env, 1);
      for (const Agent& a : env.agents())
        if (a.team == 1) joint[a.id] = a1[a.id];
      res = env.step(joint);
    }
    if (res.outcome.winner >= 0)
      ++wins[res.outcome.winner];
    else
      ++draws;
  }
  const double w0 = wins[0] / 500.0, w1 = wins[1] / 500.0;
  if (w0 < 0.4 || w0 > 0.6 || w1 < 0.4 || w1 > 0.6)
    c.fail("mirror win rates " + std::to_string(w0) + "/" + std::to_string(w1) +
           " outside [0.4, 0.6]");

  const double dt = now_seconds() - t0;
  if (dt >= 120.0) c.fail("runtime " + std::to_string(dt) + "s >= 120s");
  c.detail = "1e4 random episodes; mirror " + std::to_string(wins[0]) + "-" +
             std::to_string(wins[1]) + "-" + std::to_string(draws) + " (W-L-D), " +
             std::to_string(dt) + "s";
  return c;
}

// ---------------------------------------------------------------------------
// 7. Learning signal on the tiny 7-vs-7 scenario.

RunConfig tiny7_config(std::uint64_t seed) {
  RunConfig cfg;
  cfg.scenario.team_counts = {1, 2, 4};
  cfg.scenario.episode_limit = 150;
  cfg.net.encoder_width = 64;
  cfg.net.encoder_layers = 1;
  cfg.net.gen_hidden = 16;
  cfg.learner.gamma = 0.995;
  cfg.learner.episodes_per_iter = 32;
  cfg.learner.ppo_epochs = 24;
  cfg.learner.league_update_every = 1000;  // pure-frontier training run
  cfg.iterations = 60;                     // 1920 episodes, under the 2000 cap
  cfg.seed = seed;
  cfg.parallel_envs = 1;
  return cfg;
}

double greedy_win_rate(const Trainer& trainer, int episodes, std::uint64_t seed) {
  const RunConfig& cfg = trainer.config();
  TeamAssignment team;
  for (int t = 0; t < kNumTypes; ++t) {
    team.policies.push_back(&trainer.frontier());
    team.identities.push_back(build_identity(t, kNumTypes, -1, 0.0));
  }
  int wins = 0;
  for (int ep = 0; ep < episodes; ++ep) {
    const EpisodeRecord rec =
        play_episode(cfg.scenario, team, trainer.frontier(), cfg.learner,
                     seed_combine(seed, ep), true, false);
    wins += rec.won ? 1 : 0;
  }
  return static_cast<double>(wins) / episodes;
}

double random_policy_win_rate(const ScenarioConfig& scenario, int episodes, std::uint64_t seed) {
  int wins = 0;
  for (int ep = 0; ep < episodes; ++ep) {
    HeteroEnv env(scenario);
    env.reset(seed_combine(seed, ep));
    Rng rng(seed_combine(seed, seed_combine(7, ep)));
    StepResult res;
    while (!env.done()) {
      std::vector<int> actions = scripted_expert(env, 1);
      for (const Agent& a : env.agents()) {
        if (!a.alive || a.team != 0) continue;
        const auto mask = env.action_mask(a.id);
        std::vector<int> legal;
        for (int u = 0; u < kNumActions; ++u)
          if (mask[u]) legal.push_back(u);
        actions[a.id] = legal[rng.uniform_int(static_cast<int>(legal.size()))];
      }
      res = env.step(actions);
    }
    if (res.outcome.winner == 0) ++wins;
  }
  return static_cast<double>(wins) / episodes;
}

// Least-squares slope of the 5-point moving average of the per-iteration
// win-rate series; "trend non-decreasing" means this slope is >= 0.
double ma5_trend_slope(const std::vector<double>& series) {
  std::vector<double> ma;
  for (std::size_t i = 4; i < series.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = i - 4; j <= i; ++j) s += series[j];
    ma.push_back(s / 5.0);
  }
  if (ma.size() < 2) return 0.0;
  const double n = static_cast<double>(ma.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    sx += i;
    sy += ma[i];
    sxx += static_cast<double>(i) * i;
    sxy += i * ma[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Check criterion_7() {
  Check c;
  const double t0 = now_seconds();
  const int eval_episodes = 160;

  const double control = random_policy_win_rate(tiny7_config(0).scenario, eval_episodes, 777);
  if (control >= 0.10) c.fail("random control win rate " + std::to_string(control) + " >= 0.10");

  std::vector<double> trained(3, 0.0);
  std::vector<double> slopes(3, 0.0);
  std::vector<std::unique_ptr<Trainer>> trainers;
  for (std::uint64_t s = 0; s < 3; ++s)
    trainers.push_back(std::make_unique<Trainer>(tiny7_config(1000 + s)));

  std::vector<std::thread> pool;
  for (int s = 0; s < 3; ++s) {
    pool.emplace_back([&, s] {
      Trainer& tr = *trainers[s];
      for (int i = 0; i < tr.config().iterations; ++i) tr.iterate();
      std::vector<double> series;
      for (const MetricsRecord& m : tr.metrics()) series.push_back(m.iter_win_rate);
      slopes[s] = ma5_trend_slope(series);
      trained[s] = greedy_win_rate(tr, eval_episodes, 888 + s);
    });
  }
  for (std::thread& t : pool) t.join();

  const double mean_trained = (trained[0] + trained[1] + trained[2]) / 3.0;
  if (mean_trained < control + 0.20)
    c.fail("mean trained win rate " + std::to_string(mean_trained) +
           " does not exceed control + 0.20");
  int rising = 0;
  for (double s : slopes)
    if (s >= 0.0) ++rising;
  if (rising < 2) c.fail("win-rate trend rising in only " + std::to_string(rising) + "/3 seeds");

  const double dt = now_seconds() - t0;
  if (dt >= 1800.0) c.fail("runtime " + std::to_string(dt) + "s >= 30min");
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "control %.3f; trained %.3f/%.3f/%.3f (mean %.3f); MA5 slopes "
                "%.2e/%.2e/%.2e; %.0fs",
                control, trained[0], trained[1], trained[2], mean_trained, slopes[0], slopes[1],
                slopes[2], dt);
  c.detail = buf;
  return c;
}

// ---------------------------------------------------------------------------
// 8. Prioritization effect on one update batch.

Check criterion_8() {
  Check c;
  RunConfig cfg;
  cfg.scenario.team_counts = {1, 1, 2};
  cfg.scenario.episode_limit = 60;
  cfg.net.encoder_width = 16;
  cfg.net.encoder_layers = 1;
  cfg.net.gen_hidden = 8;
  cfg.seed = 808;

  Trainer trainer(cfg);

  // A league whose recorded stats artificially depress type 0.
  League league(10, kNumTypes);
  LeagueMember m = synth_member(1, 5, 10);
  m.group = std::make_shared<PolicyGroup>(trainer.frontier().freeze(1));
  m.cells[0] = {1, 10};   // beta^[d_0] = 0.1, the depressed type
  m.cells[1] = {6, 10};   // 0.6
  m.cells[2] = {6, 10};   // 0.6
  league.restore_member(std::move(m));
  const BetaAggregates agg = league.aggregates();
  const double psi = cfg.learner.psi;
  const double expected = (psi + agg.overall) / (psi + agg.per_type[0]);

  // One real rollout batch under the combination that replaces type 0.
  MixedCombination combo{1, 0, league.members()[0].beta()};
  TeamAssignment team;
  for (int t = 0; t < kNumTypes; ++t) {
    team.policies.push_back(t == 0 ? league.members()[0].group.get() : &trainer.frontier());
    team.identities.push_back(build_identity(t, kNumTypes, 0, combo.member_beta));
  }
  std::vector<Sample> batch;
  for (int ep = 0; ep < 8; ++ep) {
    EpisodeRecord rec = play_episode(cfg.scenario, team, trainer.frontier(), cfg.learner,
                                     seed_combine(808, ep), false, true);
    for (Sample& s : rec.samples) {
      s.replaced_type = 0;
      batch.push_back(std::move(s));
    }
  }
  if (batch.size() < 2) {
    c.fail("empty rollout batch");
    return c;
  }

  std::vector<double> adv(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) adv[i] = batch[i].adv;
  normalize_advantages(adv);

  double with_factor = 0.0, without_factor = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double a_beta = priority_factor(agg, batch[i].replaced_type, psi);
    with_factor += std::abs(adv[i] * a_beta);
    without_factor += std::abs(adv[i]);
  }
  with_factor /= batch.size();
  without_factor /= batch.size();
  const double measured = with_factor / without_factor;
  if (measured < expected * 0.9)
    c.fail("measured weight ratio " + std::to_string(measured) + " < 0.9 * " +
           std::to_string(expected));
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%zu samples; weight ratio %.4f vs required >= %.4f",
                batch.size(), measured, expected * 0.9);
  c.detail = buf;
  return c;
}

// ---------------------------------------------------------------------------
// 9. Frozen-league purity over 100 training iterations.

Check criterion_9() {
  Check c;
  RunConfig cfg;
  cfg.scenario.team_counts = {1, 1, 1};
  cfg.scenario.episode_limit = 40;
  cfg.net.encoder_width = 8;
  cfg.net.encoder_layers = 1;
  cfg.net.gen_hidden = 6;
  cfg.learner.episodes_per_iter = 4;
  cfg.learner.ppo_epochs = 2;
  cfg.learner.league_update_every = 10;
  cfg.eval_gate_games = 2;
  cfg.seed = 909;

  Trainer trainer(cfg);
  std::vector<std::pair<int, std::uint64_t>> seen;  // (group_id, checksum at admission)
  for (int i = 0; i < 100; ++i) {
    trainer.iterate();
    for (const LeagueMember& m : trainer.league_const().members()) {
      bool known = false;
      for (const auto& [id, sum] : seen)
        if (id == m.group_id) {
          known = true;
          if (m.group->checksum() != sum)
            c.fail("member " + std::to_string(m.group_id) + " parameters changed");
        }
      if (!known) seen.emplace_back(m.group_id, m.group->checksum());
    }
  }
  if (trainer.league_const().empty()) c.fail("league stayed empty; nothing was checked");
  c.detail = std::to_string(seen.size()) + " members tracked over 100 iterations, league size " +
             std::to_string(trainer.league_const().size());
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  Check (*criteria[9])() = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                            criterion_6, criterion_7, criterion_8, criterion_9};
  int lo = 1, hi = 9;
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > 9) {
      std::fprintf(stderr, "usage: %s [1..9]\n", argv[0]);
      return 2;
    }
    lo = hi = n;
  }
  bool all_ok = true;
  for (int n = lo; n <= hi; ++n) {
    const Check c = criteria[n - 1]();
    std::printf("ACCEPTANCE %d: %s (%s)\n", n, c.ok ? "PASS" : "FAIL", c.detail.c_str());
    all_ok = all_ok && c.ok;
  }
  return all_ok ? 0 : 1;
}
