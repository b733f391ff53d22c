#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "hlt/errors.h"
#include "hlt/harness.h"

namespace {

int run_train(const std::string& config_path, std::uint64_t seed_override, bool has_seed,
              const std::string& out_dir, int parallel, const std::string& resume) {
  hlt::RunConfig cfg = config_path.empty() ? hlt::RunConfig{}
                                           : hlt::RunConfig::from_json_file(config_path);
  if (has_seed) cfg.seed = seed_override;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (parallel > 0) cfg.parallel_envs = parallel;
  cfg.validate();

  hlt::Trainer trainer(cfg);
  if (!resume.empty()) trainer.load_checkpoint(resume);
  trainer.run();
  std::printf("done: %d iterations, %lld episodes, league size %d\n", trainer.iteration(),
              trainer.episodes_seen(), trainer.league_const().size());
  std::printf("checkpoint: %s/checkpoint\n", cfg.out_dir.c_str());
  return 0;
}

int run_evaluate(const std::string& checkpoint, const std::string& mode_str, int episodes,
                 std::uint64_t seed) {
  const hlt::EvalMode mode = hlt::eval_mode_from_string(mode_str);
  const hlt::EvalResult r = hlt::evaluate_checkpoint(checkpoint, mode, episodes, seed);
  std::printf("mode=%s episodes=%d wins=%d win_rate=%.4f ci95=[%.4f, %.4f]\n", mode_str.c_str(),
              r.episodes, r.wins, r.win_rate, r.ci_lo, r.ci_hi);
  return 0;
}

int run_replay(const std::string& checkpoint, std::uint64_t seed, const std::string& out_path) {
  hlt::replay_from_checkpoint(checkpoint, seed, out_path);
  std::printf("replay written: %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"league-based multi-type combat RL harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir, resume, checkpoint, mode_str = "pure", replay_out = "replay.jsonl";
  std::uint64_t seed = 0;
  bool has_seed = false;
  int parallel = 0, episodes = 320;

  CLI::App* train = app.add_subcommand("train", "run the training loop");
  train->add_option("--config", config_path, "JSON run config (defaults used when omitted)");
  train->add_option("--seed", seed, "run seed override")->each([&](const std::string&) { has_seed = true; });
  train->add_option("--out", out_dir, "output directory override");
  train->add_option("--parallel-envs", parallel, "rollout worker count override");
  train->add_option("--resume", resume, "checkpoint directory to resume from");

  CLI::App* evaluate = app.add_subcommand("evaluate", "measure win rate vs the scripted opponent");
  evaluate->add_option("--checkpoint", checkpoint, "checkpoint directory")->required();
  evaluate->add_option("--mode", mode_str, "pure | frontier_inclusive | frontier_exclusive");
  evaluate->add_option("--episodes", episodes, "evaluation episode count");
  evaluate->add_option("--seed", seed, "evaluation seed");

  CLI::App* replay = app.add_subcommand("replay", "write one greedy episode as a replay stream");
  replay->add_option("--checkpoint", checkpoint, "checkpoint directory")->required();
  replay->add_option("--seed", seed, "episode seed");
  replay->add_option("--out", replay_out, "replay output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return run_train(config_path, seed, has_seed, out_dir, parallel, resume);
    if (evaluate->parsed()) return run_evaluate(checkpoint, mode_str, episodes, seed);
    if (replay->parsed()) return run_replay(checkpoint, seed, replay_out);
  } catch (const hlt::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const hlt::DivergenceError& e) {
    std::fprintf(stderr, "divergence: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
