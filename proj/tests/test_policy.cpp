#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "hlt/errors.h"
#include "hlt/policy.h"
#include "hlt/rng.h"

using namespace hlt;

namespace {

NetConfig tiny_net() {
  NetConfig cfg;
  cfg.encoder_width = 8;
  cfg.encoder_layers = 1;
  cfg.gen_hidden = 6;
  return cfg;
}

}  // namespace

TEST_CASE("identity: four-type worked example") {
  const double beta = 0.37;
  // Combination replaces type index 1 out of 4; agent of type 0 carries the
  // member's win rate in slot 1 only.
  CHECK(build_identity(0, 4, 1, beta) ==
        std::vector<double>{1.0, beta, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0});
  // The replaced type's own agents see the all-placeholder segment.
  CHECK(build_identity(1, 4, 1, beta) ==
        std::vector<double>{1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0});
  CHECK(build_identity(2, 4, 1, beta) ==
        std::vector<double>{1.0, beta, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0});
}

TEST_CASE("identity: pure episodes are all-placeholder") {
  for (int t = 0; t < 3; ++t) {
    const auto f = build_identity(t, 3, -1, 0.0);
    REQUIRE(static_cast<int>(f.size()) == 6);
    for (int d = 0; d < 3; ++d) CHECK(f[d] == 1.0);
    for (int d = 0; d < 3; ++d) CHECK(f[3 + d] == (d == t ? 1.0 : 0.0));
  }
}

TEST_CASE("identity: full (own type, replaced type) enumeration") {
  const int m = 5;
  const double beta = 0.62;
  for (int own = 0; own < m; ++own) {
    for (int rep = 0; rep < m; ++rep) {
      const auto f = build_identity(own, m, rep, beta);
      REQUIRE(static_cast<int>(f.size()) == 2 * m);
      double onehot_sum = 0.0;
      for (int d = 0; d < m; ++d) {
        const double want = (d == rep && own != rep) ? beta : 1.0;
        CHECK(f[d] == want);
        CHECK(f[d] > 0.0);
        CHECK(f[d] <= 1.0);
        onehot_sum += f[m + d];
      }
      CHECK(onehot_sum == 1.0);
      CHECK(f[m + own] == 1.0);
    }
  }
}

TEST_CASE("identity: win rate clamped to [0.01, 1] and bad types rejected") {
  CHECK(build_identity(0, 3, 1, 0.0)[1] == 0.01);
  CHECK(build_identity(0, 3, 1, 5.0)[1] == 1.0);
  CHECK_THROWS_AS(build_identity(3, 3, -1, 0.0), ContractError);
  CHECK_THROWS_AS(build_identity(0, 3, 7, 0.0), ContractError);
}

TEST_CASE("masked softmax normalizes over legal actions") {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> logits(13);
    std::vector<std::uint8_t> mask(13, 0);
    for (int i = 0; i < 13; ++i) {
      logits[i] = rng.uniform(-30.0, 30.0);
      mask[i] = rng.uniform() < 0.5 ? 1 : 0;
    }
    mask[0] = 1;
    const auto p = masked_probs(logits, mask);
    double sum = 0.0;
    for (int i = 0; i < 13; ++i) {
      if (!mask[i]) CHECK(p[i] == 0.0);
      sum += p[i];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
  CHECK_THROWS_AS(masked_probs({1.0, 2.0}, {0, 0}), ContractError);
}

TEST_CASE("act: uniform logits sample uniformly over legal actions") {
  PolicyGroup pg(0, 3, 10, 13, tiny_net(), 5);
  // Zeroing the actor generator makes every generated logit zero, hence a
  // uniform distribution over whatever the mask permits.
  for (int t = 0; t < 3; ++t)
    for (Param* p : pg.net(t).actor_head.params()) p->value.fill(0.0);

  std::vector<std::uint8_t> mask(13, 1);
  mask[11] = 0;
  mask[12] = 0;  // 10 legal actions + slot count down to 11... keep 10 legal:
  mask[10] = 0;
  int legal = 0;
  for (auto m : mask) legal += m;
  REQUIRE(legal == 10);

  const std::vector<double> obs(10, 0.3);
  const auto identity = build_identity(0, 3, -1, 0.0);
  const GeneratedHeads heads = pg.generate_heads(0, identity);
  Rng rng(77);
  std::vector<int> counts(13, 0);
  const int draws = 10000;
  for (int i = 0; i < draws; ++i)
    ++counts[pg.act_with_heads(0, obs, mask, heads, rng, false).action];
  for (int u = 0; u < 13; ++u) {
    const double freq = static_cast<double>(counts[u]) / draws;
    if (mask[u])
      CHECK(std::abs(freq - 0.1) <= 0.02);
    else
      CHECK(counts[u] == 0);
  }
}

TEST_CASE("act: single legal action has log-prob zero") {
  PolicyGroup pg(0, 3, 4, 13, tiny_net(), 6);
  std::vector<std::uint8_t> mask(13, 0);
  mask[4] = 1;
  Rng rng(2);
  const std::vector<double> obs(4, -0.7);
  const auto identity = build_identity(2, 3, 0, 0.4);
  for (const bool greedy : {false, true}) {
    const auto r = pg.act(2, obs, mask, identity, rng, greedy);
    CHECK(r.action == 4);
    CHECK(r.log_prob == 0.0);
  }
}

TEST_CASE("act: greedy takes the argmax with ties to the lowest index") {
  PolicyGroup pg(0, 3, 4, 3, tiny_net(), 8);
  // Hand-built heads: zero weights so the bias IS the logit vector.
  GeneratedHeads heads;
  heads.actor_w = Tensor2(tiny_net().encoder_width, 3, 0.0);
  heads.actor_b = Tensor2::row({1.0, 5.0, 3.0});
  heads.critic_w = Tensor2(tiny_net().encoder_width, 1, 0.0);
  heads.critic_b = Tensor2::row({0.25});
  Rng rng(1);
  const std::vector<double> obs(4, 0.1);
  const auto r = pg.act_with_heads(0, obs, {1, 1, 1}, heads, rng, true);
  CHECK(r.action == 1);
  CHECK(r.value == doctest::Approx(0.25).epsilon(1e-12));

  heads.actor_b = Tensor2::row({4.0, 4.0, 1.0});
  CHECK(pg.act_with_heads(0, obs, {1, 1, 1}, heads, rng, true).action == 0);
}

TEST_CASE("freeze: snapshots are immune to frontier updates") {
  PolicyGroup frontier(0, 3, 6, 13, tiny_net(), 9);
  PolicyGroup snap = frontier.freeze(1);
  CHECK(snap.frozen);
  CHECK(snap.group_id == 1);
  CHECK(snap.wins == 0);
  CHECK(snap.games == 0);
  const std::uint64_t sum = snap.checksum();
  CHECK(sum == frontier.checksum());

  for (Param* p : frontier.all_params())
    for (double& v : p->value.data) v += 0.123;
  CHECK(snap.checksum() == sum);
  CHECK(frontier.checksum() != sum);

  PolicyGroup snap2 = frontier.freeze(2);
  CHECK(snap2.group_id != snap.group_id);
  CHECK(snap2.checksum() != snap.checksum());
}

TEST_CASE("freeze: snapshot round-trips through its checkpoint file") {
  PolicyGroup frontier(0, 3, 6, 13, tiny_net(), 10);
  PolicyGroup snap = frontier.freeze(1);
  const std::string path = "/tmp/hlt_test_group.bin";
  snap.save(path);
  PolicyGroup other(0, 3, 6, 13, tiny_net(), 999);
  REQUIRE(other.checksum() != snap.checksum());
  other.load(path);
  CHECK(other.checksum() == snap.checksum());
  std::remove(path.c_str());
}

TEST_CASE("frozen groups give identical outputs on identical inputs") {
  PolicyGroup pg(0, 3, 5, 13, tiny_net(), 11);
  const std::vector<double> obs = {0.1, -0.4, 0.9, 0.0, 0.2};
  const std::vector<std::uint8_t> mask(13, 1);
  const auto identity = build_identity(1, 3, 0, 0.8);
  Rng first(1);
  const auto a = pg.act(1, obs, mask, identity, first, true);
  for (int i = 0; i < 5; ++i) {
    Rng rng(1);
    const auto b = pg.act(1, obs, mask, identity, rng, true);
    CHECK(b.action == a.action);
    CHECK(b.log_prob == a.log_prob);
    CHECK(b.value == a.value);
  }
}

TEST_CASE("log-prob responds to identity perturbations (gradient flow)") {
  PolicyGroup pg(0, 3, 5, 13, tiny_net(), 12);
  const std::vector<double> obs = {0.3, -0.1, 0.8, 0.5, -0.6};
  const std::vector<std::uint8_t> mask(13, 1);
  auto identity = build_identity(0, 3, 1, 0.5);

  auto logp_of_action0 = [&]() {
    const GeneratedHeads heads = pg.generate_heads(0, identity);
    Rng rng(1);
    Tensor2 x = Tensor2::from_rows(1, 5, obs);
    Tensor2 h = pg.net(0).encoder.forward_nograd(x);
    Tensor2 logits = matmul(h, heads.actor_w);
    for (int c = 0; c < logits.cols; ++c) logits.data[c] += heads.actor_b.data[c];
    return std::log(masked_probs(logits.data, mask)[0]);
  };
  const double base = logp_of_action0();
  const double h = 1e-4;
  identity[1] += h;
  const double shifted = logp_of_action0();
  CHECK(std::abs(shifted - base) / h > 1e-6);  // non-degenerate sensitivity
}

TEST_CASE("identity vector length is 2M for every configuration") {
  for (int m = 2; m <= 6; ++m)
    for (int own = 0; own < m; ++own)
      CHECK(static_cast<int>(build_identity(own, m, m - 1, 0.5).size()) == 2 * m);
}
