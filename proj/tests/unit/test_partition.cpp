#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "support.hpp"
#include "wordlab/partition.hpp"

using namespace wordlab;
using namespace wordlab::testing;

namespace {

std::vector<std::uint32_t> rows_of(const GameContext& ctx, const CandidateSet& set) {
  std::vector<std::uint32_t> rows;
  for (auto id : set) rows.push_back(ctx.pool_index_of(id));
  return rows;
}

CandidateSet random_subset(std::mt19937_64& rng, std::size_t universe, std::size_t size) {
  std::vector<AnswerId> ids(universe);
  std::iota(ids.begin(), ids.end(), 0u);
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(size);
  std::sort(ids.begin(), ids.end());
  return CandidateSet(ids);
}

}  // namespace

TEST(PartitionKeys, FeasibleCounts) {
  EXPECT_EQ(feasible_key_count(PartitionMode::by_pattern, 5), 238u);
  EXPECT_EQ(feasible_key_count(PartitionMode::by_count, 5), 20u);
  std::set<std::uint32_t> counts;
  for (const auto& r : feasible_response_patterns(5)) counts.insert(partition_key(r.code(), PartitionMode::by_count, 5));
  EXPECT_EQ(counts.size(), 20u);
}

TEST(PartitionKeys, Labels) {
  const auto code = parse_response("10012", 5).code();
  EXPECT_EQ(key_label(partition_key(code, PartitionMode::by_pattern, 5), PartitionMode::by_pattern, 5), "10012");
  EXPECT_EQ(key_label(partition_key(code, PartitionMode::by_count, 5), PartitionMode::by_count, 5), "g2y1");
  EXPECT_EQ(parse_partition_mode("by-count"), PartitionMode::by_count);
  EXPECT_THROW(parse_partition_mode("by-letter"), std::invalid_argument);
}

TEST(Partition, CoverUnitSumAndRefinement) {
  const auto ctx = official();
  const auto& c = ctx->config();
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto size = 1 + rng() % 300;
    const auto set = random_subset(rng, c.answers.size(), size);
    const auto& guess = c.allowed[rng() % c.allowed.size()];
    const auto pattern = partition_set(c, set, guess, PartitionMode::by_pattern);
    const auto count = partition_set(c, set, guess, PartitionMode::by_count);
    std::size_t covered = 0;
    std::vector<AnswerId> members;
    for (const auto& [k, g] : pattern.groups) {
      EXPECT_FALSE(g.empty());
      covered += g.size();
      members.insert(members.end(), g.begin(), g.end());
    }
    std::sort(members.begin(), members.end());
    EXPECT_EQ(covered, set.size());
    EXPECT_EQ(members, std::vector<AnswerId>(set.begin(), set.end()));
    EXPECT_NEAR(partition_distribution(pattern).sum(), 1.0, 1e-12);
    EXPECT_NEAR(partition_distribution(count).sum(), 1.0, 1e-12);
    const double hp = partition_entropy(c, set, guess, PartitionMode::by_pattern);
    const double hc = partition_entropy(c, set, guess, PartitionMode::by_count);
    EXPECT_GE(hp + 1e-12, hc);
    // every pattern group lies inside one count group
    for (const auto& [k, g] : pattern.groups) {
      const auto ck = partition_key(k, PartitionMode::by_count, 5);
      const auto& outer = count.groups.at(ck);
      for (auto id : g) EXPECT_TRUE(std::find(outer.begin(), outer.end(), id) != outer.end());
    }
  }
}

TEST(Partition, KldPlusEntropyIsLogSupport) {
  const auto& c = official()->config();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto set = random_subset(rng, c.answers.size(), 1 + rng() % 500);
    const auto& guess = c.answers[rng() % c.answers.size()];
    for (auto mode : {PartitionMode::by_pattern, PartitionMode::by_count}) {
      const double b = static_cast<double>(feasible_key_count(mode, 5));
      EXPECT_NEAR(partition_kld_uniform(c, set, guess, mode) + partition_entropy(c, set, guess, mode), std::log2(b),
                  1e-9);
    }
  }
}

TEST(Partition, EmptySetRejected) {
  const auto& c = official()->config();
  EXPECT_THROW(partition_entropy(c, CandidateSet{}, c.answers[0], PartitionMode::by_pattern), std::invalid_argument);
}

TEST(Search, OfficialFirstGuesses) {
  const auto ctx = official();
  const auto all = CandidateSet::all(ctx->config());
  const auto rows = rows_of(*ctx, all);
  const auto& c = ctx->config();
  auto text = [&](std::uint32_t row) { return c.text(ctx->pool()[row]); };
  for (auto objective : {SearchObjective::min_entropy, SearchObjective::max_kld}) {
    EXPECT_EQ(text(select_guess_partition(*ctx, rows, all, objective, PartitionMode::by_pattern)), "raise");
    EXPECT_EQ(text(select_guess_partition(*ctx, rows, all, objective, PartitionMode::by_count)), "stare");
  }
  for (auto objective : {SearchObjective::max_entropy, SearchObjective::min_kld}) {
    EXPECT_EQ(text(select_guess_partition(*ctx, rows, all, objective, PartitionMode::by_pattern)), "fuzzy");
    EXPECT_EQ(text(select_guess_partition(*ctx, rows, all, objective, PartitionMode::by_count)), "fuzzy");
  }
  EXPECT_NEAR(partition_entropy(c, all, word(c, "raise"), PartitionMode::by_pattern), 5.87790969082149, 1e-12);
  EXPECT_NEAR(partition_entropy(c, all, word(c, "stare"), PartitionMode::by_count), 3.2378583090273363, 1e-12);
  EXPECT_NEAR(partition_entropy(c, all, word(c, "fuzzy"), PartitionMode::by_pattern), 2.3057342375511083, 1e-12);
  EXPECT_NEAR(partition_entropy(c, all, word(c, "fuzzy"), PartitionMode::by_count), 1.6849169821349068, 1e-12);
}

TEST(Search, ScoresAreRemainingEntropyAndGain) {
  const auto ctx = official();
  const auto& c = ctx->config();
  std::mt19937_64 rng(8);
  const auto set = random_subset(rng, c.answers.size(), 120);
  const auto rows = rows_of(*ctx, set);
  const auto remaining = search_scores(*ctx, rows, set, SearchObjective::min_entropy, PartitionMode::by_pattern);
  const auto gain = search_scores(*ctx, rows, set, SearchObjective::max_kld, PartitionMode::by_pattern);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double h = partition_entropy(c, set, ctx->pool()[rows[i]], PartitionMode::by_pattern);
    EXPECT_NEAR(gain[i], h, 1e-9);
    EXPECT_NEAR(remaining[i] + gain[i], std::log2(120.0), 1e-9);
  }
}

TEST(Search, DualityOnRandomSets) {
  const auto ctx = official();
  const auto& c = ctx->config();
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const auto set = random_subset(rng, c.answers.size(), 2 + rng() % 200);
    const auto rows = rows_of(*ctx, set);
    for (auto mode : {PartitionMode::by_pattern, PartitionMode::by_count}) {
      EXPECT_EQ(select_guess_partition(*ctx, rows, set, SearchObjective::min_entropy, mode),
                select_guess_partition(*ctx, rows, set, SearchObjective::max_kld, mode));
    }
  }
}

TEST(Search, IsolatingGuessWins) {
  // "abcd" separates all four; the others leave pairs together
  const auto c = make_config({"aaaa", "abcd", "bbbb", "cccc"}, 4);
  const auto ctx = GameContext::make(c);
  const auto all = CandidateSet::all(c);
  const std::vector<std::uint32_t> rows{0, 1, 2, 3};
  for (auto objective : {SearchObjective::min_entropy, SearchObjective::max_kld}) {
    EXPECT_EQ(select_guess_partition(*ctx, rows, all, objective, PartitionMode::by_pattern), 1u);
  }
  EXPECT_NEAR(partition_entropy(c, all, c.answers[1], PartitionMode::by_pattern), 2.0, 1e-12);
}

TEST(Search, ObjectiveNames) {
  for (auto o : {SearchObjective::min_entropy, SearchObjective::max_kld, SearchObjective::max_entropy,
                 SearchObjective::min_kld}) {
    EXPECT_EQ(parse_search_objective(to_string(o)), o);
  }
  EXPECT_THROW(parse_search_objective("best"), std::invalid_argument);
}
