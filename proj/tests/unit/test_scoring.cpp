#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "support.hpp"
#include "wordlab/scoring.hpp"

using namespace wordlab;
using namespace wordlab::testing;

namespace {

Symbol sym(char ch) { return static_cast<Symbol>(ch - 'a'); }

std::vector<std::uint32_t> all_rows(std::size_t n) {
  std::vector<std::uint32_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0u);
  return rows;
}

ScorerSpec spec(ScoreKind k, Weighting w, Direction d) { return ScorerSpec{k, w, d, false}; }

std::string pick(const GameConfig& c, const CandidateSet& set, const ScorerSpec& s, bool no_repeat) {
  const auto stats = collocation_stats<double>(c, set);
  const auto rows = std::vector<std::uint32_t>(set.begin(), set.end());
  return c.text(c.answers[select_guess<double>(c.answers, rows, stats, s, no_repeat)]);
}

}  // namespace

TEST(Collocation, SmallSetCounts) {
  const auto c = make_config({"amble", "apple", "amuse"});
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  EXPECT_DOUBLE_EQ(st.uncond(sym('a')), 1.0);
  EXPECT_DOUBLE_EQ(st.uncond(sym('p')), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(st.uncond(sym('z')), 0.0);
  EXPECT_FALSE(st.defined(sym('z')));
  EXPECT_TRUE(std::isnan(st.cond(sym('a'), sym('z'))));
}

TEST(Collocation, SingleWordDiagonalCountsRepeats) {
  const auto c = make_config({"apple"});
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  EXPECT_DOUBLE_EQ(st.cond(sym('p'), sym('p')), 1.0);
  EXPECT_DOUBLE_EQ(st.cond(sym('a'), sym('a')), 0.0);
  EXPECT_DOUBLE_EQ(symbol_entropy(st, sym('p')), 0.0);
}

TEST(Collocation, ConditionalPairs) {
  const auto c = make_config({"amble", "amuse"});
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  EXPECT_DOUBLE_EQ(st.cond(sym('m'), sym('a')), 1.0);
  EXPECT_DOUBLE_EQ(st.cond(sym('b'), sym('a')), 0.5);
  EXPECT_THROW(symbol_entropy(st, sym('z')), UndefinedSymbolError);
  EXPECT_THROW(symbol_kld_uniform(st, sym('z')), UndefinedSymbolError);
}

TEST(Collocation, OfficialListValues) {
  const auto& c = official()->config();
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  EXPECT_NEAR(st.uncond(sym('a')), 0.39265658747300214, 1e-15);
  EXPECT_NEAR(st.uncond(sym('e')), 0.45615550755939527, 1e-15);
  EXPECT_NEAR(st.uncond(sym('q')), 0.012526997840172787, 1e-15);
  EXPECT_NEAR(st.uncond(sym('z')), 0.01511879049676026, 1e-15);
  EXPECT_NEAR(symbol_entropy(st, sym('a')), 9.1483529611645622, 1e-12);
  EXPECT_NEAR(symbol_kld_uniform(st, sym('a')), 8.6709157612933065, 1e-12);
  EXPECT_NEAR(st.cond(sym('e'), sym('a')), 0.39823982398239827, 1e-15);
  EXPECT_NEAR(st.cond(sym('a'), sym('a')), 0.077007700770077014, 1e-15);
}

TEST(Collocation, KldMatchesAlgebraicRearrangement) {
  const auto& c = official()->config();
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  const double n = 26;
  for (Eigen::Index s = 0; s < 26; ++s) {
    double plogp = 0;
    double mass = 0;
    for (Eigen::Index k = 0; k < 26; ++k) {
      const double p = st.cond(k, s);
      if (p > 0) plogp += p * std::log2(p);
      mass += p;
    }
    EXPECT_NEAR(st.symbol_kld(s), plogp + mass * std::log2(n), 1e-10);
    EXPECT_NEAR(st.symbol_entropy(s), -plogp, 1e-10);
  }
}

TEST(Collocation, ProbabilityBounds) {
  const auto& c = official()->config();
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  for (Eigen::Index x = 0; x < 26; ++x) {
    EXPECT_GE(st.uncond(x), 0.0);
    EXPECT_LE(st.uncond(x), 1.0);
    for (Eigen::Index s = 0; s < 26; ++s) {
      if (x == s) continue;
      EXPECT_DOUBLE_EQ(st.joint(x, s), st.joint(s, x));
      EXPECT_LE(st.joint(x, s), std::min(st.uncond(x), st.uncond(s)) + 1e-15);
    }
  }
}

TEST(Collocation, StatelessUnderFiltering) {
  const auto& c = official()->config();
  const auto reduced = filter_candidates(c, CandidateSet::all(c), word(c, "crane"), parse_response("00201", 5));
  const auto st = collocation_stats<double>(c, reduced);
  const auto fresh_config = make_config(texts(c, reduced));
  const auto fresh = collocation_stats<double>(fresh_config, CandidateSet::all(fresh_config));
  EXPECT_TRUE(st.uncond.isApprox(fresh.uncond, 0));
  EXPECT_TRUE(st.joint.isApprox(fresh.joint, 0));
}

TEST(InfoMeasures, AnalyticCases) {
  Eigen::VectorXd half = Eigen::VectorXd::Zero(26);
  half(0) = half(1) = 0.5;
  EXPECT_DOUBLE_EQ(info::entropy(half), 1.0);
  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(26, 1.0 / 26);
  EXPECT_NEAR(info::kld_uniform(uniform, 26), 0.0, 1e-14);
  Eigen::VectorXd point = Eigen::VectorXd::Zero(26);
  point(3) = 1;
  EXPECT_NEAR(info::kld_uniform(point, 26), std::log2(26.0), 1e-14);
  EXPECT_NEAR(std::log2(26.0), 4.700, 5e-4);
  EXPECT_DOUBLE_EQ(info::entropy(point), 0.0);
}

TEST(WordScore, ThreeWordOracle) {
  const auto c = make_config({"amble", "apple", "amuse"});
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  const auto amble = word(c, "amble");
  EXPECT_NEAR(word_score(amble, st, spec(ScoreKind::entropy, Weighting::unweighted, Direction::argmax)).value,
              9.2864666705128336, 1e-12);
  EXPECT_NEAR(word_score(amble, st, spec(ScoreKind::entropy, Weighting::weighted, Direction::argmax)).value,
              2.2144909101398635, 1e-12);
  EXPECT_NEAR(word_score(amble, st, spec(ScoreKind::kld, Weighting::unweighted, Direction::argmax)).value,
              79.238481354477727, 1e-10);
}

TEST(WordScore, RepeatedSymbolsCountPerPosition) {
  const auto c = make_config({"amble", "apple", "amuse"});
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  const auto s = spec(ScoreKind::entropy, Weighting::unweighted, Direction::argmax);
  const double h_p = symbol_entropy(st, sym('p'));
  const double h_a = symbol_entropy(st, sym('a'));
  const double h_l = symbol_entropy(st, sym('l'));
  const double h_e = symbol_entropy(st, sym('e'));
  EXPECT_NEAR(word_score(word(c, "apple"), st, s).value, h_a + 2 * h_p + h_l + h_e, 1e-12);
}

TEST(WordScore, WeightedDiffersAndZeroNormalizerFlagged) {
  const auto c = make_config({"amble", "apple", "amuse"});
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  const auto un = word_score(word(c, "amuse"), st, spec(ScoreKind::entropy, Weighting::unweighted, Direction::argmax));
  const auto wht = word_score(word(c, "amuse"), st, spec(ScoreKind::entropy, Weighting::weighted, Direction::argmax));
  EXPECT_NE(un.value, wht.value);
  const auto none = word_score(word(c, "zzzzz"), st, spec(ScoreKind::entropy, Weighting::weighted, Direction::argmax));
  EXPECT_TRUE(none.zero_normalizer);
  EXPECT_EQ(none.value, 0.0);
  const auto none_un =
      word_score(word(c, "zzzzz"), st, spec(ScoreKind::kld, Weighting::unweighted, Direction::argmax));
  EXPECT_EQ(none_un.value, 0.0);
}

TEST(WordScore, WeightedInvariantUnderScaling) {
  const auto& c = official()->config();
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  const auto w = word(c, "crane");
  const auto& values = st.symbol_entropy;
  const auto a = word_score<double>(w, st.uncond, values, Weighting::weighted).value;
  const Eigen::VectorXd scaled = st.uncond * 7.5;
  const auto b = word_score<double>(w, scaled, values, Weighting::weighted).value;
  EXPECT_NEAR(a, b, 1e-12);
}

TEST(SelectGuess, TenWordFixtures) {
  const auto c = make_config({"crane", "slate", "apple", "amble", "angle", "fuzzy", "vivid", "knock", "trace", "pious"});
  const auto all = CandidateSet::all(c);
  for (auto w : {Weighting::unweighted, Weighting::weighted}) {
    EXPECT_EQ(pick(c, all, spec(ScoreKind::entropy, w, Direction::argmax), false), "apple");
    EXPECT_EQ(pick(c, all, spec(ScoreKind::entropy, w, Direction::argmin), false), "fuzzy");
    EXPECT_EQ(pick(c, all, spec(ScoreKind::kld, w, Direction::argmax), false), "fuzzy");
    EXPECT_EQ(pick(c, all, spec(ScoreKind::kld, w, Direction::argmin), false), "vivid");
  }
}

TEST(SelectGuess, OfficialFirstGuesses) {
  const auto& c = official()->config();
  const auto all = CandidateSet::all(c);
  struct Case {
    ScoreKind kind;
    Weighting weighting;
    bool no_repeat;
    const char* max;
    const char* min;
  };
  const Case cases[] = {
      {ScoreKind::entropy, Weighting::unweighted, false, "eerie", "savvy"},
      {ScoreKind::entropy, Weighting::unweighted, true, "alone", "quack"},
      {ScoreKind::entropy, Weighting::weighted, false, "ozone", "pygmy"},
      {ScoreKind::entropy, Weighting::weighted, true, "alone", "pudgy"},
      {ScoreKind::kld, Weighting::unweighted, false, "quack", "slyly"},
      {ScoreKind::kld, Weighting::unweighted, true, "quack", "royal"},
      {ScoreKind::kld, Weighting::weighted, false, "chuck", "jazzy"},
      {ScoreKind::kld, Weighting::weighted, true, "punch", "bayou"},
  };
  for (const auto& k : cases) {
    EXPECT_EQ(pick(c, all, spec(k.kind, k.weighting, Direction::argmax), k.no_repeat), k.max);
    EXPECT_EQ(pick(c, all, spec(k.kind, k.weighting, Direction::argmin), k.no_repeat), k.min);
  }
}

TEST(SelectGuess, LogBaseDoesNotChangeChoice) {
  const auto& c = official()->config();
  const auto all = CandidateSet::all(c);
  const auto rows = all_rows(c.answers.size());
  for (auto kind : {ScoreKind::entropy, ScoreKind::kld}) {
    for (auto dir : {Direction::argmax, Direction::argmin}) {
      const auto s = spec(kind, Weighting::unweighted, dir);
      const auto base2 = select_guess<double>(c.answers, rows, collocation_stats<double>(c, all, 2.0), s, false);
      const auto base_e =
          select_guess<double>(c.answers, rows, collocation_stats<double>(c, all, std::exp(1.0)), s, false);
      const auto base10 = select_guess<double>(c.answers, rows, collocation_stats<double>(c, all, 10.0), s, false);
      EXPECT_EQ(base2, base_e);
      EXPECT_EQ(base2, base10);
    }
  }
}

TEST(SelectGuess, TiesGoToFirstAndSingletonWins) {
  const auto c = make_config({"abcde", "edcba", "bcdea"});
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  // anagrams score identically
  for (auto d : {Direction::argmax, Direction::argmin}) {
    EXPECT_EQ(select_guess<double>(c.answers, all_rows(3), st, spec(ScoreKind::entropy, Weighting::unweighted, d),
                                   false),
              0u);
  }
  const std::vector<std::uint32_t> one{2};
  EXPECT_EQ(select_guess<double>(c.answers, one, st, spec(ScoreKind::kld, Weighting::weighted, Direction::argmin),
                                 false),
            2u);
  EXPECT_THROW(select_guess<double>(c.answers, std::vector<std::uint32_t>{}, st, ScorerSpec{}, false),
               std::invalid_argument);
}

TEST(SelectGuess, NoRepeatFallsBackWhenEmpty) {
  const auto c = make_config({"apple", "geese"});
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  const auto s = spec(ScoreKind::entropy, Weighting::unweighted, Direction::argmin);
  EXPECT_EQ(select_guess<double>(c.answers, all_rows(2), st, s, true),
            select_guess<double>(c.answers, all_rows(2), st, s, false));
  EXPECT_EQ(repeat_free(c.answers, all_rows(2)).size(), 0u);
  EXPECT_EQ(repeat_free(official()->config().answers, all_rows(2315)).size(), 1566u);
}

TEST(SelectGuess, ArgmaxAndArgminDifferWhenScoresDiffer) {
  const auto c = make_config({"crane", "slate", "apple", "amble", "angle", "fuzzy", "vivid", "knock", "trace", "pious"});
  const auto all = CandidateSet::all(c);
  for (auto kind : {ScoreKind::entropy, ScoreKind::kld}) {
    for (auto w : {Weighting::unweighted, Weighting::weighted}) {
      EXPECT_NE(pick(c, all, spec(kind, w, Direction::argmax), false),
                pick(c, all, spec(kind, w, Direction::argmin), false));
    }
  }
}

TEST(SymbolScores, RenormalizedColumnsSumToOne) {
  const auto& c = official()->config();
  const auto st = collocation_stats<double>(c, CandidateSet::all(c));
  auto s = spec(ScoreKind::entropy, Weighting::unweighted, Direction::argmax);
  s.renormalize = true;
  const auto values = symbol_scores(st, s);
  const Eigen::VectorXd col = st.cond.col(sym('a')) / st.cond.col(sym('a')).sum();
  EXPECT_NEAR(values(sym('a')), info::entropy(col), 1e-12);
  EXPECT_LE(values(sym('a')), std::log2(26.0) + 1e-12);
}

TEST(ScorerNames, RoundTrip) {
  for (auto k : {ScoreKind::entropy, ScoreKind::kld}) {
    for (auto w : {Weighting::unweighted, Weighting::weighted}) {
      for (auto d : {Direction::argmax, Direction::argmin}) {
        for (bool r : {false, true}) {
          ScorerSpec s{k, w, d, r};
          EXPECT_EQ(parse_scorer(name(s)), s) << name(s);
        }
      }
    }
  }
  EXPECT_EQ(name(spec(ScoreKind::entropy, Weighting::unweighted, Direction::argmax)), "un-max");
  EXPECT_EQ(name(spec(ScoreKind::entropy, Weighting::weighted, Direction::argmin)), "wht-min");
  EXPECT_EQ(name(spec(ScoreKind::kld, Weighting::unweighted, Direction::argmax)), "un-max-kld");
  EXPECT_THROW(parse_scorer("un-mid"), std::invalid_argument);
}
