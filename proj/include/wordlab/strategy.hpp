#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wordlab/context.hpp"
#include "wordlab/partition.hpp"
#include "wordlab/scoring.hpp"

namespace wordlab {

enum class Family { random_baseline, collocation, partition_search };
enum class FirstGuessPolicy { random, score_optimal, score_optimal_no_repeat };

struct SearchSpec {
  SearchObjective objective = SearchObjective::min_entropy;
  PartitionMode mode = PartitionMode::by_pattern;

  friend bool operator==(const SearchSpec&, const SearchSpec&) = default;
};

struct StrategySpec {
  Family family = Family::random_baseline;
  ScorerSpec scorer;   // collocation only
  SearchSpec search;   // partition-search only
  FirstGuessPolicy first_guess = FirstGuessPolicy::random;
  std::uint64_t seed = 0;
  // Name the spec was requested under, when it differs from the canonical one.
  std::optional<std::string> preset_name;

  bool uses_randomness() const {
    return family == Family::random_baseline || first_guess == FirstGuessPolicy::random;
  }
  // Compares the grid point only (family, scorer, search, first guess).
  bool same_strategy(const StrategySpec& other) const;
};

class UnknownStrategyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Canonical label, e.g. "hard-mode", "colloc-un-max-nr", "search-kld-by-count".
std::string canonical_name(const StrategySpec& spec);

// preset_name if set, else the canonical label.
std::string display_name(const StrategySpec& spec);

// Accepts every canonical label plus the short presets below; throws
// UnknownStrategyError listing the presets otherwise.
StrategySpec resolve_preset(std::string_view name);

// The documented preset vocabulary.
const std::vector<std::string>& preset_names();

enum class GridFamily { all, colloc, search };
GridFamily parse_grid_family(std::string_view text);

// Baseline first, then the deterministic grid points of the family
// (8 collocation: kind × weighting × direction with the no-repeat first
// guess; 8 search: objective × mode).
std::vector<StrategySpec> strategy_grid(GridFamily family);

enum class Outcome { excellent, normal, failure };
std::string_view to_string(Outcome outcome);

// excellent: ≤ 2 guesses; failure: > 6 guesses.
Outcome classify(std::size_t guess_count);

struct Turn {
  Word guess;
  Response response;
  // Candidates left after filtering with this turn's response.
  std::size_t remaining = 0;
};

struct GameRecord {
  Word answer;
  std::vector<Turn> turns;
  std::size_t guess_count = 0;
  Outcome outcome = Outcome::normal;
};

// Every guess after the first is consistent with all earlier turns.
bool obeys_hard_mode(const GameRecord& record);

using Rng = std::mt19937_64;

// Independent stream for one game, so serial and parallel runs agree.
std::uint64_t game_seed(std::uint64_t master_seed, std::uint64_t run, std::uint64_t answer_index);

// Uniform draw from [0, n) that does not depend on the standard library's
// distribution implementation.
std::size_t uniform_index(Rng& rng, std::size_t n);

struct ScoredGuess {
  std::uint32_t row;  // guess-pool row
  double score;
};

// Plays one strategy on one loaded game. The deterministic first guess is
// computed once and shared; all members are safe to call concurrently.
class Solver {
 public:
  static constexpr std::size_t safety_cap = 30;

  Solver(std::shared_ptr<const GameContext> ctx, StrategySpec spec);

  const GameContext& context() const { return *ctx_; }
  const StrategySpec& spec() const { return spec_; }

  std::uint32_t first_guess(Rng& rng) const;
  std::uint32_t next_guess(const CandidateSet& reduced, Rng& rng) const;

  // Pool rows the strategy would choose between at this point, best first,
  // with the strategy's own score. Random strategies score uniformly.
  std::vector<ScoredGuess> rank(const CandidateSet& reduced, bool first_turn) const;

  // Throws InvariantError past the safety cap.
  GameRecord play(AnswerId answer, Rng& rng, std::optional<std::uint32_t> forced_first = std::nullopt) const;

 private:
  std::vector<std::uint32_t> first_turn_pool() const;
  std::uint32_t compute_first_guess() const;

  std::shared_ptr<const GameContext> ctx_;
  StrategySpec spec_;
  mutable std::once_flag first_once_;
  mutable std::uint32_t first_cached_ = 0;
};

}  // namespace wordlab
