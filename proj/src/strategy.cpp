#include "wordlab/strategy.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

namespace wordlab {

bool StrategySpec::same_strategy(const StrategySpec& other) const {
  if (family != other.family || first_guess != other.first_guess) return false;
  switch (family) {
    case Family::random_baseline: return true;
    case Family::collocation: return scorer == other.scorer;
    case Family::partition_search: return search == other.search;
  }
  return false;
}

namespace {

std::string first_guess_suffix(FirstGuessPolicy policy) {
  switch (policy) {
    case FirstGuessPolicy::random: return "-rfg";
    case FirstGuessPolicy::score_optimal: return "";
    case FirstGuessPolicy::score_optimal_no_repeat: return "-nr";
  }
  return "";
}

std::string objective_word(SearchObjective objective) {
  switch (objective) {
    case SearchObjective::min_entropy: return "entropy";
    case SearchObjective::max_kld: return "kld";
    case SearchObjective::max_entropy: return "max-entropy";
    case SearchObjective::min_kld: return "min-kld";
  }
  return "?";
}

bool strip_suffix(std::string& s, std::string_view suffix) {
  if (s.size() < suffix.size() || s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
  s.resize(s.size() - suffix.size());
  return true;
}

bool strip_prefix(std::string& s, std::string_view prefix) {
  if (s.compare(0, prefix.size(), prefix) != 0) return false;
  s.erase(0, prefix.size());
  return true;
}

[[noreturn]] void unknown(std::string_view name) {
  std::string msg = "unknown strategy '" + std::string(name) + "'; available presets:";
  for (const auto& p : preset_names()) msg += " " + p;
  throw UnknownStrategyError(msg);
}

}  // namespace

std::string canonical_name(const StrategySpec& spec) {
  switch (spec.family) {
    case Family::random_baseline: return "hard-mode";
    case Family::collocation: return "colloc-" + name(spec.scorer) + first_guess_suffix(spec.first_guess);
    case Family::partition_search:
      return "search-" + objective_word(spec.search.objective) + "-" + std::string(to_string(spec.search.mode)) +
             first_guess_suffix(spec.first_guess);
  }
  return "?";
}

std::string display_name(const StrategySpec& spec) { return spec.preset_name.value_or(canonical_name(spec)); }

StrategySpec resolve_preset(std::string_view requested) {
  std::string name(requested);
  StrategySpec spec;
  if (name.empty()) unknown(requested);
  if (name == "hard-mode") {
    spec.family = Family::random_baseline;
    spec.first_guess = FirstGuessPolicy::random;
    return spec;
  }
  if (name == "colloc-kld") {
    spec.family = Family::collocation;
    spec.scorer = ScorerSpec{ScoreKind::kld, Weighting::unweighted, Direction::argmax, false};
    spec.first_guess = FirstGuessPolicy::score_optimal_no_repeat;
    spec.preset_name = name;
    return spec;
  }

  std::string rest = name;
  spec.first_guess = FirstGuessPolicy::score_optimal;
  if (strip_suffix(rest, "-nr")) {
    spec.first_guess = FirstGuessPolicy::score_optimal_no_repeat;
  } else if (strip_suffix(rest, "-rfg")) {
    spec.first_guess = FirstGuessPolicy::random;
  }

  if (strip_prefix(rest, "colloc-")) {
    spec.family = Family::collocation;
    try {
      spec.scorer = parse_scorer(rest);
    } catch (const std::invalid_argument&) {
      unknown(requested);
    }
  } else if (strip_prefix(rest, "search-")) {
    spec.family = Family::partition_search;
    bool explicit_mode = true;
    if (strip_suffix(rest, "-by-count")) {
      spec.search.mode = PartitionMode::by_count;
    } else if (strip_suffix(rest, "-by-pattern")) {
      spec.search.mode = PartitionMode::by_pattern;
    } else {
      explicit_mode = false;
    }
    if (rest == "entropy") {
      spec.search.objective = SearchObjective::min_entropy;
    } else if (rest == "kld") {
      spec.search.objective = SearchObjective::max_kld;
    } else if (rest == "max-entropy") {
      spec.search.objective = SearchObjective::max_entropy;
    } else if (rest == "min-kld") {
      spec.search.objective = SearchObjective::min_kld;
    } else {
      unknown(requested);
    }
    if (!explicit_mode) spec.preset_name = name;
  } else {
    unknown(requested);
  }
  return spec;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{
      "hard-mode",
      "colloc-un-max",
      "colloc-un-min",
      "colloc-wht-max",
      "colloc-wht-min",
      "colloc-un-max-nr",
      "colloc-un-min-nr",
      "colloc-wht-max-nr",
      "colloc-wht-min-nr",
      "colloc-kld",
      "search-entropy",
      "search-kld",
      "search-entropy-by-pattern",
      "search-entropy-by-count",
      "search-kld-by-pattern",
      "search-kld-by-count",
  };
  return names;
}

GridFamily parse_grid_family(std::string_view text) {
  if (text == "all") return GridFamily::all;
  if (text == "colloc") return GridFamily::colloc;
  if (text == "search") return GridFamily::search;
  throw std::invalid_argument("unknown grid family '" + std::string(text) + "' (all, colloc, search)");
}

std::vector<StrategySpec> strategy_grid(GridFamily family) {
  std::vector<StrategySpec> grid{resolve_preset("hard-mode")};
  if (family != GridFamily::search) {
    for (auto kind : {ScoreKind::entropy, ScoreKind::kld}) {
      for (auto weighting : {Weighting::unweighted, Weighting::weighted}) {
        for (auto direction : {Direction::argmax, Direction::argmin}) {
          StrategySpec s;
          s.family = Family::collocation;
          s.scorer = ScorerSpec{kind, weighting, direction, false};
          s.first_guess = FirstGuessPolicy::score_optimal_no_repeat;
          grid.push_back(s);
        }
      }
    }
  }
  if (family != GridFamily::colloc) {
    for (auto mode : {PartitionMode::by_pattern, PartitionMode::by_count}) {
      for (auto objective : {SearchObjective::min_entropy, SearchObjective::max_kld, SearchObjective::max_entropy,
                             SearchObjective::min_kld}) {
        StrategySpec s;
        s.family = Family::partition_search;
        s.search = SearchSpec{objective, mode};
        s.first_guess = FirstGuessPolicy::score_optimal;
        grid.push_back(s);
      }
    }
  }
  return grid;
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::excellent: return "excellent";
    case Outcome::normal: return "normal";
    case Outcome::failure: return "failure";
  }
  return "?";
}

Outcome classify(std::size_t guess_count) {
  if (guess_count <= 2) return Outcome::excellent;
  if (guess_count > 6) return Outcome::failure;
  return Outcome::normal;
}

bool obeys_hard_mode(const GameRecord& record) {
  for (std::size_t i = 1; i < record.turns.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!is_consistent(record.turns[i].guess, record.turns[j].guess, record.turns[j].response)) return false;
    }
  }
  return true;
}

std::uint64_t game_seed(std::uint64_t master_seed, std::uint64_t run, std::uint64_t answer_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(answer_index)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index over an empty range");
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % range);
}

Solver::Solver(std::shared_ptr<const GameContext> ctx, StrategySpec spec) : ctx_(std::move(ctx)), spec_(std::move(spec)) {}

std::vector<std::uint32_t> Solver::first_turn_pool() const {
  std::vector<std::uint32_t> rows(ctx_->pool().size());
  std::iota(rows.begin(), rows.end(), 0u);
  return rows;
}

std::uint32_t Solver::compute_first_guess() const {
  const auto rows = first_turn_pool();
  const auto all = CandidateSet::all(ctx_->config());
  const bool no_repeat = spec_.first_guess == FirstGuessPolicy::score_optimal_no_repeat;
  if (spec_.family == Family::collocation) {
    const auto stats = collocation_stats<double>(ctx_->config(), all);
    return select_guess<double>(ctx_->pool(), rows, stats, spec_.scorer, no_repeat);
  }
  std::vector<std::uint32_t> pool = rows;
  if (no_repeat) {
    auto restricted = repeat_free(ctx_->pool(), rows);
    if (!restricted.empty()) pool = std::move(restricted);
  }
  return select_guess_partition(*ctx_, pool, all, spec_.search.objective, spec_.search.mode);
}

std::uint32_t Solver::first_guess(Rng& rng) const {
  if (spec_.family == Family::random_baseline || spec_.first_guess == FirstGuessPolicy::random) {
    return static_cast<std::uint32_t>(uniform_index(rng, ctx_->pool().size()));
  }
  std::call_once(first_once_, [this] { first_cached_ = compute_first_guess(); });
  return first_cached_;
}

std::uint32_t Solver::next_guess(const CandidateSet& reduced, Rng& rng) const {
  if (reduced.empty()) throw InvariantError("next_guess on an empty candidate set");
  if (reduced.size() == 1) return ctx_->pool_index_of(reduced[0]);
  switch (spec_.family) {
    case Family::random_baseline:
      return ctx_->pool_index_of(reduced[uniform_index(rng, reduced.size())]);
    case Family::collocation: {
      const auto stats = collocation_stats<double>(ctx_->config(), reduced);
      const auto id = select_guess<double>(ctx_->config().answers, reduced.ids(), stats, spec_.scorer, false);
      return ctx_->pool_index_of(id);
    }
    case Family::partition_search: {
      std::vector<std::uint32_t> rows;
      rows.reserve(reduced.size());
      for (auto id : reduced) rows.push_back(ctx_->pool_index_of(id));
      return select_guess_partition(*ctx_, rows, reduced, spec_.search.objective, spec_.search.mode);
    }
  }
  throw InvariantError("unknown strategy family");
}

std::vector<ScoredGuess> Solver::rank(const CandidateSet& reduced, bool first_turn) const {
  std::vector<std::uint32_t> rows;
  if (first_turn) {
    rows = first_turn_pool();
    if (spec_.first_guess == FirstGuessPolicy::score_optimal_no_repeat) {
      auto restricted = repeat_free(ctx_->pool(), rows);
      if (!restricted.empty()) rows = std::move(restricted);
    }
  } else {
    for (auto id : reduced) rows.push_back(ctx_->pool_index_of(id));
  }

  std::vector<double> scores;
  bool higher_is_better = true;
  if (spec_.family == Family::random_baseline || (first_turn && spec_.first_guess == FirstGuessPolicy::random)) {
    scores.assign(rows.size(), 1.0 / static_cast<double>(rows.size()));
  } else if (spec_.family == Family::collocation) {
    const auto stats = collocation_stats<double>(ctx_->config(), reduced);
    scores = score_pool<double>(ctx_->pool(), rows, stats, spec_.scorer);
    higher_is_better = spec_.scorer.direction == Direction::argmax;
  } else {
    scores = search_scores(*ctx_, rows, reduced, spec_.search.objective, spec_.search.mode);
    higher_is_better = spec_.search.objective == SearchObjective::max_kld ||
                       spec_.search.objective == SearchObjective::max_entropy;
  }

  std::vector<ScoredGuess> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back({rows[i], scores[i]});
  std::stable_sort(out.begin(), out.end(), [&](const ScoredGuess& a, const ScoredGuess& b) {
    return higher_is_better ? a.score > b.score : a.score < b.score;
  });
  return out;
}

GameRecord Solver::play(AnswerId answer, Rng& rng, std::optional<std::uint32_t> forced_first) const {
  const auto& config = ctx_->config();
  GameRecord record;
  record.answer = config.answers.at(answer);
  auto candidates = CandidateSet::all(config);
  auto guess = forced_first ? *forced_first : first_guess(rng);
  const auto perfect = Response::perfect(config.word_length).code();
  while (true) {
    if (record.turns.size() == safety_cap) {
      throw InvariantError("game for '" + config.text(record.answer) + "' exceeded " + std::to_string(safety_cap) +
                           " guesses");
    }
    const auto code = ctx_->table().code(guess, answer);
    Turn turn{ctx_->pool()[guess], Response::from_code(code, config.word_length), 0};
    if (code == perfect) {
      turn.remaining = 1;
      record.turns.push_back(std::move(turn));
      break;
    }
    candidates = ctx_->filter(candidates, guess, code);
    turn.remaining = candidates.size();
    record.turns.push_back(std::move(turn));
    guess = next_guess(candidates, rng);
  }
  record.guess_count = record.turns.size();
  record.outcome = classify(record.guess_count);
  return record;
}

}  // namespace wordlab
