#pragma once

#include <Eigen/Core>

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordlab/context.hpp"
#include "wordlab/game.hpp"
#include "wordlab/info.hpp"

namespace wordlab {

// by-pattern groups by the full positional response; by-count groups by
// the (green, yellow) totals.
enum class PartitionMode { by_pattern, by_count };

std::string_view to_string(PartitionMode mode);
PartitionMode parse_partition_mode(std::string_view text);

// Number of keys a partition can use: 3^λ − λ by pattern, and
// (λ+1)(λ+2)/2 − 1 by count (238 and 20 for λ = 5).
std::size_t feasible_key_count(PartitionMode mode, std::size_t length);

// Key of a response code. By-count keys are greens·(λ+1) + yellows.
std::uint32_t partition_key(std::uint32_t response_code, PartitionMode mode, std::size_t length);

// "10011" for patterns, "g3y1" for counts.
std::string key_label(std::uint32_t key, PartitionMode mode, std::size_t length);

struct Partition {
  PartitionMode mode = PartitionMode::by_pattern;
  std::size_t word_length = 0;
  // Nonempty groups only, ordered by key; members keep candidate order.
  std::map<std::uint32_t, std::vector<AnswerId>> groups;
  std::size_t total = 0;
};

Partition partition_set(const GameConfig& config, const CandidateSet& set, const Word& guess,
                        PartitionMode mode);

// p(γ) = s(γ)/x over the nonempty groups, in key order.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> partition_distribution(const Partition& p) {
  if (p.total == 0) throw std::invalid_argument("distribution of an empty partition");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d(static_cast<Eigen::Index>(p.groups.size()));
  Eigen::Index i = 0;
  for (const auto& [key, members] : p.groups) {
    d(i++) = static_cast<Scalar>(members.size()) / static_cast<Scalar>(p.total);
  }
  return d;
}

// Shannon entropy (bits) of the group distribution.
double partition_entropy(const GameConfig& config, const CandidateSet& set, const Word& guess,
                         PartitionMode mode);

// KLD (bits) of the group distribution from uniform over every feasible key.
double partition_kld_uniform(const GameConfig& config, const CandidateSet& set, const Word& guess,
                             PartitionMode mode);

// Guess-selection objectives for the search strategies.
//   min-entropy  minimise the entropy left after the split, Σ p·log2 s
//   max-kld      maximise the expected divergence of the post-response
//                candidate distribution from the current one, Σ p·log2(x/s)
// The two always sum to log2 x, so they pick identical guesses.
// max-entropy and min-kld are their opposites, kept for comparison runs.
enum class SearchObjective { min_entropy, max_kld, max_entropy, min_kld };

std::string_view to_string(SearchObjective objective);
SearchObjective parse_search_objective(std::string_view text);

// Objective value of every guess in `pool` (rows of ctx.pool()) against `set`.
std::vector<double> search_scores(const GameContext& ctx, std::span<const std::uint32_t> pool,
                                  const CandidateSet& set, SearchObjective objective, PartitionMode mode);

// Pool row optimising the objective; the earliest row wins ties.
std::uint32_t select_guess_partition(const GameContext& ctx, std::span<const std::uint32_t> pool,
                                     const CandidateSet& set, SearchObjective objective, PartitionMode mode);

}  // namespace wordlab
