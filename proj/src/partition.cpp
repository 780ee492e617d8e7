#include "wordlab/partition.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace wordlab {

std::string_view to_string(PartitionMode mode) {
  return mode == PartitionMode::by_count ? "by-count" : "by-pattern";
}

PartitionMode parse_partition_mode(std::string_view text) {
  if (text == "by-pattern") return PartitionMode::by_pattern;
  if (text == "by-count") return PartitionMode::by_count;
  throw std::invalid_argument("unknown partition mode '" + std::string(text) + "'");
}

std::size_t feasible_key_count(PartitionMode mode, std::size_t length) {
  if (mode == PartitionMode::by_pattern) return pow3(length) - length;
  return (length + 1) * (length + 2) / 2 - 1;
}

std::uint32_t partition_key(std::uint32_t response_code, PartitionMode mode, std::size_t length) {
  if (mode == PartitionMode::by_pattern) return response_code;
  std::uint32_t greens = 0;
  std::uint32_t yellows = 0;
  for (std::size_t k = 0; k < length; ++k) {
    const auto digit = response_code % 3;
    greens += digit == static_cast<std::uint32_t>(Square::green);
    yellows += digit == static_cast<std::uint32_t>(Square::yellow);
    response_code /= 3;
  }
  return greens * static_cast<std::uint32_t>(length + 1) + yellows;
}

std::string key_label(std::uint32_t key, PartitionMode mode, std::size_t length) {
  if (mode == PartitionMode::by_pattern) return to_string(Response::from_code(key, length));
  const auto stride = static_cast<std::uint32_t>(length + 1);
  return "g" + std::to_string(key / stride) + "y" + std::to_string(key % stride);
}

Partition partition_set(const GameConfig& config, const CandidateSet& set, const Word& guess,
                        PartitionMode mode) {
  Partition p;
  p.mode = mode;
  p.word_length = config.word_length;
  for (auto id : set) {
    const auto code = compute_response_code(guess, config.answers[id]);
    p.groups[partition_key(code, mode, config.word_length)].push_back(id);
  }
  p.total = set.size();
  return p;
}

double partition_entropy(const GameConfig& config, const CandidateSet& set, const Word& guess,
                         PartitionMode mode) {
  if (set.empty()) throw std::invalid_argument("partition of an empty set");
  return info::entropy(partition_distribution(partition_set(config, set, guess, mode)));
}

double partition_kld_uniform(const GameConfig& config, const CandidateSet& set, const Word& guess,
                             PartitionMode mode) {
  if (set.empty()) throw std::invalid_argument("partition of an empty set");
  const auto b = static_cast<Eigen::Index>(feasible_key_count(mode, config.word_length));
  return info::kld_uniform(partition_distribution(partition_set(config, set, guess, mode)), b);
}

std::string_view to_string(SearchObjective objective) {
  switch (objective) {
    case SearchObjective::min_entropy: return "min-entropy";
    case SearchObjective::max_kld: return "max-kld";
    case SearchObjective::max_entropy: return "max-entropy";
    case SearchObjective::min_kld: return "min-kld";
  }
  return "?";
}

SearchObjective parse_search_objective(std::string_view text) {
  if (text == "min-entropy") return SearchObjective::min_entropy;
  if (text == "max-kld") return SearchObjective::max_kld;
  if (text == "max-entropy") return SearchObjective::max_entropy;
  if (text == "min-kld") return SearchObjective::min_kld;
  throw std::invalid_argument("unknown search objective '" + std::string(text) + "'");
}

namespace {

// Σ s·log2 s over the groups of each pool guess. Smaller means a finer split.
class SplitCost {
 public:
  SplitCost(const GameContext& ctx, std::size_t set_size, PartitionMode mode)
      : ctx_(ctx), mode_(mode), length_(ctx.config().word_length) {
    const auto codes = pow3(length_);
    if (codes <= dense_limit) {
      key_of_.resize(codes);
      for (std::uint32_t c = 0; c < codes; ++c) key_of_[c] = partition_key(c, mode, length_);
      counts_.assign(codes, 0);
    }
    slog_.resize(set_size + 1, 0.0);
    for (std::size_t s = 2; s <= set_size; ++s) slog_[s] = static_cast<double>(s) * std::log2(static_cast<double>(s));
  }

  double operator()(std::uint32_t guess, const CandidateSet& set) {
    const auto& table = ctx_.table();
    if (key_of_.empty()) {
      std::unordered_map<std::uint32_t, std::uint32_t> sparse;
      for (auto id : set) ++sparse[partition_key(table.code(guess, id), mode_, length_)];
      double cost = 0;
      for (const auto& [key, n] : sparse) cost += slog_[n];
      return cost;
    }
    touched_.clear();
    for (auto id : set) {
      const auto key = key_of_[table.code(guess, id)];
      if (counts_[key]++ == 0) touched_.push_back(key);
    }
    double cost = 0;
    for (auto key : touched_) {
      cost += slog_[counts_[key]];
      counts_[key] = 0;
    }
    return cost;
  }

 private:
  static constexpr std::uint32_t dense_limit = 1u << 16;

  const GameContext& ctx_;
  PartitionMode mode_;
  std::size_t length_;
  std::vector<std::uint32_t> key_of_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint32_t> touched_;
  std::vector<double> slog_;
};

bool prefers_fine_split(SearchObjective objective) {
  return objective == SearchObjective::min_entropy || objective == SearchObjective::max_kld;
}

}  // namespace

std::vector<double> search_scores(const GameContext& ctx, std::span<const std::uint32_t> pool,
                                  const CandidateSet& set, SearchObjective objective, PartitionMode mode) {
  if (set.empty()) throw std::invalid_argument("search over an empty candidate set");
  SplitCost cost(ctx, set.size(), mode);
  const double x = static_cast<double>(set.size());
  const double log_x = std::log2(x);
  std::vector<double> out;
  out.reserve(pool.size());
  for (auto g : pool) {
    const double remaining = cost(g, set) / x;
    const bool entropy_kind = objective == SearchObjective::min_entropy || objective == SearchObjective::max_entropy;
    out.push_back(entropy_kind ? remaining : log_x - remaining);
  }
  return out;
}

std::uint32_t select_guess_partition(const GameContext& ctx, std::span<const std::uint32_t> pool,
                                     const CandidateSet& set, SearchObjective objective, PartitionMode mode) {
  if (pool.empty()) throw std::invalid_argument("select_guess_partition on an empty pool");
  if (set.empty()) throw std::invalid_argument("search over an empty candidate set");
  SplitCost cost(ctx, set.size(), mode);
  const bool fine = prefers_fine_split(objective);
  std::size_t best = 0;
  double best_cost = cost(pool[0], set);
  for (std::size_t i = 1; i < pool.size(); ++i) {
    const double c = cost(pool[i], set);
    if (fine ? c < best_cost : c > best_cost) {
      best = i;
      best_cost = c;
    }
  }
  return pool[best];
}

}  // namespace wordlab
