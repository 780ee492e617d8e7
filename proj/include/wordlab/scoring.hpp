#pragma once

#include <Eigen/Core>

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wordlab/game.hpp"
#include "wordlab/info.hpp"

namespace wordlab {

enum class ScoreKind { entropy, kld };
enum class Weighting { unweighted, weighted };
enum class Direction { argmax, argmin };

struct ScorerSpec {
  ScoreKind kind = ScoreKind::entropy;
  Weighting weighting = Weighting::unweighted;
  Direction direction = Direction::argmax;
  // Divide each conditional column by its sum before scoring.
  bool renormalize = false;

  friend bool operator==(const ScorerSpec&, const ScorerSpec&) = default;
};

// "un-max", "wht-min", "un-max-kld", optionally suffixed "-renorm".
std::string name(const ScorerSpec& spec);
ScorerSpec parse_scorer(std::string_view text);

class UndefinedSymbolError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Symbol inclusion statistics of one candidate set. Matrices are indexed
// (x, s): column s is the distribution of x given that s is in the word.
template <typename Scalar = double>
struct CollocationStats {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  std::size_t set_size = 0;
  Scalar log_base = 2;
  Vector uncond;
  Matrix joint;
  // NaN in every column whose symbol never occurs.
  Matrix cond;
  Eigen::Array<bool, Eigen::Dynamic, 1> defined;
  // Zero where undefined.
  Vector symbol_entropy;
  Vector symbol_kld;

  Eigen::Index alphabet_size() const { return uncond.size(); }
};

template <typename Scalar = double>
CollocationStats<Scalar> collocation_stats(const GameConfig& config, const CandidateSet& set,
                                           Scalar log_base = 2) {
  if (set.empty()) throw std::invalid_argument("collocation statistics of an empty set");
  using Stats = CollocationStats<Scalar>;
  const auto n = static_cast<Eigen::Index>(config.alphabet.size());
  Stats st;
  st.set_size = set.size();
  st.log_base = log_base;
  st.uncond = Stats::Vector::Zero(n);
  st.joint = Stats::Matrix::Zero(n, n);

  std::vector<int> count(static_cast<std::size_t>(n), 0);
  std::vector<Symbol> present;
  for (auto id : set) {
    const auto& w = config.answers[id];
    present.clear();
    for (auto s : w.symbols) {
      if (count[s]++ == 0) present.push_back(s);
    }
    for (auto s : present) {
      st.uncond(s) += 1;
      if (count[s] >= 2) st.joint(s, s) += 1;
      for (auto x : present) {
        if (x != s) st.joint(x, s) += 1;
      }
    }
    for (auto s : present) count[s] = 0;
  }
  const Scalar m = static_cast<Scalar>(set.size());
  st.uncond /= m;
  st.joint /= m;

  st.defined = st.uncond.array() > Scalar(0);
  st.cond = Stats::Matrix::Constant(n, n, std::numeric_limits<Scalar>::quiet_NaN());
  st.symbol_entropy = Stats::Vector::Zero(n);
  st.symbol_kld = Stats::Vector::Zero(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    if (!st.defined(s)) continue;
    st.cond.col(s) = st.joint.col(s) / st.uncond(s);
    st.symbol_entropy(s) = info::entropy(st.cond.col(s), log_base);
    st.symbol_kld(s) = info::kld_uniform(st.cond.col(s), n, log_base);
  }
  return st;
}

template <typename Scalar = double>
typename CollocationStats<Scalar>::Vector unconditional_probs(const GameConfig& config,
                                                              const CandidateSet& set) {
  return collocation_stats<Scalar>(config, set).uncond;
}

template <typename Scalar = double>
typename CollocationStats<Scalar>::Matrix conditional_probs(const GameConfig& config,
                                                            const CandidateSet& set) {
  return collocation_stats<Scalar>(config, set).cond;
}

template <typename Scalar>
Scalar symbol_entropy(const CollocationStats<Scalar>& stats, Symbol s) {
  if (s >= stats.alphabet_size() || !stats.defined(s)) {
    throw UndefinedSymbolError("symbol does not occur in the candidate set");
  }
  return stats.symbol_entropy(s);
}

template <typename Scalar>
Scalar symbol_kld_uniform(const CollocationStats<Scalar>& stats, Symbol s) {
  if (s >= stats.alphabet_size() || !stats.defined(s)) {
    throw UndefinedSymbolError("symbol does not occur in the candidate set");
  }
  return stats.symbol_kld(s);
}

// Per-symbol contribution f(s) for a scorer; zero for undefined symbols.
template <typename Scalar>
typename CollocationStats<Scalar>::Vector symbol_scores(const CollocationStats<Scalar>& stats,
                                                        const ScorerSpec& spec) {
  if (!spec.renormalize) {
    return spec.kind == ScoreKind::entropy ? stats.symbol_entropy : stats.symbol_kld;
  }
  const auto n = stats.alphabet_size();
  typename CollocationStats<Scalar>::Vector out = CollocationStats<Scalar>::Vector::Zero(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    if (!stats.defined(s)) continue;
    const auto p = info::normalized<Scalar>(stats.cond.col(s));
    out(s) = spec.kind == ScoreKind::entropy ? info::entropy(p, stats.log_base)
                                             : info::kld_uniform(p, n, stats.log_base);
  }
  return out;
}

template <typename Scalar>
struct WordScore {
  Scalar value = 0;
  // Weighted scoring with no symbol of the word present in the set.
  bool zero_normalizer = false;
};

// Sums per position, so a repeated symbol contributes once per occurrence.
template <typename Scalar, typename DerivedU, typename DerivedF>
WordScore<Scalar> word_score(const Word& word, const Eigen::MatrixBase<DerivedU>& uncond,
                             const Eigen::MatrixBase<DerivedF>& symbol_values, Weighting weighting) {
  WordScore<Scalar> out;
  if (weighting == Weighting::unweighted) {
    for (auto s : word.symbols) out.value += symbol_values(s);
    return out;
  }
  Scalar num = 0;
  Scalar norm = 0;
  for (auto s : word.symbols) {
    num += uncond(s) * symbol_values(s);
    norm += uncond(s);
  }
  if (norm > 0) {
    out.value = num / norm;
  } else {
    out.zero_normalizer = true;
  }
  return out;
}

template <typename Scalar>
WordScore<Scalar> word_score(const Word& word, const CollocationStats<Scalar>& stats, const ScorerSpec& spec) {
  return word_score<Scalar>(word, stats.uncond, symbol_scores(stats, spec), spec.weighting);
}

// Scores of universe[pool[i]] for every i.
template <typename Scalar>
std::vector<Scalar> score_pool(std::span<const Word> universe, std::span<const std::uint32_t> pool,
                               const CollocationStats<Scalar>& stats, const ScorerSpec& spec) {
  const auto values = symbol_scores(stats, spec);
  std::vector<Scalar> out;
  out.reserve(pool.size());
  for (auto id : pool) out.push_back(word_score<Scalar>(universe[id], stats.uncond, values, spec.weighting).value);
  return out;
}

// Members of the pool without repeated symbols, in pool order.
std::vector<std::uint32_t> repeat_free(std::span<const Word> universe, std::span<const std::uint32_t> pool);

// Pool member optimising the score; the earliest member wins ties. With
// first_guess_no_repeat the pool is first narrowed to repeat-free words,
// unless that leaves nothing.
template <typename Scalar>
std::uint32_t select_guess(std::span<const Word> universe, std::span<const std::uint32_t> pool,
                           const CollocationStats<Scalar>& stats, const ScorerSpec& spec,
                           bool first_guess_no_repeat) {
  if (pool.empty()) throw std::invalid_argument("select_guess on an empty pool");
  std::vector<std::uint32_t> restricted;
  if (first_guess_no_repeat) {
    restricted = repeat_free(universe, pool);
    if (!restricted.empty()) pool = restricted;
  }
  const auto scores = score_pool(universe, pool, stats, spec);
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    const bool better = spec.direction == Direction::argmax ? scores[i] > scores[best] : scores[i] < scores[best];
    if (better) best = i;
  }
  return pool[best];
}

}  // namespace wordlab
