#pragma once

#include <memory>
#include <vector>

#include "wordlab/game.hpp"

namespace wordlab {

// Memoized responses for every (guess-pool word, answer) pair. Rows follow
// GameConfig::guess_pool(), columns follow C. Read-only after construction.
class ResponseTable {
 public:
  explicit ResponseTable(const GameConfig& config);

  bool memoized() const { return !codes_.empty(); }

  std::uint32_t code(std::uint32_t pool_index, AnswerId answer) const {
    if (memoized()) return codes_[static_cast<std::size_t>(pool_index) * answers_ + answer];
    return compute_response_code((*pool_)[pool_index], (*answer_words_)[answer]);
  }

 private:
  const std::vector<Word>* pool_;
  const std::vector<Word>* answer_words_;
  std::size_t answers_;
  std::vector<std::uint16_t> codes_;
};

// A loaded game: configuration, its digest, and the response table.
class GameContext {
 public:
  explicit GameContext(GameConfig config);

  static std::shared_ptr<const GameContext> make(GameConfig config) {
    return std::make_shared<const GameContext>(std::move(config));
  }

  const GameConfig& config() const { return config_; }
  const std::string& digest() const { return digest_; }
  const ResponseTable& table() const { return table_; }

  const std::vector<Word>& pool() const { return config_.guess_pool(); }

  // Row of the response table holding answer `id` (C is a subset of the pool).
  std::uint32_t pool_index_of(AnswerId id) const { return answer_to_pool_[id]; }

  // Filter using the memoized table; guess given as a guess-pool index.
  CandidateSet filter(const CandidateSet& set, std::uint32_t guess_pool_index, std::uint32_t code) const;

 private:
  GameConfig config_;
  std::string digest_;
  std::vector<std::uint32_t> answer_to_pool_;
  ResponseTable table_;
};

}  // namespace wordlab
