#include "wordlab/context.hpp"

#include <map>

namespace wordlab {

ResponseTable::ResponseTable(const GameConfig& config)
    : pool_(&config.guess_pool()), answer_words_(&config.answers), answers_(config.answers.size()) {
  if (pow3(config.word_length) > 65536) return;
  const auto& pool = *pool_;
  codes_.resize(pool.size() * answers_);
  for (std::size_t g = 0; g < pool.size(); ++g) {
    auto* row = codes_.data() + g * answers_;
    for (std::size_t a = 0; a < answers_; ++a) {
      row[a] = static_cast<std::uint16_t>(compute_response_code(pool[g], config.answers[a]));
    }
  }
}

namespace {

std::vector<std::uint32_t> map_answers_to_pool(const GameConfig& config) {
  const auto& pool = config.guess_pool();
  std::map<Word, std::uint32_t> where;
  for (std::size_t i = 0; i < pool.size(); ++i) where.emplace(pool[i], static_cast<std::uint32_t>(i));
  std::vector<std::uint32_t> out;
  out.reserve(config.answers.size());
  for (const auto& w : config.answers) {
    auto it = where.find(w);
    if (it == where.end()) throw DataError("answer '" + config.text(w) + "' missing from the guess pool");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

GameContext::GameContext(GameConfig config)
    : config_((config.validate(), std::move(config))),
      digest_(config_digest(config_)),
      answer_to_pool_(map_answers_to_pool(config_)),
      table_(config_) {}

CandidateSet GameContext::filter(const CandidateSet& set, std::uint32_t guess_pool_index,
                                 std::uint32_t code) const {
  std::vector<AnswerId> kept;
  for (auto id : set) {
    if (table_.code(guess_pool_index, id) == code) kept.push_back(id);
  }
  if (kept.empty()) throw ContradictionError();
  return CandidateSet(std::move(kept));
}

}  // namespace wordlab
