#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wordlab/context.hpp"

namespace wordlab::testing {

inline std::shared_ptr<const GameContext> official() {
  static const auto ctx = GameContext::make(load_config(WORDLAB_DATA_DIR "/wordle.conf"));
  return ctx;
}

inline GameConfig make_config(const std::vector<std::string>& answers, std::size_t length = 5,
                              std::string_view alphabet = "abcdefghijklmnopqrstuvwxyz") {
  GameConfig c;
  c.alphabet = Alphabet(alphabet);
  c.word_length = length;
  for (const auto& w : answers) c.answers.push_back(c.parse_word(w));
  c.allowed = c.answers;
  return c;
}

inline Word word(const GameConfig& c, std::string_view text) { return c.parse_word(text); }

inline CandidateSet ids_of(const GameConfig& c, const std::vector<std::string>& words) {
  std::vector<AnswerId> ids;
  for (const auto& w : words) ids.push_back(*c.find_answer(c.parse_word(w)));
  return CandidateSet(ids);
}

inline std::vector<std::string> texts(const GameConfig& c, const CandidateSet& set) {
  std::vector<std::string> out;
  for (auto id : set) out.push_back(c.text(c.answers[id]));
  return out;
}

// Every word of the given length over the alphabet, in lexicographic order.
inline GameConfig exhaustive_config(std::string_view alphabet, std::size_t length) {
  GameConfig c;
  c.alphabet = Alphabet(alphabet);
  c.word_length = length;
  const auto n = c.alphabet.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < length; ++k) total *= n;
  for (std::size_t i = 0; i < total; ++i) {
    Word w;
    w.symbols.resize(length);
    auto v = i;
    for (std::size_t k = length; k-- > 0;) {
      w.symbols[k] = static_cast<Symbol>(v % n);
      v /= n;
    }
    c.answers.push_back(w);
  }
  c.allowed = c.answers;
  return c;
}

}  // namespace wordlab::testing
