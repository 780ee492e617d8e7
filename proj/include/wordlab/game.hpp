#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wordlab {

// Index of a symbol in the alphabet; alphabets are limited to 256 symbols.
using Symbol = std::uint8_t;

// Position of a word inside the answer list C.
using AnswerId = std::uint32_t;

enum class Square : std::uint8_t { gray = 0, green = 1, yellow = 2 };

enum class GuessPoolMode { answers_only, full_pool };

std::string_view to_string(GuessPoolMode mode);
GuessPoolMode parse_guess_pool_mode(std::string_view text);

// Malformed or inconsistent input data (word lists, config files, user
// supplied words and responses).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WordListError : public DataError {
 public:
  WordListError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Feedback that no remaining candidate could have produced.
class ContradictionError : public std::runtime_error {
 public:
  ContradictionError() : std::runtime_error("no candidate consistent with history") {}
};

// A broken internal invariant (livelock, empty pool during self-play, ...).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Ordered set of distinct symbols. Symbols are UTF-8 code points, so
// alphabets beyond ASCII work; ASCII letters are lowercased on input.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string_view symbols);

  static Alphabet latin();

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Symbol s) const { return symbols_.at(s); }
  std::string text() const;

  // Splits text into symbols; returns false if any code point is not in Σ.
  bool encode(std::string_view text, std::vector<Symbol>& out) const;

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> index_;
};

struct Word {
  std::vector<Symbol> symbols;

  std::size_t size() const { return symbols.size(); }
  Symbol operator[](std::size_t k) const { return symbols[k]; }
  bool has_repeated_symbol() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

struct Response {
  std::vector<Square> squares;

  std::size_t size() const { return squares.size(); }
  bool is_perfect() const;
  std::uint32_t code() const;
  std::size_t greens() const;
  std::size_t yellows() const;

  static Response from_code(std::uint32_t code, std::size_t length);
  static Response perfect(std::size_t length);

  friend bool operator==(const Response&, const Response&) = default;
  friend auto operator<=>(const Response&, const Response&) = default;
};

// Canonical digit form, green=1 yellow=2 gray=0, e.g. "10011".
std::string to_string(const Response& response);

// Accepts only the digit form; throws DataError on anything else.
Response parse_response(std::string_view text, std::size_t length);

struct GameConfig {
  Alphabet alphabet = Alphabet::latin();
  std::size_t word_length = 5;
  std::vector<Word> answers;
  std::vector<Word> allowed;
  GuessPoolMode guess_pool_mode = GuessPoolMode::answers_only;

  // Throws DataError when an invariant of the game definition is violated.
  void validate() const;

  // Words a guess is drawn from before any filtering: C, or P in full-pool mode.
  const std::vector<Word>& guess_pool() const {
    return guess_pool_mode == GuessPoolMode::full_pool ? allowed : answers;
  }

  std::string text(const Word& word) const;
  Word parse_word(std::string_view text) const;

  // Index of word in C, if present.
  std::optional<AnswerId> find_answer(const Word& word) const;
};

std::vector<Word> load_word_list(std::istream& source, const GameConfig& config);
std::vector<Word> load_word_list(const std::filesystem::path& path, const GameConfig& config);

// Reads a key-value config file. Relative list paths resolve against the
// file's directory. An absent allowed list means P = C.
GameConfig load_config(const std::filesystem::path& path);

// SHA-256 over alphabet, word length, pool mode and both word lists.
std::string config_digest(const GameConfig& config);

// Members of C in source order; never grows under filtering.
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::vector<AnswerId> ids) : ids_(std::move(ids)) {}

  static CandidateSet all(const GameConfig& config);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  AnswerId operator[](std::size_t i) const { return ids_[i]; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  std::span<const AnswerId> ids() const { return ids_; }
  bool contains(AnswerId id) const;

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;

 private:
  std::vector<AnswerId> ids_;
};

std::uint32_t compute_response_code(const Word& guess, const Word& answer);
Response compute_response(const Word& guess, const Word& answer);

bool is_consistent(const Word& candidate, const Word& guess, const Response& observed);

// Throws ContradictionError when no member survives.
CandidateSet filter_candidates(const GameConfig& config, const CandidateSet& set,
                               const Word& guess, const Response& observed);

// Every length-λ pattern except "λ−1 greens and one yellow", in code order.
std::vector<Response> feasible_response_patterns(std::size_t length);

std::uint32_t pow3(std::size_t exponent);

}  // namespace wordlab
