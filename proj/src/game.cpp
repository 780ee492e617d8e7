#include "wordlab/game.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace wordlab {

namespace {

// Length in bytes of the UTF-8 sequence starting with lead byte c.
std::size_t utf8_length(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c >> 5) == 0x6) return 2;
  if ((c >> 4) == 0xe) return 3;
  if ((c >> 3) == 0x1e) return 4;
  return 0;
}

template <typename F>
bool for_each_code_point(std::string_view text, F&& f) {
  std::size_t i = 0;
  while (i < text.size()) {
    auto len = utf8_length(static_cast<unsigned char>(text[i]));
    if (len == 0 || i + len > text.size()) return false;
    std::string cp(text.substr(i, len));
    if (len == 1) cp[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(cp[0])));
    if (!f(std::move(cp))) return false;
    i += len;
  }
  return true;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view to_string(GuessPoolMode mode) {
  return mode == GuessPoolMode::full_pool ? "full-pool" : "answers-only";
}

GuessPoolMode parse_guess_pool_mode(std::string_view text) {
  if (text == "answers-only") return GuessPoolMode::answers_only;
  if (text == "full-pool") return GuessPoolMode::full_pool;
  throw DataError("unknown guess_pool_mode '" + std::string(text) +
                  "' (expected answers-only or full-pool)");
}

WordListError::WordListError(std::size_t line, const std::string& message)
    : DataError("line " + std::to_string(line) + ": " + message), line_(line) {}

Alphabet::Alphabet(std::string_view symbols) {
  bool ok = for_each_code_point(symbols, [&](std::string cp) {
    if (index_.contains(cp)) throw DataError("alphabet has duplicate symbol '" + cp + "'");
    if (symbols_.size() == 256) throw DataError("alphabet exceeds 256 symbols");
    index_.emplace(cp, static_cast<Symbol>(symbols_.size()));
    symbols_.push_back(std::move(cp));
    return true;
  });
  if (!ok) throw DataError("alphabet is not valid UTF-8");
  if (symbols_.empty()) throw DataError("alphabet is empty");
}

Alphabet Alphabet::latin() { return Alphabet("abcdefghijklmnopqrstuvwxyz"); }

std::string Alphabet::text() const {
  std::string out;
  for (const auto& s : symbols_) out += s;
  return out;
}

bool Alphabet::encode(std::string_view text, std::vector<Symbol>& out) const {
  out.clear();
  return for_each_code_point(text, [&](std::string cp) {
    auto it = index_.find(cp);
    if (it == index_.end()) return false;
    out.push_back(it->second);
    return true;
  });
}

bool Word::has_repeated_symbol() const {
  std::array<bool, 256> seen{};
  for (auto s : symbols) {
    if (seen[s]) return true;
    seen[s] = true;
  }
  return false;
}

std::uint32_t pow3(std::size_t exponent) {
  std::uint32_t p = 1;
  for (std::size_t i = 0; i < exponent; ++i) p *= 3;
  return p;
}

bool Response::is_perfect() const {
  return std::all_of(squares.begin(), squares.end(), [](Square s) { return s == Square::green; });
}

std::uint32_t Response::code() const {
  std::uint32_t c = 0;
  for (auto s : squares) c = c * 3 + static_cast<std::uint32_t>(s);
  return c;
}

std::size_t Response::greens() const {
  return static_cast<std::size_t>(std::count(squares.begin(), squares.end(), Square::green));
}

std::size_t Response::yellows() const {
  return static_cast<std::size_t>(std::count(squares.begin(), squares.end(), Square::yellow));
}

Response Response::from_code(std::uint32_t code, std::size_t length) {
  Response r;
  r.squares.resize(length);
  for (std::size_t k = length; k-- > 0;) {
    r.squares[k] = static_cast<Square>(code % 3);
    code /= 3;
  }
  return r;
}

Response Response::perfect(std::size_t length) {
  return Response{std::vector<Square>(length, Square::green)};
}

std::string to_string(const Response& response) {
  std::string out;
  out.reserve(response.size());
  for (auto s : response.squares) out.push_back(static_cast<char>('0' + static_cast<int>(s)));
  return out;
}

Response parse_response(std::string_view text, std::size_t length) {
  if (text.size() != length) {
    throw DataError("response '" + std::string(text) + "' must have exactly " +
                    std::to_string(length) + " digits");
  }
  Response r;
  r.squares.reserve(length);
  for (char c : text) {
    if (c < '0' || c > '2') {
      throw DataError("response '" + std::string(text) +
                      "' may only contain 1 (green), 2 (yellow) and 0 (gray)");
    }
    r.squares.push_back(static_cast<Square>(c - '0'));
  }
  return r;
}

void GameConfig::validate() const {
  if (word_length == 0) throw DataError("word_length must be positive");
  if (word_length > 20) throw DataError("word_length above 20 is not supported");
  if (answers.empty()) throw DataError("answer list is empty");
  auto check = [&](const std::vector<Word>& words, const char* what) {
    for (const auto& w : words) {
      if (w.size() != word_length) throw DataError(std::string(what) + " word has wrong length");
      for (auto s : w.symbols) {
        if (s >= alphabet.size()) throw DataError(std::string(what) + " word uses a symbol outside the alphabet");
      }
    }
  };
  check(answers, "answer");
  check(allowed, "allowed");
  if (allowed.size() < answers.size()) throw DataError("allowed list is smaller than the answer list");
  if (guess_pool_mode == GuessPoolMode::full_pool) {
    std::set<Word> pool(allowed.begin(), allowed.end());
    for (const auto& w : answers) {
      if (!pool.contains(w)) throw DataError("answer '" + text(w) + "' missing from the allowed list (C must be a subset of P)");
    }
  }
}

std::string GameConfig::text(const Word& word) const {
  std::string out;
  for (auto s : word.symbols) out += alphabet.symbol(s);
  return out;
}

Word GameConfig::parse_word(std::string_view text) const {
  Word w;
  auto t = trim(text);
  if (!alphabet.encode(t, w.symbols)) throw DataError("'" + t + "' contains a symbol outside the alphabet");
  if (w.size() != word_length) {
    throw DataError("'" + t + "' has length " + std::to_string(w.size()) + ", expected " +
                    std::to_string(word_length));
  }
  return w;
}

std::optional<AnswerId> GameConfig::find_answer(const Word& word) const {
  auto it = std::find(answers.begin(), answers.end(), word);
  if (it == answers.end()) return std::nullopt;
  return static_cast<AnswerId>(it - answers.begin());
}

std::vector<Word> load_word_list(std::istream& source, const GameConfig& config) {
  std::vector<Word> words;
  std::set<Word> seen;
  std::string line;
  std::size_t number = 0;
  while (std::getline(source, line)) {
    ++number;
    auto t = trim(line);
    if (t.empty()) continue;
    Word w;
    if (!config.alphabet.encode(t, w.symbols)) {
      throw WordListError(number, "'" + t + "' contains a symbol outside the alphabet");
    }
    if (w.size() != config.word_length) {
      throw WordListError(number, "'" + t + "' has length " + std::to_string(w.size()) + ", expected " +
                                      std::to_string(config.word_length));
    }
    if (!seen.insert(w).second) throw WordListError(number, "duplicate word '" + t + "'");
    words.push_back(std::move(w));
  }
  return words;
}

std::vector<Word> load_word_list(const std::filesystem::path& path, const GameConfig& config) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read word list " + path.string());
  try {
    return load_word_list(in, config);
  } catch (const WordListError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

GameConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read config " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(number) + ": expected key = value");
    }
    kv[trim(std::string_view(t).substr(0, eq))] = trim(std::string_view(t).substr(eq + 1));
  }
  static const std::set<std::string> known{"alphabet", "word_length", "answers", "allowed", "guess_pool_mode"};
  for (const auto& [k, v] : kv) {
    if (!known.contains(k)) throw DataError(path.string() + ": unknown key '" + k + "'");
  }

  GameConfig config;
  if (kv.contains("alphabet")) config.alphabet = Alphabet(kv["alphabet"]);
  if (kv.contains("word_length")) {
    try {
      config.word_length = std::stoul(kv["word_length"]);
    } catch (const std::exception&) {
      throw DataError(path.string() + ": word_length must be a positive integer");
    }
  }
  if (kv.contains("guess_pool_mode")) config.guess_pool_mode = parse_guess_pool_mode(kv["guess_pool_mode"]);
  if (!kv.contains("answers")) throw DataError(path.string() + ": missing 'answers'");
  auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  config.answers = load_word_list(resolve(kv["answers"]), config);
  config.allowed = kv.contains("allowed") ? load_word_list(resolve(kv["allowed"]), config) : config.answers;
  config.validate();
  return config;
}

std::string config_digest(const GameConfig& config) {
  std::ostringstream canon;
  canon << config.alphabet.text() << '\n' << config.word_length << '\n' << to_string(config.guess_pool_mode) << '\n';
  for (const auto& w : config.answers) canon << config.text(w) << '\n';
  canon << "--\n";
  for (const auto& w : config.allowed) canon << config.text(w) << '\n';
  const auto data = canon.str();

  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

CandidateSet CandidateSet::all(const GameConfig& config) {
  std::vector<AnswerId> ids(config.answers.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<AnswerId>(i);
  return CandidateSet(std::move(ids));
}

bool CandidateSet::contains(AnswerId id) const {
  return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
}

std::uint32_t compute_response_code(const Word& guess, const Word& answer) {
  const std::size_t n = guess.size();
  // Unmatched answer symbols; at most λ distinct entries are touched.
  std::array<std::uint8_t, 256> remaining{};
  std::uint32_t greens_mask = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (guess[k] == answer[k]) {
      greens_mask |= 1u << k;
    } else {
      ++remaining[answer[k]];
    }
  }
  std::uint32_t code = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint32_t digit = 0;
    if (greens_mask & (1u << k)) {
      digit = static_cast<std::uint32_t>(Square::green);
    } else if (remaining[guess[k]] > 0) {
      --remaining[guess[k]];
      digit = static_cast<std::uint32_t>(Square::yellow);
    }
    code = code * 3 + digit;
  }
  return code;
}

Response compute_response(const Word& guess, const Word& answer) {
  return Response::from_code(compute_response_code(guess, answer), guess.size());
}

bool is_consistent(const Word& candidate, const Word& guess, const Response& observed) {
  return compute_response_code(guess, candidate) == observed.code();
}

CandidateSet filter_candidates(const GameConfig& config, const CandidateSet& set, const Word& guess,
                               const Response& observed) {
  const auto target = observed.code();
  std::vector<AnswerId> kept;
  for (auto id : set) {
    if (compute_response_code(guess, config.answers[id]) == target) kept.push_back(id);
  }
  if (kept.empty()) throw ContradictionError();
  return CandidateSet(std::move(kept));
}

std::vector<Response> feasible_response_patterns(std::size_t length) {
  std::vector<Response> out;
  const auto total = pow3(length);
  for (std::uint32_t c = 0; c < total; ++c) {
    auto r = Response::from_code(c, length);
    if (r.greens() + 1 == length && r.yellows() == 1) continue;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace wordlab
