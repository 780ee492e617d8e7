#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wordlab/context.hpp"
#include "wordlab/strategy.hpp"

namespace httplib {
class Server;
}

namespace wordlab {

// Error carrying an HTTP status and a short machine-readable code.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

struct HistoryEntry {
  Word guess;
  Response response;
};

struct SessionSnapshot {
  std::string id;
  std::string strategy;
  std::string config;
  std::uint64_t seed = 0;
  std::vector<HistoryEntry> history;
  CandidateSet candidates;
  std::optional<Word> suggestion;
  bool solved = false;
  std::int64_t created_ms = 0;
  std::int64_t updated_ms = 0;
};

struct RankedCandidate {
  Word word;
  double score;
};

struct PreviewGroup {
  std::string label;
  std::size_t count;
};

struct Preview {
  Word guess;
  PartitionMode mode = PartitionMode::by_pattern;
  std::size_t total = 0;
  double entropy = 0;
  // Largest group first.
  std::vector<PreviewGroup> groups;
};

// In-memory sessions over one loaded game, optionally journaled to an
// append-only JSON-lines file that is replayed on construction.
class SessionStore {
 public:
  static constexpr std::size_t max_history = Solver::safety_cap;
  static constexpr std::string_view default_config = "default";

  explicit SessionStore(std::shared_ptr<const GameContext> ctx,
                        std::optional<std::filesystem::path> journal = std::nullopt);
  ~SessionStore();

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  const GameContext& context() const { return *ctx_; }

  SessionSnapshot create(std::string_view strategy, std::optional<std::string> config = std::nullopt,
                         std::optional<std::uint64_t> seed = std::nullopt);
  SessionSnapshot get(const std::string& id) const;
  SessionSnapshot apply_feedback(const std::string& id, std::string_view guess, std::string_view response);
  SessionSnapshot rollback(const std::string& id);
  std::vector<RankedCandidate> list_candidates(const std::string& id, std::size_t limit) const;
  Preview preview(const std::string& id, std::string_view guess) const;
  void remove(const std::string& id);

  std::size_t size() const;
  std::vector<std::string> ids() const;

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  std::shared_ptr<const Solver> solver_for(const StrategySpec& spec);
  std::string new_id();
  void recompute(Session& s) const;
  SessionSnapshot snapshot(const Session& s) const;
  Word parse_guess(std::string_view text) const;
  void journal(const std::string& line);
  void replay(const std::filesystem::path& path);

  SessionSnapshot do_create(const std::string& id, std::string_view strategy, std::optional<std::string> config,
                            std::uint64_t seed, std::int64_t now);
  SessionSnapshot do_feedback(const std::string& id, std::string_view guess, std::string_view response,
                              std::int64_t now);
  SessionSnapshot do_rollback(const std::string& id, std::int64_t now);
  void do_remove(const std::string& id);

  std::shared_ptr<const GameContext> ctx_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex solvers_mutex_;
  std::map<std::string, std::shared_ptr<const Solver>> solvers_;
  std::mutex journal_mutex_;
  std::ofstream journal_;
  bool replaying_ = false;
  std::mutex id_mutex_;
  Rng id_rng_;
};

struct ServerOptions {
  std::optional<std::filesystem::path> static_dir;
};

// Routes for the session API, ready to bind.
std::unique_ptr<httplib::Server> make_server(SessionStore& store, const ServerOptions& options = {});

}  // namespace wordlab
