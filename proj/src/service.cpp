#include "wordlab/service.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

namespace wordlab {

using nlohmann::json;

struct SessionStore::Session {
  std::mutex mutex;
  std::string id;
  StrategySpec spec;
  std::string config;
  std::uint64_t seed = 0;
  std::shared_ptr<const Solver> solver;
  std::vector<HistoryEntry> history;
  CandidateSet candidates;
  std::optional<Word> suggestion;
  bool solved = false;
  std::int64_t created_ms = 0;
  std::int64_t updated_ms = 0;
};

namespace {

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

ServiceError not_found(const std::string& id) {
  return ServiceError(404, "unknown_session", "no session with id '" + id + "'");
}

}  // namespace

SessionStore::SessionStore(std::shared_ptr<const GameContext> ctx, std::optional<std::filesystem::path> journal)
    : ctx_(std::move(ctx)), id_rng_(std::random_device{}()) {
  if (!journal) return;
  if (std::filesystem::exists(*journal)) replay(*journal);
  journal_.open(*journal, std::ios::app);
  if (!journal_) throw DataError("cannot open journal " + journal->string());
}

SessionStore::~SessionStore() = default;

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw not_found(id);
  return it->second;
}

std::shared_ptr<const Solver> SessionStore::solver_for(const StrategySpec& spec) {
  const auto key = canonical_name(spec);
  std::lock_guard lock(solvers_mutex_);
  auto& slot = solvers_[key];
  if (!slot) slot = std::make_shared<const Solver>(ctx_, spec);
  return slot;
}

std::string SessionStore::new_id() {
  std::lock_guard lock(id_mutex_);
  while (true) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << id_rng_();
    auto id = os.str();
    std::shared_lock sessions(sessions_mutex_);
    if (!sessions_.contains(id)) return id;
  }
}

// Suggestion for the current state; the draw depends only on seed and history length.
void SessionStore::recompute(Session& s) const {
  if (s.solved) {
    s.suggestion = s.history.back().guess;
    return;
  }
  Rng rng(game_seed(s.seed, s.history.size(), 0));
  const auto row = s.history.empty() ? s.solver->first_guess(rng) : s.solver->next_guess(s.candidates, rng);
  s.suggestion = ctx_->pool()[row];
}

SessionSnapshot SessionStore::snapshot(const Session& s) const {
  SessionSnapshot out;
  out.id = s.id;
  out.strategy = display_name(s.spec);
  out.config = s.config;
  out.seed = s.seed;
  out.history = s.history;
  out.candidates = s.candidates;
  out.suggestion = s.suggestion;
  out.solved = s.solved;
  out.created_ms = s.created_ms;
  out.updated_ms = s.updated_ms;
  return out;
}

Word SessionStore::parse_guess(std::string_view text) const {
  Word word;
  try {
    word = ctx_->config().parse_word(text);
  } catch (const DataError& e) {
    throw ServiceError(400, "bad_guess", e.what());
  }
  const auto& config = ctx_->config();
  const bool known = config.find_answer(word) ||
                     std::find(config.allowed.begin(), config.allowed.end(), word) != config.allowed.end();
  if (!known) throw ServiceError(400, "bad_guess", "'" + std::string(text) + "' is not an allowed word");
  return word;
}

void SessionStore::journal(const std::string& line) {
  if (replaying_ || !journal_.is_open()) return;
  std::lock_guard lock(journal_mutex_);
  journal_ << line << '\n';
  journal_.flush();
}

SessionSnapshot SessionStore::do_create(const std::string& id, std::string_view strategy,
                                        std::optional<std::string> config, std::uint64_t seed, std::int64_t now) {
  StrategySpec spec;
  try {
    spec = resolve_preset(strategy);
  } catch (const UnknownStrategyError& e) {
    throw ServiceError(404, "unknown_strategy", e.what());
  }
  const std::string config_name = config.value_or(std::string(default_config));
  if (config_name != default_config && config_name != ctx_->digest()) {
    throw ServiceError(404, "unknown_config", "no config named '" + config_name + "'");
  }
  auto s = std::make_shared<Session>();
  s->id = id;
  s->spec = spec;
  s->config = config_name;
  s->seed = seed;
  s->solver = solver_for(spec);
  s->candidates = CandidateSet::all(ctx_->config());
  s->created_ms = s->updated_ms = now;
  recompute(*s);
  auto out = snapshot(*s);
  {
    std::unique_lock lock(sessions_mutex_);
    sessions_[id] = s;
  }
  journal(json{{"event", "create"},
               {"id", id},
               {"strategy", std::string(strategy)},
               {"config", config_name},
               {"seed", seed},
               {"time", now}}
              .dump());
  return out;
}

SessionSnapshot SessionStore::create(std::string_view strategy, std::optional<std::string> config,
                                     std::optional<std::uint64_t> seed) {
  std::uint64_t chosen = 0;
  if (seed) {
    chosen = *seed;
  } else {
    std::lock_guard lock(id_mutex_);
    chosen = id_rng_();
  }
  return do_create(new_id(), strategy, std::move(config), chosen, now_ms());
}

SessionSnapshot SessionStore::get(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return snapshot(*s);
}

SessionSnapshot SessionStore::do_feedback(const std::string& id, std::string_view guess_text,
                                          std::string_view response_text, std::int64_t now) {
  auto s = find(id);
  const auto guess = parse_guess(guess_text);
  Response response;
  try {
    response = parse_response(response_text, ctx_->config().word_length);
  } catch (const DataError& e) {
    throw ServiceError(400, "bad_response", e.what());
  }

  std::lock_guard lock(s->mutex);
  if (s->solved) throw ServiceError(409, "solved", "session is already solved");
  if (s->history.size() >= max_history) {
    throw ServiceError(409, "history_full", "history is limited to " + std::to_string(max_history) + " turns");
  }
  CandidateSet reduced;
  try {
    reduced = filter_candidates(ctx_->config(), s->candidates, guess, response);
  } catch (const ContradictionError& e) {
    throw ServiceError(409, "contradiction", e.what());
  }
  s->history.push_back({guess, response});
  s->candidates = std::move(reduced);
  s->solved = response.is_perfect();
  s->updated_ms = now;
  recompute(*s);
  journal(json{{"event", "feedback"},
               {"id", id},
               {"guess", ctx_->config().text(guess)},
               {"response", to_string(response)},
               {"time", now}}
              .dump());
  return snapshot(*s);
}

SessionSnapshot SessionStore::apply_feedback(const std::string& id, std::string_view guess,
                                             std::string_view response) {
  return do_feedback(id, guess, response, now_ms());
}

SessionSnapshot SessionStore::do_rollback(const std::string& id, std::int64_t now) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  if (s->history.empty()) throw ServiceError(409, "empty_history", "nothing to roll back");
  s->history.pop_back();
  auto candidates = CandidateSet::all(ctx_->config());
  for (const auto& h : s->history) candidates = filter_candidates(ctx_->config(), candidates, h.guess, h.response);
  s->candidates = std::move(candidates);
  s->solved = false;
  s->updated_ms = now;
  recompute(*s);
  journal(json{{"event", "rollback"}, {"id", id}, {"time", now}}.dump());
  return snapshot(*s);
}

SessionSnapshot SessionStore::rollback(const std::string& id) { return do_rollback(id, now_ms()); }

std::vector<RankedCandidate> SessionStore::list_candidates(const std::string& id, std::size_t limit) const {
  auto s = find(id);
  std::unique_lock lock(s->mutex);
  const auto candidates = s->candidates;
  const bool first_turn = s->history.empty();
  const auto solver = s->solver;
  lock.unlock();

  std::vector<RankedCandidate> out;
  const auto& config = ctx_->config();
  for (const auto& g : solver->rank(candidates, first_turn)) {
    if (out.size() == limit) break;
    const auto& word = ctx_->pool()[g.row];
    const auto answer = config.find_answer(word);
    if (!answer || !candidates.contains(*answer)) continue;
    out.push_back({word, g.score});
  }
  return out;
}

Preview SessionStore::preview(const std::string& id, std::string_view guess_text) const {
  auto s = find(id);
  const auto guess = parse_guess(guess_text);
  std::unique_lock lock(s->mutex);
  const auto candidates = s->candidates;
  const auto mode = s->spec.family == Family::partition_search ? s->spec.search.mode : PartitionMode::by_pattern;
  lock.unlock();

  const auto& config = ctx_->config();
  const auto partition = partition_set(config, candidates, guess, mode);
  Preview out;
  out.guess = guess;
  out.mode = mode;
  out.total = partition.total;
  out.entropy = partition_entropy(config, candidates, guess, mode);
  for (const auto& [key, members] : partition.groups) {
    out.groups.push_back({key_label(key, mode, config.word_length), members.size()});
  }
  std::stable_sort(out.groups.begin(), out.groups.end(),
                   [](const PreviewGroup& a, const PreviewGroup& b) { return a.count > b.count; });
  return out;
}

void SessionStore::do_remove(const std::string& id) {
  std::unique_lock lock(sessions_mutex_);
  if (sessions_.erase(id) == 0) throw not_found(id);
}

void SessionStore::remove(const std::string& id) {
  do_remove(id);
  journal(json{{"event", "delete"}, {"id", id}, {"time", now_ms()}}.dump());
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::vector<std::string> SessionStore::ids() const {
  std::shared_lock lock(sessions_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

void SessionStore::replay(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read journal " + path.string());
  replaying_ = true;
  std::string line;
  std::size_t number = 0;
  try {
    while (std::getline(in, line)) {
      ++number;
      if (line.empty()) continue;
      const auto e = json::parse(line);
      const auto event = e.at("event").get<std::string>();
      const auto id = e.at("id").get<std::string>();
      const auto time = e.value("time", std::int64_t{0});
      if (event == "create") {
        do_create(id, e.at("strategy").get<std::string>(), e.at("config").get<std::string>(),
                  e.at("seed").get<std::uint64_t>(), time);
      } else if (event == "feedback") {
        do_feedback(id, e.at("guess").get<std::string>(), e.at("response").get<std::string>(), time);
      } else if (event == "rollback") {
        do_rollback(id, time);
      } else if (event == "delete") {
        do_remove(id);
      } else {
        throw DataError("unknown event '" + event + "'");
      }
    }
  } catch (const std::exception& e) {
    replaying_ = false;
    throw DataError("journal " + path.string() + " line " + std::to_string(number) + ": " + e.what());
  }
  replaying_ = false;
}

namespace {

json to_json(const GameConfig& config, const SessionSnapshot& s) {
  json history = json::array();
  for (const auto& h : s.history) history.push_back({{"guess", config.text(h.guess)}, {"response", to_string(h.response)}});
  return {
      {"id", s.id},
      {"strategy", s.strategy},
      {"config", s.config},
      {"seed", s.seed},
      {"history", history},
      {"candidate_count", s.candidates.size()},
      {"suggestion", s.suggestion ? json(config.text(*s.suggestion)) : json(nullptr)},
      {"solved", s.solved},
      {"created_ms", s.created_ms},
      {"updated_ms", s.updated_ms},
  };
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  send_json(res, status, {{"code", code}, {"message", message}});
}

template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const ServiceError& e) {
    send_error(res, e.status(), e.code(), e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, "bad_request", e.what());
  } catch (const ContradictionError& e) {
    send_error(res, 409, "contradiction", e.what());
  } catch (const DataError& e) {
    send_error(res, 400, "bad_request", e.what());
  } catch (const std::invalid_argument& e) {
    send_error(res, 400, "bad_request", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  auto body = json::parse(req.body);
  if (!body.is_object()) throw ServiceError(400, "bad_request", "request body must be a JSON object");
  return body;
}

std::string required_string(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw ServiceError(400, "bad_request", std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

std::unique_ptr<httplib::Server> make_server(SessionStore& store, const ServerOptions& options) {
  auto server = std::make_unique<httplib::Server>();
  const auto& config = store.context().config();
  const std::string id_path = R"(/sessions/([0-9A-Za-z]+))";

  server->Post("/sessions", [&store, &config](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto body = parse_body(req);
      const auto strategy = required_string(body, "strategy");
      std::optional<std::string> config_name;
      if (body.contains("config") && !body["config"].is_null()) config_name = body["config"].get<std::string>();
      std::optional<std::uint64_t> seed;
      if (body.contains("seed") && !body["seed"].is_null()) {
        if (!body["seed"].is_number_unsigned()) throw ServiceError(400, "bad_request", "seed must be a non-negative integer");
        seed = body["seed"].get<std::uint64_t>();
      }
      send_json(res, 200, to_json(config, store.create(strategy, config_name, seed)));
    });
  });

  server->Get(id_path, [&store, &config](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, to_json(config, store.get(req.matches[1]))); });
  });

  server->Delete(id_path, [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      store.remove(id);
      send_json(res, 200, {{"id", id}, {"deleted", true}});
    });
  });

  server->Post(id_path + "/feedback", [&store, &config](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto body = parse_body(req);
      const auto guess = required_string(body, "guess");
      const auto response = required_string(body, "response");
      send_json(res, 200, to_json(config, store.apply_feedback(req.matches[1], guess, response)));
    });
  });

  server->Post(id_path + "/rollback", [&store, &config](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, to_json(config, store.rollback(req.matches[1]))); });
  });

  server->Get(id_path + "/candidates", [&store, &config](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      std::size_t limit = 10;
      if (req.has_param("limit")) {
        const auto text = req.get_param_value("limit");
        std::size_t used = 0;
        long long value = -1;
        try {
          value = std::stoll(text, &used);
        } catch (const std::exception&) {
        }
        if (used != text.size() || value < 0) throw ServiceError(400, "bad_request", "limit must be a non-negative integer");
        limit = static_cast<std::size_t>(value);
      }
      const std::string id = req.matches[1];
      const auto snap = store.get(id);
      json list = json::array();
      for (const auto& c : store.list_candidates(id, limit)) list.push_back({{"word", config.text(c.word)}, {"score", c.score}});
      send_json(res, 200, {{"id", id}, {"candidate_count", snap.candidates.size()}, {"candidates", list}});
    });
  });

  server->Get(id_path + "/preview", [&store, &config](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!req.has_param("guess")) throw ServiceError(400, "bad_request", "missing query parameter 'guess'");
      const auto p = store.preview(req.matches[1], req.get_param_value("guess"));
      json groups = json::array();
      for (const auto& g : p.groups) groups.push_back({{"key", g.label}, {"count", g.count}});
      send_json(res, 200,
                {{"guess", config.text(p.guess)},
                 {"mode", to_string(p.mode)},
                 {"total", p.total},
                 {"entropy", p.entropy},
                 {"groups", groups}});
    });
  });

  server->Get("/presets", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"presets", preset_names()}});
  });

  if (options.static_dir && !server->set_mount_point("/", options.static_dir->string())) {
    throw DataError("static directory not found: " + options.static_dir->string());
  }
  return server;
}

}  // namespace wordlab
