#include "wordlab/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace wordlab {

bool EvaluationReport::same_results(const EvaluationReport& other) const {
  return strategy == other.strategy && runs == other.runs && games == other.games && seed == other.seed &&
         config_digest == other.config_digest && stats == other.stats && excellent_rate == other.excellent_rate &&
         failure_rate == other.failure_rate && histogram == other.histogram;
}

SummaryStats summarize(std::span<const std::size_t> guess_counts) {
  if (guess_counts.empty()) throw std::invalid_argument("summarize needs at least one game");
  std::vector<std::size_t> sorted(guess_counts.begin(), guess_counts.end());
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t total = 0;
  for (auto c : sorted) total += c;
  SummaryStats s;
  s.min = sorted.front();
  s.max = sorted.back();
  s.median = sorted[(sorted.size() - 1) / 2];
  s.mean = static_cast<double>(total) / static_cast<double>(sorted.size());
  return s;
}

SummaryStats summarize(std::span<const GameRecord> records) {
  std::vector<std::size_t> counts;
  counts.reserve(records.size());
  for (const auto& r : records) counts.push_back(r.guess_count);
  return summarize(counts);
}

EvaluationReport from_histogram(const EvaluationReport& header, const std::map<std::size_t, std::size_t>& histogram) {
  EvaluationReport r = header;
  r.histogram.clear();
  std::size_t games = 0;
  std::uint64_t total = 0;
  std::size_t excellent = 0;
  std::size_t failed = 0;
  for (const auto& [guesses, n] : histogram) {
    if (n == 0) continue;
    r.histogram[guesses] = n;
    games += n;
    total += static_cast<std::uint64_t>(guesses) * n;
    if (classify(guesses) == Outcome::excellent) excellent += n;
    if (classify(guesses) == Outcome::failure) failed += n;
  }
  if (games == 0) throw std::invalid_argument("histogram has no games");
  r.games = games;
  r.stats.min = r.histogram.begin()->first;
  r.stats.max = r.histogram.rbegin()->first;
  const std::size_t median_rank = (games - 1) / 2;
  std::size_t seen = 0;
  for (const auto& [guesses, n] : r.histogram) {
    seen += n;
    if (seen > median_rank) {
      r.stats.median = guesses;
      break;
    }
  }
  r.stats.mean = static_cast<double>(total) / static_cast<double>(games);
  r.excellent_rate = static_cast<double>(excellent) / static_cast<double>(games);
  r.failure_rate = static_cast<double>(failed) / static_cast<double>(games);
  return r;
}

bool verify_report(const EvaluationReport& report) {
  if (report.histogram.empty()) return false;
  return report.same_results(from_histogram(report, report.histogram));
}

EvaluationReport evaluate_strategy(const Solver& solver, const EvaluationOptions& options) {
  if (options.runs == 0) throw std::invalid_argument("runs must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const auto& ctx = solver.context();
  const std::size_t m = ctx.config().answers.size();
  const std::size_t total = options.runs * m;
  std::vector<std::size_t> counts(total, 0);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t error_index = total;
  std::exception_ptr error;

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      const std::size_t run = i / m;
      const auto answer = static_cast<AnswerId>(i % m);
      try {
        Rng rng(game_seed(options.master_seed, run, answer));
        counts[i] = solver.play(answer, rng).guess_count;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        failed.store(true);
        return;
      }
      const auto finished = done.fetch_add(1) + 1;
      if (options.progress) options.progress(finished, total);
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, total));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) {
    const auto& word = ctx.config().answers[error_index % m];
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw InvariantError("game for answer '" + ctx.config().text(word) + "' failed: " + e.what());
    }
  }

  std::map<std::size_t, std::size_t> histogram;
  for (auto c : counts) ++histogram[c];
  EvaluationReport header;
  header.strategy = display_name(solver.spec());
  header.runs = options.runs;
  header.seed = options.master_seed;
  header.config_digest = ctx.digest();
  auto report = from_histogram(header, histogram);
  report.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

EvaluationReport evaluate_strategy(std::shared_ptr<const GameContext> ctx, const StrategySpec& spec,
                                   const EvaluationOptions& options) {
  Solver solver(std::move(ctx), spec);
  return evaluate_strategy(solver, options);
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  if (text == "markdown" || text == "md") return ReportFormat::markdown;
  throw std::invalid_argument("unknown report format '" + std::string(text) + "' (json, csv, markdown)");
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const EvaluationReport& r) {
  ordered_json hist = ordered_json::object();
  for (const auto& [g, n] : r.histogram) hist[std::to_string(g)] = n;
  return ordered_json{
      {"strategy", r.strategy},
      {"runs", r.runs},
      {"games", r.games},
      {"seed", r.seed},
      {"config_digest", r.config_digest},
      {"stats", {{"min", r.stats.min}, {"median", r.stats.median}, {"mean", r.stats.mean}, {"max", r.stats.max}}},
      {"excellent_rate", r.excellent_rate},
      {"failure_rate", r.failure_rate},
      {"histogram", hist},
      {"wall_time_ms", r.wall_time_ms},
  };
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string percent(double rate) { return fixed(rate * 100.0, 2) + "%"; }

std::string exact(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::size_t max_guesses(std::span<const EvaluationReport> reports) {
  std::size_t n = 0;
  for (const auto& r : reports) {
    if (!r.histogram.empty()) n = std::max(n, r.histogram.rbegin()->first);
  }
  return n;
}

void csv_header(std::ostream& out, std::size_t columns) {
  out << "strategy,runs,games,seed,config_digest,min,median,mean,max,excellent_rate,failure_rate";
  for (std::size_t g = 1; g <= columns; ++g) out << ",guesses_" << g;
  out << ",wall_time_ms\n";
}

void csv_row(std::ostream& out, const EvaluationReport& r, std::size_t columns) {
  out << r.strategy << ',' << r.runs << ',' << r.games << ',' << r.seed << ',' << r.config_digest << ','
      << r.stats.min << ',' << r.stats.median << ',' << exact(r.stats.mean) << ',' << r.stats.max << ','
      << exact(r.excellent_rate) << ',' << exact(r.failure_rate);
  for (std::size_t g = 1; g <= columns; ++g) {
    auto it = r.histogram.find(g);
    out << ',' << (it == r.histogram.end() ? 0 : it->second);
  }
  out << ',' << r.wall_time_ms << '\n';
}

void markdown_report(std::ostream& out, const EvaluationReport& r) {
  out << "| Strategy | min | median | mean | max |\n";
  out << "|---|---|---|---|---|\n";
  out << "| " << r.strategy << " | " << r.stats.min << " | " << r.stats.median << " | " << fixed(r.stats.mean, 3)
      << " | " << r.stats.max << " |\n\n";
  out << "| excellent | failure |\n";
  out << "|---|---|\n";
  out << "| " << percent(r.excellent_rate) << " | " << percent(r.failure_rate) << " |\n\n";
  out << "| Number of guesses |";
  for (const auto& [g, n] : r.histogram) out << ' ' << g << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < r.histogram.size(); ++i) out << "---|";
  out << "\n| Number of games |";
  for (const auto& [g, n] : r.histogram) out << ' ' << n << " |";
  out << "\n\n";
  out << "games: " << r.games << " (runs: " << r.runs << ", seed: " << r.seed << ")\n";
  out << "config: " << r.config_digest << '\n';
}

}  // namespace

void export_report(const EvaluationReport& report, ReportFormat format, std::ostream& out) {
  switch (format) {
    case ReportFormat::json:
      out << to_json(report).dump(2) << '\n';
      break;
    case ReportFormat::csv: {
      const auto columns = max_guesses(std::span(&report, 1));
      csv_header(out, columns);
      csv_row(out, report, columns);
      break;
    }
    case ReportFormat::markdown:
      markdown_report(out, report);
      break;
  }
  if (!out) throw std::runtime_error("failed to write report");
}

EvaluationReport import_report_json(std::string_view text) {
  EvaluationReport r;
  try {
    const auto j = nlohmann::json::parse(text);
    r.strategy = j.at("strategy").get<std::string>();
    r.runs = j.at("runs").get<std::size_t>();
    r.games = j.at("games").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config_digest = j.at("config_digest").get<std::string>();
    const auto& s = j.at("stats");
    r.stats.min = s.at("min").get<std::size_t>();
    r.stats.median = s.at("median").get<std::size_t>();
    r.stats.mean = s.at("mean").get<double>();
    r.stats.max = s.at("max").get<std::size_t>();
    r.excellent_rate = j.at("excellent_rate").get<double>();
    r.failure_rate = j.at("failure_rate").get<double>();
    for (const auto& [k, v] : j.at("histogram").items()) r.histogram[std::stoul(k)] = v.get<std::size_t>();
    r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
  return r;
}

EvaluationReport import_report_json(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  return import_report_json(buffer.str());
}

ComparisonTable compare_strategies(std::vector<EvaluationReport> reports) {
  if (reports.empty()) throw std::invalid_argument("compare_strategies needs at least one report");
  std::stable_sort(reports.begin(), reports.end(),
                   [](const EvaluationReport& a, const EvaluationReport& b) { return a.stats.mean < b.stats.mean; });
  return ComparisonTable{std::move(reports)};
}

void ComparisonTable::render_text(std::ostream& out) const {
  std::size_t width = std::string_view("strategy").size();
  for (const auto& r : rows) width = std::max(width, r.strategy.size());
  auto cell = [&](const std::string& s, std::size_t w) { out << std::setw(static_cast<int>(w)) << s; };
  out << std::left << std::setw(static_cast<int>(width)) << "strategy" << std::right;
  cell("min", 5);
  cell("median", 8);
  cell("mean", 8);
  cell("maximum", 9);
  cell("excellency", 12);
  cell("failure", 10);
  out << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << r.strategy << std::right;
    cell(std::to_string(r.stats.min), 5);
    cell(std::to_string(r.stats.median), 8);
    cell(fixed(r.stats.mean, 3), 8);
    cell(std::to_string(r.stats.max), 9);
    cell(percent(r.excellent_rate), 12);
    cell(percent(r.failure_rate), 10);
    out << '\n';
  }
}

void ComparisonTable::render_csv(std::ostream& out) const {
  const auto columns = max_guesses(rows);
  csv_header(out, columns);
  for (const auto& r : rows) csv_row(out, r, columns);
}

void ComparisonTable::render_markdown(std::ostream& out) const {
  out << "| strategy | min | median | mean | maximum | excellency | failure |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out << "| " << r.strategy << " | " << r.stats.min << " | " << r.stats.median << " | " << fixed(r.stats.mean, 3)
        << " | " << r.stats.max << " | " << percent(r.excellent_rate) << " | " << percent(r.failure_rate) << " |\n";
  }
}

void export_histogram_plot_data(std::span<const EvaluationReport> reports, std::ostream& out) {
  if (reports.empty()) throw std::invalid_argument("no reports to export");
  out << "strategy,guess_count,percent\n";
  for (const auto& r : reports) {
    for (const auto& [g, n] : r.histogram) {
      out << r.strategy << ',' << g << ',' << fixed(100.0 * static_cast<double>(n) / static_cast<double>(r.games), 6)
          << '\n';
    }
  }
}

}  // namespace wordlab
