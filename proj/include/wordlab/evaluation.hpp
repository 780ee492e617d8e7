#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordlab/context.hpp"
#include "wordlab/strategy.hpp"

namespace wordlab {

struct SummaryStats {
  std::size_t min = 0;
  std::size_t median = 0;
  double mean = 0;
  std::size_t max = 0;

  friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

struct EvaluationReport {
  std::string strategy;
  std::size_t runs = 0;
  std::size_t games = 0;
  std::uint64_t seed = 0;
  std::string config_digest;
  SummaryStats stats;
  double excellent_rate = 0;
  double failure_rate = 0;
  // guess count -> number of games
  std::map<std::size_t, std::size_t> histogram;
  std::int64_t wall_time_ms = 0;

  // Equal in every field except wall_time_ms.
  bool same_results(const EvaluationReport& other) const;
};

// min/max exact; the median is the lower middle element for even sizes.
SummaryStats summarize(std::span<const std::size_t> guess_counts);
SummaryStats summarize(std::span<const GameRecord> records);

// Every derived statistic recomputed from the histogram alone.
EvaluationReport from_histogram(const EvaluationReport& header, const std::map<std::size_t, std::size_t>& histogram);

// True when the stored statistics equal the ones recomputed from the histogram.
bool verify_report(const EvaluationReport& report);

struct EvaluationOptions {
  std::size_t runs = 1;
  std::uint64_t master_seed = 0;
  std::size_t jobs = 1;
  // Called with the number of finished games; may be empty.
  std::function<void(std::size_t done, std::size_t total)> progress;
};

// Plays every answer `runs` times. The result does not depend on `jobs`.
// A failing game is rethrown as InvariantError naming the answer.
EvaluationReport evaluate_strategy(const Solver& solver, const EvaluationOptions& options);
EvaluationReport evaluate_strategy(std::shared_ptr<const GameContext> ctx, const StrategySpec& spec,
                                   const EvaluationOptions& options);

enum class ReportFormat { json, csv, markdown };
ReportFormat parse_report_format(std::string_view text);

void export_report(const EvaluationReport& report, ReportFormat format, std::ostream& out);
EvaluationReport import_report_json(std::istream& in);
EvaluationReport import_report_json(std::string_view text);

// Rows sorted by mean ascending (ties keep input order).
struct ComparisonTable {
  std::vector<EvaluationReport> rows;

  void render_text(std::ostream& out) const;
  void render_csv(std::ostream& out) const;
  void render_markdown(std::ostream& out) const;
};

ComparisonTable compare_strategies(std::vector<EvaluationReport> reports);

// "strategy,guess_count,percent" rows; percentages of each strategy sum to 100.
void export_histogram_plot_data(std::span<const EvaluationReport> reports, std::ostream& out);

}  // namespace wordlab
