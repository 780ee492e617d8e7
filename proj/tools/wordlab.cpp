#include <fnmatch.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "wordlab/evaluation.hpp"
#include "wordlab/service.hpp"

// after Eigen: resolv.h defines _res
#include "httplib.h"

#ifndef WORDLAB_DATA_DIR
#define WORDLAB_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace wordlab;

namespace {

enum Exit { ok = 0, usage = 1, data = 2, invariant = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DataFlags {
  std::string config = std::string(WORDLAB_DATA_DIR) + "/wordle.conf";
  std::string answers;
  std::string allowed;
  std::string pool_mode;

  void add(CLI::App* cmd) {
    cmd->add_option("--config", config, "Game config file")->capture_default_str();
    cmd->add_option("--answers", answers, "Answer list C (overrides the config)");
    cmd->add_option("--allowed", allowed, "Allowed guess list P (defaults to C when --answers is given)");
    cmd->add_option("--pool-mode", pool_mode, "answers-only or full-pool");
  }

  std::shared_ptr<const GameContext> load() const {
    auto config = load_config(config_path());
    if (!answers.empty()) {
      config.answers = load_word_list(fs::path(answers), config);
      config.allowed = allowed.empty() ? config.answers : load_word_list(fs::path(allowed), config);
    } else if (!allowed.empty()) {
      config.allowed = load_word_list(fs::path(allowed), config);
    }
    if (!pool_mode.empty()) config.guess_pool_mode = parse_guess_pool_mode(pool_mode);
    return GameContext::make(std::move(config));
  }

  fs::path config_path() const { return config; }
};

StrategySpec strategy_from(const std::string& name, bool renormalize) {
  StrategySpec spec;
  try {
    spec = resolve_preset(name);
  } catch (const UnknownStrategyError& e) {
    throw UsageError(e.what());
  }
  if (renormalize) {
    if (spec.family != Family::collocation) throw UsageError("--renormalize applies to collocation strategies only");
    spec.scorer.renormalize = true;
    spec.preset_name.reset();
  }
  return spec;
}

ReportFormat format_from(const std::string& text) {
  try {
    return parse_report_format(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

ReportFormat format_for_path(const std::string& path, const std::string& requested) {
  if (!requested.empty()) return format_from(requested);
  const auto ext = fs::path(path).extension().string();
  if (ext == ".csv") return ReportFormat::csv;
  if (ext == ".md") return ReportFormat::markdown;
  return ReportFormat::json;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  body(out);
  if (!out) throw DataError("failed writing " + path.string());
}

EvaluationReport read_report(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read report " + path.string());
  return import_report_json(in);
}

std::vector<fs::path> expand(const std::vector<std::string>& patterns) {
  std::vector<fs::path> out;
  for (const auto& p : patterns) {
    if (p.find_first_of("*?[") == std::string::npos) {
      out.emplace_back(p);
      continue;
    }
    const fs::path pattern(p);
    const auto dir = pattern.has_parent_path() ? pattern.parent_path() : fs::path(".");
    const auto name = pattern.filename().string();
    std::vector<fs::path> matched;
    if (fs::is_directory(dir)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (fnmatch(name.c_str(), entry.path().filename().c_str(), 0) == 0) matched.push_back(entry.path());
      }
    }
    if (matched.empty()) throw DataError("no reports match " + p);
    std::sort(matched.begin(), matched.end());
    out.insert(out.end(), matched.begin(), matched.end());
  }
  return out;
}

std::string presets_footer() {
  std::string text = "Strategies:\n";
  for (const auto& name : preset_names()) text += "  " + name + "\n";
  text +=
      "Canonical grid names are accepted as well, e.g. colloc-wht-min-kld-nr or search-max-entropy-by-count.\n"
      "Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant violation.";
  return text;
}

int run(int argc, char** argv) {
  CLI::App app{"Word-guessing strategy lab"};
  app.require_subcommand(1);
  app.footer(presets_footer());

  // evaluate
  DataFlags eval_data;
  std::string eval_strategy;
  std::size_t eval_runs = 1;
  std::uint64_t eval_seed = 0;
  std::size_t eval_jobs = 1;
  std::string eval_out;
  std::string eval_format;
  bool eval_no_timing = false;
  bool eval_renorm = false;
  auto* evaluate = app.add_subcommand("evaluate", "Play every answer and summarize guess counts");
  eval_data.add(evaluate);
  evaluate->add_option("--strategy", eval_strategy, "Strategy name")->required();
  evaluate->add_option("--runs", eval_runs, "Games per answer")->check(CLI::PositiveNumber)->capture_default_str();
  evaluate->add_option("--seed", eval_seed, "Master seed")->capture_default_str();
  evaluate->add_option("--jobs", eval_jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  evaluate->add_option("--out", eval_out, "Write the report here");
  evaluate->add_option("--format", eval_format, "json, csv or markdown (default from --out extension)");
  evaluate->add_flag("--no-timing", eval_no_timing, "Record wall time as 0 for reproducible files");
  evaluate->add_flag("--renormalize", eval_renorm, "Renormalize conditional distributions before scoring");

  // solve
  DataFlags solve_data;
  std::string solve_strategy;
  std::string solve_answer;
  std::uint64_t solve_seed = 0;
  bool solve_trace = false;
  bool solve_renorm = false;
  auto* solve = app.add_subcommand("solve", "Play one game and print every turn");
  solve_data.add(solve);
  solve->add_option("--strategy", solve_strategy, "Strategy name")->required();
  solve->add_option("--answer", solve_answer, "Hidden answer")->required();
  solve->add_option("--seed", solve_seed, "Seed for random strategies")->capture_default_str();
  solve->add_flag("--trace", solve_trace, "Show the top 5 scored guesses each turn");
  solve->add_flag("--renormalize", solve_renorm, "Renormalize conditional distributions before scoring");

  // compare
  std::vector<std::string> compare_reports;
  std::string compare_format = "text";
  auto* compare = app.add_subcommand("compare", "Tabulate saved JSON reports");
  compare->add_option("--reports", compare_reports, "Report files or glob patterns")->required();
  compare->add_option("--format", compare_format, "text, csv or markdown")->capture_default_str();

  // report
  std::string report_in;
  std::string report_format = "markdown";
  std::string report_out;
  auto* report = app.add_subcommand("report", "Re-render a saved JSON report");
  report->add_option("--in", report_in, "Report file")->required();
  report->add_option("--format", report_format, "json, csv or markdown")->capture_default_str();
  report->add_option("--out", report_out, "Write here instead of standard output");

  // grid
  DataFlags grid_data;
  std::string grid_family = "all";
  std::string grid_out;
  std::size_t grid_runs = 1;
  std::uint64_t grid_seed = 0;
  std::size_t grid_jobs = 1;
  bool grid_no_timing = false;
  auto* grid = app.add_subcommand("grid", "Evaluate the baseline and the deterministic strategy grid");
  grid_data.add(grid);
  grid->add_option("--family", grid_family, "all, colloc or search")->capture_default_str();
  grid->add_option("--out", grid_out, "Output directory")->required();
  grid->add_option("--runs", grid_runs, "Games per answer")->check(CLI::PositiveNumber)->capture_default_str();
  grid->add_option("--seed", grid_seed, "Master seed")->capture_default_str();
  grid->add_option("--jobs", grid_jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  grid->add_flag("--no-timing", grid_no_timing, "Record wall time as 0");

  // serve
  DataFlags serve_data;
  std::string serve_host = "127.0.0.1";
  int serve_port = 8080;
  std::string serve_journal;
  std::string serve_static;
  auto* serve = app.add_subcommand("serve", "Run the assistant HTTP service");
  serve_data.add(serve);
  serve->add_option("--host", serve_host, "Bind address")->capture_default_str();
  serve->add_option("--port", serve_port, "Port")->check(CLI::Range(0, 65535))->capture_default_str();
  serve->add_option("--journal", serve_journal, "Append-only session journal");
  serve->add_option("--static", serve_static, "Directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : usage;
  }

  if (*evaluate) {
    const auto ctx = eval_data.load();
    const auto spec = strategy_from(eval_strategy, eval_renorm);
    std::cerr << "config: " << ctx->digest() << '\n';
    EvaluationOptions options;
    options.runs = eval_runs;
    options.master_seed = eval_seed;
    options.jobs = eval_jobs;
    auto r = evaluate_strategy(ctx, spec, options);
    if (eval_no_timing) r.wall_time_ms = 0;
    if (!eval_out.empty()) {
      const auto format = format_for_path(eval_out, eval_format);
      write_file(eval_out, [&](std::ostream& out) { export_report(r, format, out); });
    } else if (!eval_format.empty()) {
      format_from(eval_format);
    }
    export_report(r, ReportFormat::markdown, std::cout);
    return ok;
  }

  if (*solve) {
    const auto ctx = solve_data.load();
    const auto spec = strategy_from(solve_strategy, solve_renorm);
    const auto& config = ctx->config();
    const auto answer = config.find_answer(config.parse_word(solve_answer));
    if (!answer) throw DataError("'" + solve_answer + "' is not in the answer list");
    std::cout << "config: " << ctx->digest() << '\n';
    std::cout << "strategy: " << display_name(spec) << '\n';
    Solver solver(ctx, spec);
    Rng rng(game_seed(solve_seed, 0, *answer));
    const auto record = solver.play(*answer, rng);
    auto candidates = CandidateSet::all(config);
    for (std::size_t t = 0; t < record.turns.size(); ++t) {
      const auto& turn = record.turns[t];
      if (solve_trace) {
        const auto ranked = solver.rank(candidates, t == 0);
        for (std::size_t i = 0; i < std::min<std::size_t>(5, ranked.size()); ++i) {
          std::cout << "    " << config.text(ctx->pool()[ranked[i].row]) << ' ' << std::setprecision(6)
                    << ranked[i].score << '\n';
        }
      }
      std::cout << t + 1 << ' ' << config.text(turn.guess) << ' ' << to_string(turn.response) << ' '
                << turn.remaining << '\n';
      if (!turn.response.is_perfect()) candidates = filter_candidates(config, candidates, turn.guess, turn.response);
    }
    std::cout << "solved in " << record.guess_count << " guesses (" << to_string(record.outcome) << ")\n";
    return ok;
  }

  if (*compare) {
    std::vector<EvaluationReport> reports;
    for (const auto& path : expand(compare_reports)) reports.push_back(read_report(path));
    const auto table = compare_strategies(reports);
    if (compare_format == "text") {
      table.render_text(std::cout);
    } else if (compare_format == "csv") {
      table.render_csv(std::cout);
    } else if (compare_format == "markdown" || compare_format == "md") {
      table.render_markdown(std::cout);
    } else {
      throw UsageError("unknown compare format '" + compare_format + "' (text, csv, markdown)");
    }
    std::set<std::string> digests;
    for (const auto& r : reports) digests.insert(r.config_digest);
    for (const auto& d : digests) std::cerr << "config: " << d << '\n';
    return ok;
  }

  if (*report) {
    const auto r = read_report(report_in);
    const auto format = format_from(report_format);
    if (report_out.empty()) {
      export_report(r, format, std::cout);
    } else {
      write_file(report_out, [&](std::ostream& out) { export_report(r, format, out); });
    }
    if (format != ReportFormat::markdown) std::cerr << "config: " << r.config_digest << '\n';
    return ok;
  }

  if (*grid) {
    GridFamily family;
    try {
      family = parse_grid_family(grid_family);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const auto ctx = grid_data.load();
    std::cerr << "config: " << ctx->digest() << '\n';
    const fs::path dir(grid_out);
    std::vector<EvaluationReport> reports;
    for (const auto& spec : strategy_grid(family)) {
      EvaluationOptions options;
      options.runs = grid_runs;
      options.master_seed = grid_seed;
      options.jobs = grid_jobs;
      auto r = evaluate_strategy(ctx, spec, options);
      if (grid_no_timing) r.wall_time_ms = 0;
      std::cerr << r.strategy << ": mean " << std::fixed << std::setprecision(3) << r.stats.mean << '\n';
      std::cerr.unsetf(std::ios::floatfield);
      write_file(dir / (r.strategy + ".json"), [&](std::ostream& out) { export_report(r, ReportFormat::json, out); });
      reports.push_back(std::move(r));
    }
    const auto table = compare_strategies(reports);
    write_file(dir / "comparison.md", [&](std::ostream& out) { table.render_markdown(out); });
    write_file(dir / "comparison.csv", [&](std::ostream& out) { table.render_csv(out); });
    write_file(dir / "histogram_percent.csv", [&](std::ostream& out) { export_histogram_plot_data(reports, out); });
    table.render_text(std::cout);
    return ok;
  }

  if (*serve) {
    const auto ctx = serve_data.load();
    std::cerr << "config: " << ctx->digest() << '\n';
    std::optional<fs::path> journal;
    if (!serve_journal.empty()) journal = serve_journal;
    SessionStore store(ctx, journal);
    ServerOptions options;
    if (!serve_static.empty()) options.static_dir = serve_static;
    auto server = make_server(store, options);
    std::cerr << "listening on " << serve_host << ':' << serve_port << '\n';
    if (!server->listen(serve_host, serve_port)) throw DataError("cannot bind " + serve_host + ":" + std::to_string(serve_port));
    return ok;
  }
  return usage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return invariant;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return data;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return data;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return data;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return invariant;
  }
}
