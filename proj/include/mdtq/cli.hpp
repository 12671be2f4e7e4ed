#pragma once

#include "mdtq/engine.hpp"
#include "mdtq/errors.hpp"
#include "mdtq/metrics.hpp"
#include "mdtq/policies.hpp"
#include "mdtq/report.hpp"
#include "mdtq/reproduce.hpp"
#include "mdtq/workload.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mdtq::cli {

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { run, compare, generate, gantt, reproduce };

struct CliConfig {
  Command command = Command::run;
  std::string workload_path;
  std::optional<std::string> pattern;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string burst_min = "1", burst_max = "100";
  std::string gap_min = "0", gap_max = "10";
  std::vector<std::string> policies;
  std::string cst = "0";
  std::string format = "plain";
  std::string out_path;
  std::size_t width = 0;
  bool rounds = false;
  bool single_lane = false;
  bool with_gantt = false;
  bool json = false;
};

inline Ticks ticks_arg(const std::string& text, const char* flag) {
  Ticks t;
  if (!parse_ticks(text, t) || t < Ticks{})
    throw usage_error(std::string(flag) + " expects a non-negative number of ticks (step 0.5), got '" + text + "'");
  return t;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read workload file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline BurstPattern pattern_arg(const std::string& s) {
  if (s == "increasing") return BurstPattern::increasing;
  if (s == "decreasing") return BurstPattern::decreasing;
  if (s == "random") return BurstPattern::random;
  throw usage_error("--pattern must be increasing, decreasing or random");
}

inline Workload load_workload(const CliConfig& c) {
  if (!c.workload_path.empty()) {
    const bool json = c.workload_path.size() >= 5 && c.workload_path.ends_with(".json");
    const std::string text = read_file(c.workload_path);
    try {
      Workload w = parse_workload(text, json ? WorkloadFormat::json : WorkloadFormat::csv);
      w.label = c.workload_path;
      return w;
    } catch (const parse_error& e) {
      throw parse_error(c.workload_path + ": " + e.what(), e.line(), e.column());
    }
  }
  if (!c.pattern || c.n == 0) throw usage_error("give --workload PATH or --pattern with --n (and optionally --seed)");
  return generate_workload(pattern_arg(*c.pattern), c.n,
                           {ticks_arg(c.burst_min, "--burst-min"), ticks_arg(c.burst_max, "--burst-max")},
                           {ticks_arg(c.gap_min, "--gap-min"), ticks_arg(c.gap_max, "--gap-max")}, c.seed);
}

inline std::vector<PolicySpec> policies_arg(const std::vector<std::string>& specs) {
  std::vector<PolicySpec> out;
  for (const auto& s : specs) {
    try {
      out.push_back(parse_policy(s));
    } catch (const validation_error& e) {
      throw usage_error(e.what());
    }
  }
  return out;
}

inline TableFormat table_format(const std::string& f) {
  if (f == "plain") return TableFormat::plain;
  if (f == "markdown") return TableFormat::markdown;
  if (f == "csv") return TableFormat::csv;
  if (f == "json") return TableFormat::json;
  throw usage_error("format '" + f + "' is not available for this command");
}

inline std::size_t gantt_width(const Timeline& tl, const CliConfig& c, GanttStyle style) {
  if (c.width != 0) return c.width;
  const std::size_t preferred = style == GanttStyle::ascii ? 100 : 960;
  return std::max(preferred, gantt_min_width(tl, style));
}

inline std::string cmd_run(const CliConfig& c) {
  const Workload w = load_workload(c);
  const auto policies = policies_arg(c.policies);
  if (policies.size() != 1) throw usage_error("run takes exactly one --policy");
  const EngineConfig config{ticks_arg(c.cst, "--cst")};
  const Timeline tl = simulate(w, policies.front(), config);
  const RunSummary s = summarize(tl, w, config);
  if (c.format == "svg") return render_gantt(tl, {gantt_width(tl, c, GanttStyle::svg), GanttStyle::svg, c.rounds, c.single_lane});
  if (c.format == "json") {
    nlohmann::json j = summary_json(s);
    if (c.with_gantt) j["timeline"] = timeline_json(tl);
    return j.dump(2) + "\n";
  }
  if (c.format == "csv") return summary_csv(s);
  if (c.format == "markdown") return render_comparison(compare({s}), TableFormat::markdown);
  if (c.format != "plain") throw usage_error("unknown format '" + c.format + "'");
  std::string out = summary_plain(s);
  if (c.with_gantt) out += "\n" + render_gantt(tl, {gantt_width(tl, c, GanttStyle::ascii), GanttStyle::ascii, c.rounds});
  return out;
}

inline std::string cmd_compare(const CliConfig& c) {
  const Workload w = load_workload(c);
  const auto policies = policies_arg(c.policies);
  if (policies.size() < 2) throw usage_error("compare takes at least two --policy options");
  const TableFormat format = table_format(c.format);
  const EngineConfig config{ticks_arg(c.cst, "--cst")};
  std::vector<std::future<RunSummary>> runs;
  for (const auto& p : policies)
    runs.push_back(std::async(std::launch::async, [&w, p, config] { return summarize(simulate(w, p, config), w, config); }));
  std::vector<RunSummary> summaries;
  for (auto& f : runs) summaries.push_back(f.get());
  return render_comparison(compare(summaries), format);
}

inline std::string cmd_generate(const CliConfig& c) {
  if (!c.pattern || c.n == 0) throw usage_error("generate needs --pattern and --n");
  const Workload w = load_workload(c);
  if (c.format == "json") return to_json(w);
  if (c.format == "csv" || c.format == "plain") return to_csv(w);
  throw usage_error("generate writes csv or json");
}

inline std::string cmd_gantt(const CliConfig& c) {
  const Workload w = load_workload(c);
  const auto policies = policies_arg(c.policies);
  if (policies.size() != 1) throw usage_error("gantt takes exactly one --policy");
  const EngineConfig config{ticks_arg(c.cst, "--cst")};
  const Timeline tl = simulate(w, policies.front(), config);
  if (c.format == "json") return timeline_json(tl).dump(2) + "\n";
  GanttStyle style;
  if (c.format == "svg")
    style = GanttStyle::svg;
  else if (c.format == "plain")
    style = GanttStyle::ascii;
  else
    throw usage_error("gantt writes plain, svg or json");
  return render_gantt(tl, {gantt_width(tl, c, style), style, c.rounds, c.single_lane});
}

// Returns the process exit status.
inline int cmd_reproduce(const CliConfig& c, std::string& output) {
  const reproduce::Report r = reproduce::run();
  output = (c.json || c.format == "json") ? reproduce::render_json(r).dump(2) + "\n" : reproduce::render_text(r);
  return r.ok() ? 0 : 1;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Round-robin CPU scheduling simulator (RR, SRBRR, MDTQRR)", "mdtqrr"};
  app.require_subcommand(1);
  CliConfig c;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--workload", c.workload_path, "CSV or JSON workload file");
    sub->add_option("--pattern", c.pattern, "generate: increasing|decreasing|random");
    sub->add_option("--n", c.n, "generate: number of processes");
    sub->add_option("--seed", c.seed, "generate: RNG seed");
    sub->add_option("--burst-min", c.burst_min, "generate: smallest burst");
    sub->add_option("--burst-max", c.burst_max, "generate: largest burst");
    sub->add_option("--gap-min", c.gap_min, "generate: smallest inter-arrival gap");
    sub->add_option("--gap-max", c.gap_max, "generate: largest inter-arrival gap");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "plain|markdown|csv|json|svg");
    sub->add_option("--out", c.out_path, "write results to PATH instead of stdout");
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--policy", c.policies, "rr:<quantum>, srbrr or mdtqrr (repeatable)");
    sub->add_option("--cst", c.cst, "context switch time in ticks");
  };
  auto add_gantt = [&](CLI::App* sub) {
    sub->add_option("--width", c.width, "chart width in characters (plain) or pixels (svg)");
    sub->add_flag("--rounds", c.rounds, "mark round boundaries");
    sub->add_flag("--single-lane", c.single_lane, "svg: draw every slice on one lane");
  };

  auto* run_cmd = app.add_subcommand("run", "simulate one policy and print its metrics");
  add_source(run_cmd), add_common(run_cmd), add_sim(run_cmd), add_gantt(run_cmd);
  run_cmd->add_flag("--gantt", c.with_gantt, "append the Gantt chart (plain) or timeline (json)");
  auto* compare_cmd = app.add_subcommand("compare", "simulate several policies over one workload");
  add_source(compare_cmd), add_common(compare_cmd), add_sim(compare_cmd);
  auto* generate_cmd = app.add_subcommand("generate", "write a synthetic workload");
  add_source(generate_cmd), add_common(generate_cmd);
  auto* gantt_cmd = app.add_subcommand("gantt", "draw the Gantt chart of one policy");
  add_source(gantt_cmd), add_common(gantt_cmd), add_sim(gantt_cmd), add_gantt(gantt_cmd);
  auto* reproduce_cmd = app.add_subcommand("reproduce", "re-run the three reference cases and check every cell");
  add_common(reproduce_cmd);
  reproduce_cmd->add_flag("--json", c.json, "machine-readable verdict");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    std::string result;
    int status = 0;
    if (run_cmd->parsed()) {
      result = cmd_run(c);
    } else if (compare_cmd->parsed()) {
      result = cmd_compare(c);
    } else if (generate_cmd->parsed()) {
      result = cmd_generate(c);
    } else if (gantt_cmd->parsed()) {
      result = cmd_gantt(c);
    } else {
      status = cmd_reproduce(c, result);
      if (status != 0) err << "error: reproduction mismatch, see flagged cells\n";
    }
    if (c.out_path.empty()) {
      out << result;
    } else {
      std::ofstream f(c.out_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write '" + c.out_path + "'");
      f << result;
    }
    return status;
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv = {"mdtqrr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mdtq::cli
