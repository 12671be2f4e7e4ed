#pragma once

#include "mdtq/engine.hpp"
#include "mdtq/metrics.hpp"
#include "mdtq/report.hpp"
#include "mdtq/workload.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mdtq::reproduce {

// One row of a published comparison table, as printed.
struct PublishedRow {
  PolicySpec policy;
  std::string quanta;
  std::string avg_tat;
  std::string avg_wt;
  std::size_t cs;
  std::string throughput;
};

struct Case {
  std::string name;
  Workload workload;
  std::vector<PublishedRow> rows;
};

// A printed cell known to contradict the published formulas. `computed` is
// the value this implementation must produce instead.
struct Erratum {
  std::string case_name;
  PolicyKind policy;
  std::string column;
  std::string printed;
  std::string computed;
  std::string note;
};

inline Workload make_workload(std::string label, std::initializer_list<int> arrivals, std::initializer_list<int> bursts) {
  Workload w;
  w.label = std::move(label);
  auto a = arrivals.begin();
  auto b = bursts.begin();
  for (Pid pid = 1; a != arrivals.end(); ++a, ++b, ++pid) w.processes.push_back({pid, Ticks::whole(*a), Ticks::whole(*b)});
  return w;
}

inline const std::vector<Case>& cases() {
  static const std::vector<Case> all = [] {
    const auto rr = PolicySpec::rr(Ticks::whole(25));
    const auto sr = PolicySpec::srbrr();
    const auto md = PolicySpec::mdtqrr();
    return std::vector<Case>{
        {"case1",
         make_workload("case 1: increasing bursts", {0, 2, 5, 7, 9}, {10, 22, 48, 70, 74}),
         {{rr, "25", "114.6", "69.8", 9, "0.02"},
          {sr, "10,59,13,2", "106.4", "61.6", 7, "0.02"},
          {md, "10,59,74", "94.6", "50.2", 4, "0.02"}}},
        {"case2",
         make_workload("case 2: decreasing bursts", {0, 6, 13, 21, 75}, {73, 50, 23, 19, 5}),
         {{rr, "25", "101.8", "67.8", 7, "0.03"},
          {sr, "73,23,23,27", "87.4", "53.4", 5, "0.03"},
          {md, "73,19,23,50", "87.4", "53.4", 4, "0.03"}}},
        {"case3",
         make_workload("case 3: random bursts", {0, 6, 8, 9, 10}, {7, 15, 90, 42, 8}),
         {{rr, "25", "72", "39.6", 8, "0.03"},
          {sr, "7,15,42,48", "52", "19.6", 5, "0.03"},
          {md, "7,15,42,90", "52", "19.6", 4, "0.03"}}},
    };
  }();
  return all;
}

// Errata manifest.
inline const std::vector<Erratum>& errata() {
  static const std::vector<Erratum> all = {
      {"case1", PolicyKind::mdtqrr, "avg_wt", "50.2", "49.8",
       "printed average waiting time contradicts avg TAT minus mean burst (94.6 - 44.8 = 49.8)"},
      {"case2", PolicyKind::mdtqrr, "quanta", "73,19,23,50", "73,23,23,50",
       "no median or upper-quartile of any reachable ready set yields 19; the schedule matching the printed "
       "TAT/WT uses rounds 73 | 23 | 23,50"},
  };
  return all;
}

enum class CellStatus { match, erratum, mismatch };

struct CellVerdict {
  std::string case_name;
  std::string algorithm;
  std::string column;
  std::string printed;
  std::string computed;
  CellStatus status = CellStatus::match;
  std::string note;
};

struct Report {
  std::vector<std::pair<std::string, ComparisonTable>> tables;
  std::vector<CellVerdict> cells;

  bool ok() const {
    for (const auto& c : cells)
      if (c.status == CellStatus::mismatch) return false;
    return true;
  }
};

namespace detail {

inline Rational parse_decimal(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(text));
  std::int64_t scale = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) scale *= 10;
  return Rational(std::stoll(text.substr(0, dot) + text.substr(dot + 1)), scale);
}

inline const Erratum* find_erratum(const std::string& case_name, PolicyKind kind, const std::string& column) {
  for (const auto& e : errata())
    if (e.case_name == case_name && e.policy == kind && e.column == column) return &e;
  return nullptr;
}

}  // namespace detail

// Checks one cell. With `exact` set the printed decimal must equal the exact
// value (so "72" matches 72 and "114.6" matches 573/5); otherwise the
// rendered strings must agree.
inline CellVerdict check_cell(const std::string& case_name, const PolicySpec& policy, const std::string& column,
                              const std::string& printed, const std::string& computed,
                              const std::optional<Rational>& exact = std::nullopt) {
  CellVerdict v{case_name, policy_name(policy), column, printed, computed, CellStatus::match, {}};
  const bool equal = exact ? detail::parse_decimal(printed) == *exact : printed == computed;
  const Erratum* e = detail::find_erratum(case_name, policy.kind, column);
  if (e) {
    const bool as_documented = exact ? detail::parse_decimal(e->computed) == *exact : e->computed == computed;
    v.status = as_documented ? CellStatus::erratum : CellStatus::mismatch;
    v.note = e->note;
  } else if (!equal) {
    v.status = CellStatus::mismatch;
  }
  return v;
}

inline Report run(const EngineConfig& config = {}) {
  Report report;
  for (const auto& c : cases()) {
    std::vector<RunSummary> summaries;
    for (const auto& row : c.rows) {
      const RunSummary s = summarize(simulate(c.workload, row.policy, config), c.workload, config);
      summaries.push_back(s);
      auto add = [&](const std::string& col, const std::string& printed, const std::string& computed,
                     std::optional<Rational> exact = std::nullopt) {
        report.cells.push_back(check_cell(c.name, row.policy, col, printed, computed, exact));
      };
      add("quanta", row.quanta, quanta_display(s));
      add("avg_tat", row.avg_tat, show_avg(s.avg_tat), s.avg_tat);
      add("avg_wt", row.avg_wt, show_avg(s.avg_wt), s.avg_wt);
      add("cs", std::to_string(row.cs), std::to_string(s.context_switches));
      add("throughput", row.throughput, show_throughput(s.throughput));
    }
    report.tables.emplace_back(c.name, compare(summaries));
  }
  return report;
}

inline std::string status_name(CellStatus s) {
  switch (s) {
    case CellStatus::match: return "match";
    case CellStatus::erratum: return "erratum";
    case CellStatus::mismatch: return "mismatch";
  }
  return "?";
}

inline std::string render_text(const Report& r) {
  std::ostringstream os;
  for (const auto& [name, table] : r.tables) {
    os << "== " << name << " ==\n" << render_comparison(table, TableFormat::plain) << '\n';
  }
  bool any_note = false;
  for (const auto& c : r.cells) {
    if (c.status == CellStatus::match) continue;
    if (!any_note) os << "Flagged cells:\n";
    any_note = true;
    os << "  [" << status_name(c.status) << "] " << c.case_name << ' ' << c.algorithm << ' ' << c.column
       << ": published " << c.printed << ", computed " << c.computed;
    if (!c.note.empty()) os << " (" << c.note << ")";
    os << '\n';
  }
  os << (r.ok() ? "verdict: all non-erratum cells match\n" : "verdict: MISMATCH\n");
  return os.str();
}

inline nlohmann::json render_json(const Report& r) {
  nlohmann::json j;
  j["ok"] = r.ok();
  auto& tables = j["tables"] = nlohmann::json::object();
  for (const auto& [name, table] : r.tables) tables[name] = nlohmann::json::parse(render_comparison(table, TableFormat::json));
  auto& cells = j["cells"] = nlohmann::json::array();
  for (const auto& c : r.cells) {
    nlohmann::json cell = {{"case", c.case_name}, {"algorithm", c.algorithm}, {"column", c.column},
                           {"published", c.printed}, {"computed", c.computed}, {"status", status_name(c.status)}};
    if (!c.note.empty()) cell["note"] = c.note;
    cells.push_back(cell);
  }
  return j;
}

}  // namespace mdtq::reproduce
