#pragma once

#include "mdtq/engine.hpp"
#include "mdtq/errors.hpp"
#include "mdtq/metrics.hpp"
#include "mdtq/ticks.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace mdtq {

// ---------------------------------------------------------------------------
// Display rules shared by every format.

inline std::string show_avg(const Rational& r) { return format_decimal(r, 1); }
inline std::string show_throughput(const Rational& r) { return format_decimal(r, 2); }
inline std::string show_ratio(const Rational& r) { return format_decimal(r, 4); }
inline std::string show_percent(const Rational& r) { return format_decimal(r * 100, 1) + "%"; }
inline std::string show_exact(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace detail {

// Emits a pre-formatted decimal as a JSON number.
inline nlohmann::json decimal_json(const std::string& text) { return nlohmann::json::parse(text); }

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string gap_kind_name(Gap::Kind k) { return k == Gap::Kind::idle ? "idle" : "context_switch"; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Timeline and summary serialization.

inline nlohmann::json timeline_json(const Timeline& tl) {
  nlohmann::json j;
  j["policy"] = policy_string(tl.policy);
  j["makespan"] = ticks_json(tl.makespan);
  j["idle"] = ticks_json(tl.idle);
  auto& slices = j["slices"] = nlohmann::json::array();
  for (const auto& s : tl.slices)
    slices.push_back({{"pid", s.pid},
                      {"start", ticks_json(s.start)},
                      {"end", ticks_json(s.end)},
                      {"quantum", ticks_json(s.assigned_quantum)},
                      {"round", s.round_index},
                      {"completed", s.completed}});
  auto& gaps = j["gaps"] = nlohmann::json::array();
  for (const auto& g : tl.gaps)
    gaps.push_back({{"kind", detail::gap_kind_name(g.kind)}, {"start", ticks_json(g.start)}, {"end", ticks_json(g.end)}});
  auto& rounds = j["rounds"] = nlohmann::json::array();
  for (const auto& r : tl.rounds) {
    nlohmann::json quanta = nlohmann::json::array();
    for (auto q : r.quanta) quanta.push_back(ticks_json(q));
    rounds.push_back({{"round", r.index}, {"start", ticks_json(r.start)}, {"ready", r.ready}, {"k", r.executed},
                      {"quanta", quanta}});
  }
  return j;
}

inline nlohmann::json summary_json(const RunSummary& s) {
  nlohmann::json j;
  j["policy"] = policy_string(s.policy);
  j["algorithm"] = policy_name(s.policy);
  j["quanta"] = quanta_display(s);
  auto& procs = j["processes"] = nlohmann::json::array();
  for (const auto& p : s.per_process)
    procs.push_back({{"pid", p.pid},
                     {"arrival", ticks_json(p.arrival)},
                     {"burst", ticks_json(p.burst)},
                     {"completion", ticks_json(p.completion)},
                     {"turnaround", ticks_json(p.turnaround)},
                     {"waiting", ticks_json(p.waiting)},
                     {"response", ticks_json(p.response)}});
  j["avg_tat"] = detail::decimal_json(show_avg(s.avg_tat));
  j["avg_wt"] = detail::decimal_json(show_avg(s.avg_wt));
  j["avg_response"] = detail::decimal_json(show_avg(s.avg_response));
  j["cs"] = s.context_switches;
  j["throughput"] = detail::decimal_json(show_throughput(s.throughput));
  j["cpu_util"] = detail::decimal_json(show_ratio(s.cpu_utilization));
  j["cpu_time"] = ticks_json(s.cpu_time);
  j["total_time"] = ticks_json(s.total_time);
  j["makespan"] = ticks_json(s.makespan);
  j["idle"] = ticks_json(s.idle);
  j["exact"] = {{"avg_tat", show_exact(s.avg_tat)},
                {"avg_wt", show_exact(s.avg_wt)},
                {"throughput", show_exact(s.throughput)},
                {"cpu_util", show_exact(s.cpu_utilization)}};
  auto& crit = j["criteria"] = nlohmann::json::array();
  for (const auto& c : s.criteria)
    crit.push_back({{"round", c.round},
                    {"criteria", show_exact(c.criteria.exact)},
                    {"criteria_display", ticks_json(c.criteria.display)},
                    {"below_fraction", show_exact(c.eighty.fraction)},
                    {"meets_80_percent", c.eighty.pass}});
  return j;
}

// Per-process rows followed by a blank line and one aggregate row.
inline std::string summary_csv(const RunSummary& s) {
  std::ostringstream os;
  os << "pid,arrival,burst,completion,turnaround,waiting,response\n";
  for (const auto& p : s.per_process)
    os << p.pid << ',' << p.arrival << ',' << p.burst << ',' << p.completion << ',' << p.turnaround << ','
       << p.waiting << ',' << p.response << '\n';
  os << "\nalgorithm,quanta,avg_tat,avg_wt,cs,throughput,cpu_util,makespan\n";
  os << policy_name(s.policy) << ',' << detail::csv_cell(quanta_display(s)) << ',' << show_avg(s.avg_tat) << ','
     << show_avg(s.avg_wt) << ',' << s.context_switches << ',' << show_throughput(s.throughput) << ','
     << show_ratio(s.cpu_utilization) << ',' << s.makespan << '\n';
  return os.str();
}

inline std::string summary_plain(const RunSummary& s) {
  std::ostringstream os;
  os << "Algorithm: " << policy_name(s.policy) << "  (time quantum " << quanta_display(s) << ")\n\n";
  os << "  PID  Arrival  Burst  Completion  Turnaround  Waiting  Response\n";
  for (const auto& p : s.per_process) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-4lld %7s %6s %11s %11s %8s %9s\n", static_cast<long long>(p.pid),
                  p.arrival.str().c_str(), p.burst.str().c_str(), p.completion.str().c_str(),
                  p.turnaround.str().c_str(), p.waiting.str().c_str(), p.response.str().c_str());
    os << line;
  }
  os << "\n";
  os << "Avg TAT:          " << show_avg(s.avg_tat) << "  (" << show_exact(s.avg_tat) << ")\n";
  os << "Avg WT:           " << show_avg(s.avg_wt) << "  (" << show_exact(s.avg_wt) << ")\n";
  os << "Avg response:     " << show_avg(s.avg_response) << "\n";
  os << "Context switches: " << s.context_switches << "\n";
  os << "CPU time:         " << s.cpu_time << "\n";
  os << "Total time:       " << s.total_time << "\n";
  os << "Makespan:         " << s.makespan << "  (idle " << s.idle << ")\n";
  os << "Throughput:       " << show_throughput(s.throughput) << "  (" << show_exact(s.throughput) << ")\n";
  os << "CPU utilization:  " << show_percent(s.cpu_utilization) << "\n";
  for (const auto& c : s.criteria)
    os << "Round " << c.round << " CRITERIA: " << format_decimal(c.criteria.exact, 2) << " (half-tick "
       << c.criteria.display << "), bursts below: " << show_percent(c.eighty.fraction)
       << (c.eighty.pass ? " meets" : " misses") << " the 80% rule\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Comparison tables.

enum class TableFormat { plain, markdown, csv, json };

inline std::string render_comparison(const ComparisonTable& table, TableFormat format) {
  if (table.rows.empty()) throw std::domain_error("comparison table has no rows");
  const std::vector<std::string> header = {"Algorithm", "Time Quantum", "Avg TAT", "Avg WT",
                                           "CS",        "Throughput",   "Makespan"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : table.rows)
    cells.push_back({r.algorithm, r.quanta, show_avg(r.avg_tat), show_avg(r.avg_wt), std::to_string(r.cs),
                     show_throughput(r.throughput), r.makespan.str()});

  std::ostringstream os;
  switch (format) {
    case TableFormat::plain: {
      std::vector<std::size_t> w(header.size());
      for (std::size_t c = 0; c < header.size(); ++c) {
        w[c] = header[c].size();
        for (const auto& row : cells) w[c] = std::max(w[c], row[c].size());
      }
      auto line = [&](const std::vector<std::string>& row) {
        std::string s;
        for (std::size_t c = 0; c < row.size(); ++c) {
          const std::string pad(w[c] - row[c].size(), ' ');
          // text columns left-aligned, numbers right-aligned
          s += c < 2 ? row[c] + pad : pad + row[c];
          if (c + 1 < row.size()) s += "  ";
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        os << s << '\n';
      };
      line(header);
      std::size_t total = 0;
      for (auto x : w) total += x;
      os << std::string(total + 2 * (w.size() - 1), '-') << '\n';
      for (const auto& row : cells) line(row);
      break;
    }
    case TableFormat::markdown: {
      auto line = [&](const std::vector<std::string>& row) {
        os << '|';
        for (const auto& c : row) os << ' ' << c << " |";
        os << '\n';
      };
      line(header);
      os << "|---|---|---:|---:|---:|---:|---:|\n";
      for (const auto& row : cells) line(row);
      break;
    }
    case TableFormat::csv: {
      os << "algorithm,quanta,avg_tat,avg_wt,cs,throughput,cpu_util,makespan\r\n";
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& r = cells[i];
        os << detail::csv_cell(r[0]) << ',' << detail::csv_cell(r[1]) << ',' << r[2] << ',' << r[3] << ',' << r[4]
           << ',' << r[5] << ',' << show_ratio(table.rows[i].cpu_util) << ',' << r[6] << "\r\n";
      }
      break;
    }
    case TableFormat::json: {
      auto arr = nlohmann::json::array();
      for (const auto& r : table.rows)
        arr.push_back({{"algorithm", r.algorithm},
                       {"policy", policy_string(r.policy)},
                       {"quanta", r.quanta},
                       {"avg_tat", detail::decimal_json(show_avg(r.avg_tat))},
                       {"avg_wt", detail::decimal_json(show_avg(r.avg_wt))},
                       {"cs", r.cs},
                       {"throughput", detail::decimal_json(show_throughput(r.throughput))},
                       {"cpu_util", detail::decimal_json(show_ratio(r.cpu_util))},
                       {"makespan", ticks_json(r.makespan)}});
      os << arr.dump(2) << '\n';
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Gantt charts.

enum class GanttStyle { ascii, svg };

struct GanttOptions {
  std::size_t width = 80;  // characters (ascii) or pixels (svg)
  GanttStyle style = GanttStyle::ascii;
  bool show_rounds = false;
  bool single_lane = false;  // svg only; ascii is always single-lane
};

namespace detail {

struct Segment {
  enum class Kind { slice, idle, context_switch };
  Kind kind;
  Ticks start;
  Ticks end;
  Pid pid = 0;
  std::size_t round = 0;
  bool round_start = false;
};

inline std::vector<Segment> segments(const Timeline& tl) {
  std::vector<Segment> out;
  std::size_t last_round = 0;
  for (const auto& s : tl.slices) {
    out.push_back({Segment::Kind::slice, s.start, s.end, s.pid, s.round_index, s.round_index != last_round});
    last_round = s.round_index;
  }
  for (const auto& g : tl.gaps)
    out.push_back({g.kind == Gap::Kind::idle ? Segment::Kind::idle : Segment::Kind::context_switch, g.start, g.end});
  std::stable_sort(out.begin(), out.end(), [](const Segment& a, const Segment& b) { return a.start < b.start; });
  return out;
}

inline std::vector<std::string> boundary_labels(const std::vector<Segment>& segs) {
  std::vector<std::string> out;
  if (segs.empty()) return out;
  out.push_back(segs.front().start.str());
  for (const auto& s : segs) out.push_back(s.end.str());
  return out;
}

// Splits `budget` columns over segments: one each, the rest proportional to
// duration by largest remainder.
inline std::vector<std::size_t> allot(const std::vector<Segment>& segs, std::size_t budget) {
  std::vector<std::size_t> w(segs.size(), 1);
  const std::size_t extra = budget - segs.size();
  std::int64_t total = 0;
  for (const auto& s : segs) total += (s.end - s.start).half_ticks();
  if (total == 0) return w;
  std::vector<std::pair<std::int64_t, std::size_t>> rem;
  std::size_t used = 0;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::int64_t num = static_cast<std::int64_t>(extra) * (segs[i].end - segs[i].start).half_ticks();
    w[i] += static_cast<std::size_t>(num / total);
    used += static_cast<std::size_t>(num / total);
    rem.emplace_back(num % total, i);
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; used < extra; ++k, ++used) ++w[rem[k].second];
  return w;
}

// Writes each label at its column on the first row with room for it.
inline std::vector<std::string> pack_labels(const std::vector<std::pair<std::size_t, std::string>>& labels,
                                            std::size_t width) {
  std::vector<std::string> rows;
  for (const auto& [col, text] : labels) {
    std::size_t r = 0;
    for (;; ++r) {
      if (r == rows.size()) rows.emplace_back(width + 16, ' ');
      auto& row = rows[r];
      if (row.size() < col + text.size() + 1) row.resize(col + text.size() + 1, ' ');
      bool free = true;
      for (std::size_t c = (col == 0 ? 0 : col - 1); c < col + text.size() + 1 && free; ++c) free = row[c] == ' ';
      if (free) {
        row.replace(col, text.size(), text);
        break;
      }
    }
  }
  for (auto& row : rows)
    while (!row.empty() && row.back() == ' ') row.pop_back();
  return rows;
}

inline std::string render_ascii(const Timeline& tl, const GanttOptions& opt) {
  const auto segs = segments(tl);
  const std::size_t minimum = 2 * segs.size() + 1;
  if (opt.width < minimum)
    throw sizing_error("gantt width " + std::to_string(opt.width) + " is below the minimum of " +
                           std::to_string(minimum) + " characters",
                       minimum);
  const auto w = allot(segs, opt.width - 1 - segs.size());

  std::string bar = "|";
  std::vector<std::pair<std::size_t, std::string>> ticks, rounds;
  ticks.emplace_back(0, segs.front().start.str());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    if (opt.show_rounds && s.kind == Segment::Kind::slice && s.round_start)
      rounds.emplace_back(bar.size() - 1, "R" + std::to_string(s.round));
    std::string label, fill;
    switch (s.kind) {
      case Segment::Kind::slice: label = "P" + std::to_string(s.pid); fill = "#"; break;
      case Segment::Kind::idle: label = "idle"; fill = "."; break;
      case Segment::Kind::context_switch: label = ""; fill = "~"; break;
    }
    std::string cell;
    if (!label.empty() && label.size() <= w[i]) {
      const std::size_t left = (w[i] - label.size()) / 2;
      const char pad = s.kind == Segment::Kind::slice ? ' ' : fill[0];
      cell = std::string(left, pad) + label + std::string(w[i] - label.size() - left, pad);
    } else {
      cell = std::string(w[i], fill[0]);
    }
    bar += cell + "|";
    ticks.emplace_back(bar.size() - 1, s.end.str());
  }

  std::string out = "Gantt chart (" + policy_name(tl.policy) + ")\n";
  if (opt.show_rounds)
    for (const auto& row : pack_labels(rounds, opt.width)) out += row + "\n";
  out += bar + "\n";
  for (const auto& row : pack_labels(ticks, opt.width)) out += row + "\n";
  return out;
}

inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string render_svg(const Timeline& tl, const GanttOptions& opt) {
  constexpr double left = 56, right = 24, top = 28, lane_h = 26, axis_h = 44;
  const auto segs = segments(tl);
  const std::size_t minimum = static_cast<std::size_t>(left + right) + segs.size();
  if (opt.width < minimum)
    throw sizing_error("gantt width " + std::to_string(opt.width) + " is below the minimum of " +
                           std::to_string(minimum) + " pixels",
                       minimum);

  std::vector<Pid> lanes;
  if (!opt.single_lane) {
    for (const auto& s : tl.slices)
      if (std::find(lanes.begin(), lanes.end(), s.pid) == lanes.end()) lanes.push_back(s.pid);
    std::sort(lanes.begin(), lanes.end());
  }
  const std::size_t lane_count = opt.single_lane ? 1 : std::max<std::size_t>(1, lanes.size());
  const double plot_w = static_cast<double>(opt.width) - left - right;
  const double height = top + lane_h * static_cast<double>(lane_count) + axis_h;
  const Ticks origin = segs.empty() ? Ticks{} : segs.front().start;
  const double span = std::max<double>(1.0, static_cast<double>((tl.makespan - origin).half_ticks()));
  auto x = [&](Ticks t) { return left + plot_w * static_cast<double>((t - origin).half_ticks()) / span; };
  auto lane_y = [&](Pid pid) {
    if (opt.single_lane) return top;
    const auto it = std::find(lanes.begin(), lanes.end(), pid);
    return top + lane_h * static_cast<double>(it - lanes.begin());
  };
  static const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                  "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.width << "\" height=\""
     << px(height) << "\" viewBox=\"0 0 " << opt.width << ' ' << px(height) << "\">\n";
  os << "  <title>" << xml_escape("Gantt chart (" + policy_name(tl.policy) + ")") << "</title>\n";
  os << "  <style>text{font-family:monospace;font-size:11px} .idle{fill:#ffffff;stroke:#999;stroke-dasharray:3,2}"
        " .switch{fill:#cccccc} .round{stroke:#333;stroke-dasharray:4,3}</style>\n";
  os << "  <text x=\"" << px(left) << "\" y=\"16\">" << xml_escape(policy_name(tl.policy)) << "</text>\n";
  if (opt.single_lane) {
    os << "  <text class=\"lane\" x=\"4\" y=\"" << px(top + lane_h / 2 + 4) << "\">CPU</text>\n";
  } else {
    for (std::size_t i = 0; i < lanes.size(); ++i)
      os << "  <text class=\"lane\" x=\"4\" y=\"" << px(top + lane_h * static_cast<double>(i) + lane_h / 2 + 4)
         << "\">P" << lanes[i] << "</text>\n";
  }

  for (const auto& s : segs) {
    const double x0 = x(s.start), x1 = x(s.end);
    const double wpx = std::max(1.0, x1 - x0);
    if (s.kind == Segment::Kind::slice) {
      const double y = lane_y(s.pid);
      const char* colour = palette[static_cast<std::size_t>(s.pid < 0 ? -s.pid : s.pid) % 10];
      os << "  <rect class=\"slice\" data-pid=\"" << s.pid << "\" data-round=\"" << s.round << "\" x=\"" << px(x0)
         << "\" y=\"" << px(y + 3) << "\" width=\"" << px(wpx) << "\" height=\"" << px(lane_h - 6) << "\" fill=\""
         << colour << "\" stroke=\"#222\"><title>P" << s.pid << " [" << s.start << ", " << s.end
         << "]</title></rect>\n";
      if (opt.single_lane && wpx >= 24)
        os << "  <text class=\"pid\" x=\"" << px(x0 + wpx / 2) << "\" y=\"" << px(y + lane_h / 2 + 4)
           << "\" text-anchor=\"middle\">P" << s.pid << "</text>\n";
    } else {
      const double y = top;
      const double h = lane_h * static_cast<double>(lane_count);
      os << "  <rect class=\"" << (s.kind == Segment::Kind::idle ? "idle" : "switch") << "\" x=\"" << px(x0)
         << "\" y=\"" << px(y) << "\" width=\"" << px(wpx) << "\" height=\"" << px(h) << "\"/>\n";
    }
    if (opt.show_rounds && s.kind == Segment::Kind::slice && s.round_start)
      os << "  <line class=\"round\" x1=\"" << px(x0) << "\" y1=\"" << px(top - 6) << "\" x2=\"" << px(x0)
         << "\" y2=\"" << px(top + lane_h * static_cast<double>(lane_count)) << "\"><title>round " << s.round
         << "</title></line>\n";
  }

  const double axis_y = top + lane_h * static_cast<double>(lane_count);
  os << "  <line x1=\"" << px(left) << "\" y1=\"" << px(axis_y) << "\" x2=\"" << px(left + plot_w) << "\" y2=\""
     << px(axis_y) << "\" stroke=\"#000\"/>\n";
  std::vector<Ticks> marks;
  if (!segs.empty()) marks.push_back(segs.front().start);
  for (const auto& s : segs) marks.push_back(s.end);
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const double mx = x(marks[i]);
    // Alternate rows keep neighbouring labels from overlapping.
    const double ly = axis_y + (i % 2 == 0 ? 16 : 30);
    os << "  <line x1=\"" << px(mx) << "\" y1=\"" << px(axis_y) << "\" x2=\"" << px(mx) << "\" y2=\"" << px(axis_y + 4)
       << "\" stroke=\"#000\"/>\n";
    os << "  <text class=\"tick\" x=\"" << px(mx) << "\" y=\"" << px(ly) << "\" text-anchor=\"middle\">"
       << marks[i].str() << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace detail

inline std::string render_gantt(const Timeline& tl, const GanttOptions& opt = {}) {
  if (tl.slices.empty()) throw std::domain_error("cannot draw an empty timeline");
  return opt.style == GanttStyle::ascii ? detail::render_ascii(tl, opt) : detail::render_svg(tl, opt);
}

// Smallest width accepted by render_gantt for this timeline and style.
inline std::size_t gantt_min_width(const Timeline& tl, GanttStyle style) {
  const std::size_t segs = tl.slices.size() + tl.gaps.size();
  return style == GanttStyle::ascii ? 2 * segs + 1 : 80 + segs;
}

}  // namespace mdtq
