#pragma once

#include "mdtq/errors.hpp"
#include "mdtq/ticks.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mdtq {

using Pid = std::int64_t;

struct Process {
  Pid pid = 0;
  Ticks arrival;
  Ticks burst;

  bool operator==(const Process&) const = default;
};

struct Workload {
  std::vector<Process> processes;
  std::string label;
  std::optional<std::uint64_t> seed;

  std::size_t size() const { return processes.size(); }
  const Process& find(Pid pid) const {
    auto it = std::find_if(processes.begin(), processes.end(), [pid](const Process& p) { return p.pid == pid; });
    if (it == processes.end()) throw std::out_of_range("no process with pid " + std::to_string(pid));
    return *it;
  }

  bool operator==(const Workload&) const = default;
};

enum class WorkloadFormat { csv, json };

struct Violation {
  enum class Kind { empty, duplicate_pid, non_positive_burst, negative_arrival };
  Kind kind;
  Pid pid = 0;
  std::string message;
};

inline std::vector<Violation> validate(const Workload& w) {
  std::vector<Violation> out;
  if (w.processes.empty()) out.push_back({Violation::Kind::empty, 0, "workload has no processes"});
  std::set<Pid> seen;
  std::set<Pid> reported;
  for (const auto& p : w.processes) {
    if (!seen.insert(p.pid).second && reported.insert(p.pid).second)
      out.push_back({Violation::Kind::duplicate_pid, p.pid, "duplicate pid " + std::to_string(p.pid)});
    if (p.burst <= Ticks{})
      out.push_back({Violation::Kind::non_positive_burst, p.pid,
                     "burst of pid " + std::to_string(p.pid) + " must be positive, got " + p.burst.str()});
    if (p.arrival < Ticks{})
      out.push_back({Violation::Kind::negative_arrival, p.pid,
                     "arrival of pid " + std::to_string(p.pid) + " must be non-negative, got " + p.arrival.str()});
  }
  return out;
}

inline void require_valid(const Workload& w) {
  auto v = validate(w);
  if (!v.empty()) throw validation_error(v.front().message);
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

inline Ticks json_ticks(const nlohmann::json& v, const char* field, std::size_t index) {
  const std::string where = std::string("process #") + std::to_string(index + 1) + " field '" + field + "'";
  if (v.is_number_integer()) return Ticks::whole(v.get<std::int64_t>());
  if (v.is_number_float()) {
    const double doubled = v.get<double>() * 2.0;
    const auto halves = static_cast<std::int64_t>(doubled);
    if (static_cast<double>(halves) != doubled)
      throw validation_error(where + " must be a multiple of 0.5, got " + v.dump());
    return Ticks::from_half_ticks(halves);
  }
  throw validation_error(where + " must be a number");
}

}  // namespace detail

inline Workload parse_csv(std::string_view text) {
  Workload w;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool first_content = true;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (first_content) {
      first_content = false;
      if (cells.size() == 3 && cells[0] == "pid" && cells[1] == "arrival" && cells[2] == "burst") continue;
    }
    if (cells.size() != 3)
      throw parse_error("line " + std::to_string(line_no) + ": expected 3 columns (pid,arrival,burst), got " +
                            std::to_string(cells.size()),
                        line_no, 0);
    Process p;
    try {
      std::size_t used = 0;
      p.pid = std::stoll(cells[0], &used);
      if (used != cells[0].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw parse_error("line " + std::to_string(line_no) + " column 1: invalid pid '" + cells[0] + "'", line_no, 1);
    }
    const char* names[] = {"arrival", "burst"};
    Ticks* targets[] = {&p.arrival, &p.burst};
    for (int c = 0; c < 2; ++c) {
      if (!parse_ticks(cells[c + 1], *targets[c]))
        throw parse_error("line " + std::to_string(line_no) + " column " + std::to_string(c + 2) + ": invalid " +
                              names[c] + " '" + cells[c + 1] + "' (integers or one decimal digit of .0/.5)",
                          line_no, static_cast<std::size_t>(c + 2));
    }
    w.processes.push_back(p);
  }
  return w;
}

inline Workload parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(e.what(), 0, e.byte);
  }
  if (!doc.is_array()) throw parse_error("expected a JSON array of processes", 0, 0);
  Workload w;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& obj = doc[i];
    if (!obj.is_object() || !obj.contains("pid") || !obj.contains("arrival") || !obj.contains("burst"))
      throw parse_error("process #" + std::to_string(i + 1) + ": expected object with pid, arrival, burst", 0, 0);
    if (!obj["pid"].is_number_integer())
      throw validation_error("process #" + std::to_string(i + 1) + " field 'pid' must be an integer");
    w.processes.push_back({obj["pid"].get<Pid>(), detail::json_ticks(obj["arrival"], "arrival", i),
                           detail::json_ticks(obj["burst"], "burst", i)});
  }
  return w;
}

// Parses and validates; the returned workload satisfies every invariant.
inline Workload parse_workload(std::string_view text, WorkloadFormat format) {
  Workload w = format == WorkloadFormat::csv ? parse_csv(text) : parse_json(text);
  require_valid(w);
  return w;
}

inline std::string to_csv(const Workload& w) {
  std::ostringstream os;
  os << "pid,arrival,burst\n";
  for (const auto& p : w.processes) os << p.pid << ',' << p.arrival << ',' << p.burst << '\n';
  return os.str();
}

inline nlohmann::json ticks_json(Ticks t) {
  if (t.is_whole()) return t.half_ticks() / 2;
  return static_cast<double>(t.half_ticks()) / 2.0;
}

inline std::string to_json(const Workload& w) {
  auto arr = nlohmann::json::array();
  for (const auto& p : w.processes)
    arr.push_back({{"pid", p.pid}, {"arrival", ticks_json(p.arrival)}, {"burst", ticks_json(p.burst)}});
  return arr.dump(2) + "\n";
}

enum class BurstPattern { increasing, decreasing, random };

struct TicksRange {
  Ticks lo;
  Ticks hi;
};

namespace detail {

// Unbiased draw in [0, span] from the raw engine output. Avoids
// std::uniform_int_distribution, whose mapping differs across standard libraries.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t span) {
  if (span == UINT64_MAX) return rng();
  const std::uint64_t n = span + 1;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

// Draws on the whole-tick grid when both bounds are whole, otherwise on the
// half-tick grid.
inline Ticks draw(std::mt19937_64& rng, TicksRange r) {
  if (r.lo.is_whole() && r.hi.is_whole()) {
    const auto lo = r.lo.half_ticks() / 2;
    const auto hi = r.hi.half_ticks() / 2;
    return Ticks::whole(lo + static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(hi - lo))));
  }
  return Ticks::from_half_ticks(
      r.lo.half_ticks() +
      static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(r.hi.half_ticks() - r.lo.half_ticks()))));
}

}  // namespace detail

// Pids are 1..n in arrival order. The first process arrives at 0; every later
// arrival adds one gap drawn from `arrival_gap`.
inline Workload generate_workload(BurstPattern pattern, std::size_t n, TicksRange burst, TicksRange arrival_gap,
                                  std::uint64_t seed) {
  if (n == 0) throw validation_error("process count must be at least 1");
  if (burst.hi < burst.lo) throw validation_error("burst range is empty");
  if (burst.lo <= Ticks{}) throw validation_error("burst range lower bound must be positive");
  if (arrival_gap.hi < arrival_gap.lo) throw validation_error("arrival gap range is empty");
  if (arrival_gap.lo < Ticks{}) throw validation_error("arrival gap range must be non-negative");

  std::mt19937_64 rng(seed);
  std::vector<Ticks> bursts(n);
  for (auto& b : bursts) b = detail::draw(rng, burst);
  if (pattern == BurstPattern::increasing) std::sort(bursts.begin(), bursts.end());
  if (pattern == BurstPattern::decreasing) std::sort(bursts.begin(), bursts.end(), std::greater<>());

  Workload w;
  w.seed = seed;
  const char* names[] = {"increasing", "decreasing", "random"};
  w.label = std::string("generated ") + names[static_cast<int>(pattern)] + " n=" + std::to_string(n) +
            " seed=" + std::to_string(seed);
  Ticks clock;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) clock += detail::draw(rng, arrival_gap);
    w.processes.push_back({static_cast<Pid>(i + 1), clock, bursts[i]});
  }
  return w;
}

}  // namespace mdtq
