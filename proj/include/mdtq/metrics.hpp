#pragma once

#include "mdtq/engine.hpp"
#include "mdtq/quantum_stats.hpp"
#include "mdtq/ticks.hpp"
#include "mdtq/workload.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdtq {

struct ProcessMetrics {
  Pid pid = 0;
  Ticks arrival;
  Ticks burst;
  Ticks completion;
  Ticks turnaround;  // completion - arrival
  Ticks waiting;     // turnaround - burst
  Ticks response;    // first dispatch - arrival

  bool operator==(const ProcessMetrics&) const = default;
};

// CRITERIA and the 80% rule evaluated on one dynamic round.
struct RoundCriteria {
  std::size_t round = 1;
  Criteria criteria;
  EightyPercentCheck eighty;

  bool operator==(const RoundCriteria&) const = default;
};

struct RunSummary {
  PolicySpec policy;
  std::vector<ProcessMetrics> per_process;  // workload order
  Rational avg_tat;
  Rational avg_wt;
  Rational avg_response;
  std::size_t context_switches = 0;
  Ticks cpu_time;
  Ticks total_time;
  Ticks makespan;
  Ticks idle;
  Rational throughput;
  Rational cpu_utilization;
  std::vector<std::vector<Ticks>> quanta_sequence;  // per round
  std::vector<RoundCriteria> criteria;              // empty for RR

  bool operator==(const RunSummary&) const = default;
};

// Q_T = slices - 1.
inline std::size_t context_switches(const Timeline& tl) {
  if (tl.slices.empty()) throw std::domain_error("context switches of an empty timeline");
  return tl.slices.size() - 1;
}

// Q_T = (sum of k_r) - 1, counted from the rounds instead of the slices.
inline std::size_t context_switches_by_rounds(const Timeline& tl) {
  std::size_t total = 0;
  for (const auto& r : tl.rounds) total += r.executed;
  if (total == 0) throw std::domain_error("context switches of an empty timeline");
  return total - 1;
}

inline std::string join_ticks(const std::vector<Ticks>& values) {
  std::string s;
  for (const auto& v : values) s += (s.empty() ? "" : ",") + v.str();
  return s;
}

// The "Time Quantum" column: the fixed quantum for RR, otherwise every
// round's quanta in order.
inline std::string quanta_display(const RunSummary& s) {
  if (s.policy.kind == PolicyKind::rr) return s.policy.fixed_quantum.value_or(Ticks{}).str();
  std::vector<Ticks> flat;
  for (const auto& r : s.quanta_sequence) flat.insert(flat.end(), r.begin(), r.end());
  return join_ticks(flat);
}

inline RunSummary summarize(const Timeline& tl, const Workload& workload, const EngineConfig& config = {}) {
  if (tl.slices.empty()) throw std::domain_error("cannot summarize an empty timeline");
  std::map<Pid, ProcessMetrics> by_pid;
  for (const auto& p : workload.processes) by_pid[p.pid] = {p.pid, p.arrival, p.burst, {}, {}, {}, {}};

  std::set<Pid> started, finished;
  std::map<Pid, Ticks> executed;
  for (const auto& s : tl.slices) {
    auto it = by_pid.find(s.pid);
    if (it == by_pid.end()) throw std::domain_error("timeline pid " + std::to_string(s.pid) + " not in workload");
    if (started.insert(s.pid).second) it->second.response = s.start - it->second.arrival;
    executed[s.pid] += s.executed;
    if (s.completed) {
      finished.insert(s.pid);
      it->second.completion = s.end;
    }
  }
  for (const auto& [pid, m] : by_pid) {
    if (!finished.contains(pid)) throw std::domain_error("pid " + std::to_string(pid) + " never completes");
    if (executed[pid] != m.burst) throw std::domain_error("pid " + std::to_string(pid) + " executed time differs from burst");
  }

  RunSummary s;
  s.policy = tl.policy;
  Rational tat_sum, wt_sum, resp_sum;
  for (const auto& p : workload.processes) {
    ProcessMetrics m = by_pid[p.pid];
    m.turnaround = m.completion - m.arrival;
    m.waiting = m.turnaround - m.burst;
    tat_sum += m.turnaround.exact();
    wt_sum += m.waiting.exact();
    resp_sum += m.response.exact();
    s.cpu_time += m.burst;
    s.per_process.push_back(m);
  }
  const auto n = static_cast<std::int64_t>(workload.size());
  s.avg_tat = tat_sum / n;
  s.avg_wt = wt_sum / n;
  s.avg_response = resp_sum / n;
  s.context_switches = context_switches(tl);
  s.total_time = s.cpu_time + config.context_switch_time * static_cast<std::int64_t>(s.context_switches);
  s.makespan = tl.makespan;
  s.idle = tl.idle;
  s.throughput = Rational(n) / s.total_time.exact();
  s.cpu_utilization = s.cpu_time.exact() / s.total_time.exact();
  for (const auto& r : tl.rounds) {
    s.quanta_sequence.push_back(r.quanta);
    if (tl.policy.kind != PolicyKind::rr && r.pair) {
      const SortedBursts bursts(r.sorted_remaining);
      const Criteria c = criteria_quantum(*r.pair, r.ready);
      s.criteria.push_back({r.index, c, eighty_percent_check(bursts, c.exact)});
    }
  }
  return s;
}

struct ComparisonRow {
  PolicySpec policy;
  std::string algorithm;
  std::string quanta;
  Rational avg_tat;
  Rational avg_wt;
  std::size_t cs = 0;
  Rational throughput;
  Rational cpu_util;
  Ticks makespan;

  bool operator==(const ComparisonRow&) const = default;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
};

inline ComparisonTable compare(const std::vector<RunSummary>& summaries) {
  if (summaries.empty()) throw std::domain_error("comparison needs at least one run");
  auto shape = [](const RunSummary& s) {
    std::vector<std::tuple<Pid, Ticks, Ticks>> v;
    for (const auto& p : s.per_process) v.emplace_back(p.pid, p.arrival, p.burst);
    return v;
  };
  const auto reference = shape(summaries.front());
  ComparisonTable table;
  for (const auto& s : summaries) {
    if (shape(s) != reference) throw std::domain_error("comparison runs cover different workloads");
    table.rows.push_back({s.policy, policy_name(s.policy), quanta_display(s), s.avg_tat, s.avg_wt, s.context_switches,
                          s.throughput, s.cpu_utilization, s.makespan});
  }
  return table;
}

}  // namespace mdtq
