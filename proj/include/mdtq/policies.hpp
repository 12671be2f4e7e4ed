#pragma once

#include "mdtq/errors.hpp"
#include "mdtq/quantum_stats.hpp"
#include "mdtq/ticks.hpp"
#include "mdtq/workload.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mdtq {

enum class PolicyKind { rr, srbrr, mdtqrr };

struct PolicySpec {
  PolicyKind kind = PolicyKind::mdtqrr;
  std::optional<Ticks> fixed_quantum;  // set iff kind == rr

  static PolicySpec rr(Ticks q) {
    if (q <= Ticks{}) throw validation_error("RR quantum must be positive");
    return {PolicyKind::rr, q};
  }
  static PolicySpec srbrr() { return {PolicyKind::srbrr, std::nullopt}; }
  static PolicySpec mdtqrr() { return {PolicyKind::mdtqrr, std::nullopt}; }

  bool operator==(const PolicySpec&) const = default;
};

// "rr:<quantum>", "srbrr", "mdtqrr".
inline PolicySpec parse_policy(std::string_view text) {
  if (text == "srbrr") return PolicySpec::srbrr();
  if (text == "mdtqrr") return PolicySpec::mdtqrr();
  if (text.starts_with("rr:")) {
    Ticks q;
    if (!parse_ticks(text.substr(3), q)) throw validation_error("invalid RR quantum in '" + std::string(text) + "'");
    if (q <= Ticks{}) throw validation_error("RR quantum must be positive, got " + q.str());
    return PolicySpec::rr(q);
  }
  throw validation_error("unknown policy '" + std::string(text) + "' (expected rr:<quantum>, srbrr or mdtqrr)");
}

inline std::string policy_name(const PolicySpec& p) {
  switch (p.kind) {
    case PolicyKind::rr: return "RR";
    case PolicyKind::srbrr: return "SRBRR";
    case PolicyKind::mdtqrr: return "MDTQRR";
  }
  return "?";
}

inline std::string policy_string(const PolicySpec& p) {
  switch (p.kind) {
    case PolicyKind::rr: return "rr:" + p.fixed_quantum.value_or(Ticks{}).str();
    case PolicyKind::srbrr: return "srbrr";
    case PolicyKind::mdtqrr: return "mdtqrr";
  }
  return "?";
}

// A process as the planners see it.
struct ReadyEntry {
  Pid pid = 0;
  Ticks arrival;
  Ticks remaining;
};

struct RoundPlan {
  std::vector<Pid> order;
  std::vector<Ticks> quanta;                 // quanta[i] serves order[i]
  std::vector<Ticks> quanta_label;           // distinct values, first-use order
  std::optional<QuantumPair> pair;           // dynamic policies only
  std::vector<Ticks> sorted_remaining;       // the ready set's remaining bursts, ascending

  // 1-based.
  Ticks quantum_at(std::size_t position) const { return quanta.at(position - 1); }
};

namespace detail {

inline std::vector<Ticks> distinct_in_order(std::span<const Ticks> q) {
  std::vector<Ticks> out;
  for (auto t : q)
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  return out;
}

inline std::vector<ReadyEntry> sorted_by_remaining(std::span<const ReadyEntry> ready) {
  std::vector<ReadyEntry> v(ready.begin(), ready.end());
  std::sort(v.begin(), v.end(), [](const ReadyEntry& a, const ReadyEntry& b) {
    if (a.remaining != b.remaining) return a.remaining < b.remaining;
    if (a.arrival != b.arrival) return a.arrival < b.arrival;
    return a.pid < b.pid;
  });
  return v;
}

}  // namespace detail

// One slice for the queue head; the engine re-plans after every slice so
// that arrivals interleave in FIFO order.
inline RoundPlan plan_round_rr(std::span<const ReadyEntry> fifo, Ticks q) {
  if (fifo.empty()) throw std::domain_error("RR plan over an empty ready queue");
  if (q <= Ticks{}) throw std::domain_error("RR quantum must be positive");
  RoundPlan plan;
  plan.order = {fifo.front().pid};
  plan.quanta = {q};
  plan.quanta_label = {q};
  for (const auto& e : fifo) plan.sorted_remaining.push_back(e.remaining);
  std::sort(plan.sorted_remaining.begin(), plan.sorted_remaining.end());
  return plan;
}

inline RoundPlan plan_round_srbrr(std::span<const ReadyEntry> ready) {
  if (ready.empty()) throw std::domain_error("SRBRR plan over an empty ready set");
  RoundPlan plan;
  for (const auto& e : detail::sorted_by_remaining(ready)) {
    plan.order.push_back(e.pid);
    plan.sorted_remaining.push_back(e.remaining);
  }
  const SortedBursts b(plan.sorted_remaining);
  const Ticks q = median_quantum(b);
  plan.quanta.assign(plan.order.size(), q);
  plan.quanta_label = {q};
  plan.pair = QuantumPair{q, q, plan.order.size()};
  return plan;
}

// Positions 1..m take the median quantum, the rest the upper-quartile value.
inline RoundPlan plan_round_mdtqrr(std::span<const ReadyEntry> ready) {
  if (ready.empty()) throw std::domain_error("MDTQRR plan over an empty ready set");
  RoundPlan plan;
  for (const auto& e : detail::sorted_by_remaining(ready)) {
    plan.order.push_back(e.pid);
    plan.sorted_remaining.push_back(e.remaining);
  }
  const SortedBursts b(plan.sorted_remaining);
  const QuantumPair pair = quantum_pair(b);
  for (std::size_t i = 1; i <= plan.order.size(); ++i) plan.quanta.push_back(i <= pair.m ? pair.mtq : pair.utq);
  plan.quanta_label = detail::distinct_in_order(plan.quanta);
  plan.pair = pair;
  return plan;
}

inline RoundPlan plan_round(const PolicySpec& policy, std::span<const ReadyEntry> ready) {
  switch (policy.kind) {
    case PolicyKind::rr: return plan_round_rr(ready, policy.fixed_quantum.value());
    case PolicyKind::srbrr: return plan_round_srbrr(ready);
    case PolicyKind::mdtqrr: return plan_round_mdtqrr(ready);
  }
  throw std::logic_error("unknown policy");
}

}  // namespace mdtq
