#pragma once

#include "mdtq/policies.hpp"
#include "mdtq/ticks.hpp"
#include "mdtq/workload.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace mdtq {

struct Slice {
  Pid pid = 0;
  Ticks start;
  Ticks end;
  Ticks assigned_quantum;
  Ticks executed;
  std::size_t round_index = 1;
  bool completed = false;

  bool operator==(const Slice&) const = default;
};

// One planning pass. `executed` is k_r: the slices actually dispatched before
// the plan ran out or was abandoned because of an arrival.
struct RoundInfo {
  std::size_t index = 1;
  Ticks start;
  std::size_t ready = 0;
  std::size_t executed = 0;
  std::vector<Ticks> quanta;            // distinct quanta of executed slices
  std::optional<QuantumPair> pair;      // dynamic policies
  std::vector<Ticks> sorted_remaining;  // ready set at plan time

  bool operator==(const RoundInfo&) const = default;
};

// CPU time not spent on any process.
struct Gap {
  enum class Kind { idle, context_switch };
  Kind kind = Kind::idle;
  Ticks start;
  Ticks end;

  bool operator==(const Gap&) const = default;
};

struct Timeline {
  PolicySpec policy;
  std::vector<Slice> slices;
  std::vector<Gap> gaps;
  std::vector<RoundInfo> rounds;
  Ticks makespan;
  Ticks idle;

  bool operator==(const Timeline&) const = default;
};

struct EngineConfig {
  Ticks context_switch_time;
};

namespace detail {

inline void note_gap(Timeline& tl, Gap::Kind kind, Ticks start, Ticks end) {
  if (end <= start) return;
  if (!tl.gaps.empty() && tl.gaps.back().kind == kind && tl.gaps.back().end == start)
    tl.gaps.back().end = end;
  else
    tl.gaps.push_back({kind, start, end});
}

inline void note_quantum(RoundInfo& round, Ticks q) {
  if (std::find(round.quanta.begin(), round.quanta.end(), q) == round.quanta.end()) round.quanta.push_back(q);
}

}  // namespace detail

inline Timeline simulate(const Workload& workload, const PolicySpec& policy, const EngineConfig& config = {}) {
  require_valid(workload);
  if (config.context_switch_time < Ticks{}) throw validation_error("context switch time must be non-negative");
  if (policy.kind == PolicyKind::rr && !(policy.fixed_quantum && *policy.fixed_quantum > Ticks{}))
    throw validation_error("RR requires a positive quantum");

  std::vector<Process> pending = workload.processes;
  std::stable_sort(pending.begin(), pending.end(), [](const Process& a, const Process& b) {
    return a.arrival != b.arrival ? a.arrival < b.arrival : a.pid < b.pid;
  });

  Timeline tl;
  tl.policy = policy;
  std::vector<ReadyEntry> pool;  // FIFO order for RR; unordered set otherwise
  std::size_t next = 0;
  Ticks clock;

  auto admit = [&](Ticks upto) {
    while (next < pending.size() && pending[next].arrival <= upto) {
      pool.push_back({pending[next].pid, pending[next].arrival, pending[next].burst});
      ++next;
    }
  };
  auto arrival_due = [&](Ticks at) { return next < pending.size() && pending[next].arrival <= at; };

  while (!pool.empty() || next < pending.size()) {
    admit(clock);
    if (pool.empty()) {
      tl.idle += pending[next].arrival - clock;
      detail::note_gap(tl, Gap::Kind::idle, clock, pending[next].arrival);
      clock = pending[next].arrival;
      continue;
    }

    const RoundPlan plan = plan_round(policy, pool);
    RoundInfo round;
    round.index = tl.rounds.size() + 1;
    round.start = clock;
    round.ready = pool.size();
    round.pair = plan.pair;
    round.sorted_remaining = plan.sorted_remaining;

    for (std::size_t i = 0; i < plan.order.size(); ++i) {
      auto it = std::find_if(pool.begin(), pool.end(), [&](const ReadyEntry& e) { return e.pid == plan.order[i]; });
      ReadyEntry entry = *it;
      pool.erase(it);

      const Ticks q = plan.quanta[i];
      const Ticks run = min(q, entry.remaining);
      entry.remaining -= run;
      tl.slices.push_back({entry.pid, clock, clock + run, q, run, round.index, entry.remaining.is_zero()});
      clock += run;
      ++round.executed;
      detail::note_quantum(round, q);

      if (policy.kind == PolicyKind::rr) {
        // Arrivals up to the slice end queue ahead of the preempted process.
        admit(clock);
      }
      if (!entry.remaining.is_zero()) pool.push_back(entry);

      if (!pool.empty() || arrival_due(clock)) {
        detail::note_gap(tl, Gap::Kind::context_switch, clock, clock + config.context_switch_time);
        clock += config.context_switch_time;
      }
      if (arrival_due(clock)) break;
    }
    tl.rounds.push_back(std::move(round));
  }
  tl.makespan = tl.slices.empty() ? Ticks{} : tl.slices.back().end;
  return tl;
}

// Deliberately naive second implementation used as a differential oracle:
// the clock advances one half tick per step and the ready set, quanta and
// order are re-derived from raw per-process state. Shares only the output
// types with `simulate`.
inline Timeline reference_simulate(const Workload& workload, const PolicySpec& policy,
                                   const EngineConfig& config = {}) {
  require_valid(workload);
  if (policy.kind == PolicyKind::rr && !(policy.fixed_quantum && *policy.fixed_quantum > Ticks{}))
    throw validation_error("RR requires a positive quantum");

  const auto& procs = workload.processes;
  const std::size_t n = procs.size();
  std::vector<std::int64_t> arrival(n), remaining(n);
  for (std::size_t i = 0; i < n; ++i) {
    arrival[i] = procs[i].arrival.half_ticks();
    remaining[i] = procs[i].burst.half_ticks();
  }
  std::vector<std::size_t> by_pid(n);
  for (std::size_t i = 0; i < n; ++i) by_pid[i] = i;
  std::sort(by_pid.begin(), by_pid.end(), [&](std::size_t a, std::size_t b) { return procs[a].pid < procs[b].pid; });

  const std::int64_t cst = config.context_switch_time.half_ticks();
  const bool rr = policy.kind == PolicyKind::rr;
  const std::int64_t rr_q = rr ? policy.fixed_quantum->half_ticks() : 0;

  Timeline tl;
  tl.policy = policy;
  std::int64_t t = 0, idle = 0, cst_left = 0;
  std::size_t done = 0;

  std::vector<std::size_t> fifo;
  std::optional<std::size_t> requeue;

  std::vector<std::pair<std::size_t, std::int64_t>> plan;
  std::size_t plan_pos = 0;
  bool have_plan = false;
  std::int64_t round_start = 0;

  std::optional<std::size_t> running;
  std::int64_t slice_start = 0, slice_q = 0, slice_used = 0;

  auto less_remaining = [&](std::size_t a, std::size_t b) {
    if (remaining[a] != remaining[b]) return remaining[a] < remaining[b];
    if (arrival[a] != arrival[b]) return arrival[a] < arrival[b];
    return procs[a].pid < procs[b].pid;
  };
  auto open_round = [&](std::vector<std::size_t> ready) {
    RoundInfo r;
    r.index = tl.rounds.size() + 1;
    r.start = Ticks::from_half_ticks(t);
    r.ready = ready.size();
    std::vector<std::int64_t> vals;
    for (auto i : ready) vals.push_back(remaining[i]);
    std::sort(vals.begin(), vals.end());
    for (auto v : vals) r.sorted_remaining.push_back(Ticks::from_half_ticks(v));
    tl.rounds.push_back(r);
  };

  while (done < n) {
    if (rr) {
      for (auto i : by_pid)
        if (arrival[i] == t) fifo.push_back(i);
      if (requeue) {
        fifo.push_back(*requeue);
        requeue.reset();
      }
    }
    if (cst_left > 0) {
      detail::note_gap(tl, Gap::Kind::context_switch, Ticks::from_half_ticks(t), Ticks::from_half_ticks(t + 1));
      --cst_left;
      ++t;
      continue;
    }
    if (!running) {
      if (rr) {
        if (fifo.empty()) {
          detail::note_gap(tl, Gap::Kind::idle, Ticks::from_half_ticks(t), Ticks::from_half_ticks(t + 1));
          ++idle;
          ++t;
          continue;
        }
        open_round(fifo);
        running = fifo.front();
        fifo.erase(fifo.begin());
        slice_q = rr_q;
      } else {
        bool interrupted = false;
        for (std::size_t i = 0; i < n; ++i)
          if (remaining[i] > 0 && arrival[i] > round_start && arrival[i] <= t) interrupted = true;
        if (!have_plan || plan_pos == plan.size() || interrupted) {
          std::vector<std::size_t> ready;
          for (std::size_t i = 0; i < n; ++i)
            if (remaining[i] > 0 && arrival[i] <= t) ready.push_back(i);
          if (ready.empty()) {
            have_plan = false;
            detail::note_gap(tl, Gap::Kind::idle, Ticks::from_half_ticks(t), Ticks::from_half_ticks(t + 1));
            ++idle;
            ++t;
            continue;
          }
          // insertion sort by remaining, arrival, pid
          for (std::size_t a = 1; a < ready.size(); ++a)
            for (std::size_t b = a; b > 0 && less_remaining(ready[b], ready[b - 1]); --b) std::swap(ready[b], ready[b - 1]);
          const std::size_t count = ready.size();
          std::vector<std::int64_t> y;
          for (auto i : ready) y.push_back(remaining[i]);
          const std::int64_t med = count % 2 == 1 ? y[count / 2] : (y[count / 2 - 1] + y[count / 2]) / 2;
          std::size_t uq = 1;
          while (4 * uq < 3 * (count + 1)) ++uq;
          uq = std::min(uq, count);
          std::size_t m = 1;
          while (2 * m < count) ++m;
          plan.clear();
          for (std::size_t p = 0; p < count; ++p) {
            std::int64_t q = med;
            if (policy.kind == PolicyKind::mdtqrr && p + 1 > m) q = y[uq - 1];
            plan.emplace_back(ready[p], q);
          }
          open_round(ready);
          if (policy.kind == PolicyKind::mdtqrr)
            tl.rounds.back().pair = QuantumPair{Ticks::from_half_ticks(med), Ticks::from_half_ticks(y[uq - 1]), m};
          else
            tl.rounds.back().pair = QuantumPair{Ticks::from_half_ticks(med), Ticks::from_half_ticks(med), count};
          plan_pos = 0;
          have_plan = true;
          round_start = t;
        }
        running = plan[plan_pos].first;
        slice_q = plan[plan_pos].second;
        ++plan_pos;
      }
      slice_start = t;
      slice_used = 0;
    }

    --remaining[*running];
    ++slice_used;
    ++t;
    if (remaining[*running] == 0 || slice_used == slice_q) {
      const bool finished = remaining[*running] == 0;
      RoundInfo& r = tl.rounds.back();
      tl.slices.push_back({procs[*running].pid, Ticks::from_half_ticks(slice_start), Ticks::from_half_ticks(t),
                           Ticks::from_half_ticks(slice_q), Ticks::from_half_ticks(slice_used), r.index, finished});
      ++r.executed;
      detail::note_quantum(r, Ticks::from_half_ticks(slice_q));
      if (finished)
        ++done;
      else if (rr)
        requeue = running;
      running.reset();
      bool more = false;
      for (std::size_t i = 0; i < n; ++i)
        if (remaining[i] > 0 && arrival[i] <= t) more = true;
      if (more) cst_left = cst;
    }
  }
  tl.idle = Ticks::from_half_ticks(idle);
  tl.makespan = tl.slices.empty() ? Ticks{} : tl.slices.back().end;
  return tl;
}

}  // namespace mdtq
