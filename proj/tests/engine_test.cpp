#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace mdtq;
using namespace mdtq::testing;

namespace {

struct Expected {
  Pid pid;
  int start;
  int end;
};

void expect_slices(const Timeline& tl, std::initializer_list<Expected> want) {
  ASSERT_EQ(tl.slices.size(), want.size());
  std::size_t i = 0;
  for (const auto& e : want) {
    const auto& s = tl.slices[i++];
    EXPECT_EQ(s.pid, e.pid) << "slice " << i;
    EXPECT_EQ(s.start, Ticks::whole(e.start)) << "slice " << i;
    EXPECT_EQ(s.end, Ticks::whole(e.end)) << "slice " << i;
  }
}

void expect_invariants(const Timeline& tl, const Workload& w) {
  std::map<Pid, Ticks> executed, remaining;
  for (const auto& p : w.processes) remaining[p.pid] = p.burst;
  Ticks last_end;
  std::size_t last_round = 0;
  for (const auto& s : tl.slices) {
    ASSERT_LT(s.start, s.end);
    EXPECT_GE(s.start, last_end);
    EXPECT_GE(s.start, w.find(s.pid).arrival);
    EXPECT_GE(s.round_index, last_round);
    EXPECT_EQ(s.executed, s.end - s.start);
    EXPECT_EQ(s.executed, min(s.assigned_quantum, remaining[s.pid]));
    EXPECT_EQ(s.completed, s.executed == remaining[s.pid]);
    remaining[s.pid] -= s.executed;
    executed[s.pid] += s.executed;
    last_end = s.end;
    last_round = s.round_index;
  }
  for (const auto& p : w.processes) EXPECT_EQ(executed[p.pid], p.burst);
  // slices and gaps tile [0, makespan]
  Ticks covered;
  for (const auto& s : tl.slices) covered += s.executed;
  for (const auto& g : tl.gaps) covered += g.end - g.start;
  EXPECT_EQ(covered, tl.makespan);
}

}  // namespace

TEST(Simulate, Case1Mdtqrr) {
  const auto tl = simulate(case1(), PolicySpec::mdtqrr());
  expect_slices(tl, {{1, 0, 10}, {2, 10, 32}, {3, 32, 80}, {4, 80, 150}, {5, 150, 224}});
  ASSERT_EQ(tl.rounds.size(), 2u);
  EXPECT_EQ(tl.rounds[0].executed, 1u);
  EXPECT_EQ(tl.rounds[1].executed, 4u);
  EXPECT_EQ(tl.makespan, Ticks::whole(224));
  expect_invariants(tl, case1());
}

TEST(Simulate, Case2SrbrrRestartsOnArrival) {
  const auto tl = simulate(case2(), PolicySpec::srbrr());
  expect_slices(tl, {{1, 0, 73}, {4, 73, 92}, {5, 92, 97}, {3, 97, 120}, {2, 120, 143}, {2, 143, 170}});
  // the round opened at 73 is abandoned after one slice
  ASSERT_EQ(tl.rounds.size(), 4u);
  EXPECT_EQ(tl.rounds[1].ready, 3u);
  EXPECT_EQ(tl.rounds[1].executed, 1u);
  expect_invariants(tl, case2());
}

TEST(Simulate, Case3RrAndNoMidSlicePreemption) {
  const auto rr = simulate(case3(), rr25());
  expect_slices(rr, {{1, 0, 7}, {2, 7, 22}, {3, 22, 47}, {4, 47, 72}, {5, 72, 80},
                     {3, 80, 105}, {4, 105, 122}, {3, 122, 147}, {3, 147, 162}});
  const auto md = simulate(case3(), PolicySpec::mdtqrr());
  // P2 keeps the CPU until 22 although P5 (burst 8) arrives at 10
  expect_slices(md, {{1, 0, 7}, {2, 7, 22}, {5, 22, 30}, {4, 30, 72}, {3, 72, 162}});
}

TEST(Simulate, SingleProcess) {
  const auto w = workload_of({3}, {5});
  for (const auto& p : all_policies()) {
    const auto tl = simulate(w, p);
    expect_slices(tl, {{1, 3, 8}});
    EXPECT_EQ(tl.idle, Ticks::whole(3));
  }
}

TEST(Simulate, IdleGapBetweenArrivals) {
  const auto w = workload_of({0, 100}, {10, 10});
  for (const auto& p : all_policies()) {
    const auto tl = simulate(w, p, {Ticks::whole(1)});
    expect_slices(tl, {{1, 0, 10}, {2, 100, 110}});
    ASSERT_EQ(tl.gaps.size(), 1u);
    EXPECT_EQ(tl.gaps[0].kind, Gap::Kind::idle);
    EXPECT_EQ(tl.idle, Ticks::whole(90));
  }
}

TEST(Simulate, ContextSwitchTimeBetweenSlicesOnly) {
  const auto w = workload_of({0, 0}, {3, 3});
  const auto tl = simulate(w, PolicySpec::mdtqrr(), {Ticks::whole(1)});
  expect_slices(tl, {{1, 0, 3}, {2, 4, 7}});
  ASSERT_EQ(tl.gaps.size(), 1u);
  EXPECT_EQ(tl.gaps[0].kind, Gap::Kind::context_switch);
  EXPECT_EQ(tl.makespan, Ticks::whole(7));
}

TEST(Simulate, RrArrivalAtBoundaryQueuesAheadOfPreempted) {
  const auto w = workload_of({0, 5}, {10, 5});
  expect_slices(simulate(w, PolicySpec::rr(Ticks::whole(5))), {{1, 0, 5}, {2, 5, 10}, {1, 10, 15}});
}

TEST(Simulate, HalfTickQuantaStayExact) {
  // MTQ = (1+2)/2 = 1.5 for the round at t=0
  const auto w = workload_of({0, 0}, {1, 2});
  const auto tl = simulate(w, PolicySpec::srbrr());
  ASSERT_EQ(tl.slices.size(), 3u);
  EXPECT_EQ(tl.slices[1].end.half_ticks(), 5);
  EXPECT_EQ(tl.slices[2].executed.half_ticks(), 1);
  expect_invariants(tl, w);
}

TEST(Simulate, RejectsInvalidInput) {
  Workload bad = workload_of({0}, {1});
  bad.processes[0].burst = Ticks{};
  EXPECT_THROW(simulate(bad, PolicySpec::mdtqrr()), validation_error);
  EXPECT_THROW(simulate(case1(), PolicySpec{PolicyKind::rr, std::nullopt}), validation_error);
  EXPECT_THROW(simulate(case1(), PolicySpec::mdtqrr(), {Ticks::whole(-1)}), validation_error);
}

TEST(ReferenceSimulate, MatchesOnPublishedCases) {
  for (const auto& w : {case1(), case2(), case3(), illustration()})
    for (const auto& p : all_policies()) EXPECT_EQ(simulate(w, p), reference_simulate(w, p));
  EXPECT_EQ(reference_simulate(workload_of({0}, {5}), PolicySpec::mdtqrr()).slices.size(), 1u);
}

TEST(ReferenceSimulate, DifferentialFuzzWithContextSwitchCost) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> cst(0, 3), quantum(1, 40);
  for (int iter = 0; iter < 150; ++iter) {
    const Workload w = random_workload(rng, 25, 60);
    const EngineConfig config{Ticks::from_half_ticks(cst(rng))};
    for (const auto& p : {PolicySpec::rr(Ticks::whole(quantum(rng))), PolicySpec::srbrr(), PolicySpec::mdtqrr()}) {
      const Timeline a = simulate(w, p, config);
      ASSERT_EQ(a, reference_simulate(w, p, config)) << policy_string(p) << " iteration " << iter;
      expect_invariants(a, w);
    }
  }
}

TEST(ReferenceSimulate, HalfTickWorkloads) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    const auto w = generate_workload(BurstPattern::random, 1 + iter % 12, {Ticks::from_half_ticks(1), Ticks::whole(20)},
                                     {Ticks{}, Ticks::from_half_ticks(9)}, rng());
    for (const auto& p : {PolicySpec::rr(Ticks::from_half_ticks(7)), PolicySpec::srbrr(), PolicySpec::mdtqrr()})
      ASSERT_EQ(simulate(w, p), reference_simulate(w, p)) << policy_string(p);
  }
}

TEST(SimulateProperties, Determinism) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto w = random_workload(rng);
    for (const auto& p : all_policies()) EXPECT_EQ(simulate(w, p), simulate(w, p));
  }
}

TEST(SimulateProperties, BatchMdtqrrSurvivorsAndRounds) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> n(1, 600), burst(1, 1000);
  for (int iter = 0; iter < 60; ++iter) {
    Workload w;
    const int count = n(rng);
    for (int i = 0; i < count; ++i) w.processes.push_back({i + 1, Ticks{}, Ticks::whole(burst(rng))});
    const auto tl = simulate(w, PolicySpec::mdtqrr());
    for (std::size_t r = 0; r + 1 < tl.rounds.size(); ++r)
      EXPECT_LT(4 * tl.rounds[r + 1].ready, tl.rounds[r].ready);
    EXPECT_LE(tl.rounds.size(), 6u);
  }
}
