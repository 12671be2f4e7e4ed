#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace mdtq;

namespace {
SortedBursts bursts(std::initializer_list<int> v) {
  std::vector<Ticks> t;
  for (int x : v) t.push_back(Ticks::whole(x));
  return SortedBursts(t);
}
}  // namespace

TEST(MedianQuantum, Examples) {
  EXPECT_EQ(median_quantum(bursts({5, 27, 32, 54, 99})), Ticks::whole(32));
  EXPECT_EQ(median_quantum(bursts({22, 48, 70, 74})), Ticks::whole(59));
  EXPECT_EQ(median_quantum(bursts({10})), Ticks::whole(10));
  EXPECT_EQ(median_quantum(bursts({54, 99, 5, 27, 32})), Ticks::whole(32));
  EXPECT_EQ(median_quantum(bursts({1, 2})).half_ticks(), 3);
  EXPECT_THROW(SortedBursts({}), std::domain_error);
}

TEST(MedianQuantum, QuarterTickMeanRoundsDownToHalfTickGrid) {
  const SortedBursts b({Ticks::from_half_ticks(21), Ticks::whole(11)});  // 10.5, 11
  EXPECT_EQ(median_quantum(b).half_ticks(), 21);
}

TEST(UpperQuartileQuantum, Examples) {
  EXPECT_EQ(upper_quartile_quantum(bursts({5, 27, 32, 54, 99})), Ticks::whole(99));
  EXPECT_EQ(upper_quartile_quantum(bursts({22, 48, 70, 74})), Ticks::whole(74));
  EXPECT_EQ(upper_quartile_quantum(bursts({7})), Ticks::whole(7));
  EXPECT_EQ(upper_quartile_quantum(bursts({8, 42, 90})), Ticks::whole(90));
  EXPECT_EQ(upper_quartile_position(7), 6u);  // ceil(6)
  EXPECT_EQ(upper_quartile_position(8), 7u);  // ceil(6.75)
  EXPECT_EQ(upper_quartile_position(2), 2u);  // ceil(2.25)=3, clamped
}

TEST(MedianPosition, Examples) {
  EXPECT_EQ(median_position(5), 3u);
  EXPECT_EQ(median_position(4), 2u);
  EXPECT_EQ(median_position(1), 1u);
  EXPECT_THROW(median_position(0), std::domain_error);
  for (std::size_t n = 1; n < 100; ++n) EXPECT_EQ(median_position(n) + (n - median_position(n)), n);
}

TEST(CriteriaQuantum, Examples) {
  // (32*3 + 99*2)/5 = 294/5 and (59*2 + 74*2)/4 = 266/4, evaluated by hand.
  const Criteria a = criteria_quantum({Ticks::whole(32), Ticks::whole(99), 3}, 5);
  EXPECT_EQ(a.exact, Rational(294, 5));
  EXPECT_EQ(a.display, Ticks::whole(59));
  const Criteria b = criteria_quantum({Ticks::whole(59), Ticks::whole(74), 2}, 4);
  EXPECT_EQ(b.exact, Rational(133, 2));
  EXPECT_EQ(b.display.half_ticks(), 133);
  for (std::size_t m = 1; m <= 6; ++m)
    EXPECT_EQ(criteria_quantum({Ticks::whole(17), Ticks::whole(17), m}, 6).exact, Rational(17));
  EXPECT_THROW(criteria_quantum({Ticks::whole(1), Ticks::whole(1), 1}, 0), std::domain_error);
  EXPECT_THROW(criteria_quantum({Ticks::whole(1), Ticks::whole(1), 4}, 3), std::domain_error);
}

TEST(EightyPercentCheck, Examples) {
  const auto b = bursts({5, 27, 32, 54, 99});
  // 5, 27, 32 and 54 all lie strictly below 58.8
  const auto r = eighty_percent_check(b, Rational(294, 5));
  EXPECT_EQ(r.fraction, Rational(4, 5));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(eighty_percent_check(b, Rational(54)).fraction, Rational(3, 5));
  EXPECT_FALSE(eighty_percent_check(b, Rational(54)).pass);
  EXPECT_EQ(eighty_percent_check(b, Rational(100)).fraction, Rational(1));
  EXPECT_TRUE(eighty_percent_check(b, Rational(100)).pass);
  EXPECT_EQ(eighty_percent_check(b, Rational(5)).fraction, Rational(0));
  EXPECT_TRUE(eighty_percent_check(bursts({1, 2, 3, 4, 10}), Rational(5)).pass);  // exactly 0.8
}

TEST(QuantumProperties, OrderingMembershipAndScaling) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 40), val(1, 500), scale(1, 9);
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<Ticks> v(static_cast<std::size_t>(len(rng)));
    for (auto& t : v) t = Ticks::whole(val(rng));
    std::vector<Ticks> shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const SortedBursts b(v), b2(shuffled);
    const Ticks med = median_quantum(b), uq = upper_quartile_quantum(b);
    EXPECT_LE(med, uq);
    EXPECT_EQ(med, median_quantum(b2));
    EXPECT_EQ(uq, upper_quartile_quantum(b2));
    EXPECT_NE(std::find(v.begin(), v.end(), uq), v.end());
    if (v.size() % 2 == 1) {
      EXPECT_NE(std::find(v.begin(), v.end(), med), v.end());
    }
    const int k = scale(rng);
    std::vector<Ticks> scaled;
    for (auto t : v) scaled.push_back(t * k);
    const SortedBursts bs(scaled);
    EXPECT_EQ(median_quantum(bs), med * k);
    EXPECT_EQ(upper_quartile_quantum(bs), uq * k);
  }
}
