#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "sortrace/core.hpp"
#include "test_util.hpp"

namespace sortrace {
namespace {

using testing::Tagged;

TEST(IsSorted, CountsUntilFirstDescent) {
  CountingComparator<> cmp;
  std::vector<std::int64_t> a{1, 2, 3};
  EXPECT_TRUE(is_sorted(std::span(a), 0, a.size(), cmp));
  EXPECT_EQ(cmp.count(), 2u);

  cmp.reset();
  std::vector<std::int64_t> b{2, 1, 3};
  EXPECT_FALSE(is_sorted(std::span(b), 0, b.size(), cmp));
  EXPECT_EQ(cmp.count(), 1u);

  cmp.reset();
  std::vector<std::int64_t> empty;
  EXPECT_TRUE(is_sorted(std::span(empty), 0, 0, cmp));
  EXPECT_EQ(cmp.count(), 0u);
}

TEST(IsSorted, DoesNotMutate) {
  std::vector<std::int64_t> v{5, 3, 9, 1, 1, 0};
  const auto before = v;
  NaturalOrder order;
  (void)is_sorted(std::span(v), 0, v.size(), order);
  EXPECT_EQ(v, before);
}

TEST(IsSorted, SubrangeOnly) {
  std::vector<std::int64_t> v{9, 1, 2, 3, 0};
  NaturalOrder order;
  EXPECT_TRUE(is_sorted(std::span(v), 1, 4, order));
  EXPECT_FALSE(is_sorted(std::span(v), 0, 4, order));
}

TEST(Reverse, Examples) {
  std::vector<std::int64_t> a{1, 2, 3};
  reverse(std::span(a), 0, 3);
  EXPECT_EQ(a, (std::vector<std::int64_t>{3, 2, 1}));
  std::vector<std::int64_t> empty;
  reverse(std::span(empty), 0, 0);
  EXPECT_TRUE(empty.empty());
  std::vector<std::int64_t> one{5};
  reverse(std::span(one), 0, 1);
  EXPECT_EQ(one, (std::vector<std::int64_t>{5}));
}

TEST(Swap, Examples) {
  std::vector<std::int64_t> a{1, 2};
  swap(std::span(a), 0, 1);
  EXPECT_EQ(a, (std::vector<std::int64_t>{2, 1}));
  std::vector<std::int64_t> b{7, 8};
  swap(std::span(b), 1, 1);
  EXPECT_EQ(b, (std::vector<std::int64_t>{7, 8}));
  std::vector<std::int64_t> c{1, 2, 3};
  swap(std::span(c), 0, 2);
  EXPECT_EQ(c, (std::vector<std::int64_t>{3, 2, 1}));
}

TEST(InsertionSort, ExtendsSortedPrefix) {
  std::vector<std::int64_t> v{1, 3, 2};
  NaturalOrder order;
  insertion_sort(std::span(v), 0, 2, 3, order);
  EXPECT_EQ(v, (std::vector<std::int64_t>{1, 2, 3}));
}

TEST(InsertionSort, LinearProbeOnSortedInputIsOneComparisonPerElement) {
  auto v = testing::iota(100, 1);
  CountingComparator<> cmp;
  insertion_sort(std::span(v), 0, 0, v.size(), cmp, false);
  EXPECT_EQ(cmp.count(), 99u);
}

TEST(InsertionSort, StableForBothVariants) {
  for (bool binary : {false, true}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto v = testing::tagged_random(200, 5, seed);
      NaturalOrder order;
      insertion_sort(std::span(v), 0, 0, v.size(), order, binary);
      EXPECT_TRUE(testing::stably_sorted(v)) << "binary=" << binary << " seed=" << seed;
    }
  }
  std::vector<Tagged> pair{{4, 0}, {4, 1}};
  NaturalOrder order;
  insertion_sort(std::span(pair), 0, 0, 2, order);
  EXPECT_EQ(pair[0].tag, 0);
}

TEST(InsertionSort, BinarySearchUsesFewerComparisonsOnRandomInput) {
  std::mt19937_64 rng(3);
  std::vector<std::int64_t> v(500);
  for (auto& x : v) x = static_cast<std::int64_t>(rng() % 1000);
  auto w = v;
  CountingComparator<> linear, binary;
  insertion_sort(std::span(v), 0, 0, v.size(), linear, false);
  insertion_sort(std::span(w), 0, 0, w.size(), binary, true);
  EXPECT_EQ(v, w);
  EXPECT_LT(binary.count(), linear.count());
}

TEST(CountingComparator, CountsEveryCallAndResets) {
  CountingComparator<> cmp;
  EXPECT_LT(cmp(std::int64_t{1}, std::int64_t{2}), 0);
  EXPECT_EQ(cmp(2.5, 2.5), 0);
  EXPECT_GT(cmp(Rec16{{3, 0}}, Rec16{{2, 9}}), 0);
  EXPECT_EQ(cmp.count(), 3u);
  (void)cmp.order()(std::int64_t{1}, std::int64_t{1});
  EXPECT_EQ(cmp.count(), 3u);
  cmp.reset();
  EXPECT_EQ(cmp.count(), 0u);
}

TEST(Record, LexicographicOverAllWords) {
  EXPECT_LT(compare(Rec16{{1, 5}}, Rec16{{2, 0}}), 0);
  EXPECT_LT(compare(Rec16{{1, 5}}, Rec16{{1, 6}}), 0);
  EXPECT_EQ(compare(Rec64{}, Rec64{}), 0);
  Rec256 a, b;
  b.words[31] = 1;
  EXPECT_LT(compare(a, b), 0);
  EXPECT_GT(compare(b, a), 0);
}

// Antisymmetry and transitivity over small-alphabet records, which force
// ties and deep word scans.
TEST(Record, OrderIsStrictWeak) {
  std::mt19937_64 rng(11);
  auto draw = [&] {
    Rec16 r;
    for (auto& w : r.words) w = static_cast<std::int64_t>(rng() % 3) - 1;
    return r;
  };
  for (int trial = 0; trial < 5000; ++trial) {
    const Rec16 a = draw(), b = draw(), c = draw();
    EXPECT_EQ(compare(a, b), -compare(b, a));
    if (compare(a, b) <= 0 && compare(b, c) <= 0) {
      EXPECT_LE(compare(a, c), 0);
    }
    if (compare(a, b) == 0) {
      EXPECT_EQ(a, b);
    }
  }
}

TEST(Compare, DoubleAndIntegerExtremes) {
  EXPECT_LT(compare(std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()), 0);
  EXPECT_EQ(compare(0.0, -0.0), 0);
  EXPECT_GT(compare(1.0, 0.5), 0);
}

}  // namespace
}  // namespace sortrace
