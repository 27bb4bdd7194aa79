#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "sortrace/baselines.hpp"
#include "sortrace/generators.hpp"
#include "sortrace/quicksorts.hpp"
#include "test_util.hpp"

namespace sortrace {
namespace {

using Keys = std::vector<std::int64_t>;

TEST(Heapsort, Examples) {
  Keys v{3, 1, 2};
  heapsort(std::span(v), NaturalOrder{});
  EXPECT_EQ(v, (Keys{1, 2, 3}));
  Keys empty;
  heapsort(std::span(empty), NaturalOrder{});
  EXPECT_TRUE(empty.empty());
}

TEST(Heapsort, SortedInputIsNotCheap) {
  const std::size_t n = 1 << 15;
  auto v = testing::iota(n);
  CountingComparator<> cmp;
  heapsort(std::span(v), cmp);
  EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
  EXPECT_GT(cmp.count(), static_cast<std::uint64_t>(n) * 10u);
}

TEST(Heapsort, CostlierThanHybridOnEqualTeeth) {
  const auto keys = generate_keys({InputClass::KEqualTeeth, 200000, 16, 1});
  auto a = keys, b = keys;
  CountingComparator<> heap, hyb;
  heapsort(std::span(a), heap);
  qsort_hyb(std::span(b), hyb, quick_presets::hyb4());
  EXPECT_EQ(a, b);
  EXPECT_GE(static_cast<double>(heap.count()), 1.5 * static_cast<double>(hyb.count()));
}

TEST(Shellsort, Examples) {
  const std::vector<std::size_t> two_one{2, 1};
  Keys v{4, 3, 2, 1};
  shellsort(std::span(v), NaturalOrder{}, std::span<const std::size_t>(two_one));
  EXPECT_EQ(v, (Keys{1, 2, 3, 4}));

  // A single gap of 1 is insertion sort, comparison for comparison.
  const std::vector<std::size_t> one{1};
  auto a = generate_keys({InputClass::KDistance, 2000, 5, 3});
  auto b = a;
  CountingComparator<> shell, insert;
  shellsort(std::span(a), shell, std::span<const std::size_t>(one));
  insertion_sort_full(std::span(b), insert);
  EXPECT_EQ(a, b);
  EXPECT_EQ(shell.count(), insert.count());
}

TEST(Shellsort, GapValidation) {
  const std::vector<std::vector<std::size_t>> bad = {{}, {2}, {1, 1}, {3, 4, 1}, {4, 2, 2, 1}};
  Keys v{2, 1};
  for (const auto& gaps : bad) {
    EXPECT_THROW(shellsort(std::span(v), NaturalOrder{}, std::span<const std::size_t>(gaps)),
                 std::invalid_argument);
  }
}

TEST(Shellsort, DefaultGapsAreValid) {
  for (std::size_t n : {0u, 1u, 2u, 5u, 100u, 1750u, 1751u, 100000u, 10000000u}) {
    const auto gaps = ciura_gaps(n);
    EXPECT_NO_THROW(validate_gaps(gaps)) << n;
    EXPECT_TRUE(gaps.size() == 1 || gaps.front() < n) << n;
  }
  EXPECT_EQ(ciura_gaps(100), (std::vector<std::size_t>{57, 23, 10, 4, 1}));
  const auto big = ciura_gaps(10000);
  EXPECT_EQ(big.front(), 8858u);  // 1750 -> 3937 -> 8858, truncating
}

TEST(Shellsort, SortsEveryClass) {
  for (InputClass cls : all_input_classes) {
    const auto inst = gen_instance({cls, 5000, 16, 2});
    std::visit(
        [&](const auto& original) {
          using T = typename std::decay_t<decltype(original)>::value_type;
          auto got = original;
          shellsort(std::span<T>(got), NaturalOrder{});
          EXPECT_TRUE(std::is_sorted(got.begin(), got.end(), [](const T& a, const T& b) { return compare(a, b) < 0; }))
              << class_name(cls);
          auto x = got, y = original;
          heapsort(std::span<T>(y), NaturalOrder{});
          EXPECT_TRUE(std::equal(x.begin(), x.end(), y.begin(), [](const T& a, const T& b) { return compare(a, b) == 0; }));
        },
        inst.buf);
  }
}

TEST(InsertionSortFull, Examples) {
  Keys empty;
  insertion_sort_full(std::span(empty), NaturalOrder{});
  EXPECT_TRUE(empty.empty());
  auto sorted = testing::iota(10);
  insertion_sort_full(std::span(sorted), NaturalOrder{});
  EXPECT_EQ(sorted, testing::iota(10));
  Keys pair{2, 1};
  insertion_sort_full(std::span(pair), NaturalOrder{});
  EXPECT_EQ(pair, (Keys{1, 2}));
}

TEST(InsertionSortFull, KDistanceBound) {
  for (std::uint64_t k : {1u, 2u, 4u, 8u, 16u, 32u}) {
    auto v = generate_keys({InputClass::KDistance, 20000, k, k});
    CountingComparator<> cmp;
    insertion_sort_full(std::span(v), cmp);
    EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
    EXPECT_LE(cmp.count(), 20000u * (2 * k + 1)) << "k=" << k;
  }
}

TEST(InsertionSortFull, Stable) {
  auto v = testing::tagged_random(3000, 7, 4);
  insertion_sort_full(std::span(v), NaturalOrder{});
  EXPECT_TRUE(testing::stably_sorted(v));
}

}  // namespace
}  // namespace sortrace
