#pragma once

// Quicksort family: 2-way and 3-way splitting, the hybrid that switches
// between them, the Bentley-McIlroy reference, and introsort.
//
// None of the splitting routines locate the pivot inside the range; the
// pivot is a copied value and the array is split around it in place.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "sortrace/baselines.hpp"
#include "sortrace/core.hpp"

namespace sortrace {

enum class SplitMode {
  TwoWay,    // crossing scans only
  ThreeWay,  // split-end scheme, equals spared from recursion
  Hybrid,    // 2-way until a split sees more than gamma pivot copies
};

struct QuickParams {
  std::size_t alpha = 32;  // ranges shorter than this go to insertion sort
  std::size_t beta = 32;   // median of 3 below this, pseudo-median of 9 from here
  std::size_t gamma = 2;   // more pivot hits than this switches to 3-way
  bool check_sorted = true;
  SplitMode mode = SplitMode::Hybrid;

  void validate() const {
    if (alpha < 2 || alpha > beta) throw std::invalid_argument("QuickParams: need 2 <= alpha <= beta");
  }
};

namespace quick_presets {

inline QuickParams hybrid(std::size_t alpha, std::size_t beta) {
  return {alpha, beta, 2, true, SplitMode::Hybrid};
}
inline QuickParams hyb1() { return hybrid(16, 16); }
inline QuickParams hyb2() { return hybrid(32, 32); }
inline QuickParams hyb3() { return hybrid(32, 64); }
inline QuickParams hyb4() { return hybrid(16, 32); }
inline QuickParams two_way() { return {32, 32, 2, true, SplitMode::TwoWay}; }
inline QuickParams three_way() { return {7, 40, 2, true, SplitMode::ThreeWay}; }
inline QuickParams bentley_mcilroy() { return {7, 40, 2, false, SplitMode::ThreeWay}; }

/// hyb2 with the pseudo-median disabled; quadratic on organ pipes.
inline QuickParams median3_only() {
  QuickParams p = hyb2();
  p.beta = std::numeric_limits<std::size_t>::max();
  return p;
}

}  // namespace quick_presets

/// Per-call counters. Optional; pass nullptr to skip.
struct QuickStats {
  std::uint64_t partitions = 0;
  std::uint64_t three_way_switches = 0;  // hybrid splits whose children went 3-way
  std::uint64_t max_eq = 0;              // largest pivot-hit count seen in a 2-way split
  std::uint64_t heapsort_fallbacks = 0;  // introsort only
};

namespace detail {

template <typename T, typename Cmp>
const T& median3(const T& a, const T& b, const T& c, Cmp& cmp) {
  if (cmp(a, b) < 0) {
    if (cmp(b, c) < 0) return b;
    return cmp(a, c) < 0 ? c : a;
  }
  if (cmp(b, c) > 0) return b;
  return cmp(a, c) < 0 ? a : c;
}

}  // namespace detail

/// Median of first, middle and last of buf[lo, hi). At most 3 comparisons.
template <typename T, typename Cmp>
T pick_pivot3(std::span<const T> buf, std::size_t lo, std::size_t hi, Cmp&& cmp) {
  const std::size_t last = hi - 1;
  return detail::median3(buf[lo], buf[lo + (last - lo) / 2], buf[last], cmp);
}

/// Pseudo-median of nine samples at lo + floor(i * (len - 1) / 8), so the
/// first, middle and last elements are always among them.
template <typename T, typename Cmp>
T pick_pivot9(std::span<const T> buf, std::size_t lo, std::size_t hi, Cmp&& cmp) {
  const std::size_t last = hi - lo - 1;
  auto at = [&](std::size_t i) -> const T& { return buf[lo + i * last / 8]; };
  const T& m1 = detail::median3(at(0), at(1), at(2), cmp);
  const T& m2 = detail::median3(at(3), at(4), at(5), cmp);
  const T& m3 = detail::median3(at(6), at(7), at(8), cmp);
  return detail::median3(m1, m2, m3, cmp);
}

/// Result of a crossing-scan split: buf[lo, left_end) <= pivot and
/// buf[right_begin, hi) >= pivot, with left_end <= right_begin. `eq` is the
/// number of times a scan stopped on an element equal to the pivot.
struct HoareSplit {
  std::size_t left_end;
  std::size_t right_begin;
  std::size_t eq;
};

/// Classic crossing scans around a pivot value that occurs in the range.
/// Both scans stop on equal elements, so neither can run off the range.
template <typename T, typename Cmp>
HoareSplit partition_hoare(std::span<T> buf, std::size_t lo, std::size_t hi, const T& pivot, Cmp&& cmp) {
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(lo);
  std::ptrdiff_t j = static_cast<std::ptrdiff_t>(hi) - 1;
  std::size_t eq = 0;
  for (;;) {
    int r;
    while ((r = cmp(buf[i], pivot)) < 0) ++i;
    if (r == 0) ++eq;
    while ((r = cmp(buf[j], pivot)) > 0) --j;
    if (r == 0) ++eq;
    if (i >= j) break;
    swap(buf, static_cast<std::size_t>(i++), static_cast<std::size_t>(j--));
  }
  // Both scans stopped on the same element: it equals the pivot and is in
  // its final position.
  if (i == j) {
    ++i;
    --j;
  }
  HoareSplit split{static_cast<std::size_t>(j + 1), static_cast<std::size_t>(i), eq};

#ifdef SORTRACE_DEBUG_CHECKS
  auto&& order = detail::uncounted(cmp);
  for (std::size_t x = lo; x < split.left_end; ++x) {
    if (order(buf[x], pivot) > 0) throw std::logic_error("partition_hoare: left side exceeds pivot");
  }
  for (std::size_t x = split.right_begin; x < hi; ++x) {
    if (order(buf[x], pivot) < 0) throw std::logic_error("partition_hoare: right side below pivot");
  }
#endif
  return split;
}

struct ThreeWaySplit {
  std::size_t lt_end;    // buf[lo, lt_end) < pivot
  std::size_t gt_begin;  // buf[gt_begin, hi) > pivot
};

/// Bentley-McIlroy split-end partition. Equal elements are parked at both
/// ends while scanning and swapped into the middle afterwards, giving
/// [< pivot][== pivot][> pivot].
template <typename T, typename Cmp>
ThreeWaySplit partition_3way(std::span<T> buf, std::size_t lo, std::size_t hi, const T& pivot, Cmp&& cmp) {
  if (lo >= hi) return {lo, hi};
  std::ptrdiff_t a = static_cast<std::ptrdiff_t>(lo), b = a;
  std::ptrdiff_t c = static_cast<std::ptrdiff_t>(hi) - 1, d = c;
  auto at = [&](std::ptrdiff_t x) { return static_cast<std::size_t>(x); };
  for (;;) {
    int r;
    while (b <= c && (r = cmp(buf[at(b)], pivot)) <= 0) {
      if (r == 0) swap(buf, at(a++), at(b));
      ++b;
    }
    while (c >= b && (r = cmp(buf[at(c)], pivot)) >= 0) {
      if (r == 0) swap(buf, at(c), at(d--));
      --c;
    }
    if (b > c) break;
    swap(buf, at(b++), at(c--));
  }
  auto vecswap = [&](std::ptrdiff_t x, std::ptrdiff_t y, std::ptrdiff_t count) {
    for (; count > 0; --count) swap(buf, at(x++), at(y++));
  };
  const std::ptrdiff_t end = static_cast<std::ptrdiff_t>(hi);
  const std::ptrdiff_t begin = static_cast<std::ptrdiff_t>(lo);
  std::ptrdiff_t s = std::min(a - begin, b - a);
  vecswap(begin, b - s, s);
  s = std::min(d - c, end - 1 - d);
  vecswap(b, end - s, s);
  return {lo + at(b - a), hi - at(d - c)};
}

/// The quicksort engine behind every preset. Recursion is replaced by an
/// explicit stack that always defers the larger side, so depth stays
/// logarithmic.
template <typename T, typename Cmp>
void quicksort(std::span<T> buf, Cmp&& cmp, const QuickParams& params, QuickStats* stats = nullptr) {
  params.validate();
  struct Task {
    std::size_t lo, hi;
    SplitMode mode;
  };
  std::vector<Task> pending;
  pending.push_back({0, buf.size(), params.mode});

  while (!pending.empty()) {
    Task task = pending.back();
    pending.pop_back();
    for (;;) {
      const std::size_t len = task.hi - task.lo;
      if (len < 2) break;
      if (len < params.alpha) {
        insertion_sort(buf, task.lo, task.lo, task.hi, cmp, false);
        break;
      }
      if (params.check_sorted && is_sorted(buf, task.lo, task.hi, cmp)) break;
      const std::span<const T> view(buf);
      const T pivot = len < params.beta ? pick_pivot3(view, task.lo, task.hi, cmp)
                                        : pick_pivot9(view, task.lo, task.hi, cmp);
      if (stats) ++stats->partitions;

      Task left, right;
      if (task.mode == SplitMode::ThreeWay) {
        const auto split = partition_3way(buf, task.lo, task.hi, pivot, cmp);
        left = {task.lo, split.lt_end, SplitMode::ThreeWay};
        right = {split.gt_begin, task.hi, SplitMode::ThreeWay};
      } else {
        const auto split = partition_hoare(buf, task.lo, task.hi, pivot, cmp);
        SplitMode child = task.mode;
        if (task.mode == SplitMode::Hybrid && split.eq > params.gamma) {
          child = SplitMode::ThreeWay;
          if (stats) ++stats->three_way_switches;
        }
        if (stats) stats->max_eq = std::max<std::uint64_t>(stats->max_eq, split.eq);
        left = {task.lo, split.left_end, child};
        right = {split.right_begin, task.hi, child};
      }

      if (left.hi - left.lo < right.hi - right.lo) std::swap(left, right);
      pending.push_back(left);
      task = right;
    }
  }
}

template <typename T, typename Cmp>
void qsort_hyb(std::span<T> buf, Cmp&& cmp, const QuickParams& params = quick_presets::hyb2(),
               QuickStats* stats = nullptr) {
  QuickParams p = params;
  p.mode = SplitMode::Hybrid;
  quicksort(buf, cmp, p, stats);
}

template <typename T, typename Cmp>
void qsort_2way(std::span<T> buf, Cmp&& cmp, const QuickParams& params = quick_presets::two_way()) {
  QuickParams p = params;
  p.mode = SplitMode::TwoWay;
  quicksort(buf, cmp, p);
}

template <typename T, typename Cmp>
void qsort_3way(std::span<T> buf, Cmp&& cmp, const QuickParams& params = quick_presets::three_way()) {
  QuickParams p = params;
  p.mode = SplitMode::ThreeWay;
  quicksort(buf, cmp, p);
}

/// Bentley and McIlroy's parameters; no sortedness check.
template <typename T, typename Cmp>
void bm_qsort(std::span<T> buf, Cmp&& cmp) {
  quicksort(buf, cmp, quick_presets::bentley_mcilroy());
}

/// 2-way quicksort with median-of-3 pivots and insertion sort for ranges of
/// at most 32 elements. Once 2 * floor(log2 n) levels are used up, the
/// remaining range is heapsorted.
template <typename T, typename Cmp>
void introsort(std::span<T> buf, Cmp&& cmp, QuickStats* stats = nullptr) {
  constexpr std::size_t cutoff = 32;
  const std::size_t n = buf.size();
  if (n < 2) return;
  struct Task {
    std::size_t lo, hi, depth;
  };
  std::vector<Task> pending;
  pending.push_back({0, n, 2 * static_cast<std::size_t>(std::bit_width(n) - 1)});

  while (!pending.empty()) {
    Task task = pending.back();
    pending.pop_back();
    for (;;) {
      const std::size_t len = task.hi - task.lo;
      if (len <= cutoff) {
        insertion_sort(buf, task.lo, task.lo, task.hi, cmp, false);
        break;
      }
      if (task.depth == 0) {
        if (stats) ++stats->heapsort_fallbacks;
        heapsort(buf.subspan(task.lo, len), cmp);
        break;
      }
      const T pivot = pick_pivot3(std::span<const T>(buf), task.lo, task.hi, cmp);
      if (stats) ++stats->partitions;
      const auto split = partition_hoare(buf, task.lo, task.hi, pivot, cmp);
      Task left{task.lo, split.left_end, task.depth - 1};
      Task right{split.right_begin, task.hi, task.depth - 1};
      if (left.hi - left.lo < right.hi - right.lo) std::swap(left, right);
      pending.push_back(left);
      task = right;
    }
  }
}

}  // namespace sortrace
