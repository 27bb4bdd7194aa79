#pragma once

// Presortedness: inversions, ascending runs, monotone segments and rank.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "sortrace/core.hpp"

namespace sortrace {

struct PresortReport {
  std::uint64_t inv = 0;
  std::uint64_t run = 0;
  std::uint64_t mono = 0;
  std::size_t n = 0;
};

namespace detail {

// Merge sort over a copy, counting pairs (i < j) with a[i] > a[j].
template <typename T, typename Cmp>
std::uint64_t count_inversions(std::span<T> a, std::span<T> tmp, Cmp& cmp) {
  const std::size_t n = a.size();
  if (n < 2) return 0;
  const std::size_t mid = n / 2;
  std::uint64_t inv = count_inversions(a.first(mid), tmp.first(mid), cmp) +
                      count_inversions(a.subspan(mid), tmp.subspan(mid), cmp);
  std::size_t i = 0, j = mid, out = 0;
  while (i < mid && j < n) {
    if (cmp(a[j], a[i]) < 0) {
      inv += mid - i;
      tmp[out++] = a[j++];
    } else {
      tmp[out++] = a[i++];
    }
  }
  while (i < mid) tmp[out++] = a[i++];
  while (j < n) tmp[out++] = a[j++];
  std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(n), a.begin());
  return inv;
}

}  // namespace detail

/// Exact inversion count in O(n log n); the buffer is not modified.
template <typename T, typename Cmp>
std::uint64_t inversions(std::span<const T> buf, Cmp&& cmp) {
  std::vector<T> work(buf.begin(), buf.end());
  std::vector<T> tmp(buf.size());
  return detail::count_inversions(std::span<T>(work), std::span<T>(tmp), cmp);
}

/// Descents plus one; 0 for an empty sequence.
template <typename T, typename Cmp>
std::uint64_t runs(std::span<const T> buf, Cmp&& cmp) {
  if (buf.empty()) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i < buf.size(); ++i) {
    if (cmp(buf[i - 1], buf[i]) > 0) ++r;
  }
  return r;
}

/// Minimal number of contiguous non-decreasing or non-increasing segments.
///
/// Greedy: each segment is extended as far as possible. A segment's
/// direction stays open across equal neighbours and is fixed by the first
/// strict step; a step against the fixed direction starts a new segment.
/// Since any piece of a monotone segment is monotone, maximal greedy
/// extension is optimal.
template <typename T, typename Cmp>
std::uint64_t mono(std::span<const T> buf, Cmp&& cmp) {
  if (buf.empty()) return 0;
  std::uint64_t segments = 1;
  int direction = 0;  // 0 open, +1 ascending, -1 descending
  for (std::size_t i = 1; i < buf.size(); ++i) {
    const int c = cmp(buf[i - 1], buf[i]);
    if (c == 0) continue;
    const int step = c < 0 ? 1 : -1;
    if (direction == 0) {
      direction = step;
    } else if (direction != step) {
      ++segments;
      direction = 0;
    }
  }
  return segments;
}

/// rank[i] is the position of buf[i] after a stable sort.
template <typename T, typename Cmp>
std::vector<std::size_t> rank(std::span<const T> buf, Cmp&& cmp) {
  std::vector<std::size_t> order(buf.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cmp(buf[a], buf[b]) < 0; });
  std::vector<std::size_t> r(buf.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) r[order[pos]] = pos;
  return r;
}

/// max over i of |rank(a_i) - i|.
template <typename T, typename Cmp>
std::size_t max_rank_displacement(std::span<const T> buf, Cmp&& cmp) {
  const auto r = rank(buf, cmp);
  std::size_t worst = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    worst = std::max(worst, r[i] > i ? r[i] - i : i - r[i]);
  }
  return worst;
}

template <typename T, typename Cmp>
PresortReport presortedness(std::span<const T> buf, Cmp&& cmp) {
  return {inversions(buf, cmp), runs(buf, cmp), mono(buf, cmp), buf.size()};
}

}  // namespace sortrace
