#pragma once

// Reference competitors: heapsort, shellsort and plain insertion sort.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sortrace/core.hpp"

namespace sortrace {

namespace detail {

template <typename T, typename Cmp>
void sift_down(std::span<T> heap, std::size_t root, Cmp& cmp) {
  const std::size_t n = heap.size();
  T value = std::move(heap[root]);
  std::size_t hole = root;
  for (std::size_t child = 2 * hole + 1; child < n; child = 2 * hole + 1) {
    if (child + 1 < n && cmp(heap[child], heap[child + 1]) < 0) ++child;
    if (cmp(value, heap[child]) >= 0) break;
    heap[hole] = std::move(heap[child]);
    hole = child;
  }
  heap[hole] = std::move(value);
}

}  // namespace detail

/// Binary max-heap built by sift-down, then repeated extraction.
template <typename T, typename Cmp>
void heapsort(std::span<T> buf, Cmp&& cmp) {
  const std::size_t n = buf.size();
  if (n < 2) return;
  for (std::size_t root = n / 2; root-- > 0;) detail::sift_down(buf, root, cmp);
  for (std::size_t end = n - 1; end > 0; --end) {
    std::swap(buf[0], buf[end]);
    detail::sift_down(buf.first(end), 0, cmp);
  }
}

/// Ciura's gaps, continued by a factor of 2.25, largest first. Only gaps
/// below n are returned; the sequence always ends in 1.
inline std::vector<std::size_t> ciura_gaps(std::size_t n) {
  std::vector<std::size_t> gaps{1, 4, 10, 23, 57, 132, 301, 701, 1750};
  while (gaps.back() < n) {
    gaps.push_back(static_cast<std::size_t>(static_cast<double>(gaps.back()) * 2.25));
  }
  while (gaps.size() > 1 && gaps.back() >= n) gaps.pop_back();
  return {gaps.rbegin(), gaps.rend()};
}

/// Throws std::invalid_argument unless gaps is strictly decreasing and ends in 1.
inline void validate_gaps(std::span<const std::size_t> gaps) {
  if (gaps.empty() || gaps.back() != 1) {
    throw std::invalid_argument("shellsort: gap sequence must end in 1");
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    if (gaps[i] >= gaps[i - 1]) {
      throw std::invalid_argument("shellsort: gaps must be strictly decreasing, got " +
                                  std::to_string(gaps[i - 1]) + " then " + std::to_string(gaps[i]));
    }
  }
}

template <typename T, typename Cmp>
void shellsort(std::span<T> buf, Cmp&& cmp, std::span<const std::size_t> gaps) {
  validate_gaps(gaps);
  const std::size_t n = buf.size();
  for (std::size_t gap : gaps) {
    for (std::size_t i = gap; i < n; ++i) {
      T x = std::move(buf[i]);
      std::size_t j = i;
      while (j >= gap && cmp(buf[j - gap], x) > 0) {
        buf[j] = std::move(buf[j - gap]);
        j -= gap;
      }
      buf[j] = std::move(x);
    }
  }
}

template <typename T, typename Cmp>
void shellsort(std::span<T> buf, Cmp&& cmp) {
  const auto gaps = ciura_gaps(buf.size());
  shellsort(buf, cmp, std::span<const std::size_t>(gaps));
}

template <typename T, typename Cmp>
void insertion_sort_full(std::span<T> buf, Cmp&& cmp) {
  insertion_sort(buf, 0, 0, buf.size(), cmp, false);
}

}  // namespace sortrace
