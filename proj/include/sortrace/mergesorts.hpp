#pragma once

// Natural mergesort family: run detection with stable reversal, trimmed
// galloping merges, and three ways of deciding which runs to merge.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sortrace/core.hpp"

namespace sortrace {

enum class RunStrategy {
  Rounds,    // pair up all runs, merge, repeat
  HalfDown,  // each pending run at most half its predecessor
  TimStack,  // X > Y + Z and Y > Z on the top three
};

struct MergeConfig {
  bool reverse_runs = true;
  bool extend_minrun = true;
  std::size_t minrun = 32;
  bool adjust_minrun = false;
  bool binary_insert = false;
  RunStrategy strategy = RunStrategy::HalfDown;
  bool trim = true;
  bool gallop = true;
  std::size_t gallop_threshold = 7;

  void validate() const {
    if (minrun < 2) throw std::invalid_argument("MergeConfig: minrun must be >= 2");
    if (gallop_threshold < 1) throw std::invalid_argument("MergeConfig: gallop_threshold must be >= 1");
  }
};

namespace merge_presets {

inline MergeConfig mer2() {
  MergeConfig c;
  c.reverse_runs = false;
  c.strategy = RunStrategy::Rounds;
  return c;
}

inline MergeConfig mer3() {
  MergeConfig c;
  c.extend_minrun = false;
  c.strategy = RunStrategy::Rounds;
  return c;
}

inline MergeConfig mer4() {
  MergeConfig c;
  c.strategy = RunStrategy::Rounds;
  return c;
}

inline MergeConfig mer5() {
  MergeConfig c;
  c.extend_minrun = false;
  return c;
}

inline MergeConfig mer6() { return MergeConfig{}; }

inline MergeConfig timstack() {
  MergeConfig c;
  c.adjust_minrun = true;
  c.binary_insert = true;
  c.strategy = RunStrategy::TimStack;
  return c;
}

}  // namespace merge_presets

/// Pending runs as boundaries: run i spans [boundaries[i], boundaries[i+1]).
struct RunList {
  std::vector<std::size_t> boundaries{0};

  std::size_t run_count() const { return boundaries.size() - 1; }
  std::size_t length(std::size_t i) const { return boundaries[i + 1] - boundaries[i]; }
  std::size_t end() const { return boundaries.back(); }
};

/// Timsort's rule: a minimum run length in [minrun/2, minrun] such that
/// n / result is a power of two or just under one.
inline std::size_t adjusted_minrun(std::size_t n, std::size_t minrun) {
  std::size_t r = 0;
  while (n >= minrun) {
    r |= n & 1;
    n >>= 1;
  }
  return std::max<std::size_t>(n + r, 2);
}

namespace detail {

// Number of leading elements of s satisfying pred, where pred holds on a
// prefix. Exponential probe from the front, then binary search.
template <typename T, typename Pred>
std::size_t gallop_leading(std::span<const T> s, Pred pred) {
  std::size_t lo = 0;  // pred known true below lo
  std::size_t probe = 0;
  std::size_t step = 1;
  while (probe < s.size() && pred(s[probe])) {
    lo = probe + 1;
    probe += step;
    step <<= 1;
  }
  std::size_t hi = std::min(probe, s.size());  // pred false at hi unless hi == size
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (pred(s[mid])) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Number of trailing elements of s satisfying pred, where pred holds on a
// suffix.
template <typename T, typename Pred>
std::size_t gallop_trailing(std::span<const T> s, Pred pred) {
  const std::size_t n = s.size();
  std::size_t count = 0;  // pred known true for the last `count`
  std::size_t probe = 0;  // distance from the back
  std::size_t step = 1;
  while (probe < n && pred(s[n - 1 - probe])) {
    count = probe + 1;
    probe += step;
    step <<= 1;
  }
  std::size_t limit = std::min(probe, n);
  while (count < limit) {
    std::size_t mid = count + (limit - count) / 2;
    if (pred(s[n - 1 - mid])) {
      count = mid + 1;
    } else {
      limit = mid;
    }
  }
  return count;
}

// buf[lo, mid) copied to scratch, merged forward into buf[lo, hi).
template <typename T, typename Cmp>
void merge_low(std::span<T> buf, std::size_t lo, std::size_t mid, std::size_t hi, Cmp& cmp,
               const MergeConfig& cfg, std::span<T> scratch) {
  const std::size_t na = mid - lo;
  std::move(buf.begin() + lo, buf.begin() + mid, scratch.begin());
  std::span<const T> a = scratch.first(na);
  std::size_t i = 0, j = mid, dest = lo;
  std::size_t a_wins = 0, b_wins = 0;
  const std::size_t threshold = cfg.gallop_threshold;

  while (i < na && j < hi) {
    if (cfg.gallop && (a_wins >= threshold || b_wins >= threshold)) {
      // Galloping: locate whole blocks instead of single elements.
      std::size_t found_a = 0, found_b = 0;
      do {
        const T& b_head = buf[j];
        found_a = gallop_leading(a.subspan(i), [&](const T& x) { return cmp(x, b_head) <= 0; });
        std::move(scratch.begin() + i, scratch.begin() + i + found_a, buf.begin() + dest);
        dest += found_a;
        i += found_a;
        if (i == na) break;
        buf[dest++] = std::move(buf[j++]);
        if (j == hi) break;

        const T& a_head = a[i];
        found_b = gallop_leading(std::span<const T>(buf.subspan(j, hi - j)),
                                 [&](const T& x) { return cmp(x, a_head) < 0; });
        std::move(buf.begin() + j, buf.begin() + j + found_b, buf.begin() + dest);
        dest += found_b;
        j += found_b;
        buf[dest++] = std::move(scratch[i++]);
        if (i == na || j == hi) break;
      } while (found_a >= threshold || found_b >= threshold);
      a_wins = b_wins = 0;
      continue;
    }
    if (cmp(buf[j], a[i]) < 0) {
      buf[dest++] = std::move(buf[j++]);
      ++b_wins;
      a_wins = 0;
    } else {
      buf[dest++] = std::move(scratch[i++]);
      ++a_wins;
      b_wins = 0;
    }
  }
  std::move(scratch.begin() + i, scratch.begin() + na, buf.begin() + dest);
}

// buf[mid, hi) copied to scratch, merged backward into buf[lo, hi).
template <typename T, typename Cmp>
void merge_high(std::span<T> buf, std::size_t lo, std::size_t mid, std::size_t hi, Cmp& cmp,
                const MergeConfig& cfg, std::span<T> scratch) {
  const std::size_t nb = hi - mid;
  std::move(buf.begin() + mid, buf.begin() + hi, scratch.begin());
  std::span<const T> b = scratch.first(nb);
  // i and k count remaining elements of A (in buf) and B (in scratch).
  std::size_t i = mid, k = nb, dest = hi;
  std::size_t a_wins = 0, b_wins = 0;
  const std::size_t threshold = cfg.gallop_threshold;

  while (i > lo && k > 0) {
    if (cfg.gallop && (a_wins >= threshold || b_wins >= threshold)) {
      std::size_t found_a = 0, found_b = 0;
      do {
        const T& b_tail = b[k - 1];
        found_a = gallop_trailing(std::span<const T>(buf.subspan(lo, i - lo)),
                                  [&](const T& x) { return cmp(b_tail, x) < 0; });
        std::move_backward(buf.begin() + i - found_a, buf.begin() + i, buf.begin() + dest);
        dest -= found_a;
        i -= found_a;
        if (i == lo) break;
        buf[--dest] = std::move(scratch[--k]);
        if (k == 0) break;

        const T& a_tail = buf[i - 1];
        found_b = gallop_trailing(b.first(k), [&](const T& x) { return cmp(x, a_tail) >= 0; });
        std::move_backward(scratch.begin() + k - found_b, scratch.begin() + k, buf.begin() + dest);
        dest -= found_b;
        k -= found_b;
        buf[--dest] = std::move(buf[--i]);
        if (i == lo || k == 0) break;
      } while (found_a >= threshold || found_b >= threshold);
      a_wins = b_wins = 0;
      continue;
    }
    if (cmp(b[k - 1], buf[i - 1]) < 0) {
      buf[--dest] = std::move(buf[--i]);
      ++a_wins;
      b_wins = 0;
    } else {
      buf[--dest] = std::move(scratch[--k]);
      ++b_wins;
      a_wins = 0;
    }
  }
  std::move(scratch.begin(), scratch.begin() + k, buf.begin() + (dest - k));
}

}  // namespace detail

/// Stable merge of the sorted runs buf[lo, mid) and buf[mid, hi).
///
/// With trim, the prefix of A that is <= B's first element and the suffix
/// of B that is > A's last element are already in place and skip the merge.
/// Only the shorter remaining side is copied to scratch. With gallop, after
/// gallop_threshold consecutive wins by one side the merge switches to
/// exponential search for whole blocks.
template <typename T, typename Cmp>
void merge_adjacent(std::span<T> buf, std::size_t lo, std::size_t mid, std::size_t hi, Cmp&& cmp,
                    const MergeConfig& cfg, std::span<T> scratch) {
  if (lo == mid || mid == hi) return;
  if (cfg.trim) {
    if (cmp(buf[mid - 1], buf[mid]) <= 0) return;
    const T& b_first = buf[mid];
    lo += detail::gallop_leading(std::span<const T>(buf.subspan(lo, mid - lo)),
                                 [&](const T& x) { return cmp(x, b_first) <= 0; });
    const T& a_last = buf[mid - 1];
    hi -= detail::gallop_trailing(std::span<const T>(buf.subspan(mid, hi - mid)),
                                  [&](const T& x) { return cmp(x, a_last) > 0; });
  }
  const std::size_t need = std::min(mid - lo, hi - mid);
  if (scratch.size() < need) {
    throw std::logic_error("merge_adjacent: scratch holds " + std::to_string(scratch.size()) +
                           " elements, merge needs " + std::to_string(need));
  }
  if (mid - lo <= hi - mid) {
    detail::merge_low(buf, lo, mid, hi, cmp, cfg, scratch);
  } else {
    detail::merge_high(buf, lo, mid, hi, cmp, cfg, scratch);
  }
}

/// Finds the natural run starting at `start` and returns its end.
///
/// The ascending scan stops at the first descent. If reverse_runs is on and
/// the run is still shorter than minrun, the descending stretch starting
/// just before that descent is scanned as well. Blocks of equal elements
/// inside it are reversed first so the final reversal leaves them in input
/// order. When the ascending part has at least two elements, the reversed
/// stretch is merged onto it; otherwise the whole prefix is reversed.
template <typename T, typename Cmp>
std::size_t find_run(std::span<T> buf, std::size_t start, std::size_t end, Cmp&& cmp,
                     const MergeConfig& cfg, std::span<T> scratch) {
  if (start + 1 >= end) return end;
  std::size_t next = start + 1;
  while (next < end && cmp(buf[next - 1], buf[next]) <= 0) ++next;
  if (next == end || !cfg.reverse_runs || start + cfg.minrun <= next) return next;

  // buf[next - 1] > buf[next]: descending stretch is buf[next - 1, j).
  std::size_t j = next + 1;
  std::size_t equal = 0;
  while (j < end) {
    const int c = cmp(buf[j - 1], buf[j]);
    if (c < 0) break;
    if (c == 0) {
      ++equal;
    } else if (equal > 0) {
      reverse(buf, j - 1 - equal, j);
      equal = 0;
    }
    ++j;
  }
  if (equal > 0) reverse(buf, j - 1 - equal, j);

  if (next > start + 1) {
    reverse(buf, next, j);
    merge_adjacent(buf, start, next, j, cmp, cfg, scratch);
  } else {
    reverse(buf, start, j);
  }
  return j;
}

/// Records a run ending at new_end and restores the strategy's invariant.
template <typename T, typename Cmp>
void push_run(RunList& runs, std::size_t new_end, std::span<T> buf, Cmp&& cmp, const MergeConfig& cfg,
              std::span<T> scratch) {
  auto& b = runs.boundaries;
  b.push_back(new_end);

  // Merge runs at index at and at + 1 of the pending list.
  auto merge_at = [&](std::size_t at) {
    merge_adjacent(buf, b[at], b[at + 1], b[at + 2], cmp, cfg, scratch);
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(at) + 1);
  };

  switch (cfg.strategy) {
    case RunStrategy::Rounds:
      break;
    case RunStrategy::HalfDown:
      while (runs.run_count() >= 2) {
        const std::size_t top = runs.run_count() - 1;
        if (runs.length(top) <= runs.length(top - 1) >> 1) break;
        merge_at(top - 1);
      }
      break;
    case RunStrategy::TimStack:
      while (runs.run_count() >= 2) {
        std::size_t at = runs.run_count() - 2;  // Y; Z = at + 1, X = at - 1
        const bool x_too_small = at >= 1 && runs.length(at - 1) <= runs.length(at) + runs.length(at + 1);
        const bool w_too_small =
            at >= 2 && runs.length(at - 2) <= runs.length(at - 1) + runs.length(at);
        if (x_too_small || w_too_small) {
          if (runs.length(at - 1) < runs.length(at + 1)) --at;
        } else if (runs.length(at) > runs.length(at + 1)) {
          break;
        }
        merge_at(at);
      }
      break;
  }
}

/// Merges every pending run into one.
template <typename T, typename Cmp>
void collapse_runs(RunList& runs, std::span<T> buf, Cmp&& cmp, const MergeConfig& cfg,
                   std::span<T> scratch) {
  auto& b = runs.boundaries;
  if (cfg.strategy == RunStrategy::Rounds) {
    // Left-to-right pairs each round.
    while (runs.run_count() > 1) {
      std::vector<std::size_t> next{b[0]};
      for (std::size_t r = 0; r < runs.run_count(); r += 2) {
        if (r + 1 < runs.run_count()) {
          merge_adjacent(buf, b[r], b[r + 1], b[r + 2], cmp, cfg, scratch);
          next.push_back(b[r + 2]);
        } else {
          next.push_back(b[r + 1]);
        }
      }
      b = std::move(next);
    }
    return;
  }
  while (runs.run_count() > 1) {
    std::size_t at = runs.run_count() - 2;
    if (cfg.strategy == RunStrategy::TimStack && at >= 1 && runs.length(at - 1) < runs.length(at + 1)) {
      --at;
    }
    merge_adjacent(buf, b[at], b[at + 1], b[at + 2], cmp, cfg, scratch);
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(at) + 1);
  }
}

/// Stable natural mergesort configured by cfg.
template <typename T, typename Cmp>
void mergesort(std::span<T> buf, Cmp&& cmp, const MergeConfig& cfg) {
  cfg.validate();
  const std::size_t n = buf.size();
  if (n < 2) return;

  MergeConfig run_cfg = cfg;
  if (cfg.adjust_minrun) run_cfg.minrun = adjusted_minrun(n, cfg.minrun);

  std::vector<T> scratch_store(n / 2);
  std::span<T> scratch(scratch_store);
  RunList runs;
  if (cfg.strategy != RunStrategy::Rounds) runs.boundaries.reserve(64);

  std::size_t start = 0;
  while (start < n) {
    std::size_t end = find_run(buf, start, n, cmp, run_cfg, scratch);
    if (run_cfg.extend_minrun && end < n && end - start < run_cfg.minrun) {
      const std::size_t target = std::min(start + run_cfg.minrun, n);
      insertion_sort(buf, start, end, target, cmp, run_cfg.binary_insert);
      end = target;
      // The extended run keeps growing while the input stays ascending.
      while (end < n && cmp(buf[end - 1], buf[end]) <= 0) ++end;
    }
    push_run(runs, end, buf, cmp, run_cfg, scratch);
    start = end;
  }
  collapse_runs(runs, buf, cmp, run_cfg, scratch);
}

}  // namespace sortrace
