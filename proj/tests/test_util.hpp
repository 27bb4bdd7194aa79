#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "sortrace/core.hpp"

namespace sortrace::testing {

/// Key plus input position. Ordered by key only, so sorts see ties.
struct Tagged {
  std::int64_t key = 0;
  std::int64_t tag = 0;
  friend bool operator==(const Tagged&, const Tagged&) = default;
};

inline int compare(const Tagged& a, const Tagged& b) noexcept { return (a.key > b.key) - (a.key < b.key); }

/// Counts copies and moves, to observe merges that should not touch data.
struct Counted {
  std::int64_t key = 0;
  static inline std::uint64_t transfers = 0;

  Counted() = default;
  explicit Counted(std::int64_t k) : key(k) {}
  Counted(const Counted& o) : key(o.key) { ++transfers; }
  Counted(Counted&& o) noexcept : key(o.key) { ++transfers; }
  Counted& operator=(const Counted& o) {
    key = o.key;
    ++transfers;
    return *this;
  }
  Counted& operator=(Counted&& o) noexcept {
    key = o.key;
    ++transfers;
    return *this;
  }
};

inline int compare(const Counted& a, const Counted& b) noexcept { return (a.key > b.key) - (a.key < b.key); }

inline std::vector<std::int64_t> iota(std::size_t n, std::int64_t first = 0) {
  std::vector<std::int64_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = first + static_cast<std::int64_t>(i);
  return v;
}

inline std::vector<std::int64_t> reversed(std::size_t n) {
  std::vector<std::int64_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int64_t>(n - i);
  return v;
}

/// Keys drawn from [0, distinct), tagged with their input position.
inline std::vector<Tagged> tagged_random(std::size_t n, std::int64_t distinct, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Tagged> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = {static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(distinct)), static_cast<std::int64_t>(i)};
  }
  return v;
}

/// Sorted by key and, within equal keys, by ascending tag.
inline bool stably_sorted(std::span<const Tagged> v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i - 1].key > v[i].key) return false;
    if (v[i - 1].key == v[i].key && v[i - 1].tag > v[i].tag) return false;
  }
  return true;
}

}  // namespace sortrace::testing
