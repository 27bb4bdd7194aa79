#pragma once

// Element types, the counting comparator, and the primitives every sort in
// the race shares. All ranges are half-open [lo, hi).

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <type_traits>
#include <utility>

namespace sortrace {

/// Multi-word list item. Compared lexicographically over all words.
template <std::size_t W>
struct Record {
  static_assert(W > 0);
  static constexpr std::size_t word_count = W;
  std::array<std::int64_t, W> words{};

  friend bool operator==(const Record&, const Record&) = default;
};

using Rec16 = Record<2>;
using Rec64 = Record<8>;
using Rec256 = Record<32>;
using Rec1024 = Record<128>;

enum class ElementKind { Int64, Float64, Record };

template <typename T>
struct element_traits;

template <>
struct element_traits<std::int64_t> {
  static constexpr ElementKind kind = ElementKind::Int64;
  static constexpr std::string_view name = "int64";
};

template <>
struct element_traits<double> {
  static constexpr ElementKind kind = ElementKind::Float64;
  static constexpr std::string_view name = "float64";
};

template <std::size_t W>
struct element_traits<Record<W>> {
  static constexpr ElementKind kind = ElementKind::Record;
  static constexpr std::string_view name = W == 2    ? "rec16"
                                           : W == 8  ? "rec64"
                                           : W == 32 ? "rec256"
                                           : W == 128 ? "rec1024"
                                                      : "record";
};

/// Three-way comparison: negative, zero or positive.
inline int compare(std::int64_t a, std::int64_t b) noexcept { return (a > b) - (a < b); }

// Keys are never NaN, so this is a total order.
inline int compare(double a, double b) noexcept { return (a > b) - (a < b); }

template <std::size_t W>
int compare(const Record<W>& a, const Record<W>& b) noexcept {
  for (std::size_t i = 0; i < W; ++i) {
    if (a.words[i] != b.words[i]) return a.words[i] < b.words[i] ? -1 : 1;
  }
  return 0;
}

/// The natural order of an element type.
struct NaturalOrder {
  template <typename T>
  int operator()(const T& a, const T& b) const noexcept {
    return compare(a, b);
  }
};

/// A callable returning a three-way result for two elements. Every sort in
/// this library is written against this, never against operator<.
template <typename C, typename T>
concept ThreeWayOrder = requires(C c, const T& a, const T& b) {
  { c(a, b) } -> std::convertible_to<int>;
};

/// Wraps an order and tallies every invocation.
template <typename Order = NaturalOrder>
class CountingComparator {
 public:
  CountingComparator() = default;
  explicit CountingComparator(Order order) : order_(std::move(order)) {}

  template <typename T>
  int operator()(const T& a, const T& b) {
    ++count_;
    return order_(a, b);
  }

  std::uint64_t count() const noexcept { return count_; }
  void reset() noexcept { count_ = 0; }

  /// The wrapped order; calls through it are not counted.
  const Order& order() const noexcept { return order_; }

 private:
  Order order_{};
  std::uint64_t count_ = 0;
};

namespace detail {

template <typename C>
concept HasUncountedOrder = requires(const C& c) { c.order(); };

// Diagnostics must not disturb comparison counts.
template <typename Cmp>
decltype(auto) uncounted(Cmp& cmp) {
  if constexpr (HasUncountedOrder<std::remove_cvref_t<Cmp>>) {
    return cmp.order();
  } else {
    return (cmp);
  }
}

}  // namespace detail

/// Checks buf[lo, hi) for non-decreasing order, stopping at the first descent.
template <typename T, typename Cmp>
bool is_sorted(std::span<const T> buf, std::size_t lo, std::size_t hi, Cmp&& cmp) {
  for (std::size_t i = lo + 1; i < hi; ++i) {
    if (cmp(buf[i - 1], buf[i]) > 0) return false;
  }
  return true;
}

template <typename T, typename Cmp>
bool is_sorted(std::span<T> buf, std::size_t lo, std::size_t hi, Cmp&& cmp) {
  return is_sorted(std::span<const T>(buf), lo, hi, cmp);
}

template <typename T>
void reverse(std::span<T> buf, std::size_t lo, std::size_t hi) noexcept {
  std::reverse(buf.begin() + lo, buf.begin() + hi);
}

template <typename T>
void swap(std::span<T> buf, std::size_t i, std::size_t j) noexcept {
  using std::swap;
  swap(buf[i], buf[j]);
}

/// Stable insertion sort of buf[lo, hi) given that buf[lo, sorted_end) is
/// already sorted. With use_binary the insert position is found by binary
/// search (upper bound, so equal elements keep their order) and the shift
/// costs no comparisons.
template <typename T, typename Cmp>
void insertion_sort(std::span<T> buf, std::size_t lo, std::size_t sorted_end, std::size_t hi,
                    Cmp&& cmp, bool use_binary = false) {
  for (std::size_t i = std::max(sorted_end, lo); i < hi; ++i) {
    if (use_binary) {
      std::size_t left = lo;
      std::size_t right = i;
      while (left < right) {
        std::size_t mid = left + (right - left) / 2;
        if (cmp(buf[i], buf[mid]) < 0) {
          right = mid;
        } else {
          left = mid + 1;
        }
      }
      std::rotate(buf.begin() + left, buf.begin() + i, buf.begin() + i + 1);
    } else {
      T x = std::move(buf[i]);
      std::size_t j = i;
      while (j > lo && cmp(buf[j - 1], x) > 0) {
        buf[j] = std::move(buf[j - 1]);
        --j;
      }
      buf[j] = std::move(x);
    }
  }
}

}  // namespace sortrace
