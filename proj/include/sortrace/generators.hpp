#pragma once

// Seeded construction of the twelve input classes. Every buffer is a pure
// function of its InstanceSpec.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sortrace/core.hpp"

namespace sortrace {

enum class InputClass {
  RandomInt,
  RandomDouble,
  RandomRec16,
  RandomRec64,
  RandomRec256,
  KLimited,
  KEqualTeeth,
  KEvenTeeth,
  KSharpTeeth,
  KShuffledTeeth,
  KDistance,
  KExchange,
};

inline constexpr std::array<InputClass, 12> all_input_classes = {
    InputClass::RandomInt,      InputClass::RandomDouble, InputClass::RandomRec16,
    InputClass::RandomRec64,    InputClass::RandomRec256, InputClass::KLimited,
    InputClass::KEqualTeeth,    InputClass::KEvenTeeth,   InputClass::KSharpTeeth,
    InputClass::KShuffledTeeth, InputClass::KDistance,    InputClass::KExchange,
};

inline constexpr std::string_view class_name(InputClass c) {
  switch (c) {
    case InputClass::RandomInt: return "random_int";
    case InputClass::RandomDouble: return "random_double";
    case InputClass::RandomRec16: return "random_rec16";
    case InputClass::RandomRec64: return "random_rec64";
    case InputClass::RandomRec256: return "random_rec256";
    case InputClass::KLimited: return "k_limited";
    case InputClass::KEqualTeeth: return "k_equal_teeth";
    case InputClass::KEvenTeeth: return "k_even_teeth";
    case InputClass::KSharpTeeth: return "k_sharp_teeth";
    case InputClass::KShuffledTeeth: return "k_shuffled_teeth";
    case InputClass::KDistance: return "k_distance";
    case InputClass::KExchange: return "k_exchange";
  }
  return "unknown";
}

inline std::optional<InputClass> parse_class(std::string_view name) {
  for (InputClass c : all_input_classes) {
    if (class_name(c) == name) return c;
  }
  return std::nullopt;
}

/// False for the five random classes, which ignore k.
inline constexpr bool uses_k(InputClass c) {
  switch (c) {
    case InputClass::RandomInt:
    case InputClass::RandomDouble:
    case InputClass::RandomRec16:
    case InputClass::RandomRec64:
    case InputClass::RandomRec256:
      return false;
    default:
      return true;
  }
}

inline constexpr bool is_teeth(InputClass c) {
  return c == InputClass::KEqualTeeth || c == InputClass::KEvenTeeth ||
         c == InputClass::KSharpTeeth || c == InputClass::KShuffledTeeth;
}

inline constexpr std::string_view element_kind_name(InputClass c) {
  switch (c) {
    case InputClass::RandomDouble: return element_traits<double>::name;
    case InputClass::RandomRec16: return element_traits<Rec16>::name;
    case InputClass::RandomRec64: return element_traits<Rec64>::name;
    case InputClass::RandomRec256: return element_traits<Rec256>::name;
    default: return element_traits<std::int64_t>::name;
  }
}

struct InstanceSpec {
  InputClass cls = InputClass::RandomInt;
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument when a teeth class is asked for empty or
/// more-than-n sections.
inline void validate(const InstanceSpec& spec) {
  if (is_teeth(spec.cls) && spec.n > 0 && (spec.k < 1 || spec.k > spec.n)) {
    throw std::invalid_argument(std::string(class_name(spec.cls)) + ": k must be in [1, n], got k=" +
                                std::to_string(spec.k) + " n=" + std::to_string(spec.n));
  }
}

/// round(x^p), weakly monotone in x. The result must stay below 2^63.
inline std::int64_t blow_up(std::uint64_t x, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("blow_up: exponent must be positive");
  auto raw = [p](std::uint64_t v) -> std::int64_t {
    if (v == 0) return 0;
    double r = std::round(std::pow(static_cast<double>(v), p));
    if (!(r < 0x1p63)) {
      throw std::logic_error("blow_up: " + std::to_string(v) + "^" + std::to_string(p) +
                             " overflows 63 bits");
    }
    return static_cast<std::int64_t>(r);
  };
  std::int64_t y = raw(x);
  if (x > 1) y = std::max(y, raw(x - 1));
  return y;
}

namespace detail {

/// Unbiased draw from [0, bound) by rejection. Uses only raw engine output
/// so sequences do not depend on the standard library's distributions.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

template <typename T>
void shuffle(std::span<T> v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = uniform_below(rng, i);
    std::swap(v[i - 1], v[j]);
  }
}

// Spreads pre-image values 0..max over a 60-bit range.
inline void blow_up_all(std::vector<std::int64_t>& keys, std::uint64_t max_value) {
  if (max_value <= 1) return;
  const double p = 60.0 / std::log2(static_cast<double>(max_value));
  for (auto& key : keys) key = blow_up(static_cast<std::uint64_t>(key), p);
}

inline std::size_t section_begin(std::size_t n, std::uint64_t k, std::uint64_t i) {
  return static_cast<std::size_t>(i * n / k);
}

// Ramp 1..len in each of k sections; even-indexed (first, third, ...)
// sections reversed when reverse_odd is set.
inline std::vector<std::int64_t> teeth(std::size_t n, std::uint64_t k, bool reverse_odd) {
  std::vector<std::int64_t> keys(n);
  for (std::uint64_t s = 0; s < k; ++s) {
    std::size_t b = section_begin(n, k, s);
    std::size_t e = section_begin(n, k, s + 1);
    for (std::size_t i = b; i < e; ++i) keys[i] = static_cast<std::int64_t>(i - b + 1);
    if (reverse_odd && s % 2 == 0) std::reverse(keys.begin() + b, keys.begin() + e);
  }
  return keys;
}

// Sorted 1..n with the first, third, ... of k sections reversed.
inline std::vector<std::int64_t> sharp_teeth(std::size_t n, std::uint64_t k) {
  std::vector<std::int64_t> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = static_cast<std::int64_t>(i + 1);
  for (std::uint64_t s = 0; s < k; s += 2) {
    std::reverse(keys.begin() + section_begin(n, k, s), keys.begin() + section_begin(n, k, s + 1));
  }
  return keys;
}

inline std::vector<std::int64_t> iota_keys(std::size_t n) {
  std::vector<std::int64_t> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = static_cast<std::int64_t>(i + 1);
  return keys;
}

template <std::size_t W>
std::vector<Record<W>> random_records(std::size_t n, std::mt19937_64& rng) {
  std::vector<Record<W>> out(n);
  for (auto& r : out) {
    for (auto& w : r.words) w = static_cast<std::int64_t>(rng());
  }
  return out;
}

}  // namespace detail

/// Integer keys of a class, before they are wrapped into an Instance.
/// Only valid for classes whose element kind is int64.
inline std::vector<std::int64_t> generate_keys(const InstanceSpec& spec) {
  validate(spec);
  const std::size_t n = spec.n;
  const std::uint64_t k = spec.k;
  std::mt19937_64 rng(spec.seed);
  std::vector<std::int64_t> keys;

  switch (spec.cls) {
    case InputClass::RandomInt:
      keys.resize(n);
      for (auto& key : keys) key = static_cast<std::int64_t>(rng());
      break;

    case InputClass::KLimited:
      keys.assign(n, 0);
      if (k == 0) break;
      for (auto& key : keys) {
        std::uint64_t v = k >= 64 ? rng() : rng() & ((std::uint64_t{1} << k) - 1);
        key = k < 60 ? blow_up(v + 1, 60.0 / static_cast<double>(k)) : static_cast<std::int64_t>(v);
      }
      break;

    case InputClass::KEqualTeeth:
    case InputClass::KEvenTeeth: {
      if (n == 0) break;
      keys = detail::teeth(n, k, spec.cls == InputClass::KEvenTeeth);
      // Sections differ by at most one when k does not divide n; the largest
      // ramp value sets the exponent so nothing exceeds 60 bits.
      detail::blow_up_all(keys, (n + k - 1) / k);
      break;
    }

    case InputClass::KSharpTeeth:
      if (n == 0) break;
      keys = detail::sharp_teeth(n, k);
      detail::blow_up_all(keys, n);
      break;

    case InputClass::KShuffledTeeth: {
      if (n == 0) break;
      auto sections = detail::sharp_teeth(n, k);
      detail::blow_up_all(sections, n);
      // A uniformly shuffled multiset of section labels is a uniform
      // interleaving that keeps each section's internal order.
      std::vector<std::uint32_t> labels(n);
      for (std::uint64_t s = 0; s < k; ++s) {
        for (std::size_t i = detail::section_begin(n, k, s); i < detail::section_begin(n, k, s + 1); ++i) {
          labels[i] = static_cast<std::uint32_t>(s);
        }
      }
      detail::shuffle(std::span(labels), rng);
      std::vector<std::size_t> cursor(k);
      for (std::uint64_t s = 0; s < k; ++s) cursor[s] = detail::section_begin(n, k, s);
      keys.resize(n);
      for (std::size_t i = 0; i < n; ++i) keys[i] = sections[cursor[labels[i]]++];
      break;
    }

    case InputClass::KDistance: {
      keys = detail::iota_keys(n);
      const std::size_t block = k >= n ? n : static_cast<std::size_t>(k) + 1;
      for (std::size_t b = 0; block > 1 && b < n; b += block) {
        detail::shuffle(std::span(keys).subspan(b, std::min(block, n - b)), rng);
      }
      detail::blow_up_all(keys, n);
      break;
    }

    case InputClass::KExchange:
      keys = detail::iota_keys(n);
      detail::blow_up_all(keys, n);
      for (std::uint64_t e = 0; n > 0 && e < k; ++e) {
        std::size_t i = detail::uniform_below(rng, n);
        std::size_t j = detail::uniform_below(rng, n);
        std::swap(keys[i], keys[j]);
      }
      break;

    default:
      throw std::invalid_argument(std::string(class_name(spec.cls)) + " has no integer keys");
  }
  return keys;
}

using ElementBuffer = std::variant<std::vector<std::int64_t>, std::vector<double>, std::vector<Rec16>,
                                   std::vector<Rec64>, std::vector<Rec256>>;

struct Instance {
  InstanceSpec spec;
  ElementBuffer buf;

  std::size_t size() const {
    return std::visit([](const auto& v) { return v.size(); }, buf);
  }
};

inline Instance gen_instance(const InstanceSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  switch (spec.cls) {
    case InputClass::RandomDouble: {
      std::vector<double> v(spec.n);
      for (auto& x : v) x = detail::uniform_unit(rng);
      return {spec, std::move(v)};
    }
    case InputClass::RandomRec16: return {spec, detail::random_records<2>(spec.n, rng)};
    case InputClass::RandomRec64: return {spec, detail::random_records<8>(spec.n, rng)};
    case InputClass::RandomRec256: return {spec, detail::random_records<32>(spec.n, rng)};
    default: return {spec, generate_keys(spec)};
  }
}

// Text form: "# class n k seed kind", then one key per line. Records are
// written as word 0 only and read back as int64 keys.

inline void write_instance(std::ostream& os, const Instance& inst) {
  os << "# " << class_name(inst.spec.cls) << ' ' << inst.spec.n << ' ' << inst.spec.k << ' '
     << inst.spec.seed << ' ' << element_kind_name(inst.spec.cls) << '\n';
  std::visit(
      [&os](const auto& v) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        if constexpr (element_traits<T>::kind == ElementKind::Record) {
          os << "# record keys: word 0 only\n";
          for (const auto& r : v) os << r.words[0] << '\n';
        } else if constexpr (std::is_same_v<T, double>) {
          char text[32];
          for (double x : v) {
            auto res = std::to_chars(text, text + sizeof(text), x);
            os << std::string_view(text, static_cast<std::size_t>(res.ptr - text)) << '\n';
          }
        } else {
          for (auto x : v) os << x << '\n';
        }
      },
      inst.buf);
}

/// Parses the text form back. Throws std::invalid_argument on malformed input.
inline Instance read_instance(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0) {
    throw std::invalid_argument("instance file: missing '# class n k seed kind' header");
  }
  std::istringstream header(line.substr(2));
  std::string cls_name, kind;
  InstanceSpec spec;
  if (!(header >> cls_name >> spec.n >> spec.k >> spec.seed >> kind)) {
    throw std::invalid_argument("instance file: malformed header: " + line);
  }
  auto cls = parse_class(cls_name);
  if (!cls) throw std::invalid_argument("instance file: unknown class " + cls_name);
  spec.cls = *cls;

  auto parse = [](std::string_view text, auto& out) {
    auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
      throw std::invalid_argument("instance file: bad key '" + std::string(text) + "'");
    }
  };

  std::vector<std::int64_t> ints;
  std::vector<double> doubles;
  const bool is_double = kind == element_traits<double>::name;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (is_double) {
      parse(line, doubles.emplace_back());
    } else {
      parse(line, ints.emplace_back());
    }
  }
  const std::size_t count = is_double ? doubles.size() : ints.size();
  if (count != spec.n) {
    throw std::invalid_argument("instance file: header says n=" + std::to_string(spec.n) + " but found " +
                                std::to_string(count) + " keys");
  }
  if (is_double) return {spec, std::move(doubles)};
  return {spec, std::move(ints)};
}

}  // namespace sortrace
