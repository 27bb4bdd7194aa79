#pragma once

// The race: every algorithm sorts copies of the same generated instances,
// is timed and verified, and has its comparisons counted.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "sortrace/baselines.hpp"
#include "sortrace/core.hpp"
#include "sortrace/generators.hpp"
#include "sortrace/mergesorts.hpp"
#include "sortrace/quicksorts.hpp"

namespace sortrace {

enum class Algorithm {
  Hyb1, Hyb2, Hyb3, Hyb4, TwoWay, ThreeWay, BentleyMcIlroy, Intro, Median3Only,
  Mer2, Mer3, Mer4, Mer5, Mer6, TimStack,
  Heap, Shell, Insert,
};

struct AlgorithmInfo {
  Algorithm id;
  std::string_view name;
  bool stable;
  bool quadratic_worst_case;
};

/// Registry order is also the tie-break order for the best time of a row.
inline constexpr std::array<AlgorithmInfo, 18> algorithm_registry = {{
    {Algorithm::Hyb1, "hyb1", false, false},
    {Algorithm::Hyb2, "hyb2", false, false},
    {Algorithm::Hyb3, "hyb3", false, false},
    {Algorithm::Hyb4, "hyb4", false, false},
    {Algorithm::TwoWay, "2way", false, false},
    {Algorithm::ThreeWay, "3way", false, false},
    {Algorithm::BentleyMcIlroy, "bm", false, false},
    {Algorithm::Intro, "intro", false, false},
    {Algorithm::Median3Only, "mo3only", false, true},
    {Algorithm::Mer2, "mer2", true, false},
    {Algorithm::Mer3, "mer3", true, false},
    {Algorithm::Mer4, "mer4", true, false},
    {Algorithm::Mer5, "mer5", true, false},
    {Algorithm::Mer6, "mer6", true, false},
    {Algorithm::TimStack, "timstack", true, false},
    {Algorithm::Heap, "heap", false, false},
    {Algorithm::Shell, "shell", false, false},
    {Algorithm::Insert, "insert", true, true},
}};

inline std::optional<AlgorithmInfo> find_algorithm(std::string_view name) {
  for (const auto& info : algorithm_registry) {
    if (info.name == name) return info;
  }
  return std::nullopt;
}

template <typename T, typename Cmp>
void run_algorithm(Algorithm id, std::span<T> buf, Cmp&& cmp) {
  using namespace quick_presets;
  using namespace merge_presets;
  switch (id) {
    case Algorithm::Hyb1: return qsort_hyb(buf, cmp, hyb1());
    case Algorithm::Hyb2: return qsort_hyb(buf, cmp, hyb2());
    case Algorithm::Hyb3: return qsort_hyb(buf, cmp, hyb3());
    case Algorithm::Hyb4: return qsort_hyb(buf, cmp, hyb4());
    case Algorithm::TwoWay: return qsort_2way(buf, cmp);
    case Algorithm::ThreeWay: return qsort_3way(buf, cmp);
    case Algorithm::BentleyMcIlroy: return bm_qsort(buf, cmp);
    case Algorithm::Intro: return introsort(buf, cmp);
    case Algorithm::Median3Only: return qsort_hyb(buf, cmp, median3_only());
    case Algorithm::Mer2: return mergesort(buf, cmp, mer2());
    case Algorithm::Mer3: return mergesort(buf, cmp, mer3());
    case Algorithm::Mer4: return mergesort(buf, cmp, mer4());
    case Algorithm::Mer5: return mergesort(buf, cmp, mer5());
    case Algorithm::Mer6: return mergesort(buf, cmp, mer6());
    case Algorithm::TimStack: return mergesort(buf, cmp, timstack());
    case Algorithm::Heap: return heapsort(buf, cmp);
    case Algorithm::Shell: return shellsort(buf, cmp);
    case Algorithm::Insert: return insertion_sort_full(buf, cmp);
  }
}

/// Dispatches registry names. run_race accepts any type with this shape.
struct RegistryRunner {
  bool knows(std::string_view name) const { return find_algorithm(name).has_value(); }

  template <typename T, typename Cmp>
  void operator()(std::string_view name, std::span<T> buf, Cmp& cmp) const {
    run_algorithm(find_algorithm(name)->id, buf, cmp);
  }
};

/// True iff out is non-decreasing under cmp and holds the same multiset as
/// original. The multiset check sorts a copy of original with heapsort, a
/// code path independent of the sorts under test.
template <typename T, typename Cmp>
bool verify_output(std::span<const T> out, std::span<const T> original, Cmp&& cmp) {
  if (out.size() != original.size()) return false;
  if (!is_sorted(out, 0, out.size(), cmp)) return false;
  std::vector<T> reference(original.begin(), original.end());
  heapsort(std::span<T>(reference), cmp);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (cmp(out[i], reference[i]) != 0) return false;
  }
  return true;
}

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReportFormat { Csv, Markdown };

struct RaceSpec {
  std::vector<InputClass> classes;
  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> ks{1};
  bool average_k = false;  // one row per (class, n), averaged over ks
  std::vector<std::uint64_t> seeds{1};
  std::size_t trials = 10;
  std::vector<std::string> algorithms;
  bool measure_time = true;
  bool measure_comparisons = true;
  ReportFormat format = ReportFormat::Csv;
};

/// k = 2^0 .. 2^8.
inline std::vector<std::uint64_t> k_sweep() {
  std::vector<std::uint64_t> ks;
  for (int i = 0; i <= 8; ++i) ks.push_back(std::uint64_t{1} << i);
  return ks;
}

/// Seed of the t-th trial; trial 0 uses the seed unchanged.
inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return seed + 0x9E3779B97F4A7C15ull * trial;
}

struct RaceCell {
  std::string algorithm;
  double mean_us = 0;
  double mean_comparisons = 0;
  double cmp_per_item = 0;
  double ratio = 1;
  bool verified = false;
};

struct RaceRow {
  InputClass cls;
  std::size_t n;
  std::string k;  // "-" when the class ignores k, "sweep" when averaged
  double best_us = 0;
  std::vector<RaceCell> cells;
};

struct RaceReport {
  std::vector<std::string> algorithms;
  std::vector<RaceRow> rows;
};

namespace detail {

template <typename T, typename Runner>
void race_instance(const std::vector<T>& original, const RaceSpec& spec, Runner& runner,
                   const InstanceSpec& inst, RaceRow& row) {
  std::vector<T> reference = original;
  heapsort(std::span<T>(reference), NaturalOrder{});
  std::vector<T> work;
  CountingComparator<> cmp;
  for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
    work = original;
    cmp.reset();
    const auto t0 = std::chrono::steady_clock::now();
    runner(spec.algorithms[a], std::span<T>(work), cmp);
    const auto t1 = std::chrono::steady_clock::now();
    const std::uint64_t count = cmp.count();

    bool ok = work.size() == reference.size();
    for (std::size_t i = 0; ok && i < work.size(); ++i) ok = compare(work[i], reference[i]) == 0;
    if (!ok) {
      throw VerificationError(fmt::format("verification failed: algorithm={} class={} n={} k={} seed={}",
                                          spec.algorithms[a], class_name(inst.cls), inst.n, inst.k,
                                          inst.seed));
    }
    auto& cell = row.cells[a];
    cell.mean_us += std::chrono::duration<double, std::micro>(t1 - t0).count();
    cell.mean_comparisons += static_cast<double>(count);
    cell.verified = true;
  }
}

}  // namespace detail

/// Runs every algorithm on the same instances and aggregates per row.
/// Throws std::invalid_argument for unknown algorithms or bad parameters and
/// VerificationError when any output is wrong.
template <typename Runner = RegistryRunner>
RaceReport run_race(const RaceSpec& spec, Runner runner = {}) {
  if (spec.trials < 1) throw std::invalid_argument("race: trials must be >= 1");
  if (spec.seeds.empty()) throw std::invalid_argument("race: no seeds");
  if (spec.algorithms.empty()) throw std::invalid_argument("race: no algorithms");
  for (const auto& name : spec.algorithms) {
    if (!runner.knows(name)) throw std::invalid_argument("race: unknown algorithm '" + name + "'");
  }

  RaceReport report;
  report.algorithms = spec.algorithms;
  for (InputClass cls : spec.classes) {
    const std::vector<std::uint64_t> ks = uses_k(cls) ? spec.ks : std::vector<std::uint64_t>{0};
    if (ks.empty()) throw std::invalid_argument("race: no k values");
    for (std::size_t n : spec.sizes) {
      // One row per k, or a single row averaged over all of them.
      const std::size_t row_count = uses_k(cls) && !spec.average_k ? ks.size() : 1;
      std::vector<RaceRow> rows(row_count);
      std::vector<std::size_t> samples(row_count, 0);
      for (std::size_t r = 0; r < row_count; ++r) {
        rows[r].cls = cls;
        rows[r].n = n;
        rows[r].k = !uses_k(cls) ? "-" : spec.average_k ? "sweep" : std::to_string(ks[r]);
        rows[r].cells.resize(spec.algorithms.size());
        for (std::size_t a = 0; a < spec.algorithms.size(); ++a) rows[r].cells[a].algorithm = spec.algorithms[a];
      }

      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        const std::size_t r = row_count == 1 ? 0 : ki;
        for (std::uint64_t seed : spec.seeds) {
          for (std::size_t trial = 0; trial < spec.trials; ++trial) {
            const InstanceSpec inst{cls, n, ks[ki], trial_seed(seed, trial)};
            const Instance instance = gen_instance(inst);
            std::visit([&](const auto& original) { detail::race_instance(original, spec, runner, inst, rows[r]); },
                       instance.buf);
            ++samples[r];
          }
        }
      }

      for (std::size_t r = 0; r < row_count; ++r) {
        auto& row = rows[r];
        const double count = static_cast<double>(samples[r]);
        std::size_t best = 0;
        for (std::size_t a = 0; a < row.cells.size(); ++a) {
          auto& cell = row.cells[a];
          cell.mean_us /= count;
          cell.mean_comparisons /= count;
          cell.cmp_per_item = n > 0 ? cell.mean_comparisons / static_cast<double>(n) : 0.0;
          if (cell.mean_us < row.cells[best].mean_us) best = a;
        }
        row.best_us = row.cells[best].mean_us;
        for (std::size_t a = 0; a < row.cells.size(); ++a) {
          auto& cell = row.cells[a];
          if (a == best) {
            cell.ratio = 1.0;
          } else {
            // Only the row's winner reports exactly 1; ties go to registry order.
            const double ratio = row.best_us > 0 ? cell.mean_us / row.best_us
                                                 : std::numeric_limits<double>::infinity();
            cell.ratio = std::max(ratio, std::nextafter(1.0, 2.0));
          }
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

struct FitResult {
  double s = 0;
  double t = 0;
  double r2 = 0;
};

struct CountPoint {
  std::size_t n;
  double comparisons;
};

/// Least squares of comparisons / n against log2 n, i.e. the model
/// comparisons = s * n * log2(n) + t * n.
inline FitResult fit_comparisons(std::span<const CountPoint> points) {
  std::vector<std::size_t> sizes;
  for (const auto& p : points) {
    if (p.n < 1) throw std::invalid_argument("fit: n must be positive");
    sizes.push_back(p.n);
  }
  std::sort(sizes.begin(), sizes.end());
  if (std::unique(sizes.begin(), sizes.end()) - sizes.begin() < 2) {
    throw std::invalid_argument("fit: need at least 2 distinct sizes");
  }

  const double m = static_cast<double>(points.size());
  double mean_x = 0, mean_y = 0;
  for (const auto& p : points) {
    mean_x += std::log2(static_cast<double>(p.n));
    mean_y += p.comparisons / static_cast<double>(p.n);
  }
  mean_x /= m;
  mean_y /= m;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : points) {
    const double dx = std::log2(static_cast<double>(p.n)) - mean_x;
    const double dy = p.comparisons / static_cast<double>(p.n) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  FitResult fit;
  fit.s = sxy / sxx;
  fit.t = mean_y - fit.s * mean_x;
  const double ss_res = syy - fit.s * sxy;
  fit.r2 = syy > 0 ? 1.0 - std::max(ss_res, 0.0) / syy : 1.0;
  return fit;
}

/// Mean comparisons of one algorithm per row, as fit points.
inline std::vector<CountPoint> count_points(const RaceReport& report, std::string_view algorithm) {
  std::vector<CountPoint> points;
  for (const auto& row : report.rows) {
    for (const auto& cell : row.cells) {
      if (cell.algorithm == algorithm) points.push_back({row.n, cell.mean_comparisons});
    }
  }
  return points;
}

inline constexpr std::string_view csv_header = "class,n,k,algorithm,mean_us,cmp_per_item,ratio,verified";

inline std::string emit_report(const RaceReport& report, ReportFormat format, bool show_time = true,
                               bool show_comparisons = true) {
  std::string out;
  if (format == ReportFormat::Csv) {
    out += csv_header;
    out += '\n';
    for (const auto& row : report.rows) {
      for (const auto& cell : row.cells) {
        out += fmt::format("{},{},{},{},{:.3f},{:.4f},{:.4f},{}\n", class_name(row.cls), row.n, row.k,
                           cell.algorithm, cell.mean_us, cell.cmp_per_item, cell.ratio,
                           cell.verified ? "true" : "false");
      }
    }
    return out;
  }

  // Markdown: per class, a ratio-to-best time table and a comparisons table.
  std::vector<InputClass> order;
  for (const auto& row : report.rows) {
    if (std::find(order.begin(), order.end(), row.cls) == order.end()) order.push_back(row.cls);
  }
  auto header = [&](std::string_view lead) {
    std::string h = lead.empty() ? std::string("| n | k |") : fmt::format("| n | k | {} |", lead);
    std::string rule = lead.empty() ? "|---|---|" : "|---|---|---|";
    for (const auto& a : report.algorithms) {
      h += fmt::format(" {} |", a);
      rule += "---|";
    }
    return h + '\n' + rule + '\n';
  };
  for (InputClass cls : order) {
    out += fmt::format("### {}\n\n", class_name(cls));
    if (show_time) {
      out += "Time relative to the fastest:\n\n";
      out += header("best time (us)");
      for (const auto& row : report.rows) {
        if (row.cls != cls) continue;
        out += fmt::format("| {} | {} | {:.0f} |", row.n, row.k, row.best_us);
        for (const auto& cell : row.cells) out += fmt::format(" {:.2f} |", cell.ratio);
        out += '\n';
      }
      out += '\n';
    }
    if (show_comparisons) {
      out += "Comparisons per item:\n\n";
      out += header("");
      for (const auto& row : report.rows) {
        if (row.cls != cls) continue;
        out += fmt::format("| {} | {} |", row.n, row.k);
        for (const auto& cell : row.cells) out += fmt::format(" {:.2f} |", cell.cmp_per_item);
        out += '\n';
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace sortrace
