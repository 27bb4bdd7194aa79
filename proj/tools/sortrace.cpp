// sortrace: generate inputs, measure presortedness, race sorting algorithms
// and fit comparison-count models.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sortrace/sortrace.hpp"

namespace {

using namespace sortrace;

constexpr int kExitVerification = 1;
constexpr int kExitBadParameters = 2;

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

// Accepts plain integers and exact scientific forms such as 1e5.
std::uint64_t parse_count(const std::string& token) {
  std::uint64_t value = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec == std::errc{} && res.ptr == token.data() + token.size()) return value;
  double d = 0;
  auto dres = std::from_chars(token.data(), token.data() + token.size(), d);
  if (dres.ec != std::errc{} || dres.ptr != token.data() + token.size() || d < 0 || d != std::floor(d) ||
      d >= 0x1p64) {
    throw std::invalid_argument("not a non-negative integer: '" + token + "'");
  }
  return static_cast<std::uint64_t>(d);
}

std::vector<std::uint64_t> parse_counts(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& token : split_csv(text)) out.push_back(parse_count(token));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<InputClass> parse_classes(const std::string& text) {
  if (text == "all") return {all_input_classes.begin(), all_input_classes.end()};
  std::vector<InputClass> out;
  for (const auto& name : split_csv(text)) {
    auto cls = parse_class(name);
    if (!cls) throw std::invalid_argument("unknown class '" + name + "'");
    out.push_back(*cls);
  }
  return out;
}

InputClass parse_single_class(const std::string& text) {
  auto cls = parse_class(text);
  if (!cls) throw std::invalid_argument("unknown class '" + text + "'");
  return *cls;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SORTRACE_SEED")) return parse_count(env);
  return 1;
}

struct KChoice {
  std::vector<std::uint64_t> ks;
  bool sweep = false;
};

KChoice parse_k(const std::string& text) {
  if (text == "sweep") return {k_sweep(), true};
  return {parse_counts(text), false};
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  out << text;
}

template <typename T>
std::string measure_text(std::span<const T> keys) {
  NaturalOrder order;
  const auto report = presortedness(keys, order);
  return fmt::format("n {}\ninv {}\nrun {}\nmono {}\nmax_rank_displacement {}\n", report.n, report.inv,
                     report.run, report.mono, max_rank_displacement(keys, order));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sortrace: a comparison-sort race over twelve input classes"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Race algorithms over generated instances");
  std::string run_class = "all", run_n = "100000", run_k = "sweep", run_seed, run_algos, run_format = "csv",
              run_out, run_metrics = "both";
  std::size_t run_trials = 10;
  run->add_option("--class", run_class, "Class name, comma list, or 'all'");
  run->add_option("--n", run_n, "Comma list of sizes");
  run->add_option("--k", run_k, "Comma list of k values, or 'sweep' for 2^0..2^8 averaged");
  run->add_option("--seed", run_seed, "Comma list of seeds (default $SORTRACE_SEED or 1)");
  run->add_option("--trials", run_trials, "Trials per seed");
  run->add_option("--algos", run_algos, "Comma list of algorithm names (default: all)");
  run->add_option("--format", run_format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
  run->add_option("--metrics", run_metrics, "Markdown tables: time, comparisons, or both")
      ->check(CLI::IsMember({"time", "comparisons", "both"}));
  run->add_option("--out", run_out, "Write the report here instead of stdout");

  // fit
  auto* fit = app.add_subcommand("fit", "Fit comparisons = s*n*log2(n) + t*n over several sizes");
  std::string fit_class, fit_algo, fit_sizes = "100000,200000,300000,400000,500000", fit_k = "sweep", fit_seed;
  std::size_t fit_trials = 10;
  fit->add_option("--class", fit_class, "Class name")->required();
  fit->add_option("--algo", fit_algo, "Algorithm name")->required();
  fit->add_option("--sizes", fit_sizes, "Comma list of at least two sizes");
  fit->add_option("--k", fit_k, "Comma list of k values, or 'sweep'; results are averaged over k");
  fit->add_option("--seed", fit_seed, "Comma list of seeds");
  fit->add_option("--trials", fit_trials, "Trials per seed");

  // gen
  auto* gen = app.add_subcommand("gen", "Dump a generated instance as text");
  std::string gen_class, gen_out;
  std::uint64_t gen_n = 0, gen_k = 1;
  std::string gen_seed;
  gen->add_option("--class", gen_class, "Class name")->required();
  gen->add_option("--n", gen_n, "Element count")->required();
  gen->add_option("--k", gen_k, "Class parameter");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--out", gen_out, "Write here instead of stdout");

  // measure
  auto* measure = app.add_subcommand("measure", "Print Inv, Run, Mono and max rank displacement");
  std::string m_class, m_in, m_seed;
  std::uint64_t m_n = 0, m_k = 1;
  measure->add_option("--class", m_class, "Class name of a generated instance");
  measure->add_option("--n", m_n, "Element count");
  measure->add_option("--k", m_k, "Class parameter");
  measure->add_option("--seed", m_seed, "Seed");
  measure->add_option("--in", m_in, "Instance file written by 'gen'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadParameters;
  }

  auto seeds_or_default = [](const std::string& text) {
    return text.empty() ? std::vector<std::uint64_t>{default_seed()} : parse_counts(text);
  };

  try {
    if (run->parsed()) {
      RaceSpec spec;
      spec.classes = parse_classes(run_class);
      for (auto n : parse_counts(run_n)) spec.sizes.push_back(static_cast<std::size_t>(n));
      const auto k = parse_k(run_k);
      spec.ks = k.ks;
      spec.average_k = k.sweep;
      spec.seeds = seeds_or_default(run_seed);
      spec.trials = run_trials;
      if (run_algos.empty()) {
        for (const auto& info : algorithm_registry) spec.algorithms.emplace_back(info.name);
      } else {
        spec.algorithms = split_csv(run_algos);
      }
      spec.format = run_format == "md" ? ReportFormat::Markdown : ReportFormat::Csv;
      spec.measure_time = run_metrics != "comparisons";
      spec.measure_comparisons = run_metrics != "time";
      const auto report = run_race(spec);
      write_output(emit_report(report, spec.format, spec.measure_time, spec.measure_comparisons), run_out);
    } else if (fit->parsed()) {
      RaceSpec spec;
      spec.classes = {parse_single_class(fit_class)};
      for (auto n : parse_counts(fit_sizes)) spec.sizes.push_back(static_cast<std::size_t>(n));
      const auto k = parse_k(fit_k);
      spec.ks = k.ks;
      spec.average_k = true;
      spec.seeds = seeds_or_default(fit_seed);
      spec.trials = fit_trials;
      spec.algorithms = {fit_algo};
      const auto report = run_race(spec);
      const auto points = count_points(report, fit_algo);
      const auto result = fit_comparisons(points);
      for (const auto& p : points) {
        std::cout << fmt::format("n {} cmp_per_item {:.4f}\n", p.n, p.comparisons / static_cast<double>(p.n));
      }
      std::cout << fmt::format("s {:.4f}\nt {:.4f}\nr2 {:.6f}\n", result.s, result.t, result.r2);
    } else if (gen->parsed()) {
      const InstanceSpec spec{parse_single_class(gen_class), static_cast<std::size_t>(gen_n), gen_k,
                              gen_seed.empty() ? default_seed() : parse_count(gen_seed)};
      std::ostringstream text;
      write_instance(text, gen_instance(spec));
      write_output(text.str(), gen_out);
    } else if (measure->parsed()) {
      Instance inst;
      if (!m_in.empty()) {
        std::ifstream in(m_in);
        if (!in) throw std::invalid_argument("cannot open '" + m_in + "'");
        inst = read_instance(in);
      } else {
        if (m_class.empty()) throw std::invalid_argument("measure needs --class or --in");
        inst = gen_instance({parse_single_class(m_class), static_cast<std::size_t>(m_n), m_k,
                             m_seed.empty() ? default_seed() : parse_count(m_seed)});
      }
      std::cout << std::visit(
          [](const auto& v) {
            using T = typename std::decay_t<decltype(v)>::value_type;
            return measure_text(std::span<const T>(v));
          },
          inst.buf);
    }
  } catch (const VerificationError& e) {
    std::cerr << "sortrace: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    std::cerr << "sortrace: " << e.what() << '\n';
    return kExitBadParameters;
  } catch (const std::exception& e) {
    std::cerr << "sortrace: internal error: " << e.what() << '\n';
    return kExitBadParameters;
  }
  return 0;
}
