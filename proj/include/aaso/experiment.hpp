#pragma once

// Experiment configuration and artifact writers behind the command line.
//
// Config files are line oriented `key = value` with '#' comments. Degrees
// appear only here; everything downstream works in radians.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aaso/benchmark.hpp"
#include "aaso/enhancer.hpp"

namespace aaso::experiment {

class ConfigParseError : public std::runtime_error {
public:
  ConfigParseError(const std::string &source, std::size_t line,
                   const std::string &message);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Kind { Cover, Bench, Analyze };
enum class CoverAlgorithm { Aaso, Vfa, Pso };

std::string_view kind_name(Kind k);
std::string_view cover_algorithm_name(CoverAlgorithm a);

struct ExperimentSpec {
  Kind kind = Kind::Cover;

  // Geometry.
  double area_length_m = 500.0;
  double area_width_m = 500.0;
  double grid_interval_m = 5.0;
  std::size_t node_count = 110;
  std::optional<std::string> sensors_file;
  double radius_m = 60.0;
  /// Radians, converted once from view_angle_deg.
  double view_angle = 0.0;
  double view_angle_deg = 90.0;

  // Coverage algorithms.
  std::vector<CoverAlgorithm> algorithms{CoverAlgorithm::Aaso,
                                         CoverAlgorithm::Vfa,
                                         CoverAlgorithm::Pso};
  OptimizerConfig optimizer;
  bench::PsoParams pso = enhance::coverage_pso_defaults();
  enhance::VfaParams vfa;

  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path output_dir = "out";
  std::size_t threads = 1;

  // Benchmarking.
  std::vector<std::string> functions;
  std::vector<bench::Algorithm> bench_algorithms{bench::Algorithm::Aaso,
                                                 bench::Algorithm::Pso,
                                                 bench::Algorithm::RandomSearch};
  std::size_t dimension = 30;
  std::size_t runs = 50;
  std::uint64_t base_seed = 1;

  // Analysis.
  std::optional<double> target_coverage;
};

/// Seeds as "1..10", "1,2,5" or a mix ("1..3,7").
std::vector<std::uint64_t> parse_seed_list(const std::string &text);

ExperimentSpec parse_config_text(const std::string &text,
                                 const std::string &source = "<config>");
ExperimentSpec parse_config(const std::filesystem::path &path);

/// Throws ConfigParseError (line 0) on inconsistent values.
void validate(ExperimentSpec &spec);

/// Decorrelated stream for a given experiment seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct RunRecord {
  std::string algorithm;
  std::uint64_t seed = 0;
  enhance::EnhancementRun run;
};

struct CoverOutcome {
  std::vector<RunRecord> runs;
  /// "algorithm:seed: message" for every run that threw.
  std::vector<std::string> failures;
};

/// Deploys (or imports) sensors for each seed, runs every algorithm and
/// writes results.json, curve_*.csv, layout_*.svg, deployment_*.txt,
/// summary.csv and timing.csv into output_dir. Throws IoError before any run
/// if output_dir is not writable.
CoverOutcome run_cover(const ExperimentSpec &spec);

struct BenchOutcome {
  std::vector<bench::RunStatistics> stats;
};

/// Writes bench_summary.csv and trace_<algo>_<function>_<run>.csv.
BenchOutcome run_bench(const ExperimentSpec &spec);

struct AnalyzeReport {
  double area = 0.0;
  std::size_t nodes = 0;
  double expected_coverage = 0.0;
  std::optional<double> target;
  std::optional<std::size_t> required_nodes;
  std::optional<long long> saving;
  std::string text;
};

AnalyzeReport run_analyze(double length_m, double width_m, std::size_t nodes,
                          double radius_m, double view_angle_deg,
                          std::optional<double> target);

/// "500x500" -> {500, 500}.
std::pair<double, double> parse_area(const std::string &text);

} // namespace aaso::experiment
