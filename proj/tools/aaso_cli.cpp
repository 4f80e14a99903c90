// aaso: coverage enhancement and benchmark experiments from the command line.
// Talks to the library only through the C interface in aaso/aaso.h.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "aaso/aaso.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRunFailed = 1;
constexpr int kExitError = 2;

int report(aaso_status status) {
  std::fprintf(stderr, "aaso: %s: %s\n", aaso_status_name(status),
               aaso_last_error());
  return status == AASO_ERR_RUN_FAILED ? kExitRunFailed : kExitError;
}

struct RunArgs {
  std::string config;
  std::string seeds;
  std::string out;
  long long threads = -1;
};

int run_experiment(const RunArgs &args, aaso_kind expected) {
  aaso_experiment *exp = nullptr;
  if (aaso_status s = aaso_experiment_load(args.config.c_str(), &exp))
    return report(s);

  auto finish = [&](int code) {
    aaso_experiment_free(exp);
    return code;
  };

  aaso_kind kind{};
  aaso_experiment_kind(exp, &kind);
  if (kind != expected) {
    std::fprintf(stderr, "aaso: %s: config kind does not match subcommand\n",
                 args.config.c_str());
    return finish(kExitError);
  }
  if (!args.seeds.empty())
    if (aaso_status s = aaso_experiment_set_seeds(exp, args.seeds.c_str()))
      return finish(report(s));
  if (!args.out.empty())
    if (aaso_status s = aaso_experiment_set_output_dir(exp, args.out.c_str()))
      return finish(report(s));
  if (args.threads >= 0)
    aaso_experiment_set_threads(exp, static_cast<size_t>(args.threads));

  const aaso_status status = aaso_experiment_run(exp);
  if (status != AASO_OK && status != AASO_ERR_RUN_FAILED)
    return finish(report(status));

  for (size_t i = 0; i < aaso_experiment_run_count(exp); ++i) {
    aaso_run_summary r{};
    aaso_experiment_run_summary(exp, i, &r);
    std::printf("%-5s seed %-6llu initial %.4f  final %.4f  evals %zu\n",
                r.algorithm, static_cast<unsigned long long>(r.seed),
                r.initial_rate, r.final_rate, r.evaluations);
  }
  for (size_t i = 0; i < aaso_experiment_stat_count(exp); ++i) {
    aaso_stat_row r{};
    aaso_experiment_stat(exp, i, &r);
    std::printf("%-7s %-11s runs %zu  best %.6g  mean %.6g  std %.6g\n",
                r.algorithm, r.function, r.runs, r.best, r.mean, r.std);
  }
  if (status == AASO_ERR_RUN_FAILED) {
    std::fprintf(stderr, "aaso: failed runs:\n");
    for (size_t i = 0; i < aaso_experiment_failure_count(exp); ++i)
      std::fprintf(stderr, "  %s\n", aaso_experiment_failure(exp, i));
    return finish(kExitRunFailed);
  }
  return finish(kExitOk);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Army ant search optimizer and directional sensor coverage "
               "experiments"};
  app.set_version_flag("--version", std::string(aaso_version()));
  app.require_subcommand(1);

  RunArgs cover_args;
  auto *cover = app.add_subcommand("cover", "Coverage enhancement experiments");
  cover->require_subcommand(1);
  auto *cover_run = cover->add_subcommand("run", "Run a cover experiment");
  cover_run->add_option("--config", cover_args.config, "Config file")
      ->required()
      ->check(CLI::ExistingFile);
  cover_run->add_option("--seeds", cover_args.seeds,
                        "Seed list, e.g. 1..10 or 1,4,9");
  cover_run->add_option("--out", cover_args.out, "Output directory");
  cover_run->add_option("--threads", cover_args.threads,
                        "Worker threads (0 = all cores)");

  RunArgs bench_args;
  auto *bench = app.add_subcommand("bench", "Benchmark function comparisons");
  bench->require_subcommand(1);
  auto *bench_run = bench->add_subcommand("run", "Run a bench experiment");
  bench_run->add_option("--config", bench_args.config, "Config file")
      ->required()
      ->check(CLI::ExistingFile);
  bench_run->add_option("--out", bench_args.out, "Output directory");
  bench_run->add_option("--threads", bench_args.threads,
                        "Worker threads (0 = all cores)");

  std::string area;
  std::size_t nodes = 0;
  double radius = 0.0;
  double fov = 0.0;
  double target = 0.0;
  auto *analyze =
      app.add_subcommand("analyze", "Expected coverage and node count");
  analyze->add_option("--area", area, "Field size LxW in meters")->required();
  analyze->add_option("--nodes", nodes, "Deployed nodes")->required();
  analyze->add_option("--radius", radius, "Sensing radius in meters")
      ->required();
  analyze->add_option("--fov", fov, "View angle in degrees")->required();
  analyze->add_option("--target", target, "Target coverage in (0, 1)");

  CLI11_PARSE(app, argc, argv);

  if (cover_run->parsed())
    return run_experiment(cover_args, AASO_KIND_COVER);
  if (bench_run->parsed())
    return run_experiment(bench_args, AASO_KIND_BENCH);

  const auto x = area.find_first_of("xX");
  double length = 0.0, width = 0.0;
  try {
    if (x == std::string::npos)
      throw std::invalid_argument(area);
    std::size_t used = 0;
    length = std::stod(area.substr(0, x), &used);
    if (used != x)
      throw std::invalid_argument(area);
    width = std::stod(area.substr(x + 1), &used);
    if (used != area.size() - x - 1)
      throw std::invalid_argument(area);
  } catch (const std::exception &) {
    std::fprintf(stderr, "aaso: --area must look like 500x500, got '%s'\n",
                 area.c_str());
    return kExitError;
  }
  aaso_analysis result{};
  if (aaso_status s =
          aaso_analyze(length, width, nodes, radius, fov, target, &result))
    return report(s);
  std::fputs(result.text, stdout);
  return kExitOk;
}
