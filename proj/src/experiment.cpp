#include "aaso/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "aaso/deployment_io.hpp"
#include "aaso/svg.hpp"

namespace aaso::experiment {

namespace fs = std::filesystem;
using coverage::CoverageField;
using coverage::Sensor;

ConfigParseError::ConfigParseError(const std::string &source, std::size_t line,
                                   const std::string &message)
    : std::runtime_error(source.empty() ? message
                         : line      ? source + ":" + std::to_string(line) +
                                      ": " + message
                                     : source + ": " + message),
      line_(line) {}

std::string_view kind_name(Kind k) {
  switch (k) {
  case Kind::Cover:
    return "cover";
  case Kind::Bench:
    return "bench";
  case Kind::Analyze:
    return "analyze";
  }
  return "?";
}

std::string_view cover_algorithm_name(CoverAlgorithm a) {
  switch (a) {
  case CoverAlgorithm::Aaso:
    return "aaso";
  case CoverAlgorithm::Vfa:
    return "vfa";
  case CoverAlgorithm::Pso:
    return "pso";
  }
  return "?";
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string &text) {
  std::vector<std::string> out;
  std::string item;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!item.empty())
        out.push_back(std::move(item));
      item.clear();
    } else {
      item += c;
    }
  }
  if (!item.empty())
    out.push_back(std::move(item));
  return out;
}

double to_double(const std::string &text) {
  double v = 0.0;
  const char *end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v))
    throw std::invalid_argument("expected a number, got '" + text + "'");
  return v;
}

std::uint64_t to_u64(const std::string &text) {
  std::uint64_t v = 0;
  const char *end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end)
    throw std::invalid_argument("expected a non-negative integer, got '" +
                                text + "'");
  return v;
}

std::size_t to_size(const std::string &text) {
  return static_cast<std::size_t>(to_u64(text));
}

CoverAlgorithm parse_cover_algorithm(const std::string &name) {
  if (name == "aaso")
    return CoverAlgorithm::Aaso;
  if (name == "vfa")
    return CoverAlgorithm::Vfa;
  if (name == "pso")
    return CoverAlgorithm::Pso;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

struct Entry {
  std::string value;
  std::size_t line;
};

const std::vector<std::string> &known_keys() {
  static const std::vector<std::string> keys{
      "kind",          "area_length_m",  "area_width_m",  "grid_interval_m",
      "node_count",    "sensors_file",   "radius_m",      "view_angle_deg",
      "algorithms",    "population",     "iterations",    "recruit_init",
      "attack_coeff",  "stagnation",     "seeds",         "output_dir",
      "threads",       "functions",      "dimension",     "runs",
      "base_seed",     "target_coverage", "rotation_step_deg",
      "pso_c1",        "pso_c2",         "pso_w_max",     "pso_w_min",
      "pso_v_max"};
  return keys;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out)
    throw IoError("write failed for '" + path.string() + "'");
}

void ensure_writable(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create output directory '" + dir.string() +
                  "': " + ec.message());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out)
      throw IoError("output directory '" + dir.string() + "' is not writable");
  }
  fs::remove(probe, ec);
}

// Runs jobs [0, n) on up to `threads` workers; exceptions stay inside `job`.
template <class Job> void parallel_for(std::size_t n, std::size_t threads,
                                       Job job) {
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++)
        job(i);
    });
}

double mean_of(const std::vector<double> &v) {
  return v.empty() ? 0.0
                   : std::accumulate(v.begin(), v.end(), 0.0) /
                         static_cast<double>(v.size());
}

double sample_std(const std::vector<double> &v) {
  if (v.size() < 2)
    return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v)
    ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

} // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string &text) {
  std::vector<std::uint64_t> out;
  for (const auto &item : split_list(text)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_u64(item));
      continue;
    }
    const auto lo = to_u64(item.substr(0, dots));
    const auto hi = to_u64(item.substr(dots + 2));
    if (hi < lo)
      throw std::invalid_argument("empty seed range '" + item + "'");
    if (hi - lo >= 1'000'000)
      throw std::invalid_argument("seed range '" + item + "' is too long");
    for (auto s = lo; s <= hi; ++s)
      out.push_back(s);
  }
  if (out.empty())
    throw std::invalid_argument("empty seed list");
  return out;
}

ExperimentSpec parse_config_text(const std::string &text,
                                 const std::string &source) {
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(raw.substr(0, hash));
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigParseError(source, lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto &keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigParseError(source, lineno, "unknown key '" + key + "'");
    if (value.empty())
      throw ConfigParseError(source, lineno, "missing value for '" + key + "'");
    if (entries.count(key))
      throw ConfigParseError(source, lineno, "duplicate key '" + key + "'");
    entries[key] = {value, lineno};
  }

  ExperimentSpec spec;
  auto with = [&](const char *key, auto &&apply) {
    auto it = entries.find(key);
    if (it == entries.end())
      return;
    try {
      apply(it->second.value);
    } catch (const ConfigParseError &) {
      throw;
    } catch (const std::exception &e) {
      throw ConfigParseError(source, it->second.line,
                             std::string(key) + ": " + e.what());
    }
  };

  with("kind", [&](const std::string &v) {
    if (v == "cover")
      spec.kind = Kind::Cover;
    else if (v == "bench")
      spec.kind = Kind::Bench;
    else if (v == "analyze")
      spec.kind = Kind::Analyze;
    else
      throw std::invalid_argument("expected cover, bench or analyze");
  });

  // Benchmark runs default to the classic-suite protocol size.
  if (spec.kind == Kind::Bench) {
    spec.optimizer.population = 30;
    spec.optimizer.max_iters = 1000;
    spec.pso = bench::PsoParams{};
  }

  with("area_length_m", [&](auto &v) { spec.area_length_m = to_double(v); });
  with("area_width_m", [&](auto &v) { spec.area_width_m = to_double(v); });
  with("grid_interval_m",
       [&](auto &v) { spec.grid_interval_m = to_double(v); });
  with("node_count", [&](auto &v) { spec.node_count = to_size(v); });
  with("sensors_file", [&](auto &v) { spec.sensors_file = v; });
  with("radius_m", [&](auto &v) { spec.radius_m = to_double(v); });
  with("view_angle_deg", [&](auto &v) { spec.view_angle_deg = to_double(v); });
  with("population", [&](auto &v) { spec.optimizer.population = to_size(v); });
  with("iterations", [&](auto &v) { spec.optimizer.max_iters = to_size(v); });
  with("recruit_init",
       [&](auto &v) { spec.optimizer.recruit_init = to_double(v); });
  with("attack_coeff",
       [&](auto &v) { spec.optimizer.attack_coeff = to_double(v); });
  with("stagnation",
       [&](auto &v) { spec.optimizer.stagnation_threshold = to_size(v); });
  with("seeds", [&](auto &v) { spec.seeds = parse_seed_list(v); });
  with("output_dir", [&](auto &v) { spec.output_dir = v; });
  with("threads", [&](auto &v) { spec.threads = to_size(v); });
  with("functions", [&](auto &v) {
    spec.functions = split_list(v);
    for (const auto &f : spec.functions)
      (void)bench::make_benchmark(f, 1);
  });
  with("dimension", [&](auto &v) { spec.dimension = to_size(v); });
  with("runs", [&](auto &v) { spec.runs = to_size(v); });
  with("base_seed", [&](auto &v) { spec.base_seed = to_u64(v); });
  with("target_coverage",
       [&](auto &v) { spec.target_coverage = to_double(v); });
  with("rotation_step_deg", [&](auto &v) {
    spec.vfa.rotation_step = coverage::degrees_to_radians(to_double(v));
  });
  with("pso_c1", [&](auto &v) { spec.pso.c1 = to_double(v); });
  with("pso_c2", [&](auto &v) { spec.pso.c2 = to_double(v); });
  with("pso_w_max", [&](auto &v) { spec.pso.w_max = to_double(v); });
  with("pso_w_min", [&](auto &v) { spec.pso.w_min = to_double(v); });
  with("pso_v_max", [&](auto &v) { spec.pso.v_max = to_double(v); });
  with("algorithms", [&](auto &v) {
    const auto names = split_list(v);
    if (names.empty())
      throw std::invalid_argument("empty algorithm list");
    if (spec.kind == Kind::Bench) {
      spec.bench_algorithms.clear();
      for (const auto &n : names)
        spec.bench_algorithms.push_back(bench::parse_algorithm(n));
    } else {
      spec.algorithms.clear();
      for (const auto &n : names)
        spec.algorithms.push_back(parse_cover_algorithm(n));
    }
  });

  if (spec.kind == Kind::Bench && spec.functions.empty())
    spec.functions = bench::benchmark_names();

  try {
    validate(spec);
  } catch (const ConfigParseError &e) {
    // Point at the key the message is about when the file sets it.
    const std::string msg = e.what();
    std::size_t line = 0;
    static const std::vector<std::pair<std::string, std::string>> aliases{
        {"max_iters ", "iterations"},
        {"stagnation_threshold ", "stagnation"},
        {"VFA rotation step ", "rotation_step_deg"}};
    for (const auto &[key, entry] : entries)
      if (msg.rfind(key + " ", 0) == 0)
        line = entry.line;
    for (const auto &[prefix, key] : aliases)
      if (msg.rfind(prefix, 0) == 0 && entries.count(key))
        line = entries.at(key).line;
    throw ConfigParseError(source, line, msg);
  }
  return spec;
}

ExperimentSpec parse_config(const fs::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigParseError(path.string(), 0, "cannot read config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

void validate(ExperimentSpec &spec) {
  auto fail = [](const std::string &m) { throw ConfigParseError("", 0, m); };
  auto positive = [&](double v, const char *name) {
    if (!(v > 0.0))
      fail(std::string(name) + " must be positive");
  };
  positive(spec.area_length_m, "area_length_m");
  positive(spec.area_width_m, "area_width_m");
  positive(spec.grid_interval_m, "grid_interval_m");
  positive(spec.radius_m, "radius_m");
  if (spec.grid_interval_m > std::min(spec.area_length_m, spec.area_width_m))
    fail("grid_interval_m exceeds the field size");
  if (!(spec.view_angle_deg > 0.0 && spec.view_angle_deg <= 360.0))
    fail("view_angle_deg must be in (0, 360]");
  spec.view_angle = coverage::degrees_to_radians(spec.view_angle_deg);
  if (spec.kind == Kind::Cover && !spec.sensors_file && spec.node_count == 0)
    fail("node_count must be at least 1");
  if (spec.algorithms.empty())
    fail("no algorithms selected");
  if (spec.seeds.empty())
    fail("no seeds selected");
  if (spec.target_coverage &&
      !(*spec.target_coverage > 0.0 && *spec.target_coverage < 1.0))
    fail("target_coverage must be in (0, 1)");
  try {
    spec.optimizer.validate();
    spec.vfa.validate();
    spec.pso.validate();
  } catch (const std::exception &e) {
    fail(e.what());
  }
  if (spec.kind == Kind::Bench) {
    if (spec.runs < 2)
      fail("runs must be at least 2");
    if (spec.dimension == 0)
      fail("dimension must be positive");
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // One SplitMix64 step over a stream-tagged seed.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CoverOutcome run_cover(const ExperimentSpec &spec) {
  ensure_writable(spec.output_dir);
  const CoverageField field(spec.area_length_m, spec.area_width_m,
                            spec.grid_interval_m);

  std::vector<Sensor> imported;
  if (spec.sensors_file) {
    std::ifstream in(*spec.sensors_file);
    if (!in)
      throw IoError("cannot open sensors file '" + *spec.sensors_file + "'");
    imported = coverage::read_deployment(in);
    if (imported.empty())
      throw coverage::DomainError("sensors file '" + *spec.sensors_file +
                                  "' lists no sensors");
    for (const auto &s : imported)
      if (s.x < 0.0 || s.x > spec.area_length_m || s.y < 0.0 ||
          s.y > spec.area_width_m)
        throw coverage::DomainError("sensors file '" + *spec.sensors_file +
                                    "' places a sensor outside the field");
  }

  // Deployments are shared by every algorithm of a seed.
  std::vector<std::vector<Sensor>> deployments;
  for (auto seed : spec.seeds) {
    if (spec.sensors_file) {
      deployments.push_back(imported);
    } else {
      RandomSource rng(seed);
      deployments.push_back(coverage::random_deployment(
          field, spec.node_count, spec.radius_m, spec.view_angle, rng));
    }
    const auto &sensors = deployments.back();
    const auto initial = coverage::coverage(sensors, field);
    const auto tag = std::to_string(seed);
    write_text(spec.output_dir / ("layout_initial_" + tag + ".svg"),
               report::render_layout_svg(
                   field, sensors,
                   "initial deployment, seed " + tag + ", coverage " +
                       fmt(initial.rate),
                   initial.covered));
    std::ostringstream dep;
    coverage::write_deployment(dep, sensors);
    write_text(spec.output_dir / ("deployment_" + tag + ".txt"), dep.str());
  }

  const std::size_t A = spec.algorithms.size();
  const std::size_t jobs = spec.seeds.size() * A;
  std::vector<std::optional<RunRecord>> records(jobs);
  std::vector<std::string> errors(jobs);

  parallel_for(jobs, spec.threads, [&](std::size_t j) {
    const std::size_t si = j / A;
    const auto algo = spec.algorithms[j % A];
    const auto seed = spec.seeds[si];
    const auto &sensors = deployments[si];
    const std::string name(cover_algorithm_name(algo));
    try {
      RandomSource rng(derive_seed(seed, 1));
      enhance::EnhancementRun run;
      switch (algo) {
      case CoverAlgorithm::Aaso: {
        auto cfg = spec.optimizer;
        cfg.seed = rng.seed();
        run = enhance::enhance_aaso(sensors, field, cfg, rng);
        break;
      }
      case CoverAlgorithm::Pso: {
        auto params = spec.pso;
        params.swarm = spec.optimizer.population;
        params.iters = spec.optimizer.max_iters;
        run = enhance::enhance_pso(sensors, field, params, rng);
        break;
      }
      case CoverAlgorithm::Vfa: {
        auto params = spec.vfa;
        params.max_iters = spec.optimizer.max_iters;
        run = enhance::enhance_vfa(sensors, field, params, rng);
        break;
      }
      }
      const auto tag = name + "_" + std::to_string(seed);
      std::string curve = "iter,covr\n";
      for (std::size_t t = 0; t < run.curve.size(); ++t)
        curve += std::to_string(t) + "," + fmt(run.curve[t]) + "\n";
      write_text(spec.output_dir / ("curve_" + tag + ".csv"), curve);

      std::vector<Sensor> final_layout;
      for (std::size_t i = 0; i < sensors.size(); ++i)
        final_layout.push_back(sensors[i].with_deviation(run.best_angles[i]));
      const auto fin = coverage::coverage(final_layout, field);
      write_text(spec.output_dir / ("layout_final_" + tag + ".svg"),
                 report::render_layout_svg(field, final_layout,
                                           name + ", seed " +
                                               std::to_string(seed) +
                                               ", coverage " + fmt(fin.rate),
                                           fin.covered));
      records[j] = RunRecord{name, seed, std::move(run)};
    } catch (const std::exception &e) {
      errors[j] = name + ":" + std::to_string(seed) + ": " + e.what();
    }
  });

  CoverOutcome outcome;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  std::string timing = "algorithm,seed,elapsed_seconds\n";
  for (std::size_t j = 0; j < jobs; ++j) {
    if (!records[j]) {
      outcome.failures.push_back(errors[j]);
      continue;
    }
    const auto &r = *records[j];
    nlohmann::ordered_json item;
    item["algorithm"] = r.algorithm;
    item["seed"] = r.seed;
    item["initial_rate"] = r.run.initial_rate;
    item["final_rate"] = r.run.final_rate;
    auto deg = nlohmann::ordered_json::array();
    for (double a : r.run.best_angles)
      deg.push_back(coverage::radians_to_degrees(a));
    item["angles_deg"] = std::move(deg);
    item["evaluations"] = r.run.evaluations;
    item["iterations"] = r.run.iterations;
    results.push_back(std::move(item));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", r.run.elapsed_seconds);
    timing += r.algorithm + "," + std::to_string(r.seed) + "," + buf + "\n";
    outcome.runs.push_back(std::move(*records[j]));
  }
  write_text(spec.output_dir / "results.json", results.dump(2) + "\n");
  write_text(spec.output_dir / "timing.csv", timing);

  std::string summary =
      "algorithm,runs,mean_initial_rate,mean_final_rate,std_final_rate\n";
  for (auto algo : spec.algorithms) {
    const std::string name(cover_algorithm_name(algo));
    std::vector<double> init, fin;
    for (const auto &r : outcome.runs)
      if (r.algorithm == name) {
        init.push_back(r.run.initial_rate);
        fin.push_back(r.run.final_rate);
      }
    summary += name + "," + std::to_string(fin.size()) + "," +
               fmt(mean_of(init)) + "," + fmt(mean_of(fin)) + "," +
               fmt(sample_std(fin)) + "\n";
  }
  write_text(spec.output_dir / "summary.csv", summary);
  return outcome;
}

BenchOutcome run_bench(const ExperimentSpec &spec) {
  ensure_writable(spec.output_dir);
  bench::CompareSettings settings;
  settings.dim = spec.dimension;
  settings.population = spec.optimizer.population;
  settings.iterations = spec.optimizer.max_iters;
  settings.aaso = spec.optimizer;
  settings.pso = spec.pso;
  settings.threads = spec.threads;

  BenchOutcome outcome;
  outcome.stats = bench::compare(spec.bench_algorithms, spec.functions,
                                 spec.runs, spec.base_seed, settings);
  std::string csv = "algorithm,function,runs,best,mean,std\n";
  for (const auto &s : outcome.stats) {
    csv += s.algorithm + "," + s.function + "," + std::to_string(s.runs) +
           "," + fmt(s.best) + "," + fmt(s.mean) + "," + fmt(s.std) + "\n";
    for (std::size_t r = 0; r < s.histories.size(); ++r) {
      std::string trace = "iter,best_fitness\n";
      for (std::size_t t = 0; t < s.histories[r].size(); ++t)
        trace += std::to_string(t) + "," + fmt(s.histories[r][t]) + "\n";
      write_text(spec.output_dir / ("trace_" + s.algorithm + "_" + s.function +
                                    "_" + std::to_string(r) + ".csv"),
                 trace);
    }
  }
  write_text(spec.output_dir / "bench_summary.csv", csv);
  return outcome;
}

AnalyzeReport run_analyze(double length_m, double width_m, std::size_t nodes,
                          double radius_m, double view_angle_deg,
                          std::optional<double> target) {
  if (!(length_m > 0.0 && width_m > 0.0))
    throw coverage::DomainError("area must be positive");
  AnalyzeReport rep;
  rep.area = length_m * width_m;
  rep.nodes = nodes;
  const double alpha = coverage::degrees_to_radians(view_angle_deg);
  rep.expected_coverage =
      coverage::expected_initial_coverage(nodes, radius_m, alpha, rep.area);
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "area %g m2, %zu nodes, radius %g m, view angle %g deg\n"
                "expected initial coverage: %.6f\n",
                rep.area, nodes, radius_m, view_angle_deg,
                rep.expected_coverage);
  os << buf;
  if (target) {
    rep.target = target;
    rep.required_nodes =
        coverage::required_nodes(*target, radius_m, alpha, rep.area);
    rep.saving = static_cast<long long>(*rep.required_nodes) -
                 static_cast<long long>(nodes);
    std::snprintf(buf, sizeof buf,
                  "required nodes for coverage %.6g: %zu\n"
                  "saving versus %zu deployed: %lld\n",
                  *target, *rep.required_nodes, nodes, *rep.saving);
    os << buf;
  }
  rep.text = os.str();
  return rep;
}

std::pair<double, double> parse_area(const std::string &text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos)
    throw std::invalid_argument("area must look like LxW, got '" + text + "'");
  return {to_double(trim(text.substr(0, x))), to_double(trim(text.substr(x + 1)))};
}

} // namespace aaso::experiment
