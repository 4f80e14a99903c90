#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "aaso/deployment_io.hpp"
#include "aaso/experiment.hpp"
#include "aaso/svg.hpp"

using namespace aaso;
using namespace aaso::experiment;
namespace fs = std::filesystem;

constexpr double pi = std::numbers::pi;

namespace {

fs::path scratch(const std::string &name) {
  const auto dir = fs::temp_directory_path() / ("aaso_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t count_files(const fs::path &dir, const std::string &prefix) {
  std::size_t n = 0;
  for (const auto &e : fs::directory_iterator(dir))
    n += e.path().filename().string().rfind(prefix, 0) == 0;
  return n;
}

} // namespace

TEST_CASE("minimal config takes the defaults") {
  const auto spec = parse_config_text(
      "kind = cover\narea_length_m = 500\narea_width_m = 500\n");
  CHECK(spec.kind == Kind::Cover);
  CHECK(spec.optimizer.population == 50);
  CHECK(spec.optimizer.max_iters == 100);
  CHECK(spec.optimizer.attack_coeff == 2.0);
  CHECK(spec.node_count == 110);
  CHECK(spec.radius_m == 60.0);
  CHECK(spec.grid_interval_m == 5.0);
  CHECK(spec.view_angle == doctest::Approx(pi / 2));
  CHECK(spec.algorithms.size() == 3);
}

TEST_CASE("degrees are converted once") {
  const auto spec = parse_config_text("view_angle_deg = 90\n");
  CHECK(spec.view_angle == pi / 2);
}

TEST_CASE("config diagnostics carry line numbers") {
  auto line_of = [](const std::string &text) {
    try {
      parse_config_text(text, "t.cfg");
    } catch (const ConfigParseError &e) {
      return std::make_pair(e.line(), std::string(e.what()));
    }
    return std::make_pair(std::size_t(999), std::string());
  };
  auto [l1, m1] = line_of("kind = cover\n\nbogus = 1\n");
  CHECK(l1 == 3);
  CHECK(m1.find("t.cfg:3") != std::string::npos);
  CHECK(line_of("kind = cover\nradius_m = abc\n").first == 2);
  CHECK(line_of("population\n").first == 1);
  CHECK(line_of("seeds = 5..1\n").first == 1);
  CHECK(line_of("algorithms = aaso, ga\n").first == 1);
  CHECK(line_of("radius_m = 1\nradius_m = 2\n").first == 2);
  CHECK(line_of("kind = cover\ngrid_interval_m = 0\n").first == 2);
  CHECK(line_of("iterations = 0\n").first == 1);
  CHECK_THROWS_AS(parse_config_text("area_length_m = 4\ngrid_interval_m = 5\n"),
                  ConfigParseError);
  CHECK_THROWS_AS(parse_config_text("population = 3\n"), ConfigParseError);
  CHECK_THROWS_AS(parse_config_text("view_angle_deg = 400\n"),
                  ConfigParseError);
}

TEST_CASE("seed lists") {
  CHECK(parse_seed_list("1..3") == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(parse_seed_list("4, 9,2..3") ==
        std::vector<std::uint64_t>{4, 9, 2, 3});
  CHECK_THROWS(parse_seed_list(""));
  CHECK_THROWS(parse_seed_list("x"));
}

TEST_CASE("bench config defaults") {
  const auto spec = parse_config_text("kind = bench\nruns = 3\n");
  CHECK(spec.optimizer.population == 30);
  CHECK(spec.optimizer.max_iters == 1000);
  CHECK(spec.functions == bench::benchmark_names());
  CHECK(spec.pso.w_max == 0.9);
  CHECK_THROWS(parse_config_text("kind = bench\nruns = 1\n"));
  CHECK_THROWS(parse_config_text("kind = bench\nfunctions = sphere, nope\n"));
}

TEST_CASE("svg sector endpoints") {
  RandomSource rng(3);
  const coverage::CoverageField f(300, 200, 5);
  const auto sensors = coverage::random_deployment(f, 20, 40, pi / 3, rng);
  const auto svg = report::render_layout_svg(f, sensors, "t");
  CHECK(svg.find("translate(0,200) scale(1,-1)") != std::string::npos);
  const std::regex path_re(
      R"(M (\S+) (\S+) L (\S+) (\S+) A \S+ \S+ 0 [01] 1 (\S+) (\S+) Z)");
  std::size_t k = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), path_re);
       it != std::sregex_iterator(); ++it, ++k) {
    REQUIRE(k < sensors.size());
    const auto &s = sensors[k];
    auto v = [&](int i) { return std::stod((*it)[i].str()); };
    const double a0 = s.deviation - s.view_angle / 2;
    const double a1 = s.deviation + s.view_angle / 2;
    CHECK(std::abs(v(1) - s.x) <= 1e-6);
    CHECK(std::abs(v(2) - s.y) <= 1e-6);
    CHECK(std::abs(v(3) - (s.x + s.radius * std::cos(a0))) <= 1e-6);
    CHECK(std::abs(v(4) - (s.y + s.radius * std::sin(a0))) <= 1e-6);
    CHECK(std::abs(v(5) - (s.x + s.radius * std::cos(a1))) <= 1e-6);
    CHECK(std::abs(v(6) - (s.y + s.radius * std::sin(a1))) <= 1e-6);
  }
  CHECK(k == sensors.size());
}

TEST_CASE("svg large arcs and full discs") {
  const auto wide = report::sector_geometry(
      coverage::Sensor::make(0, 0, 1, 1.5 * pi, 0));
  CHECK(wide.large_arc);
  const auto disc = report::sector_geometry(
      coverage::Sensor::make(0, 0, 1, 2 * pi, 0));
  CHECK(disc.full_disc);
}

TEST_CASE("deployment files round-trip") {
  RandomSource rng(8);
  const coverage::CoverageField f(100, 100, 5);
  const auto sensors = coverage::random_deployment(f, 7, 25, pi / 2, rng);
  std::stringstream io;
  coverage::write_deployment(io, sensors);
  const auto back = coverage::read_deployment(io);
  REQUIRE(back.size() == sensors.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].x == sensors[i].x);
    CHECK(back[i].radius == sensors[i].radius);
    CHECK(back[i].view_angle == doctest::Approx(sensors[i].view_angle));
    CHECK(back[i].deviation == doctest::Approx(sensors[i].deviation));
  }
  std::istringstream bad("# header\n1 2 3 90\n");
  CHECK_THROWS_WITH(coverage::read_deployment(bad),
                    doctest::Contains("line 2"));
}

TEST_CASE("cover run writes every artifact and is reproducible") {
  const auto dir = scratch("cover");
  auto spec = parse_config_text("kind = cover\narea_length_m = 150\n"
                                "area_width_m = 120\nnode_count = 10\n"
                                "radius_m = 30\npopulation = 8\n"
                                "iterations = 10\nseeds = 1..2\n");
  spec.output_dir = dir;
  const auto out = run_cover(spec);
  CHECK(out.failures.empty());
  CHECK(out.runs.size() == 6);
  CHECK(count_files(dir, "layout_initial_") == 2);
  CHECK(count_files(dir, "layout_final_") == 6);
  CHECK(count_files(dir, "curve_") == 6);
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "timing.csv"));
  CHECK(fs::exists(dir / "deployment_1.txt"));

  const auto curve = slurp(dir / "curve_aaso_1.csv");
  CHECK(curve.rfind("iter,covr\n0,", 0) == 0);

  const auto results = nlohmann::json::parse(slurp(dir / "results.json"));
  REQUIRE(results.size() == 6);
  for (const auto &r : results) {
    for (const char *key : {"initial_rate", "final_rate", "angles_deg",
                            "evaluations", "iterations", "seed", "algorithm"})
      CHECK(r.contains(key));
    CHECK(r["angles_deg"].size() == 10);
  }

  // Summary means recompute from results.json.
  std::istringstream summary(slurp(dir / "summary.csv"));
  std::string line;
  std::getline(summary, line);
  CHECK(line == "algorithm,runs,mean_initial_rate,mean_final_rate,"
                "std_final_rate");
  while (std::getline(summary, line)) {
    const auto name = line.substr(0, line.find(','));
    double sum = 0;
    int n = 0;
    for (const auto &r : results)
      if (r["algorithm"] == name) {
        sum += r["final_rate"].get<double>();
        ++n;
      }
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');)
      cols.push_back(c);
    CHECK(std::stoi(cols[1]) == n);
    CHECK(std::stod(cols[3]) == doctest::Approx(sum / n).epsilon(1e-15));
  }

  const auto first_json = slurp(dir / "results.json");
  const auto first_curve = slurp(dir / "curve_pso_2.csv");
  const auto first_svg = slurp(dir / "layout_final_vfa_1.svg");
  run_cover(spec);
  CHECK(slurp(dir / "results.json") == first_json);
  CHECK(slurp(dir / "curve_pso_2.csv") == first_curve);
  CHECK(slurp(dir / "layout_final_vfa_1.svg") == first_svg);
  fs::remove_all(dir);
}

TEST_CASE("cover run imports a deployment") {
  const auto dir = scratch("import");
  fs::create_directories(dir);
  {
    std::ofstream dep(dir / "in.txt");
    dep << "# x, y, r, view, dev\n50, 50, 30, 90, 0\n20 80 30 90 180\n";
  }
  auto spec = parse_config_text("kind = cover\narea_length_m = 100\n"
                                "area_width_m = 100\nalgorithms = vfa\n"
                                "iterations = 5\n");
  spec.sensors_file = (dir / "in.txt").string();
  spec.output_dir = dir / "out";
  const auto out = run_cover(spec);
  REQUIRE(out.runs.size() == 1);
  CHECK(out.runs[0].run.best_angles.size() == 2);
  spec.sensors_file = (dir / "missing.txt").string();
  CHECK_THROWS_AS(run_cover(spec), IoError);
  fs::remove_all(dir);
}

TEST_CASE("unwritable output directory aborts before running") {
  const auto dir = scratch("blocked");
  fs::create_directories(dir);
  { std::ofstream(dir / "file") << "x"; }
  auto spec = parse_config_text("kind = cover\n");
  spec.output_dir = dir / "file" / "sub";
  CHECK_THROWS_AS(run_cover(spec), IoError);
  fs::remove_all(dir);
}

TEST_CASE("bench run accounting") {
  const auto dir = scratch("bench");
  auto spec = parse_config_text("kind = bench\nruns = 2\nfunctions = sphere\n"
                                "algorithms = aaso, random\ndimension = 4\n"
                                "population = 6\niterations = 15\n");
  spec.output_dir = dir;
  const auto out = run_bench(spec);
  CHECK(out.stats.size() == 2);
  CHECK(count_files(dir, "trace_") == 4);
  std::istringstream csv(slurp(dir / "bench_summary.csv"));
  std::string line;
  std::size_t rows = 0;
  std::getline(csv, line);
  CHECK(line == "algorithm,function,runs,best,mean,std");
  while (std::getline(csv, line))
    ++rows;
  CHECK(rows == 2);
  const auto before = slurp(dir / "bench_summary.csv");
  run_bench(spec);
  CHECK(slurp(dir / "bench_summary.csv") == before);
  fs::remove_all(dir);
}

TEST_CASE("analyze report") {
  const auto rep = run_analyze(500, 500, 110, 60, 90, 0.8752);
  CHECK(rep.expected_coverage == doctest::Approx(0.7139).epsilon(7e-4));
  CHECK(*rep.required_nodes == 183);
  CHECK(*rep.saving == 73);
  CHECK(rep.text.find("183") != std::string::npos);
  const auto huge = run_analyze(500, 500, 110, 60, 90, 0.9999999);
  CHECK(*huge.required_nodes > 183);
  CHECK_THROWS(run_analyze(500, 500, 110, 60, 90, 1.0));
  CHECK(parse_area("500x400") == std::pair{500.0, 400.0});
  CHECK_THROWS(parse_area("500"));
}
