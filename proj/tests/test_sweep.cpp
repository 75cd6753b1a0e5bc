#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "lorentzqi/sweep.hpp"

using namespace lqi;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lqi_test_sweep_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("linspace") {
  const auto v = linspace(0, 2 * kPi, 361);
  CHECK(v.size() == 361);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 2 * kPi);
  CHECK(v[180] == doctest::Approx(kPi).epsilon(1e-15));
  const auto two = linspace(-1, 1, 2);
  CHECK(two == std::vector<double>{-1, 1});
}

TEST_CASE("validate_spec rejects bad grids") {
  SweepSpec s;
  CHECK_NOTHROW(validate_spec(s));
  s.steps = 1;
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);
  s.steps = 10;
  s.phi_end = s.phi_start;
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);
  s.phi_end = std::nan("");
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);
  s.phi_end = 1;
  s.secondary = SecondaryGrid{"p", {0.5}};
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);
  s.secondary = SecondaryGrid{"x", {}};
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);
  s.secondary = SecondaryGrid::uniform("x", -1, 1, 2000);
  s.steps = 1000;
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);
}

TEST_CASE("with_parameter") {
  const auto f = with_parameter(XState{0, 0, 0}, "cyy", 0.4);
  CHECK(std::get<XState>(f).cyy == 0.4);
  CHECK(std::get<Werner>(with_parameter(Werner{1}, "x", 0.2)).x == 0.2);
  CHECK_THROWS_AS(with_parameter(Werner{1}, "p", 0.2), InvalidSpec);
}

TEST_CASE("sweep rejects out-of-range family parameters") {
  SweepSpec s;
  s.family = Werner{};
  s.secondary = SecondaryGrid{"x", {0.5, 1.5}};
  CHECK_THROWS_AS(evaluate_sweep(s), OutOfRange);
}

TEST_CASE("CSV output shape") {
  const auto dir = scratch_dir("csv");
  SweepSpec s;
  s.family = Werner{1.0};
  s.steps = 37;
  s.output_path = dir / "out.csv";
  const auto r = run_sweep(s);
  CHECK(r.rows.size() == 37);
  const auto text = lines(slurp(s.output_path));
  REQUIRE(text.size() == 38);
  CHECK(text[0] == kCsvHeader);
  for (std::size_t i = 1; i < text.size(); ++i) {
    std::istringstream row(text[i]);
    std::vector<std::string> cells;
    for (std::string c; std::getline(row, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 10);
    CHECK(cells[1].empty());
    for (std::size_t j : {0, 2, 3, 4, 5, 6, 7, 8}) CHECK(std::isfinite(std::stod(cells[j])));
    CHECK((cells[9] == "true" || cells[9] == "false"));
  }
  CHECK_FALSE(fs::exists(dir / "out.csv.tmp"));
}

TEST_CASE("first record of a two-step singlet sweep") {
  SweepSpec s;
  s.steps = 2;
  const auto r = evaluate_sweep(s);
  REQUIRE(r.rows.size() == 2);
  const auto& m = r.rows[0].metrics;
  CHECK(m.phi == 0.0);
  CHECK(m.concurrence == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.negativity == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.entropy_global < 1e-12);
  CHECK(m.purity == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.physical);
  CHECK(r.rows[1].metrics.phi == 2 * kPi);
}

TEST_CASE("Werner grid at phi = 0 reproduces the closed form") {
  SweepSpec s;
  s.family = Werner{};
  s.steps = 5;
  s.secondary = SecondaryGrid::uniform("x", -1, 1, 21);
  const auto r = evaluate_sweep(s);
  REQUIRE(r.rows.size() == 105);
  for (std::size_t k = 0; k < 21; ++k) {
    const auto& row = r.rows[k * 5];
    REQUIRE(row.param);
    CHECK(row.metrics.phi == 0.0);
    CHECK(std::abs(row.metrics.concurrence - std::max(0.0, (3 * *row.param - 1) / 2)) < 1e-10);
    CHECK(row.metrics.physical == (*row.param >= -1.0 / 3 - 1e-12));
  }
  CHECK(r.report.unphysical_points > 0);
  CHECK(r.report.worst_min_eigenvalue < 0);
}

TEST_CASE("JSON output shape") {
  const auto dir = scratch_dir("json");
  SweepSpec s;
  s.family = GenericPure{};
  s.steps = 11;
  s.secondary = SecondaryGrid{"p", {0.0, 0.6}};
  s.format = OutputFormat::Json;
  s.output_path = dir / "out.json";
  run_sweep(s);
  const auto doc = nlohmann::json::parse(slurp(s.output_path));
  REQUIRE(doc["records"].size() == 22);
  const auto& rec = doc["records"][12];
  for (const char* key : {"phi", "param", "concurrence", "negativity", "entropy", "entropy_a", "entropy_b", "purity",
                          "min_eig", "physical"})
    CHECK(rec.contains(key));
  CHECK(rec["param"].get<double>() == 0.6);
  CHECK(doc["report"]["total_points"].get<int>() == 22);
  CHECK(doc["report"].contains("worst_point"));
  CHECK(doc["report"].contains("choi_min_eigenvalue_at_worst"));
}

TEST_CASE("unphysical points are flagged and reported") {
  SweepSpec s;
  s.family = Werner{1.0};
  s.steps = 361;
  const auto r = evaluate_sweep(s);
  CHECK(r.report.unphysical_points > 0);
  CHECK(r.report.worst_min_eigenvalue < -0.1);
  CHECK(r.report.choi_min_eigenvalue_at_worst < 0);
  std::size_t flagged = 0;
  for (const auto& row : r.rows) flagged += !row.metrics.physical;
  CHECK(flagged == r.report.unphysical_points);
}

TEST_CASE("sweep output is deterministic and independent of thread count") {
  SweepSpec s;
  s.family = Werner{};
  s.steps = 91;
  s.secondary = SecondaryGrid::uniform("x", -1, 1, 31);
  ::setenv("THREADS", "1", 1);
  CHECK(sweep_thread_count() == 1);
  const auto serial = to_csv(evaluate_sweep(s));
  ::setenv("THREADS", "7", 1);
  CHECK(sweep_thread_count() == 7);
  const auto parallel = to_csv(evaluate_sweep(s));
  ::unsetenv("THREADS");
  const auto again = to_csv(evaluate_sweep(s));
  CHECK(serial == parallel);
  CHECK(serial == again);
}

TEST_CASE("atomic write failures raise IoError") {
  CHECK_THROWS_AS(write_file_atomically("/nonexistent-dir/x.csv", "a"), IoError);
  CHECK_THROWS_AS(write_file_atomically("", "a"), IoError);
  SweepSpec s;
  s.steps = 3;
  CHECK_THROWS_AS(run_sweep(s), IoError);
}

TEST_CASE("atomic write replaces existing contents") {
  const auto dir = scratch_dir("replace");
  write_file_atomically(dir / "f", "one");
  write_file_atomically(dir / "f", "two");
  CHECK(slurp(dir / "f") == "two");
}

TEST_CASE("presets") {
  for (auto name : kPresetNames) CHECK_FALSE(preset_datasets(name).empty());
  CHECK_THROWS_AS(preset_datasets("fig6"), UnknownPreset);

  const auto dir = scratch_dir("preset");
  PresetOptions o;
  o.phi_steps = 13;
  o.param_steps = 5;
  o.output_dir = dir;
  const auto out = run_preset("fig2", o);
  REQUIRE(out.size() == 3);
  for (const auto& d : out) {
    CHECK(fs::exists(d.path));
    CHECK(d.path.extension() == ".csv");
    CHECK(lines(slurp(d.path)).size() == 14);
  }
  const auto fig4 = preset_datasets("fig4", o);
  REQUIRE(fig4.size() == 2);
  CHECK(fig4[0].spec.grid_size() == 3 * 13);
}

TEST_CASE("format parsing") {
  CHECK(parse_output_format("csv") == OutputFormat::Csv);
  CHECK(parse_output_format("json") == OutputFormat::Json);
  CHECK_FALSE(parse_output_format("xml"));
  CHECK(extension(OutputFormat::Json) == "json");
}
