#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dscsim/dscsim.h"

namespace fs = std::filesystem;

namespace {

const char* kConfig = R"([model]
omega0 = 0
omega = 0.23
g = 0.15
n_trunc = 32
[grid]
t_max = 10
dt = 0.5
[design]
)";

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("dscsim_capi_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const auto path = dir / "run.ini";
  std::ofstream(path) << text;
  return path;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + DSCSIM_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(dsc_version()) == "0.1.0");
  CHECK(std::string(dsc_status_name(DSC_OK)) == "ok");
  CHECK(std::string(dsc_status_name(DSC_ERR_CONFIG)) == "config error");
}

TEST_CASE("config handles") {
  dsc_config* cfg = nullptr;
  REQUIRE(dsc_config_parse(kConfig, &cfg) == DSC_OK);
  dsc_params p{};
  REQUIRE(dsc_config_params(cfg, &p) == DSC_OK);
  CHECK(p.omega == 0.23);
  CHECK(p.n_trunc == 32);
  CHECK(std::string(dsc_config_output_dir(cfg)) == "out");
  CHECK(dsc_config_image(cfg) == 0);
  dsc_config_free(cfg);

  dsc_config* bad = nullptr;
  CHECK(dsc_config_parse("[model]\nomega0 = 0\nomega = 0\ng = 1\n", &bad) == DSC_ERR_CONFIG);
  CHECK(bad == nullptr);
  CHECK(std::string(dsc_last_error()).find("omega must be > 0") != std::string::npos);
  CHECK(dsc_config_parse(nullptr, &bad) == DSC_ERR_INVALID_ARGUMENT);
  CHECK(dsc_config_load("/nonexistent.ini", &bad) == DSC_ERR_IO);
}

TEST_CASE("trajectory handles") {
  const dsc_params p{0.0, 0.23, 0.15, 64};
  dsc_trajectory* traj = nullptr;
  const double half = M_PI / 0.23;
  REQUIRE(dsc_trajectory_run_fock(&p, 'e', 0, half, half, &traj) == DSC_OK);
  CHECK(dsc_trajectory_points(traj) == 2);
  CHECK(dsc_trajectory_sites(traj) == 64);
  dsc_observables o{};
  REQUIRE(dsc_trajectory_observables(traj, 1, &o) == DSC_OK);
  CHECK(o.p_revival == doctest::Approx(0.18244194768891175).epsilon(1e-9));
  CHECK(dsc_trajectory_observables(traj, 2, &o) == DSC_ERR_DIMENSION);
  std::vector<double> dist(64);
  CHECK(dsc_trajectory_photon_distribution(traj, 1, dist.data(), dist.size()) == DSC_OK);
  CHECK(dsc_trajectory_photon_distribution(traj, 1, dist.data(), 3) == DSC_ERR_DIMENSION);
  CHECK(dsc_trajectory_truncation_flag(traj) == 0);
  dsc_trajectory_free(traj);

  std::vector<double> e(2 * 4, 0.0), g(2 * 4, 0.0);
  e[0] = 1.0;
  const dsc_params small{0.1, 0.23, 0.15, 4};
  REQUIRE(dsc_trajectory_run(&small, e.data(), g.data(), 1.0, 0.5, &traj) == DSC_OK);
  dsc_trajectory_free(traj);
  e[0] = 0.5;
  CHECK(dsc_trajectory_run(&small, e.data(), g.data(), 1.0, 0.5, &traj) ==
        DSC_ERR_INVALID_ARGUMENT);
  CHECK(dsc_trajectory_run_fock(&small, 'x', 0, 1.0, 0.5, &traj) == DSC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("closed forms through the C API") {
  const dsc_params p{0.0, 0.23, 0.15, 64};
  double v = 0.0;
  REQUIRE(dsc_lf_period(&p, &v) == DSC_OK);
  CHECK(v == doctest::Approx(27.31819698773733));
  REQUIRE(dsc_lf_mean_photon(&p, 0.5 * v, &v) == DSC_OK);
  CHECK(v == doctest::Approx(1.7013232514177687));
  const dsc_params detuned{0.04, 0.23, 0.15, 64};
  CHECK(dsc_lf_revival(&detuned, 1.0, &v) == DSC_ERR_DOMAIN);
}

TEST_CASE("commands through the C API") {
  dsc_config* cfg = nullptr;
  REQUIRE(dsc_config_parse(kConfig, &cfg) == DSC_OK);
  const auto dir = scratch("commands");
  dsc_report* summary = nullptr;

  REQUIRE(dsc_simulate(cfg, (dir / "sim").c_str(), 1, &summary) == DSC_OK);
  CHECK(std::string(dsc_report_text(summary)).find("timeseries.csv") != std::string::npos);
  dsc_report_free(summary);
  CHECK(fs::exists(dir / "sim" / "intensity_map.pgm"));

  const double list[] = {0.0, 0.04};
  REQUIRE(dsc_sweep(cfg, list, 2, 2, (dir / "sweep").c_str(), nullptr) == DSC_OK);
  CHECK(fs::exists(dir / "sweep" / "sweep.csv"));

  REQUIRE(dsc_design(cfg, (dir / "design").c_str(), nullptr) == DSC_OK);
  dsc_report* report = nullptr;
  CHECK(dsc_verify_recipe(cfg, (dir / "design" / "recipe.csv").c_str(), &report) == DSC_OK);
  CHECK(dsc_report_passed(report) == 1);
  dsc_report_free(report);
  dsc_config_free(cfg);
}

TEST_CASE("validate through the C API") {
  dsc_report* report = nullptr;
  REQUIRE(dsc_validate(&report) == DSC_OK);
  CHECK(dsc_report_passed(report) == 1);
  CHECK(std::string(dsc_report_text(report)).find("properties passed") != std::string::npos);
  dsc_report_free(report);
}

TEST_CASE("command line exit codes") {
  const auto dir = scratch("cli");
  const auto cfg = write_config(dir, kConfig);
  const std::string c = " --config \"" + cfg.string() + "\"";

  CHECK(run_cli("simulate" + c + " --out \"" + (dir / "a").string() + "\"") == 0);
  CHECK(run_cli("simulate" + c + " --out \"" + (dir / "b").string() + "\"") == 0);
  CHECK(slurp(dir / "a" / "timeseries.csv") == slurp(dir / "b" / "timeseries.csv"));
  CHECK(slurp(dir / "a" / "intensity_map.csv") == slurp(dir / "b" / "intensity_map.csv"));

  CHECK(run_cli("sweep" + c + " --omega0-list=-0.04,0.04 --jobs 2 --out \"" +
                (dir / "s").string() + "\"") == 0);
  CHECK(run_cli("sweep" + c + " --omega0-list=abc") == 1);

  const auto design_dir = dir / "d";
  CHECK(run_cli("design" + c + " --out \"" + design_dir.string() + "\"") == 0);
  CHECK(run_cli("design" + c + " --verify \"" + (design_dir / "recipe.csv").string() + "\"") == 0);

  // Nudge one spacing by half a micron and the check must fail.
  std::string table = slurp(design_dir / "recipe.csv");
  const auto row = table.find("\n3,");
  REQUIRE(row != std::string::npos);
  const auto start = row + 3;
  const auto end = table.find(',', start);
  const double spacing = std::stod(table.substr(start, end - start));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", spacing + 0.5);
  table.replace(start, end - start, buf);
  std::ofstream(design_dir / "edited.csv", std::ios::binary) << table;
  CHECK(run_cli("design" + c + " --verify \"" + (design_dir / "edited.csv").string() + "\"") == 3);

  CHECK(run_cli("simulate") == 1);
  CHECK(run_cli("simulate --config /nonexistent.ini") == 1);
  const auto bad = write_config(dir / "a", "[model]\nomega0 = 0\nomega = 0\ng = 1\n");
  CHECK(run_cli("simulate --config \"" + bad.string() + "\"") == 1);
  const auto far = write_config(dir / "b", "[model]\nomega0 = 0\nomega = 0.23\ng = 10\n[design]\n");
  CHECK(run_cli("design --config \"" + far.string() + "\"") == 2);
  CHECK(run_cli("validate") == 0);
}
