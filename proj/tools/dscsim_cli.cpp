// Command-line driver over the dscsim C API.
//
// Exit codes: 0 success, 1 usage/config error, 2 numeric/feasibility error,
// 3 validation failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dscsim/dscsim.h"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kNumeric = 2, kValidation = 3 };

int exit_code(dsc_status status) {
  switch (status) {
    case DSC_OK:
      return kOk;
    case DSC_ERR_INVALID_ARGUMENT:
    case DSC_ERR_CONFIG:
    case DSC_ERR_IO:
      return kUsage;
    case DSC_ERR_VALIDATION:
      return kValidation;
    default:
      return kNumeric;
  }
}

int report_failure(dsc_status status) {
  std::cerr << "error (" << dsc_status_name(status) << "): " << dsc_last_error()
            << '\n';
  return exit_code(status);
}

struct ConfigHandle {
  dsc_config* ptr = nullptr;
  ~ConfigHandle() { dsc_config_free(ptr); }
};

struct ReportHandle {
  dsc_report* ptr = nullptr;
  ~ReportHandle() { dsc_report_free(ptr); }
  void print() const {
    if (ptr) std::cout << dsc_report_text(ptr);
  }
};

std::optional<std::vector<double>> parse_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Rabi parity-chain simulator and waveguide-array designer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dsc_version());

  std::string config_path;
  std::string out_dir;
  bool image = false;
  std::string omega0_list;
  unsigned jobs = 1;
  std::string verify_path;

  auto* simulate = app.add_subcommand("simulate", "Propagate and write time series / intensity map");
  simulate->add_option("--config", config_path, "Config file")->required();
  simulate->add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  simulate->add_flag("--image", image, "Also write an 8-bit PGM intensity image");

  auto* sweep = app.add_subcommand("sweep", "First-bounce extrema over a list of signed omega0");
  sweep->add_option("--config", config_path, "Config file")->required();
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--omega0-list", omega0_list,
                    "Comma-separated omega0 values, mm^-1 (default -0.08,-0.04,0,0.04,0.08)");
  sweep->add_option("--jobs", jobs, "Parallel sweep points")->check(CLI::PositiveNumber);

  auto* design = app.add_subcommand("design", "Write the waveguide-array fabrication recipe");
  design->add_option("--config", config_path, "Config file")->required();
  design->add_option("--out", out_dir, "Output directory");
  design->add_option("--verify", verify_path,
                     "Verify an existing recipe table instead of designing");

  auto* validate = app.add_subcommand("validate", "Run the invariant and oracle suite");
  validate->add_option("--config", config_path, "Ignored; accepted for symmetry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (validate->parsed()) {
    ReportHandle report;
    const dsc_status status = dsc_validate(&report.ptr);
    report.print();
    return status == DSC_OK ? kOk : report_failure(status);
  }

  ConfigHandle config;
  if (const dsc_status status = dsc_config_load(config_path.c_str(), &config.ptr);
      status != DSC_OK) {
    return report_failure(status);
  }
  const char* dir = out_dir.empty() ? nullptr : out_dir.c_str();

  ReportHandle report;
  dsc_status status = DSC_OK;
  if (simulate->parsed()) {
    status = dsc_simulate(config.ptr, dir, image || dsc_config_image(config.ptr),
                          &report.ptr);
  } else if (sweep->parsed()) {
    std::vector<double> list;
    if (!omega0_list.empty()) {
      const auto parsed = parse_list(omega0_list);
      if (!parsed) {
        std::cerr << "error: --omega0-list must be comma-separated numbers\n";
        return kUsage;
      }
      list = *parsed;
    }
    status = dsc_sweep(config.ptr, list.data(), list.size(), jobs, dir,
                       &report.ptr);
  } else if (design->parsed()) {
    status = verify_path.empty()
                 ? dsc_design(config.ptr, dir, &report.ptr)
                 : dsc_verify_recipe(config.ptr, verify_path.c_str(), &report.ptr);
  }
  report.print();
  return status == DSC_OK ? kOk : report_failure(status);
}
