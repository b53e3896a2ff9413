#include "dscsim/dscsim.h"

#include <algorithm>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "dscsim/analytic.hpp"
#include "dscsim/commands.hpp"
#include "dscsim/config.hpp"
#include "dscsim/dynamics.hpp"
#include "dscsim/error.hpp"
#include "dscsim/output.hpp"
#include "dscsim/validate.hpp"

struct dsc_config {
  dscsim::RunConfig config;
  std::string output_dir;
};

struct dsc_trajectory {
  dscsim::Trajectory trajectory;
};

struct dsc_report {
  std::string text;
  bool passed = true;
};

namespace {

thread_local std::string last_error;

dsc_status status_of(dscsim::ErrorKind kind) {
  using dscsim::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidArgument: return DSC_ERR_INVALID_ARGUMENT;
    case ErrorKind::Dimension: return DSC_ERR_DIMENSION;
    case ErrorKind::Domain: return DSC_ERR_DOMAIN;
    case ErrorKind::Range: return DSC_ERR_RANGE;
    case ErrorKind::Numeric: return DSC_ERR_NUMERIC;
    case ErrorKind::Feasibility: return DSC_ERR_FEASIBILITY;
    case ErrorKind::Config: return DSC_ERR_CONFIG;
    case ErrorKind::Io: return DSC_ERR_IO;
  }
  return DSC_ERR_INTERNAL;
}

dsc_status fail(dsc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename Fn>
dsc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const dscsim::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DSC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DSC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DSC_ERR_INTERNAL, "unknown error");
  }
}

#define DSC_REQUIRE(cond, what) \
  if (!(cond)) return fail(DSC_ERR_INVALID_ARGUMENT, what)

dscsim::RabiParams to_params(const dsc_params& p) {
  return {p.omega0, p.omega, p.g, p.n_trunc};
}

std::filesystem::path directory(const dsc_config* config, const char* out_dir) {
  return out_dir ? std::filesystem::path(out_dir) : config->config.output_dir;
}

void emit(dsc_report** summary, std::string text, bool passed = true) {
  if (summary) *summary = new dsc_report{std::move(text), passed};
}

dscsim::ComplexVector unpack(const double* interleaved, std::size_t n) {
  dscsim::ComplexVector v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = {interleaved[2 * k], interleaved[2 * k + 1]};
  }
  return v;
}

dsc_config* wrap(dscsim::RunConfig cfg) {
  auto dir = cfg.output_dir.generic_string();
  return new dsc_config{std::move(cfg), std::move(dir)};
}

}  // namespace

extern "C" {

const char* dsc_version(void) { return "0.1.0"; }

const char* dsc_last_error(void) { return last_error.c_str(); }

const char* dsc_status_name(dsc_status status) {
  switch (status) {
    case DSC_OK: return "ok";
    case DSC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DSC_ERR_CONFIG: return "config error";
    case DSC_ERR_IO: return "i/o error";
    case DSC_ERR_DIMENSION: return "dimension error";
    case DSC_ERR_DOMAIN: return "domain error";
    case DSC_ERR_RANGE: return "range error";
    case DSC_ERR_NUMERIC: return "numeric error";
    case DSC_ERR_FEASIBILITY: return "feasibility error";
    case DSC_ERR_VALIDATION: return "validation failure";
    case DSC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

dsc_status dsc_config_parse(const char* text, dsc_config** out) {
  DSC_REQUIRE(text && out, "dsc_config_parse: null argument");
  return guarded([&] {
    *out = wrap(dscsim::parse_config(text));
    return DSC_OK;
  });
}

dsc_status dsc_config_load(const char* path, dsc_config** out) {
  DSC_REQUIRE(path && out, "dsc_config_load: null argument");
  return guarded([&] {
    *out = wrap(dscsim::load_config(path));
    return DSC_OK;
  });
}

void dsc_config_free(dsc_config* config) { delete config; }

dsc_status dsc_config_params(const dsc_config* config, dsc_params* out) {
  DSC_REQUIRE(config && out, "dsc_config_params: null argument");
  const auto& m = config->config.model;
  *out = {m.omega0(), m.omega(), m.g(), m.n_trunc()};
  return DSC_OK;
}

const char* dsc_config_output_dir(const dsc_config* config) {
  return config ? config->output_dir.c_str() : nullptr;
}

int dsc_config_image(const dsc_config* config) {
  return config && config->config.image ? 1 : 0;
}

dsc_status dsc_simulate(const dsc_config* config, const char* out_dir,
                        int write_image, dsc_report** summary) {
  DSC_REQUIRE(config, "dsc_simulate: null config");
  return guarded([&] {
    auto result = dscsim::cmd_simulate(config->config,
                                       directory(config, out_dir),
                                       write_image != 0);
    emit(summary, std::move(result.summary));
    return DSC_OK;
  });
}

dsc_status dsc_sweep(const dsc_config* config, const double* omega0,
                     size_t count, unsigned jobs, const char* out_dir,
                     dsc_report** summary) {
  DSC_REQUIRE(config, "dsc_sweep: null config");
  DSC_REQUIRE(count == 0 || omega0, "dsc_sweep: null omega0 list");
  return guarded([&] {
    std::vector<double> list(omega0, omega0 + count);
    if (list.empty()) {
      list.assign(std::begin(dscsim::kSweepPaperList),
                  std::end(dscsim::kSweepPaperList));
    }
    auto result = dscsim::cmd_sweep(config->config, list, jobs,
                                    directory(config, out_dir));
    emit(summary, std::move(result.summary));
    return DSC_OK;
  });
}

dsc_status dsc_design(const dsc_config* config, const char* out_dir,
                      dsc_report** summary) {
  DSC_REQUIRE(config, "dsc_design: null config");
  return guarded([&] {
    auto result = dscsim::cmd_design(config->config, directory(config, out_dir));
    emit(summary, std::move(result.summary));
    return DSC_OK;
  });
}

dsc_status dsc_verify_recipe(const dsc_config* config, const char* recipe_path,
                             dsc_report** report) {
  DSC_REQUIRE(config && recipe_path, "dsc_verify_recipe: null argument");
  return guarded([&] {
    const auto r = dscsim::verify_recipe_file(config->config, recipe_path);
    std::ostringstream os;
    dscsim::output::write_recipe_report(os, r);
    const bool passed = r.passes();
    emit(report, os.str(), passed);
    if (!passed) {
      return fail(DSC_ERR_VALIDATION, "recipe deviates from its targets by " +
                                          dscsim::output::format_number(
                                              r.max_deviation()));
    }
    return DSC_OK;
  });
}

dsc_status dsc_validate(dsc_report** report) {
  return guarded([&] {
    const auto r = dscsim::run_validation();
    const bool passed = r.all_passed();
    emit(report, r.to_text(), passed);
    if (!passed) return fail(DSC_ERR_VALIDATION, "validation suite failed");
    return DSC_OK;
  });
}

const char* dsc_report_text(const dsc_report* report) {
  return report ? report->text.c_str() : nullptr;
}

int dsc_report_passed(const dsc_report* report) {
  return report && report->passed ? 1 : 0;
}

void dsc_report_free(dsc_report* report) { delete report; }

dsc_status dsc_trajectory_run(const dsc_params* params, const double* amp_e,
                              const double* amp_g, double t_max, double dt,
                              dsc_trajectory** out) {
  DSC_REQUIRE(params && amp_e && amp_g && out,
              "dsc_trajectory_run: null argument");
  return guarded([&] {
    const auto p = to_params(*params);
    dscsim::FullState initial(unpack(amp_e, p.n_trunc()),
                              unpack(amp_g, p.n_trunc()));
    *out = new dsc_trajectory{dscsim::run_trajectory(p, initial, t_max, dt)};
    return DSC_OK;
  });
}

dsc_status dsc_trajectory_run_fock(const dsc_params* params, char qubit,
                                   size_t photons, double t_max, double dt,
                                   dsc_trajectory** out) {
  DSC_REQUIRE(params && out, "dsc_trajectory_run_fock: null argument");
  DSC_REQUIRE(qubit == 'e' || qubit == 'g',
              "dsc_trajectory_run_fock: qubit must be 'e' or 'g'");
  return guarded([&] {
    const auto p = to_params(*params);
    const auto q = qubit == 'e' ? dscsim::Qubit::Excited : dscsim::Qubit::Ground;
    const auto initial = dscsim::FullState::fock(q, photons, p.n_trunc());
    *out = new dsc_trajectory{dscsim::run_trajectory(p, initial, t_max, dt)};
    return DSC_OK;
  });
}

size_t dsc_trajectory_points(const dsc_trajectory* traj) {
  return traj ? traj->trajectory.size() : 0;
}

size_t dsc_trajectory_sites(const dsc_trajectory* traj) {
  return traj && traj->trajectory.size()
             ? traj->trajectory.states.front().n_trunc()
             : 0;
}

dsc_status dsc_trajectory_observables(const dsc_trajectory* traj, size_t index,
                                      dsc_observables* out) {
  DSC_REQUIRE(traj && out, "dsc_trajectory_observables: null argument");
  if (index >= traj->trajectory.size()) {
    return fail(DSC_ERR_DIMENSION, "trajectory index out of range");
  }
  const auto& o = traj->trajectory.observables[index];
  *out = {traj->trajectory.t_grid[index], o.p_excited, o.p_ground, o.p_revival,
          o.mean_photon};
  return DSC_OK;
}

dsc_status dsc_trajectory_photon_distribution(const dsc_trajectory* traj,
                                              size_t index, double* out,
                                              size_t len) {
  DSC_REQUIRE(traj && out, "dsc_trajectory_photon_distribution: null argument");
  if (index >= traj->trajectory.size()) {
    return fail(DSC_ERR_DIMENSION, "trajectory index out of range");
  }
  const auto& p = traj->trajectory.observables[index].photon_distribution;
  if (len != p.size()) {
    return fail(DSC_ERR_DIMENSION, "buffer length must equal n_trunc = " +
                                       std::to_string(p.size()));
  }
  std::copy(p.begin(), p.end(), out);
  return DSC_OK;
}

int dsc_trajectory_truncation_flag(const dsc_trajectory* traj) {
  return traj && traj->trajectory.truncation_contaminated() ? 1 : 0;
}

void dsc_trajectory_free(dsc_trajectory* traj) { delete traj; }

dsc_status dsc_lf_period(const dsc_params* params, double* out) {
  DSC_REQUIRE(params && out, "dsc_lf_period: null argument");
  return guarded([&] {
    *out = dscsim::analytic::lf_period(to_params(*params));
    return DSC_OK;
  });
}

dsc_status dsc_lf_revival(const dsc_params* params, double t, double* out) {
  DSC_REQUIRE(params && out, "dsc_lf_revival: null argument");
  return guarded([&] {
    *out = dscsim::analytic::lf_revival(to_params(*params), t);
    return DSC_OK;
  });
}

dsc_status dsc_lf_mean_photon(const dsc_params* params, double t, double* out) {
  DSC_REQUIRE(params && out, "dsc_lf_mean_photon: null argument");
  return guarded([&] {
    *out = dscsim::analytic::lf_mean_photon(to_params(*params), t);
    return DSC_OK;
  });
}

}  // extern "C"
