#include "dscsim/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "dscsim/error.hpp"
#include "dscsim/output.hpp"

namespace dscsim {

namespace {

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::Io, "cannot create output directory '" +
                                   dir.string() + "': " + ec.message());
  }
}

template <typename Writer>
std::filesystem::path write_file(const std::filesystem::path& dir,
                                 const std::string& name, Writer&& writer) {
  const auto path = dir / name;
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  writer(os);
  os.flush();
  if (!os) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
  return path;
}

const DesignConfig& require_design(const RunConfig& cfg) {
  if (!cfg.design) {
    throw Error(ErrorKind::Config, "config has no [design] section");
  }
  return *cfg.design;
}

void append_files(std::ostringstream& os, const CommandOutput& out) {
  for (const auto& f : out.files) os << "wrote " << f.generic_string() << '\n';
}

}  // namespace

DeviceSetup device_setup(const RabiParams& base, double signed_omega0) {
  const Qubit qubit = signed_omega0 >= 0.0 ? Qubit::Excited : Qubit::Ground;
  const RabiParams params = base.with_omega0(std::abs(signed_omega0));
  return {params, FullState::fock(qubit, 0, params.n_trunc()), qubit};
}

SweepPoint sweep_point(const RabiParams& base, double signed_omega0, double dt) {
  const DeviceSetup setup = device_setup(base, signed_omega0);
  const double period = 2.0 * std::numbers::pi / base.omega();
  const Trajectory traj = run_trajectory(setup.params, setup.initial, period, dt);

  SweepPoint pt;
  pt.omega0 = signed_omega0;
  pt.qubit = setup.qubit;
  pt.min_revival = 1.0;
  pt.min_population = 1.0;
  for (const auto& o : traj.observables) {
    pt.min_revival = std::min(pt.min_revival, o.p_revival);
    const double pop = setup.qubit == Qubit::Excited ? o.p_excited : o.p_ground;
    pt.min_population = std::min(pt.min_population, pop);
    pt.max_mean_photon = std::max(pt.max_mean_photon, o.mean_photon);
  }
  pt.truncation_contaminated = traj.truncation_contaminated();
  return pt;
}

std::vector<SweepPoint> run_sweep(const RabiParams& base,
                                  std::span<const double> omega0_list,
                                  double dt, unsigned jobs) {
  if (omega0_list.empty()) {
    throw Error(ErrorKind::InvalidArgument, "omega0 list is empty");
  }
  const std::size_t count = omega0_list.size();
  std::vector<SweepPoint> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = sweep_point(base, omega0_list[i], dt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads =
      std::clamp<unsigned>(jobs, 1u, static_cast<unsigned>(count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

CommandOutput cmd_simulate(const RunConfig& cfg,
                           const std::filesystem::path& out_dir, bool image) {
  ensure_directory(out_dir);
  const Trajectory traj =
      run_trajectory(cfg.model, cfg.initial, cfg.t_max, cfg.dt);

  CommandOutput out;
  if (cfg.wants(OutputProduct::Timeseries)) {
    out.files.push_back(write_file(out_dir, "timeseries.csv", [&](auto& os) {
      output::write_timeseries(os, traj);
    }));
  }
  if (cfg.wants(OutputProduct::IntensityMap)) {
    out.files.push_back(write_file(out_dir, "intensity_map.csv", [&](auto& os) {
      output::write_intensity_map(os, traj);
    }));
  }
  if (image) {
    out.files.push_back(write_file(out_dir, "intensity_map.pgm", [&](auto& os) {
      output::write_pgm(os, output::intensity_image(traj));
    }));
  }
  if (cfg.wants(OutputProduct::Recipe)) {
    const auto design_out = cmd_design(cfg, out_dir);
    out.files.insert(out.files.end(), design_out.files.begin(),
                     design_out.files.end());
  }

  std::ostringstream s;
  s << "initial_state," << cfg.initial_label << '\n'
    << "grid_points," << traj.size() << '\n'
    << "max_edge_occupation," << output::format_number(traj.max_edge_occupation)
    << '\n'
    << "truncation_contaminated,"
    << (traj.truncation_contaminated() ? "yes" : "no") << '\n';
  const std::string stats = s.str();
  out.files.push_back(write_file(out_dir, "summary.csv",
                                 [&](auto& os) { os << stats; }));

  std::ostringstream msg;
  append_files(msg, out);
  msg << stats;
  if (traj.truncation_contaminated()) {
    msg << "warning: occupation of the two outermost sites reached "
        << output::format_number(traj.max_edge_occupation)
        << " (> 1e-8); results feel the truncation at n_trunc = "
        << cfg.model.n_trunc() << '\n';
  }
  out.summary = msg.str();
  return out;
}

CommandOutput cmd_sweep(const RunConfig& cfg,
                        std::span<const double> omega0_list, unsigned jobs,
                        const std::filesystem::path& out_dir) {
  ensure_directory(out_dir);
  const auto points = run_sweep(cfg.model, omega0_list, cfg.sweep_dt, jobs);

  std::ostringstream table;
  table << "omega0_per_mm,initial_state,population,min_P_r,min_population,"
           "max_mean_n,truncation_contaminated\n";
  for (const auto& p : points) {
    const bool excited = p.qubit == Qubit::Excited;
    table << output::format_number(p.omega0) << ',' << (excited ? "e0" : "g0")
          << ',' << (excited ? "P_e" : "P_g") << ','
          << output::format_number(p.min_revival) << ','
          << output::format_number(p.min_population) << ','
          << output::format_number(p.max_mean_photon) << ','
          << (p.truncation_contaminated ? "yes" : "no") << '\n';
  }
  const std::string text = table.str();

  CommandOutput out;
  out.files.push_back(
      write_file(out_dir, "sweep.csv", [&](auto& os) { os << text; }));
  std::ostringstream msg;
  append_files(msg, out);
  msg << text;
  out.summary = msg.str();
  return out;
}

CommandOutput cmd_design(const RunConfig& cfg,
                         const std::filesystem::path& out_dir) {
  const DesignConfig& d = require_design(cfg);
  const auto recipe = lattice::design(cfg.model, d.calibration, d.optics,
                                      d.guides, d.options);
  const auto report =
      lattice::verify_recipe(recipe, cfg.model, d.calibration, d.optics);

  ensure_directory(out_dir);
  CommandOutput out;
  out.files.push_back(write_file(out_dir, "recipe.csv", [&](auto& os) {
    output::write_recipe_table(os, recipe);
  }));
  out.files.push_back(write_file(out_dir, "recipe.json", [&](auto& os) {
    output::write_recipe_json(os, recipe);
  }));
  out.files.push_back(write_file(out_dir, "recipe_report.csv", [&](auto& os) {
    output::write_recipe_report(os, report);
  }));

  std::ostringstream msg;
  append_files(msg, out);
  msg << "guides," << recipe.rows.size() << '\n'
      << "max_deviation," << output::format_number(report.max_deviation())
      << '\n'
      << "status," << (report.passes() ? "PASS" : "FAIL") << '\n';
  out.summary = msg.str();
  return out;
}

lattice::RecipeReport verify_recipe_file(const RunConfig& cfg,
                                         const std::filesystem::path& path) {
  const DesignConfig& d = require_design(cfg);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open recipe '" + path.string() + "'");
  const auto recipe = output::parse_recipe_table(in);
  return lattice::verify_recipe(recipe, cfg.model, d.calibration, d.optics);
}

}  // namespace dscsim
