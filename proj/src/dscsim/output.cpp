#include "dscsim/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dscsim/error.hpp"

namespace dscsim::output {

namespace {

constexpr const char* kRecipeHeader =
    "guide,spacing_um,position_um,delta_n_eff,delta_n_eff_gradient,"
    "delta_n_eff_detuning,writing_speed_mm_per_s,achieved_kappa_per_mm,"
    "achieved_omega_per_mm,achieved_detuning_per_mm";

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string{};
}

[[noreturn]] void malformed(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::Config,
              "recipe table line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    malformed(line, "bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  return buf;
}

void write_timeseries(std::ostream& os, const Trajectory& traj) {
  os << "t_mm,P_e,P_g,P_r,mean_n\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& o = traj.observables[i];
    os << format_number(traj.t_grid[i]) << ',' << format_number(o.p_excited)
       << ',' << format_number(o.p_ground) << ',' << format_number(o.p_revival)
       << ',' << format_number(o.mean_photon) << '\n';
  }
}

void write_intensity_map(std::ostream& os, const Trajectory& traj) {
  const std::size_t sites =
      traj.size() ? traj.observables.front().photon_distribution.size() : 0;
  os << "t_mm";
  for (std::size_t n = 0; n < sites; ++n) os << ",P_n" << n;
  os << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << format_number(traj.t_grid[i]);
    for (double p : traj.observables[i].photon_distribution) {
      os << ',' << format_number(p);
    }
    os << '\n';
  }
}

GrayImage intensity_image(const Trajectory& traj) {
  GrayImage img;
  img.width = traj.size();
  img.height =
      traj.size() ? traj.observables.front().photon_distribution.size() : 0;
  img.pixels.assign(img.width * img.height, 0);
  double peak = 0.0;
  for (const auto& o : traj.observables) {
    for (double p : o.photon_distribution) peak = std::max(peak, p);
  }
  if (peak <= 0.0) return img;
  for (std::size_t col = 0; col < img.width; ++col) {
    const auto& p = traj.observables[col].photon_distribution;
    for (std::size_t row = 0; row < img.height; ++row) {
      const double level = std::clamp(p[row] / peak, 0.0, 1.0) * 255.0;
      img.pixels[row * img.width + col] =
          static_cast<std::uint8_t>(std::lround(level));
    }
  }
  return img;
}

void write_pgm(std::ostream& os, const GrayImage& image) {
  os << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(image.pixels.data()),
           static_cast<std::streamsize>(image.pixels.size()));
}

void write_recipe_table(std::ostream& os, const lattice::LatticeRecipe& recipe) {
  os << kRecipeHeader << '\n';
  for (const auto& r : recipe.rows) {
    os << r.guide << ',' << optional_number(r.spacing_um) << ','
       << format_number(r.position_um) << ',' << format_number(r.delta_n_eff)
       << ',' << format_number(r.delta_n_eff_gradient) << ','
       << format_number(r.delta_n_eff_detuning) << ','
       << format_number(r.writing_speed) << ','
       << optional_number(r.achieved_kappa) << ','
       << optional_number(r.achieved_omega) << ','
       << format_number(r.achieved_detuning) << '\n';
  }
}

void write_recipe_json(std::ostream& os, const lattice::LatticeRecipe& recipe) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  for (const auto& r : recipe.rows) {
    nlohmann::ordered_json row;
    row["guide"] = r.guide;
    row["spacing_um"] = opt(r.spacing_um);
    row["position_um"] = r.position_um;
    row["delta_n_eff"] = r.delta_n_eff;
    row["delta_n_eff_gradient"] = r.delta_n_eff_gradient;
    row["delta_n_eff_detuning"] = r.delta_n_eff_detuning;
    row["writing_speed_mm_per_s"] = r.writing_speed;
    row["achieved_kappa_per_mm"] = opt(r.achieved_kappa);
    row["achieved_omega_per_mm"] = opt(r.achieved_omega);
    row["achieved_detuning_per_mm"] = r.achieved_detuning;
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json doc;
  doc["guides"] = recipe.rows.size();
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

lattice::LatticeRecipe parse_recipe_table(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kRecipeHeader) {
    malformed(1, "missing or unexpected header row");
  }
  lattice::LatticeRecipe recipe;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 10) {
      malformed(line_no, "expected 10 fields, got " + std::to_string(f.size()));
    }
    auto opt = [&](const std::string& s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return parse_double(s, line_no);
    };
    lattice::RecipeRow r;
    r.guide = static_cast<std::size_t>(parse_double(f[0], line_no));
    if (r.guide != recipe.rows.size()) malformed(line_no, "guides out of order");
    r.spacing_um = opt(f[1]);
    r.position_um = parse_double(f[2], line_no);
    r.delta_n_eff = parse_double(f[3], line_no);
    r.delta_n_eff_gradient = parse_double(f[4], line_no);
    r.delta_n_eff_detuning = parse_double(f[5], line_no);
    r.writing_speed = parse_double(f[6], line_no);
    r.achieved_kappa = opt(f[7]);
    r.achieved_omega = opt(f[8]);
    r.achieved_detuning = parse_double(f[9], line_no);
    recipe.rows.push_back(r);
  }
  return recipe;
}

void write_recipe_report(std::ostream& os, const lattice::RecipeReport& report) {
  os << "# recipe verification (relative deviations from target)\n";
  os << "max_kappa_deviation," << format_number(report.max_kappa_deviation) << '\n';
  os << "max_omega_deviation," << format_number(report.max_omega_deviation) << '\n';
  os << "max_detuning_deviation," << format_number(report.max_detuning_deviation)
     << '\n';
  os << "max_site_energy_deviation,"
     << format_number(report.max_site_energy_deviation) << '\n';
  os << "status," << (report.passes() ? "PASS" : "FAIL") << '\n';
  os << "\nguide,kappa_dev,omega_dev,detuning_dev,site_energy_dev,"
        "neff_d_product_um,uncompensated_omega_per_mm,"
        "uncompensated_delta_beta_per_mm,target_delta_beta_per_mm,"
        "achieved_delta_beta_per_mm\n";
  for (std::size_t n = 0; n < report.guides.size(); ++n) {
    const auto& g = report.guides[n];
    const bool step = n < report.neff_d_product_um.size();
    os << n << ',' << (step ? format_number(g.kappa) : "") << ','
       << (step ? format_number(g.omega) : "") << ',' << format_number(g.detuning)
       << ',' << format_number(g.site_energy) << ','
       << (step ? format_number(report.neff_d_product_um[n]) : "") << ','
       << (step ? format_number(report.uncompensated_omega[n]) : "") << ','
       << format_number(report.uncompensated_delta_beta[n]) << ','
       << format_number(report.target_delta_beta[n]) << ','
       << format_number(report.achieved_delta_beta[n]) << '\n';
  }
}

}  // namespace dscsim::output
