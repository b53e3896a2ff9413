#include "dscsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dscsim/error.hpp"

namespace dscsim {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"model", {"omega0", "omega", "g", "n_trunc"}},
      {"initial", {"state", "amplitudes"}},
      {"grid", {"t_max", "dt", "sweep_dt"}},
      {"output", {"dir", "products", "image"}},
      {"design",
       {"guides", "kappa0", "gamma", "d_ref", "d_min", "d_max", "n_eff_base",
        "wavelength_nm", "radius_mm", "dn_dv", "v_base", "v_min", "v_max",
        "compensate"}},
  };
  return keys;
}

[[noreturn]] void syntax_error(int line, std::size_t column,
                               const std::string& msg) {
  throw Error(ErrorKind::Config, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + msg);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::map<std::string, Section> tokenize(std::string_view text) {
  std::map<std::string, Section> sections;
  std::string current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto comment = raw.find_first_of("#;");
    std::string_view body = raw.substr(0, comment);
    const std::string_view content = trim(body);
    if (content.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t indent = body.find_first_not_of(" \t\r") + 1;

    if (content.front() == '[') {
      if (content.back() != ']') {
        syntax_error(line_no, indent + content.size(),
                     "section header is missing ']'");
      }
      const std::string name(trim(content.substr(1, content.size() - 2)));
      if (!schema().contains(name)) {
        syntax_error(line_no, indent + 1, "unknown section [" + name + "]");
      }
      if (sections.contains(name)) {
        syntax_error(line_no, indent, "duplicate section [" + name + "]");
      }
      sections[name];
      current = name;
    } else {
      const auto eq = content.find('=');
      if (eq == std::string_view::npos) {
        syntax_error(line_no, indent, "expected 'key = value'");
      }
      const std::string key(trim(content.substr(0, eq)));
      const std::string value(trim(content.substr(eq + 1)));
      if (!valid_identifier(key)) {
        syntax_error(line_no, indent, "malformed key '" + key + "'");
      }
      if (current.empty()) {
        syntax_error(line_no, indent,
                     "key '" + key + "' appears before any [section]");
      }
      if (!schema().at(current).contains(key)) {
        syntax_error(line_no, indent,
                     "unknown key '" + key + "' in section [" + current + "]");
      }
      if (value.empty()) {
        syntax_error(line_no, indent + eq + 1, "key '" + key + "' has no value");
      }
      auto& section = sections[current];
      if (section.contains(key)) {
        syntax_error(line_no, indent, "duplicate key '" + key + "'");
      }
      section[key] = Entry{value, line_no};
    }
    if (end == text.size()) break;
  }
  return sections;
}

class Reader {
 public:
  Reader(std::string section, const Section* entries)
      : section_(std::move(section)), entries_(entries) {}

  bool has(const std::string& key) const {
    return entries_ && entries_->contains(key);
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    std::string where;
    if (has(key)) where = "line " + std::to_string(entries_->at(key).line) + ": ";
    throw Error(ErrorKind::Config, where + "[" + section_ + "] " + key + ": " + msg);
  }

  const std::string& raw(const std::string& key) const {
    return entries_->at(key).value;
  }

  double number(const std::string& key) const {
    if (!has(key)) fail(key, "required key is missing");
    return parse_number(key, raw(key));
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::size_t count_or(const std::string& key, std::size_t fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = raw(key);
    unsigned long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      fail(key, "expected a non-negative integer, got '" + s + "'");
    }
    return static_cast<std::size_t>(v);
  }

  bool flag_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = raw(key);
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    fail(key, "expected true or false, got '" + s + "'");
  }

  double parse_number(const std::string& key, std::string_view s) const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(key, "expected a finite number, got '" + std::string(s) + "'");
    }
    return v;
  }

 private:
  std::string section_;
  const Section* entries_;
};

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    out.emplace_back(trim(s.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct FockLabel {
  Qubit qubit;
  std::size_t photons;
};

std::optional<FockLabel> parse_fock_label(std::string_view s) {
  if (s.size() < 2 || (s[0] != 'e' && s[0] != 'g')) return std::nullopt;
  std::size_t m = 0;
  const auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), m);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return FockLabel{s[0] == 'e' ? Qubit::Excited : Qubit::Ground, m};
}

FullState read_initial(const Reader& in, std::size_t n_trunc,
                       std::string& label) {
  if (in.has("state") && in.has("amplitudes")) {
    in.fail("amplitudes", "give either 'state' or 'amplitudes', not both");
  }
  if (in.has("amplitudes")) {
    ComplexVector e(n_trunc), g(n_trunc);
    for (const auto& item : split_list(in.raw("amplitudes"))) {
      // label:re or label:re:im
      const auto c1 = item.find(':');
      if (c1 == std::string::npos) {
        in.fail("amplitudes", "entry '" + item + "' must be label:re[:im]");
      }
      const auto fock = parse_fock_label(item.substr(0, c1));
      if (!fock) {
        in.fail("amplitudes", "bad basis label in '" + item + "'");
      }
      if (fock->photons >= n_trunc) {
        in.fail("amplitudes", "Fock index in '" + item + "' must be < n_trunc = " +
                                  std::to_string(n_trunc));
      }
      const std::string rest = item.substr(c1 + 1);
      const auto c2 = rest.find(':');
      const double re = in.parse_number("amplitudes", rest.substr(0, c2));
      const double im = c2 == std::string::npos
                            ? 0.0
                            : in.parse_number("amplitudes", rest.substr(c2 + 1));
      auto& target = fock->qubit == Qubit::Excited ? e : g;
      target[fock->photons] += Complex(re, im);
    }
    label = "amplitudes";
    try {
      return FullState(std::move(e), std::move(g));
    } catch (const Error& err) {
      in.fail("amplitudes", err.what());
    }
  }
  const std::string text = in.has("state") ? in.raw("state") : "e0";
  const auto fock = parse_fock_label(text);
  if (!fock) in.fail("state", "expected e<m> or g<m>, got '" + text + "'");
  if (fock->photons >= n_trunc) {
    in.fail("state", "Fock index must be < n_trunc = " + std::to_string(n_trunc));
  }
  label = text;
  return FullState::fock(fock->qubit, fock->photons, n_trunc);
}

DesignConfig read_design(const Reader& in) {
  DesignConfig d;
  d.guides = in.count_or("guides", d.guides);
  if (d.guides < 2) in.fail("guides", "guides must be >= 2");

  auto& cal = d.calibration;
  cal.kappa0 = in.number_or("kappa0", cal.kappa0);
  cal.gamma = in.number_or("gamma", cal.gamma);
  cal.d_ref = in.number_or("d_ref", cal.d_ref);
  cal.d_min = in.number_or("d_min", cal.d_min);
  cal.d_max = in.number_or("d_max", cal.d_max);
  if (!(cal.kappa0 > 0.0)) in.fail("kappa0", "kappa0 must be > 0");
  if (!(cal.gamma > 0.0)) in.fail("gamma", "gamma must be > 0");
  if (!(cal.d_min > 0.0)) in.fail("d_min", "d_min must be > 0");
  if (!(cal.d_min < cal.d_max)) in.fail("d_max", "d_max must be > d_min");

  auto& oc = d.optics;
  oc.n_eff_base = in.number_or("n_eff_base", oc.n_eff_base);
  oc.wavelength_nm = in.number_or("wavelength_nm", oc.wavelength_nm);
  oc.radius_mm = in.number_or("radius_mm", oc.radius_mm);
  oc.dn_dv = in.number_or("dn_dv", oc.dn_dv);
  oc.v_base = in.number_or("v_base", oc.v_base);
  if (!(oc.n_eff_base > 0.0)) in.fail("n_eff_base", "n_eff_base must be > 0");
  if (!(oc.wavelength_nm >= 400.0 && oc.wavelength_nm <= 1600.0)) {
    in.fail("wavelength_nm", "wavelength_nm must lie in [400, 1600]");
  }
  if (!(oc.radius_mm > 0.0)) in.fail("radius_mm", "radius_mm must be > 0");
  if (!(oc.dn_dv > 0.0)) in.fail("dn_dv", "dn_dv must be > 0");
  if (!(oc.v_base > 0.0)) in.fail("v_base", "v_base must be > 0");

  auto& speeds = d.options.speeds;
  speeds.v_min = in.number_or("v_min", speeds.v_min);
  speeds.v_max = in.number_or("v_max", speeds.v_max);
  if (!(speeds.v_min > 0.0)) in.fail("v_min", "v_min must be > 0");
  if (!(speeds.v_min < speeds.v_max)) in.fail("v_max", "v_max must be > v_min");
  d.options.compensate = in.flag_or("compensate", true);
  return d;
}

}  // namespace

bool RunConfig::wants(OutputProduct product) const {
  return std::find(outputs.begin(), outputs.end(), product) != outputs.end();
}

RunConfig parse_config(std::string_view text) {
  const auto sections = tokenize(text);
  auto reader = [&](const std::string& name) {
    const auto it = sections.find(name);
    return Reader(name, it == sections.end() ? nullptr : &it->second);
  };

  const Reader model = reader("model");
  const double omega0 = model.number("omega0");
  const double omega = model.number("omega");
  const double g = model.number("g");
  const std::size_t n_trunc = model.count_or("n_trunc", kDefaultTruncation);
  if (!(omega > 0.0)) model.fail("omega", "omega must be > 0");
  if (!(g >= 0.0)) model.fail("g", "g must be >= 0");
  if (n_trunc < 2) model.fail("n_trunc", "n_trunc must be >= 2");
  const RabiParams params(omega0, omega, g, n_trunc);

  std::string label;
  FullState initial = read_initial(reader("initial"), n_trunc, label);

  RunConfig cfg{.model = params, .initial = std::move(initial), .initial_label = label};

  const Reader grid = reader("grid");
  cfg.t_max = grid.number_or("t_max", cfg.t_max);
  cfg.dt = grid.number_or("dt", cfg.dt);
  cfg.sweep_dt = grid.number_or("sweep_dt", cfg.sweep_dt);
  if (!(cfg.dt > 0.0)) grid.fail("dt", "dt must be > 0");
  if (!(cfg.t_max >= cfg.dt)) grid.fail("t_max", "t_max must be >= dt");
  if (!(cfg.sweep_dt > 0.0)) grid.fail("sweep_dt", "sweep_dt must be > 0");

  const Reader output = reader("output");
  if (output.has("dir")) cfg.output_dir = output.raw("dir");
  cfg.image = output.flag_or("image", false);
  if (output.has("products")) {
    cfg.outputs.clear();
    for (const auto& name : split_list(output.raw("products"))) {
      OutputProduct p;
      if (name == "timeseries") {
        p = OutputProduct::Timeseries;
      } else if (name == "intensity_map") {
        p = OutputProduct::IntensityMap;
      } else if (name == "recipe") {
        p = OutputProduct::Recipe;
      } else {
        output.fail("products", "unknown product '" + name +
                                    "' (timeseries, intensity_map, recipe)");
      }
      if (!cfg.wants(p)) cfg.outputs.push_back(p);
    }
    std::sort(cfg.outputs.begin(), cfg.outputs.end());
  }

  if (sections.contains("design")) cfg.design = read_design(reader("design"));
  if (cfg.wants(OutputProduct::Recipe) && !cfg.design) {
    output.fail("products", "product 'recipe' needs a [design] section");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace dscsim
