#include "stils/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

namespace stils {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string normalize_key(std::string_view key) {
  std::string k = trim(key);
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

double parse_plain(std::string_view text, std::string_view whole) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ConfigError("not a number: '" + std::string(whole) + "'");
  return v;
}

Index parse_count(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  long long n = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), n);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError(std::string(key) + ": not an integer: '" + v + "'");
  return static_cast<Index>(n);
}

}  // namespace

double parse_real(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty number");
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) return parse_plain(s, s);

  std::string factor = s.substr(0, pi_pos);
  if (!factor.empty() && factor.back() == '*') factor.pop_back();
  const double a = factor.empty() ? 1.0 : parse_plain(factor, s);
  std::string rest = s.substr(pi_pos + 2);
  double value = a * std::numbers::pi;
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError("not a number: '" + s + "'");
    value /= parse_plain(std::string_view(rest).substr(1), s);
  }
  return value;
}

Mode parse_mode(std::string_view text) {
  const std::string t = trim(text);
  if (t == "stils") return Mode::stils;
  if (t == "ddm" || t == "stils-ddm") return Mode::ddm;
  throw ConfigError("mode must be 'stils' or 'ddm', got '" + t + "'");
}

TimeOrder parse_basis(std::string_view text) {
  const std::string t = trim(text);
  if (t == "q1") return TimeOrder::q1;
  if (t == "q2") return TimeOrder::q2;
  throw ConfigError("basis must be 'q1' or 'q2', got '" + t + "'");
}

const char* to_string(Mode mode) { return mode == Mode::stils ? "stils" : "ddm"; }

double RunConfig::resolved_final_time() const {
  return final_time > 0.0 ? final_time : 2.0 * std::numbers::pi;
}

Index RunConfig::resolved_slabs() const {
  if (tau && slabs) throw ConfigError("--tau and --slabs are mutually exclusive");
  if (slabs) {
    if (*slabs < 1) throw ConfigError("slabs must be at least 1");
    return *slabs;
  }
  if (tau) {
    if (!(*tau > 0.0)) throw ConfigError("tau must be positive");
    const double ratio = resolved_final_time() / *tau;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-6 * ratio)
      throw ConfigError("tau must divide the final time into a whole number of slabs");
    return static_cast<Index>(rounded);
  }
  return 800;
}

void RunConfig::validate() const {
  if (nx < 1 || ny < 1) throw ConfigError("nx and ny must be at least 1");
  if (!(tol_interface > 0.0)) throw ConfigError("tol-interface must be positive");
  if (!(tol_pcg > 0.0)) throw ConfigError("tol-pcg must be positive");
  if (max_ddm_iter < 1) throw ConfigError("max-ddm-iter must be at least 1");
  if (snap_every < 0) throw ConfigError("snap-every must be non-negative");
  try {
    cylinder.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  (void)resolved_slabs();
}

Grid RunConfig::make_grid() const { return build_grid(nx, ny, extents); }

ProblemSetup RunConfig::make_setup() const {
  return slotted_cylinder_setup(cylinder, resolved_final_time(), resolved_slabs());
}

MarchConfig RunConfig::make_march_config() const {
  MarchConfig mc;
  mc.tol_interface = tol_interface;
  mc.max_ddm_iter = max_ddm_iter;
  mc.pcg.tol = tol_pcg;
  mc.assembly.order = basis;
  mc.update = update;
  mc.snapshot_every = snap_every;
  if (snap_every == 0) {
    const Index m = resolved_slabs();
    for (Index s : {m / 8, m / 2, (5 * m) / 8, m})
      if (s > 0) mc.snapshot_steps.push_back(s);
  }
  return mc;
}

std::vector<ConfigEntry> parse_key_value_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::vector<ConfigEntry> values;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected key = value");
    const std::string key = normalize_key(std::string_view(content).substr(0, eq));
    if (key.empty())
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": empty key");
    values.push_back({key, trim(std::string_view(content).substr(eq + 1)), number});
  }
  return values;
}

void apply_setting(RunConfig& c, std::string_view raw_key, std::string_view value) {
  const std::string key = normalize_key(raw_key);
  auto real = [&]() {
    try {
      return parse_real(value);
    } catch (const ConfigError& e) {
      throw ConfigError(key + ": " + e.what());
    }
  };
  if (key == "nx") c.nx = parse_count(key, value);
  else if (key == "ny") c.ny = parse_count(key, value);
  else if (key == "n") c.nx = c.ny = parse_count(key, value);
  else if (key == "tau") c.tau = real();
  else if (key == "slabs") c.slabs = parse_count(key, value);
  else if (key == "final-time") c.final_time = real();
  else if (key == "radius") c.cylinder.radius = real();
  else if (key == "split-x") c.split_x = real();
  else if (key == "mode") c.mode = parse_mode(value);
  else if (key == "basis") c.basis = parse_basis(value);
  else if (key == "update") {
    const std::string v = trim(value);
    if (v == "jacobi") c.update = DdmUpdate::jacobi;
    else if (v == "gauss-seidel") c.update = DdmUpdate::gauss_seidel;
    else throw ConfigError("update must be 'jacobi' or 'gauss-seidel', got '" + v + "'");
  }
  else if (key == "tol-interface") c.tol_interface = real();
  else if (key == "tol-pcg") c.tol_pcg = real();
  else if (key == "max-ddm-iter") c.max_ddm_iter = parse_count(key, value);
  else if (key == "out") c.out = trim(value);
  else if (key == "snap-every") c.snap_every = parse_count(key, value);
  else if (key == "include-large") {
    const std::string v = trim(value);
    c.include_large = (v == "1" || v == "true" || v == "yes");
  }
  else throw ConfigError("unknown setting '" + key + "'");
}

}  // namespace stils
