#include "ferronem/cli/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "ferronem/errors.hpp"

namespace ferronem::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw DomainError(key + ": cannot parse '" + value + "'");
  return out;
}

Point2 parse_point(const std::string& key, const std::string& value) {
  const auto parts = split(value, ',');
  if (parts.size() != 2) throw DomainError(key + ": expected 'x, y'");
  return Point2(parse_number<double>(key, parts[0]), parse_number<double>(key, parts[1]));
}

// Reference mesh sizes of the four default levels (sqrt(2) / n).
constexpr std::array<int, 4> kLevelCells{12, 23, 45, 89};

}  // namespace

void RunConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw DomainError(std::string(name) + " must be positive");
  };
  if (!mesh_file && n < 1) throw DomainError("n must be at least 1");
  if (c < 0.0) throw DomainError("c must be non-negative");
  if (zeta) positive(*zeta, "zeta");
  if (rho) positive(*rho, "rho");
  if (eps_pri) positive(*eps_pri, "eps_pri");
  if (max_inner && *max_inner < 1) throw DomainError("max_inner must be at least 1");
  positive(eps_outer, "eps_outer");
  positive(eps0, "eps0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  if (max_outer < 1) throw DomainError("max_outer must be at least 1");
  if (quad_order < 6 || quad_order > 8) throw DomainError("quad_order must lie in [6, 8]");
  for (int level : levels) {
    if (level < 1) throw DomainError("levels must be positive cell counts");
  }
}

Example parse_example(const std::string& s) {
  if (s == "example1") return Example::example1;
  if (s == "example2") return Example::example2;
  if (s == "custom") return Example::custom;
  throw DomainError("unknown example '" + s + "'");
}

std::string to_string(Example e) {
  switch (e) {
    case Example::example1: return "example1";
    case Example::example2: return "example2";
    case Example::custom: return "custom";
  }
  return "";
}

VortexVariant parse_variant(const std::string& s) {
  if (s == "single" || s == "single_angle") return VortexVariant::single_angle;
  if (s == "triple" || s == "triple_angle") return VortexVariant::triple_angle;
  throw DomainError("unknown variant '" + s + "'");
}

std::set<Output> parse_outputs(const std::string& s) {
  std::set<Output> out;
  for (const auto& item : split(s, ',')) {
    if (item == "table") out.insert(Output::table);
    else if (item == "vtk") out.insert(Output::vtk);
    else if (item == "histogram") out.insert(Output::histogram);
    else if (item == "energy_trace") out.insert(Output::energy_trace);
    else throw DomainError("unknown output '" + item + "'");
  }
  return out;
}

std::string to_string(Output o) {
  switch (o) {
    case Output::table: return "table";
    case Output::vtk: return "vtk";
    case Output::histogram: return "histogram";
    case Output::energy_trace: return "energy_trace";
  }
  return "";
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "example") config.example = parse_example(value);
  else if (key == "n") config.n = parse_number<int>(key, value);
  else if (key == "mesh") config.mesh_file = value;
  else if (key == "c") config.c = parse_number<double>(key, value);
  else if (key == "zeta") config.zeta = parse_number<double>(key, value);
  else if (key == "rho") config.rho = parse_number<double>(key, value);
  else if (key == "eps_pri") config.eps_pri = parse_number<double>(key, value);
  else if (key == "max_inner") config.max_inner = parse_number<int>(key, value);
  else if (key == "eps_outer") config.eps_outer = parse_number<double>(key, value);
  else if (key == "eps0") config.eps0 = parse_number<double>(key, value);
  else if (key == "gamma") config.gamma = parse_number<double>(key, value);
  else if (key == "max_outer") config.max_outer = parse_number<int>(key, value);
  else if (key == "center") config.center = parse_point(key, value);
  else if (key == "variant") config.variant = parse_variant(value);
  else if (key == "path_end") config.path_end = parse_point(key, value);
  else if (key == "quad_order") config.quad_order = parse_number<int>(key, value);
  else if (key == "outputs") config.outputs = parse_outputs(value);
  else if (key == "out_dir") config.out_dir = value;
  else if (key == "seed") config.seed = parse_number<unsigned long>(key, value);
  else if (key == "levels") {
    config.levels.clear();
    for (const auto& item : split(value, ',')) config.levels.push_back(parse_number<int>(key, item));
  } else {
    throw DomainError("unknown key '" + key + "'");
  }
}

void load_config(RunConfig& config, std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const DomainError& e) {
      throw DomainError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  load_config(config, in);
}

int nearest_level(double h) {
  int best = 0;
  double best_dist = INFINITY;
  for (int i = 0; i < static_cast<int>(kLevelCells.size()); ++i) {
    const double href = std::sqrt(2.0) / kLevelCells[static_cast<std::size_t>(i)];
    const double dist = std::abs(std::log(h / href));
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

LevelDefaults level_defaults(Example example, int level) {
  static constexpr std::array<LevelDefaults, 4> kExample1{{{16, 1, 1e-7}, {4, 1, 1e-7}, {1, 1, 1e-8}, {1, 1, 1e-9}}};
  static constexpr std::array<LevelDefaults, 4> kExample2{{{4, 1, 1e-7}, {1, 1, 1e-7}, {1, 1, 1e-8}, {1, 1, 1e-9}}};
  if (level < 0 || level > 3) throw DomainError("level must lie in [0, 3]");
  const auto i = static_cast<std::size_t>(level);
  return example == Example::example2 ? kExample2[i] : kExample1[i];
}

VortexSpec vortex_spec(const RunConfig& config) {
  switch (config.example) {
    case Example::example1: return example1_spec();
    case Example::example2: return example2_spec();
    case Example::custom: return VortexSpec::make(config.center, config.variant);
  }
  return example1_spec();
}

Point2 path_end(const RunConfig& config) {
  if (config.path_end) return *config.path_end;
  return config.example == Example::example2 ? example2_path_end() : default_path_end();
}

AdmmParams admm_params(const RunConfig& config, double h) {
  const LevelDefaults defaults = level_defaults(config.example, nearest_level(h));
  AdmmParams params;
  params.zeta = config.zeta.value_or(defaults.zeta);
  params.rho = config.rho.value_or(defaults.rho);
  params.eps_pri = config.eps_pri.value_or(defaults.eps_pri);
  if (config.max_inner) params.max_inner = *config.max_inner;
  return params;
}

DescentParams descent_params(const RunConfig& config) {
  DescentParams params;
  params.eps_outer = config.eps_outer;
  params.eps0 = config.eps0;
  params.gamma = config.gamma;
  params.max_outer = config.max_outer;
  return params;
}

}  // namespace ferronem::cli
