#include "apvar/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace apvar {

std::string window_policy_name(WindowPolicy p) {
  switch (p) {
    case WindowPolicy::full: return "full";
    case WindowPolicy::from_y1: return "from-y1";
    case WindowPolicy::custom: return "custom";
    case WindowPolicy::theorem2: return "theorem2";
  }
  return "?";
}

ModuliFamily RunConfig::make_family() const {
  switch (family) {
    case FamilyKind::identity: return ModuliFamily::identity();
    case FamilyKind::power: return ModuliFamily::power(c);
    case FamilyKind::subexp: return ModuliFamily::subexp(gamma);
  }
  throw ConfigError("unknown family kind");
}

void RunConfig::validate() const {
  if (family == FamilyKind::power) {
    if (!(c > 1.0))
      throw ConfigError("config: family power requires c > 1 (violated: c = " +
                        std::to_string(c) + ")");
    if (c == std::round(c))
      throw ConfigError(
          "config: family power requires c not an integer (violated: c = " +
          std::to_string(c) + ")");
  }
  if (family == FamilyKind::subexp) {
    if (!(gamma > 1.0 && gamma < 1.5))
      throw ConfigError(
          "config: family subexp requires 1 < gamma < 3/2 (violated: gamma = " +
          std::to_string(gamma) + ")");
    if (window == WindowPolicy::theorem2 && !(C1 > 1.0 / (3.0 - 2.0 * gamma)))
      throw ConfigError(
          "config: theorem2 window requires C1 > 1/(3 - 2 gamma) = " +
          std::to_string(1.0 / (3.0 - 2.0 * gamma)) +
          " (violated: C1 = " + std::to_string(C1) + ")");
  }
  if (!(B > 0.0))
    throw ConfigError("config: requires B > 0 (violated: B = " + std::to_string(B) + ")");
  if (!(A > 0.0))
    throw ConfigError("config: requires A > 0 (violated: A = " + std::to_string(A) + ")");
  if (x < 16) throw ConfigError("config: requires x >= 16");
  if (window == WindowPolicy::custom && !(z > 0.0))
    throw ConfigError("config: custom window requires z > 0");
  if (grid_points < 2) throw ConfigError("config: grid_points must be >= 2");
}

namespace {

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os << "family=" << family_name(family) << "\n";
  os << "c=" << fmt_real(c) << "\n";
  os << "gamma=" << fmt_real(gamma) << "\n";
  os << "x=" << x << "\n";
  os << "y=" << fmt_real(y) << "\n";
  os << "z=" << fmt_real(z) << "\n";
  os << "window=" << window_policy_name(window) << "\n";
  os << "A=" << fmt_real(A) << "\n";
  os << "B=" << fmt_real(B) << "\n";
  os << "C1=" << fmt_real(C1) << "\n";
  os << "C5=" << fmt_real(C5) << "\n";
  os << "C6=" << fmt_real(C6) << "\n";
  os << "C7=" << fmt_real(C7) << "\n";
  os << "threads=" << threads << "\n";
  os << "grid_points=" << grid_points << "\n";
  os << "constants_cutoff=" << constants_cutoff << "\n";
  os << "seed=" << seed << "\n";
  os << "strict=" << (strict ? 1 : 0) << "\n";
  os << "out_dir=" << out_dir << "\n";
  return os.str();
}

void RunConfig::apply_kv(const std::string& key, const std::string& value) {
  auto to_u64 = [&](const std::string& s) -> u64 {
    try {
      return std::stoull(s);
    } catch (...) {
      throw ConfigError("config: bad integer for key '" + key + "': " + s);
    }
  };
  auto to_real = [&](const std::string& s) -> double {
    try {
      return std::stod(s);
    } catch (...) {
      throw ConfigError("config: bad real for key '" + key + "': " + s);
    }
  };
  if (key == "family") {
    if (value == "identity") family = FamilyKind::identity;
    else if (value == "power") family = FamilyKind::power;
    else if (value == "subexp") family = FamilyKind::subexp;
    else throw ConfigError("config: unknown family '" + value + "'");
  } else if (key == "c") c = to_real(value);
  else if (key == "gamma") gamma = to_real(value);
  else if (key == "x") x = to_u64(value);
  else if (key == "y") y = to_real(value);
  else if (key == "z") z = to_real(value);
  else if (key == "window") {
    if (value == "full") window = WindowPolicy::full;
    else if (value == "from-y1") window = WindowPolicy::from_y1;
    else if (value == "custom") window = WindowPolicy::custom;
    else if (value == "theorem2") window = WindowPolicy::theorem2;
    else throw ConfigError("config: unknown window policy '" + value + "'");
  } else if (key == "A") A = to_real(value);
  else if (key == "B") B = to_real(value);
  else if (key == "C1") C1 = to_real(value);
  else if (key == "C5") C5 = to_real(value);
  else if (key == "C6") C6 = to_real(value);
  else if (key == "C7") C7 = to_real(value);
  else if (key == "threads") threads = (int)to_u64(value);
  else if (key == "grid_points") grid_points = (int)to_u64(value);
  else if (key == "constants_cutoff") constants_cutoff = to_u64(value);
  else if (key == "seed") seed = to_u64(value);
  else if (key == "strict") strict = value == "1" || value == "true";
  else if (key == "out_dir") out_dir = value;
  else throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig RunConfig::parse_map(const std::map<std::string, std::string>& kv) {
  RunConfig cfg;
  for (auto& [k, v] : kv) cfg.apply_kv(k, v);
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto notspace = line.find_first_not_of(" \t\r");
    if (notspace == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) +
                        " is not key=value");
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    cfg.apply_kv(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

} // namespace apvar
