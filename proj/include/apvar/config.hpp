#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "apvar/moduli.hpp"

namespace apvar {

// exit code 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// exit code 3
struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// exit code 4: an exact identity failed inside a run
struct CheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class WindowPolicy { full, from_y1, custom, theorem2 };

std::string window_policy_name(WindowPolicy p);

struct RunConfig {
  FamilyKind family = FamilyKind::identity;
  double c = 1.5;
  double gamma = 1.2;
  u64 x = 100000;
  double y = 0.0;      // 0 means: derive from B (largest y with f(y) <= x L^{-B})
  double z = 0.0;      // custom window lower end
  WindowPolicy window = WindowPolicy::full;
  double A = 1.0;
  double B = 2.0;
  double C1 = 1.7;
  double C5 = 1.0;
  double C6 = 3.0;
  double C7 = 1.0;
  int threads = 0;     // 0 means hardware default
  int grid_points = 16;
  u64 constants_cutoff = 1000000;
  u64 seed = 20240901; // exponential-sum sampling
  bool strict = false; // escalate large-x knob inequalities from warning to error
  std::string out_dir = "out";

  ModuliFamily make_family() const;

  // named-constraint validation; throws ConfigError quoting the violation
  void validate() const;

  // canonical flat key=value rendering; parse(serialize()) round-trips
  std::string serialize() const;
  static RunConfig parse_file(const std::string& path);
  static RunConfig parse_map(const std::map<std::string, std::string>& kv);
  void apply_kv(const std::string& key, const std::string& value);
};

} // namespace apvar
