#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace radproj {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Flat run configuration, serialised as `key = value` lines.
struct RunConfig {
  // generator
  std::string set = "z2"; // z2, poisson, ab, tt, gs, lancon_billard, chair, rule
  double radius = 50.0;   // <= 0 selects the covered radius for substitution sets
  std::uint64_t seed = 1;
  double intensity = 1.0;
  std::string rule;       // rule file for set = rule
  int steps = 8;
  std::optional<double> window_rotation;
  std::optional<double> window_shift_x;
  std::optional<double> window_shift_y;
  std::uint64_t max_points = 100'000'000;
  // visibility
  std::string visibility = "auto"; // auto, brute, gcd, cms
  double angle_tol = 1e-9;
  // pipeline
  bool wraparound = false;
  double bin_width = 0.01;
  double t_max = 4.0;
  // analysis
  double fit_lo = 5.0;
  double fit_hi = 50.0;
  int fit_terms = 3;
  std::string reference = "auto"; // auto, g, exp
  // runtime and output; not part of the result-defining echo
  int threads = 0;
  std::string output_prefix = "radproj";
  bool svg = false;
  bool timestamp = true;

  /// Sets one key from its text form. Throws UsageError on unknown keys or bad values.
  void set_value(const std::string& key, const std::string& value);

  /// Every key that determines results, in a fixed order.
  KeyValues result_keys() const;
  /// result_keys() plus runtime and output keys.
  KeyValues all_keys() const;

  void write(std::ostream& os) const;
  static RunConfig parse(std::istream& is, const std::string& source = "<config>");
  static RunConfig load(const std::string& path);

  /// Resolved visibility method name for this set ("auto" expanded).
  std::string effective_visibility() const;
  /// Resolved reference density name ("auto" expanded).
  std::string effective_reference() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

} // namespace radproj
