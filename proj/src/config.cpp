#include "radproj/config.hpp"

#include "radproj/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace radproj {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw UsageError("config key '" + key + "': '" + v + "' is not a number");
  return out;
}

template <class Int>
Int parse_int(const std::string& key, const std::string& v) {
  Int out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw UsageError("config key '" + key + "': '" + v + "' is not an integer");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError("config key '" + key + "': '" + v + "' is not a boolean");
}

std::string opt_text(const std::optional<double>& v) { return v ? format_double(*v) : std::string("default"); }

std::optional<double> parse_opt(const std::string& key, const std::string& v) {
  if (v == "default" || v.empty()) return std::nullopt;
  return parse_double(key, v);
}

} // namespace

void RunConfig::set_value(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "set") set = v;
  else if (key == "radius") radius = parse_double(key, v);
  else if (key == "seed") seed = parse_int<std::uint64_t>(key, v);
  else if (key == "intensity") intensity = parse_double(key, v);
  else if (key == "rule") rule = v;
  else if (key == "steps") steps = parse_int<int>(key, v);
  else if (key == "window_rotation") window_rotation = parse_opt(key, v);
  else if (key == "window_shift_x") window_shift_x = parse_opt(key, v);
  else if (key == "window_shift_y") window_shift_y = parse_opt(key, v);
  else if (key == "max_points") max_points = parse_int<std::uint64_t>(key, v);
  else if (key == "visibility") visibility = v;
  else if (key == "angle_tol") angle_tol = parse_double(key, v);
  else if (key == "wraparound") wraparound = parse_bool(key, v);
  else if (key == "bin_width") bin_width = parse_double(key, v);
  else if (key == "t_max") t_max = parse_double(key, v);
  else if (key == "fit_lo") fit_lo = parse_double(key, v);
  else if (key == "fit_hi") fit_hi = parse_double(key, v);
  else if (key == "fit_terms") fit_terms = parse_int<int>(key, v);
  else if (key == "reference") reference = v;
  else if (key == "threads") threads = parse_int<int>(key, v);
  else if (key == "output_prefix") output_prefix = v;
  else if (key == "svg") svg = parse_bool(key, v);
  else if (key == "timestamp") timestamp = parse_bool(key, v);
  else throw UsageError("unknown config key '" + key + "'");
}

KeyValues RunConfig::result_keys() const {
  return {
      {"set", set},
      {"radius", format_double(radius)},
      {"seed", std::to_string(seed)},
      {"intensity", format_double(intensity)},
      {"rule", rule},
      {"steps", std::to_string(steps)},
      {"window_rotation", opt_text(window_rotation)},
      {"window_shift_x", opt_text(window_shift_x)},
      {"window_shift_y", opt_text(window_shift_y)},
      {"max_points", std::to_string(max_points)},
      {"visibility", visibility},
      {"angle_tol", format_double(angle_tol)},
      {"wraparound", wraparound ? "true" : "false"},
      {"bin_width", format_double(bin_width)},
      {"t_max", format_double(t_max)},
      {"fit_lo", format_double(fit_lo)},
      {"fit_hi", format_double(fit_hi)},
      {"fit_terms", std::to_string(fit_terms)},
      {"reference", reference},
  };
}

KeyValues RunConfig::all_keys() const {
  KeyValues kv = result_keys();
  kv.emplace_back("threads", std::to_string(threads));
  kv.emplace_back("output_prefix", output_prefix);
  kv.emplace_back("svg", svg ? "true" : "false");
  kv.emplace_back("timestamp", timestamp ? "true" : "false");
  return kv;
}

void RunConfig::write(std::ostream& os) const {
  for (const auto& [k, v] : all_keys()) os << k << " = " << v << '\n';
}

RunConfig RunConfig::parse(std::istream& is, const std::string& source) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    try {
      cfg.set_value(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const UsageError& e) {
      throw UsageError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  return parse(in, path);
}

std::string RunConfig::effective_visibility() const {
  if (visibility != "auto") return visibility;
  if (set == "z2") return "gcd";
  if (set == "ab" || set == "tt" || set == "gs") return "cms";
  return "brute";
}

std::string RunConfig::effective_reference() const {
  if (reference != "auto") return reference;
  return set == "z2" ? "g" : "exp";
}

bool operator==(const RunConfig& a, const RunConfig& b) { return a.all_keys() == b.all_keys(); }

} // namespace radproj
