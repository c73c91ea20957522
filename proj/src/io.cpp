#include "radproj/io.hpp"

#include "radproj/error.hpp"
#include "radproj/version.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace radproj {

namespace {

std::string module_name(const CycloTag& t) { return "zeta" + std::to_string(t.n); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ls(line);
  while (std::getline(ls, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

double cell_double(const std::string& s, const std::string& source, int line) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw UsageError(source + ":" + std::to_string(line) + ": '" + s + "' is not a number");
  return v;
}

std::uint64_t cell_uint(const std::string& s, const std::string& source, int line) {
  std::uint64_t v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw UsageError(source + ":" + std::to_string(line) + ": '" + s + "' is not a count");
  return v;
}

} // namespace

void write_comment_header(std::ostream& os, const KeyValues& lines) {
  for (const auto& [k, v] : lines) os << "# " << k << ": " << v << '\n';
}

KeyValues provenance_lines(const std::string& command, const RunConfig& cfg, const Provenance* gen) {
  KeyValues out{{"artifact", std::string(kArtifactName) + " " + kVersion}, {"command", command}};
  for (const auto& [k, v] : cfg.result_keys()) out.emplace_back("config." + k, v);
  if (gen) {
    out.emplace_back("generator", gen->generator);
    out.emplace_back("generator.radius", format_double(gen->radius));
    if (gen->seed) out.emplace_back("generator.seed", std::to_string(*gen->seed));
    for (const auto& [k, v] : gen->params) out.emplace_back("generator." + k, v);
  }
  return out;
}

void write_points_csv(std::ostream& os, const PointSet& ps, const std::vector<char>* mask) {
  const std::string extra = mask ? ",visible" : "";
  if (ps.kind == PointKind::Exact) {
    os << "x1_a,x1_b,x2_a,x2_b,module" << extra << '\n';
    const std::string mod = module_name(*ps.tag);
    for (std::size_t i = 0; i < ps.exact.size(); ++i) {
      const auto& p = ps.exact[i];
      os << p.x1.a << ',' << p.x1.b << ',' << p.x2.a << ',' << p.x2.b << ',' << mod;
      if (mask) os << ',' << int((*mask)[i] != 0);
      os << '\n';
    }
    return;
  }
  os << "x,y" << extra << '\n';
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps.kind == PointKind::Lattice)
      os << ps.lattice[i].a << ',' << ps.lattice[i].b;
    else
      os << format_double(ps.floating[i].x) << ',' << format_double(ps.floating[i].y);
    if (mask) os << ',' << int((*mask)[i] != 0);
    os << '\n';
  }
}

void write_histogram_csv(std::ostream& os, const SpacingHistogram& h) {
  os << "# histogram_total: " << h.total << '\n' << "# histogram_overflow: " << h.overflow << '\n';
  os << "bin_left,bin_right,count,density\n";
  for (std::size_t k = 0; k < h.bins(); ++k)
    os << format_double(h.left(k)) << ',' << format_double(h.right(k)) << ',' << h.counts[k] << ','
       << format_double(h.density(k)) << '\n';
}

void write_gaps_csv(std::ostream& os, const GapList& gl) {
  os << "gap\n";
  for (double g : gl.gaps) os << format_double(g) << '\n';
}

GapList read_gaps_csv(std::istream& is, const std::string& source) {
  GapList gl;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv(line);
    if (!header) {
      if (cells.empty() || cells[0] != "gap")
        throw UsageError(source + ":" + std::to_string(lineno) + ": expected header 'gap'");
      header = true;
      continue;
    }
    if (cells.empty()) continue;
    const double g = cell_double(cells[0], source, lineno);
    if (!(g > 0.0)) throw UsageError(source + ":" + std::to_string(lineno) + ": gaps must be positive");
    gl.gaps.push_back(g);
  }
  if (!header) throw UsageError(source + ": missing header 'gap'");
  return gl;
}

SpacingHistogram read_histogram_csv(std::istream& is, const std::string& source) {
  SpacingHistogram h;
  h.counts.clear();
  std::string line;
  int lineno = 0;
  bool header = false;
  std::optional<std::uint64_t> total, overflow;
  std::vector<double> lefts, rights;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(1, colon - 1);
      std::string val = line.substr(colon + 1);
      while (!key.empty() && key.front() == ' ') key.erase(key.begin());
      while (!val.empty() && (val.front() == ' ')) val.erase(val.begin());
      while (!val.empty() && (val.back() == '\r' || val.back() == ' ')) val.pop_back();
      if (key == "histogram_total") total = cell_uint(val, source, lineno);
      if (key == "histogram_overflow") overflow = cell_uint(val, source, lineno);
      continue;
    }
    const auto cells = split_csv(line);
    if (!header) {
      if (cells.size() < 3 || cells[0] != "bin_left" || cells[1] != "bin_right" || cells[2] != "count")
        throw UsageError(source + ":" + std::to_string(lineno) + ": expected header 'bin_left,bin_right,count,density'");
      header = true;
      continue;
    }
    if (cells.size() < 3) throw UsageError(source + ":" + std::to_string(lineno) + ": expected at least 3 columns");
    lefts.push_back(cell_double(cells[0], source, lineno));
    rights.push_back(cell_double(cells[1], source, lineno));
    h.counts.push_back(cell_uint(cells[2], source, lineno));
  }
  if (!header) throw UsageError(source + ": missing histogram header");
  if (h.counts.empty()) throw UsageError(source + ": histogram has no bins");
  h.t_min = lefts.front();
  h.t_max = rights.back();
  h.bin_width = rights.front() - lefts.front();
  std::uint64_t in_range = 0;
  for (auto c : h.counts) in_range += c;
  h.overflow = overflow.value_or(0);
  h.total = total.value_or(in_range + h.overflow);
  if (h.total < in_range + h.overflow) throw UsageError(source + ": histogram_total is smaller than the bin counts");
  return h;
}

TableKind detect_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("gap", 0) == 0) return TableKind::Gaps;
    if (line.rfind("bin_left", 0) == 0) return TableKind::Histogram;
    if (line.find('{') != std::string::npos) return TableKind::TailFitJson;
    return TableKind::Unknown;
  }
  return TableKind::Unknown;
}

Json to_json(const TailFit& fit) {
  Json j;
  j["c3"] = fit.c3;
  j["c4"] = fit.c4;
  j["coefficients"] = fit.coefficients;
  j["residual"] = fit.residual;
  j["fit_range"] = {fit.d_lo, fit.d_hi};
  j["sample_count"] = fit.sample_count;
  j["knots"] = fit.knots;
  j["terms"] = fit.terms;
  return j;
}

TailFit tail_fit_from_json(const Json& j) {
  try {
    TailFit f;
    f.c3 = j.at("c3").get<double>();
    f.c4 = j.at("c4").get<double>();
    f.coefficients = j.at("coefficients").get<std::vector<double>>();
    f.residual = j.at("residual").get<double>();
    f.d_lo = j.at("fit_range").at(0).get<double>();
    f.d_hi = j.at("fit_range").at(1).get<double>();
    f.sample_count = j.at("sample_count").get<std::size_t>();
    f.knots = j.at("knots").get<std::size_t>();
    f.terms = j.at("terms").get<int>();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed tail fit JSON: ") + e.what());
  }
}

Json to_json(const Comparison& c) {
  Json j;
  j["l1"] = c.l1;
  j["sup"] = c.sup;
  j["ks"] = c.ks;
  return j;
}

Json to_json(const PipelineSummary& s) {
  Json j;
  j["points"] = s.points;
  j["visible"] = s.visible;
  j["gaps"] = s.gaps;
  j["radius"] = s.radius;
  j["min_gap"] = s.min_gap;
  j["max_gap"] = s.max_gap;
  j["mean_gap"] = s.mean_gap;
  j["in_range_fraction"] = s.in_range_fraction;
  return j;
}

Json config_json(const RunConfig& cfg) {
  Json j = Json::object();
  for (const auto& [k, v] : cfg.result_keys()) j[k] = v;
  return j;
}

Json provenance_json(const Provenance& p) {
  Json j;
  j["generator"] = p.generator;
  j["radius"] = p.radius;
  if (p.seed) j["seed"] = *p.seed;
  Json params = Json::object();
  for (const auto& [k, v] : p.params) params[k] = v;
  j["params"] = params;
  return j;
}

Json pipeline_json(const RunConfig& cfg, const PipelineResult& r) {
  Json j;
  j["artifact"] = {{"name", kArtifactName}, {"version", kVersion}};
  j["command"] = "pipeline";
  j["config"] = config_json(cfg);
  j["generator"] = provenance_json(r.points.provenance);
  j["summary"] = to_json(r.summary);
  j["histogram"] = {{"bin_width", r.hist.bin_width},
                    {"t_min", r.hist.t_min},
                    {"t_max", r.hist.t_max},
                    {"total", r.hist.total},
                    {"overflow", r.hist.overflow}};
  j["comparison"] = to_json(r.comparison);
  j["comparison"]["reference"] = r.reference;
  if (r.fit)
    j["tail_fit"] = to_json(*r.fit);
  else
    j["tail_fit_error"] = r.fit_error;
  return j;
}

void write_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

} // namespace radproj
