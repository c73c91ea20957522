#include "radproj/analysis.hpp"
#include "radproj/config.hpp"
#include "radproj/error.hpp"
#include "radproj/io.hpp"
#include "radproj/pipeline.hpp"
#include "radproj/radial.hpp"
#include "radproj/svg.hpp"
#include "radproj/version.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>
#include <map>
#include <new>
#include <string>

using namespace radproj;

namespace {

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;
  bool no_timestamp = false;
};

// Registers --flag-name for each config key; values are applied after the
// config file so that flags win.
void add_config_flags(CLI::App* cmd, Overrides& ov, const std::vector<std::pair<std::string, std::string>>& keys) {
  cmd->add_option("--config", ov.config_path, "key = value config file")->check(CLI::ExistingFile);
  for (const auto& [key, help] : keys) {
    std::string flag = "--" + key;
    for (auto& c : flag)
      if (c == '_') c = '-';
    cmd->add_option_function<std::string>(flag, [&ov, key = key](const std::string& v) { ov.values[key] = v; }, help);
  }
}

const std::vector<std::pair<std::string, std::string>> kGeneratorKeys = {
    {"set", "z2, poisson, ab, tt, gs, lancon_billard, chair or rule"},
    {"radius", "patch radius (<= 0: covered radius of a substitution patch)"},
    {"seed", "Poisson seed"},
    {"intensity", "Poisson intensity"},
    {"rule", "rule file or shipped rule name for --set rule"},
    {"steps", "inflation steps"},
    {"window_rotation", "CMS window rotation in radians"},
    {"window_shift_x", "CMS window shift, x component"},
    {"window_shift_y", "CMS window shift, y component"},
    {"max_points", "point budget"},
    {"threads", "worker threads (0: all cores)"},
};

const std::vector<std::pair<std::string, std::string>> kVisibilityKeys = {
    {"visibility", "auto, brute, gcd or cms"},
    {"angle_tol", "angle grouping tolerance of the brute-force test"},
};

const std::vector<std::pair<std::string, std::string>> kAnalysisKeys = {
    {"wraparound", "include the gap across 2*pi"},
    {"bin_width", "histogram bin width"},
    {"t_max", "histogram upper edge"},
    {"fit_lo", "tail fit lower bound"},
    {"fit_hi", "tail fit upper bound"},
    {"fit_terms", "tail fit terms"},
    {"reference", "auto, g or exp"},
};

RunConfig resolve(const Overrides& ov) {
  RunConfig cfg = ov.config_path.empty() ? RunConfig{} : RunConfig::load(ov.config_path);
  for (const auto& [k, v] : ov.values) cfg.set_value(k, v);
  if (ov.no_timestamp) cfg.timestamp = false;
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  return out;
}

// Writes to a file, or to stdout when path is empty or "-".
template <class F> void emit(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  auto out = open_out(path);
  write(out);
}

std::string fit_source_label(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

Json fit_document(const std::string& source, const TailFit& fit) {
  Json j;
  j["artifact"] = {{"name", kArtifactName}, {"version", kVersion}};
  j["command"] = "fit";
  j["source"] = source;
  j["tail_fit"] = to_json(fit);
  return j;
}

GapList load_gaps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return read_gaps_csv(in, path);
}

SpacingHistogram load_histogram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return read_histogram_csv(in, path);
}

ReferenceDensity reference_for(const std::string& name) {
  if (name == "g" || name == "z2" || name == "exp" || name == "poisson") return reference_by_name(name);
  if (detect_table(name) != TableKind::Histogram)
    throw UsageError("reference '" + name + "' is neither g, exp nor a histogram CSV");
  return reference_from_histogram(load_histogram(name));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial projection statistics of planar point sets"};
  app.set_version_flag("--version", std::string(kArtifactName) + " " + kVersion);
  app.require_subcommand(1);

  Overrides ov;
  std::string output;
  bool diagnostic = false;
  bool write_gaps = false;
  std::string input;
  std::string reference = "auto";
  double grid_lo = 0.01, grid_hi = 4.0, grid_step = 0.01;

  auto* gen = app.add_subcommand("generate", "write a point set as CSV");
  add_config_flags(gen, ov, kGeneratorKeys);
  gen->add_option("-o,--output", output, "output CSV (default stdout)");

  auto* vis = app.add_subcommand("visible", "write the visible points of a point set");
  add_config_flags(vis, ov, kGeneratorKeys);
  for (const auto& [k, h] : kVisibilityKeys) {
    std::string flag = "--" + k;
    for (auto& c : flag)
      if (c == '_') c = '-';
    vis->add_option_function<std::string>(flag, [&ov, k = k](const std::string& v) { ov.values[k] = v; }, h);
  }
  vis->add_option("-o,--output", output, "output CSV (default stdout)");
  vis->add_flag("--diagnostic", diagnostic, "write every point with a visible column");

  auto* pipe = app.add_subcommand("pipeline", "generate, project and summarise");
  {
    auto keys = kGeneratorKeys;
    keys.insert(keys.end(), kVisibilityKeys.begin(), kVisibilityKeys.end());
    keys.insert(keys.end(), kAnalysisKeys.begin(), kAnalysisKeys.end());
    keys.emplace_back("output_prefix", "prefix of the output files");
    add_config_flags(pipe, ov, keys);
  }
  pipe->add_option_function<std::string>("-o,--out-prefix", [&ov](const std::string& v) { ov.values["output_prefix"] = v; },
                                         "prefix of the output files");
  pipe->add_flag_function("--svg", [&ov](std::int64_t) { ov.values["svg"] = "true"; }, "also write an SVG plot");
  pipe->add_flag("--no-timestamp", ov.no_timestamp, "omit the generation time from the SVG");
  pipe->add_flag("--gaps", write_gaps, "also write the normalised gaps");

  auto* fit = app.add_subcommand("fit", "power-law tail fit of a gaps or histogram file");
  fit->add_option("input", input, "gaps CSV, histogram CSV or tail fit JSON")->required();
  for (const std::string k : {"fit_lo", "fit_hi", "fit_terms"}) {
    std::string flag = "--" + k;
    flag[5] = '-';
    fit->add_option_function<std::string>(flag, [&ov, k](const std::string& v) { ov.values[k] = v; });
  }
  fit->add_option("-o,--output", output, "output JSON (default stdout)");

  auto* cmp = app.add_subcommand("compare", "distance between a gaps or histogram file and a reference");
  cmp->add_option("input", input, "gaps CSV or histogram CSV")->required();
  cmp->add_option("--reference", reference, "g, exp or a histogram CSV");
  for (const std::string k : {"bin_width", "t_max"}) {
    std::string flag = "--" + k;
    for (auto& c : flag)
      if (c == '_') c = '-';
    cmp->add_option_function<std::string>(flag, [&ov, k](const std::string& v) { ov.values[k] = v; });
  }
  cmp->add_option("-o,--output", output, "output JSON (default stdout)");

  auto* den = app.add_subcommand("density", "tabulate g, its tail expansion and Exp(1)");
  den->add_option("--from", grid_lo, "first grid point")->check(CLI::PositiveNumber);
  den->add_option("--to", grid_hi, "last grid point");
  den->add_option("--step", grid_step, "grid spacing")->check(CLI::PositiveNumber);
  den->add_option("-o,--output", output, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      const RunConfig cfg = resolve(ov);
      const PointSet ps = generate(cfg);
      emit(output, [&](std::ostream& os) {
        write_comment_header(os, provenance_lines("generate", cfg, &ps.provenance));
        write_points_csv(os, ps);
      });
    } else if (vis->parsed()) {
      const RunConfig cfg = resolve(ov);
      const PointSet ps = generate(cfg);
      const auto mask = visibility_mask(ps, cfg);
      auto lines = provenance_lines("visible", cfg, &ps.provenance);
      lines.emplace_back("visibility.method", cfg.effective_visibility());
      std::size_t kept = 0;
      for (char m : mask) kept += m != 0;
      lines.emplace_back("visibility.visible", std::to_string(kept));
      emit(output, [&](std::ostream& os) {
        write_comment_header(os, lines);
        if (diagnostic)
          write_points_csv(os, ps, &mask);
        else
          write_points_csv(os, ps.filtered(mask));
      });
    } else if (pipe->parsed()) {
      const RunConfig cfg = resolve(ov);
      const PipelineResult r = run_pipeline(cfg);
      const auto lines = provenance_lines("pipeline", cfg, &r.points.provenance);
      const std::string& prefix = cfg.output_prefix;
      {
        auto out = open_out(prefix + ".hist.csv");
        write_comment_header(out, lines);
        write_histogram_csv(out, r.hist);
      }
      {
        auto out = open_out(prefix + ".summary.json");
        write_json(out, pipeline_json(cfg, r));
      }
      if (write_gaps) {
        auto out = open_out(prefix + ".gaps.csv");
        write_comment_header(out, lines);
        write_gaps_csv(out, r.gaps);
      }
      if (cfg.svg) {
        auto out = open_out(prefix + ".svg");
        const std::string title = cfg.set + ", R = " + format_double(r.summary.radius) + ", " +
                                  std::to_string(r.summary.visible) + " visible points";
        write_histogram_svg(out, r.hist, reference_by_name(r.reference), title, cfg.timestamp);
      }
      std::cout << "points " << r.summary.points << ", visible " << r.summary.visible << ", min gap "
                << format_double(r.summary.min_gap) << ", L1 vs " << r.reference << ' '
                << format_double(r.comparison.l1) << '\n';
    } else if (fit->parsed()) {
      const RunConfig cfg = resolve(ov);
      if (!(cfg.fit_lo < cfg.fit_hi)) throw UsageError("empty fit range [" + format_double(cfg.fit_lo) + ", " + format_double(cfg.fit_hi) + "]");
      Json doc;
      switch (detect_table(input)) {
      case TableKind::Gaps:
        doc = fit_document(fit_source_label(input), tail_fit(load_gaps(input), cfg.fit_lo, cfg.fit_hi, cfg.fit_terms));
        break;
      case TableKind::Histogram:
        doc = fit_document(fit_source_label(input),
                           tail_fit(load_histogram(input), cfg.fit_lo, cfg.fit_hi, cfg.fit_terms));
        break;
      case TableKind::TailFitJson: {
        std::ifstream in(input);
        Json j;
        try {
          j = Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
          throw UsageError(input + ": " + e.what());
        }
        const Json& body = j.contains("tail_fit") ? j.at("tail_fit") : j;
        const std::string source = j.contains("source") && j["source"].is_string() ? j["source"].get<std::string>()
                                                                                   : fit_source_label(input);
        doc = fit_document(source, tail_fit_from_json(body));
        break;
      }
      case TableKind::Unknown:
        throw UsageError(input + ": not a gaps CSV, histogram CSV or tail fit JSON");
      }
      emit(output, [&](std::ostream& os) { write_json(os, doc); });
    } else if (cmp->parsed()) {
      const RunConfig cfg = resolve(ov);
      const ReferenceDensity ref = reference_for(reference == "auto" ? "g" : reference);
      Json doc;
      doc["artifact"] = {{"name", kArtifactName}, {"version", kVersion}};
      doc["command"] = "compare";
      doc["source"] = fit_source_label(input);
      doc["reference"] = ref.name;
      switch (detect_table(input)) {
      case TableKind::Gaps: {
        const GapList gl = load_gaps(input);
        Comparison c = compare(histogram(gl, cfg.bin_width, cfg.t_max), ref);
        c.ks = ks_distance(gl, ref);
        doc["comparison"] = to_json(c);
        break;
      }
      case TableKind::Histogram:
        doc["comparison"] = to_json(compare(load_histogram(input), ref));
        break;
      default:
        throw UsageError(input + ": not a gaps or histogram CSV");
      }
      emit(output, [&](std::ostream& os) { write_json(os, doc); });
    } else if (den->parsed()) {
      if (!(grid_hi >= grid_lo)) throw UsageError("--to must not be below --from");
      emit(output, [&](std::ostream& os) {
        os << "t,g,g_tail,exp\n";
        const auto n = static_cast<std::size_t>((grid_hi - grid_lo) / grid_step + 1e-9);
        for (std::size_t i = 0; i <= n; ++i) {
          const double t = grid_lo + static_cast<double>(i) * grid_step;
          os << format_double(t) << ',' << format_double(density_z2(t)) << ','
             << format_double(density_z2_tail(1.0 / t)) << ',' << format_double(density_exp(1.0, t)) << '\n';
        }
      });
    }
  } catch (const Error& e) {
    std::cerr << "radproj: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::bad_alloc&) {
    std::cerr << "radproj: out of memory\n";
    return 3;
  }
  return 0;
}
