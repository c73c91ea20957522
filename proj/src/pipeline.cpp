#include "radproj/pipeline.hpp"

#include "radproj/error.hpp"
#include "radproj/substitution.hpp"
#include "radproj/visibility.hpp"

#include <algorithm>
#include <numeric>

namespace radproj {

namespace {

// Runs one pipeline stage, prefixing any library error with the stage name
// while keeping its type (and so its exit code).
template <class F> auto stage(const char* name, F&& f) {
  const auto tag = [name](const Error& e) { return std::string(name) + ": " + e.what(); };
  try {
    return f();
  } catch (const UsageError& e) {
    throw UsageError(tag(e));
  } catch (const ResourceError& e) {
    throw ResourceError(tag(e));
  } catch (const IntegrityError& e) {
    throw IntegrityError(tag(e));
  } catch (const ArithmeticError& e) {
    throw ArithmeticError(tag(e));
  }
}

} // namespace

CmsSpec cms_spec_for(const RunConfig& cfg) {
  std::optional<PlanarPoint> shift;
  if (cfg.window_shift_x || cfg.window_shift_y)
    shift = PlanarPoint{cfg.window_shift_x.value_or(0.0), cfg.window_shift_y.value_or(0.0)};
  return cms_by_name(cfg.set, cfg.window_rotation, shift);
}

PointSet generate(const RunConfig& cfg) {
  const auto max_points = static_cast<std::size_t>(cfg.max_points);
  if (cfg.set == "z2") return gen_lattice(cfg.radius, max_points);
  if (cfg.set == "poisson") return gen_poisson(cfg.radius, cfg.intensity, cfg.seed, max_points);
  if (cfg.set == "ab" || cfg.set == "tt" || cfg.set == "gs")
    return gen_cms(cms_spec_for(cfg), cfg.radius, max_points);
  if (cfg.set == "lancon_billard" || cfg.set == "chair" || cfg.set == "rule") {
    const std::string path = resolve_rule_path(cfg.set == "rule" ? cfg.rule : cfg.set);
    const SubstitutionRule rule = SubstitutionRule::load(path);
    return gen_substitution(rule, cfg.steps, cfg.radius, max_points);
  }
  throw UsageError("unknown point set '" + cfg.set +
                   "' (valid: z2, poisson, ab, tt, gs, lancon_billard, chair, rule)");
}

std::vector<char> visibility_mask(const PointSet& ps, const RunConfig& cfg) {
  switch (visibility_method_from_name(cfg.effective_visibility())) {
  case VisibilityMethod::BruteForce:
    return visibility_mask_brute_force(ps, cfg.angle_tol);
  case VisibilityMethod::GcdZ2:
    return visibility_mask_z2(ps);
  case VisibilityMethod::CmsLocal:
    break;
  }
  return visibility_mask_cms(ps, cms_spec_for(cfg));
}

PipelineResult run_pipeline(const RunConfig& cfg) {
  return run_pipeline(stage("generate", [&] { return generate(cfg); }), cfg);
}

PipelineResult run_pipeline(PointSet ps, const RunConfig& cfg) {
  PipelineResult r;
  const PointSet vis = stage("visibility", [&] { return ps.filtered(visibility_mask(ps, cfg)); });
  const AngularProfile ap = stage("projection", [&] { return project_angles(vis); });
  r.gaps = stage("normalisation", [&] { return normalized_gaps(ap, cfg.wraparound); });
  r.hist = stage("histogram", [&] { return histogram(r.gaps, cfg.bin_width, cfg.t_max); });

  auto& s = r.summary;
  s.points = ps.size();
  s.visible = ap.n();
  s.gaps = r.gaps.gaps.size();
  s.radius = ps.provenance.radius;
  const auto [mn, mx] = std::minmax_element(r.gaps.gaps.begin(), r.gaps.gaps.end());
  s.min_gap = *mn;
  s.max_gap = *mx;
  s.mean_gap = std::accumulate(r.gaps.gaps.begin(), r.gaps.gaps.end(), 0.0) / static_cast<double>(s.gaps);
  s.in_range_fraction = r.hist.in_range_fraction();

  r.reference = cfg.effective_reference();
  r.comparison = stage("comparison", [&] { return compare(r.hist, reference_by_name(r.reference)); });
  try {
    r.fit = tail_fit(r.gaps, cfg.fit_lo, cfg.fit_hi, cfg.fit_terms);
  } catch (const UsageError& e) {
    r.fit_error = e.what();
  }
  r.points = std::move(ps);
  return r;
}

} // namespace radproj
