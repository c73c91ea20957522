#pragma once

#include "radproj/analysis.hpp"
#include "radproj/config.hpp"
#include "radproj/generators.hpp"
#include "radproj/point_set.hpp"
#include "radproj/radial.hpp"

#include <optional>

namespace radproj {

/// Generates the point set named by cfg.set.
PointSet generate(const RunConfig& cfg);

/// CMS spec for cfg.set with the configured window overrides.
CmsSpec cms_spec_for(const RunConfig& cfg);

/// Visibility mask for ps under the configured method.
std::vector<char> visibility_mask(const PointSet& ps, const RunConfig& cfg);

struct PipelineSummary {
  std::size_t points = 0;
  std::size_t visible = 0;
  std::size_t gaps = 0;
  double radius = 0.0;
  double min_gap = 0.0;
  double max_gap = 0.0;
  double mean_gap = 0.0;
  double in_range_fraction = 0.0;
};

struct PipelineResult {
  PointSet points;
  GapList gaps;
  SpacingHistogram hist;
  PipelineSummary summary;
  std::string reference;
  Comparison comparison;
  std::optional<TailFit> fit;
  std::string fit_error;
};

/// generate -> visible -> project -> normalise -> histogram, plus summary,
/// comparison against the configured reference and a tail fit.
PipelineResult run_pipeline(const RunConfig& cfg);

/// Same stages starting from an existing point set.
PipelineResult run_pipeline(PointSet ps, const RunConfig& cfg);

} // namespace radproj
