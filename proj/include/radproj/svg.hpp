#pragma once

#include "radproj/analysis.hpp"
#include "radproj/radial.hpp"

#include <iosfwd>
#include <string>

namespace radproj {

/// Histogram bars with the reference density overlaid as a polyline.
/// With `timestamp` a generation-time comment is added; it is the only
/// content that varies between identical runs.
void write_histogram_svg(std::ostream& os, const SpacingHistogram& h, const ReferenceDensity& ref,
                         const std::string& title, bool timestamp);

} // namespace radproj
