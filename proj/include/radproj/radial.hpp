#pragma once

#include "radproj/point_set.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace radproj {

/// Sorted full-circle angles in [0, 2pi) of the points as seen from the
/// reference point (which itself is skipped).
struct AngularProfile {
  std::vector<double> angles;
  double R = 0.0;
  std::size_t n() const noexcept { return angles.size(); }
};

/// Two angles closer than this signal a visibility defect.
inline constexpr double kDuplicateAngleTol = 1e-12;

AngularProfile project_angles(const PointSet& ps);

struct GapList {
  std::vector<double> gaps;
  double normalization = 0.0; // n / (2 pi)
  bool include_wraparound = false;
};

GapList normalized_gaps(const AngularProfile& ap, bool include_wraparound = false);

/// Fixed-width histogram on [0, t_max) with an overflow bucket.
struct SpacingHistogram {
  double bin_width = 0.01;
  double t_min = 0.0;
  double t_max = 4.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t overflow = 0;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t bins() const noexcept { return counts.size(); }
  double left(std::size_t k) const noexcept { return t_min + static_cast<double>(k) * bin_width; }
  double right(std::size_t k) const noexcept;
  double density(std::size_t k) const noexcept;
  double in_range_fraction() const noexcept;
};

inline constexpr double kDefaultBinWidth = 0.01;
inline constexpr double kDefaultTMax = 4.0;

SpacingHistogram histogram(const GapList& gl, double bin_width = kDefaultBinWidth,
                           double t_max = kDefaultTMax);

/// Sum of two histograms with identical binning.
SpacingHistogram merge(const SpacingHistogram& a, const SpacingHistogram& b);

namespace serial {
AngularProfile project_angles(const PointSet& ps);
}

} // namespace radproj
