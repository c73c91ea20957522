#include "radproj/radial.hpp"

#include "radproj/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace radproj {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double full_angle(double y, double x) {
  double a = std::atan2(y, x);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0; // -0.0 rounding up to exactly 2pi
  return a;
}

AngularProfile project_impl(const PointSet& ps, bool parallel) {
  const std::size_t n = ps.size();
  const PlanarPoint x0 = ps.reference_point;
  std::vector<double> angle(n);
  std::vector<char> skip(n, 0);
  const auto sn = static_cast<std::int64_t>(n);
  auto one = [&](std::int64_t si) {
    const auto i = static_cast<std::size_t>(si);
    const PlanarPoint p = ps.planar(i) - x0;
    if (std::abs(p.x) <= 1e-12 && std::abs(p.y) <= 1e-12) {
      skip[i] = 1;
      return;
    }
    angle[i] = full_angle(p.y, p.x);
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < sn; ++i) one(i);
  } else {
    for (std::int64_t i = 0; i < sn; ++i) one(i);
  }
  AngularProfile ap;
  ap.R = ps.provenance.radius;
  ap.angles.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!skip[i]) ap.angles.push_back(angle[i]);
  std::sort(ap.angles.begin(), ap.angles.end());
  for (std::size_t i = 1; i < ap.angles.size(); ++i)
    if (ap.angles[i] - ap.angles[i - 1] < kDuplicateAngleTol) {
      std::ostringstream os;
      os.precision(17);
      os << "two projected points share the angle " << ap.angles[i]
         << "; the input is not a visible set";
      throw IntegrityError(os.str());
    }
  if (ap.angles.size() > 1 && ap.angles.front() + kTwoPi - ap.angles.back() < kDuplicateAngleTol)
    throw IntegrityError("two projected points share the angle 0; the input is not a visible set");
  return ap;
}

} // namespace

AngularProfile project_angles(const PointSet& ps) { return project_impl(ps, true); }

namespace serial {
AngularProfile project_angles(const PointSet& ps) { return project_impl(ps, false); }
} // namespace serial

GapList normalized_gaps(const AngularProfile& ap, bool include_wraparound) {
  const std::size_t n = ap.n();
  if (n < 2) throw UsageError("at least two angles are needed to form gaps");
  GapList gl;
  gl.normalization = static_cast<double>(n) / kTwoPi;
  gl.include_wraparound = include_wraparound;
  gl.gaps.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    gl.gaps.push_back((ap.angles[i + 1] - ap.angles[i]) * gl.normalization);
  if (include_wraparound)
    gl.gaps.push_back((ap.angles.front() + kTwoPi - ap.angles.back()) * gl.normalization);
  return gl;
}

double SpacingHistogram::right(std::size_t k) const noexcept {
  return k + 1 == counts.size() ? t_max : left(k + 1);
}

double SpacingHistogram::density(std::size_t k) const noexcept {
  if (total == 0) return 0.0;
  return static_cast<double>(counts[k]) / (static_cast<double>(total) * (right(k) - left(k)));
}

double SpacingHistogram::in_range_fraction() const noexcept {
  if (total == 0) return 0.0;
  return static_cast<double>(total - overflow) / static_cast<double>(total);
}

SpacingHistogram histogram(const GapList& gl, double bin_width, double t_max) {
  if (!(bin_width > 0.0) || !(t_max > 0.0)) throw UsageError("bin width and t_max must be positive");
  SpacingHistogram h;
  h.bin_width = bin_width;
  h.t_max = t_max;
  const double q = t_max / bin_width;
  const auto nb = static_cast<std::size_t>(std::abs(q - std::round(q)) < 1e-9 ? std::round(q) : std::ceil(q));
  h.counts.assign(nb, 0);
  for (double d : gl.gaps) {
    ++h.total;
    if (d >= t_max) {
      ++h.overflow;
      continue;
    }
    auto k = static_cast<std::size_t>(std::floor(d / bin_width));
    // floor(d / w) can land one bin off when d sits on an edge.
    if (k > 0 && h.left(k) > d) --k;
    if (k + 1 < nb && h.left(k + 1) <= d) ++k;
    if (k >= nb) k = nb - 1;
    ++h.counts[k];
  }
  return h;
}

SpacingHistogram merge(const SpacingHistogram& a, const SpacingHistogram& b) {
  if (a.bin_width != b.bin_width || a.t_min != b.t_min || a.t_max != b.t_max || a.counts.size() != b.counts.size())
    throw UsageError("histograms with different binning cannot be merged");
  SpacingHistogram h = a;
  for (std::size_t k = 0; k < h.counts.size(); ++k) h.counts[k] += b.counts[k];
  h.total += b.total;
  h.overflow += b.overflow;
  return h;
}

} // namespace radproj
