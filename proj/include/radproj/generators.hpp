#pragma once

#include "radproj/cyclo.hpp"
#include "radproj/geometry.hpp"
#include "radproj/point_set.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace radproj {

/// Upper bound on the number of points a generator may materialise.
inline constexpr std::size_t kDefaultMaxPoints = 100'000'000;

PointSet gen_lattice(double R, std::size_t max_points = kDefaultMaxPoints);

/// Homogeneous Poisson process on the disk of radius R. The origin is
/// added to the realisation so that it can serve as reference point.
PointSet gen_poisson(double R, double intensity, std::uint64_t seed,
                     std::size_t max_points = kDefaultMaxPoints);

/// A cyclotomic model set {x in module : x* in window}.
struct CmsSpec {
  std::string name;
  const CycloTag* tag = nullptr;
  Window window;
  double lambda1 = 0.0; // rescaling factor of the (first) visibility test
  double lambda2 = 0.0; // second branch, dodecagonal only
};

/// Default shift of the decagonal and dodecagonal windows, in units of edge length.
inline constexpr PlanarPoint kDefaultShiftPerEdge{1e-4, 2e-4};

CmsSpec cms_ab(std::optional<double> rotation = std::nullopt,
               std::optional<PlanarPoint> shift = std::nullopt);
CmsSpec cms_tt(std::optional<double> rotation = std::nullopt,
               std::optional<PlanarPoint> shift = std::nullopt);
CmsSpec cms_gs(std::optional<double> rotation = std::nullopt,
               std::optional<PlanarPoint> shift = std::nullopt);
/// Looks up "ab", "tt" or "gs".
CmsSpec cms_by_name(const std::string& name, std::optional<double> rotation = std::nullopt,
                    std::optional<PlanarPoint> shift = std::nullopt);

/// Expected number of CMS points in the disk of radius R (density times area).
double cms_expected_count(const CmsSpec& spec, double R);

bool cms_member(const CmsSpec& spec, const ModulePoint& x, double R);

/// All x with |x| <= R and x* in the window, canonically sorted.
PointSet gen_cms(const CmsSpec& spec, double R, std::size_t max_points = kDefaultMaxPoints);

namespace serial {

PointSet gen_poisson(double R, double intensity, std::uint64_t seed,
                     std::size_t max_points = kDefaultMaxPoints);
PointSet gen_cms(const CmsSpec& spec, double R, std::size_t max_points = kDefaultMaxPoints);

/// Reference enumeration over every coefficient vector in [-B, B]^4.
PointSet gen_cms_box(const CmsSpec& spec, double R, std::int64_t B);

} // namespace serial

} // namespace radproj
