#pragma once

#include "radproj/generators.hpp"
#include "radproj/point_set.hpp"

#include <string>
#include <vector>

namespace radproj {

enum class VisibilityMethod { BruteForce, GcdZ2, CmsLocal };

VisibilityMethod visibility_method_from_name(const std::string& name);
const char* visibility_method_name(VisibilityMethod m) noexcept;

/// Angular tolerance used to group directions in the generic oracle.
inline constexpr double kAngleTol = 1e-9;

// Masks are aligned with the point order of the input; the reference point
// is always 0.

/// Keeps, per direction from the reference point, the nearest point. Exact
/// and lattice directions are compared exactly; float directions within
/// angle_tol radians.
std::vector<char> visibility_mask_brute_force(const PointSet& ps, double angle_tol = kAngleTol);

/// gcd(|a|, |b|) == 1 on a lattice set seen from the origin.
std::vector<char> visibility_mask_z2(const PointSet& ps);

/// Algebraic test for the model set described by spec (seen from the origin):
///   ab, tt:  gcd(x1, x2) is a unit and -lambda1 * x* is outside the window
///   gs:      n(x) = 1 and -lambda1 * x* outside, or n(x) = 2 and -lambda2 * x* outside
/// where n(x) = |norm(gcd(x1, x2))|. -lambda*x* is the internal image of the
/// nearest candidate blocker on the same ray.
std::vector<char> visibility_mask_cms(const PointSet& ps, const CmsSpec& spec);

/// |norm(gcd(x1, x2))|, or 0 for the zero point.
std::int64_t norm_class(const ModulePoint& x);

PointSet visible_brute_force(const PointSet& ps, double angle_tol = kAngleTol);
PointSet visible_z2(const PointSet& ps);
PointSet visible_ab(const PointSet& ps, const CmsSpec& spec);
PointSet visible_tt(const PointSet& ps, const CmsSpec& spec);
PointSet visible_gs(const PointSet& ps, const CmsSpec& spec);
PointSet visible_cms(const PointSet& ps, const CmsSpec& spec);

namespace serial {
std::vector<char> visibility_mask_z2(const PointSet& ps);
std::vector<char> visibility_mask_cms(const PointSet& ps, const CmsSpec& spec);
} // namespace serial

} // namespace radproj
