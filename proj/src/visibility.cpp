#include "radproj/visibility.hpp"

#include "radproj/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace radproj {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t igcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::size_t require_reference(const PointSet& ps) {
  const auto r = ps.reference_index();
  if (!r) throw UsageError("reference point is not a member of the point set");
  return *r;
}

void require_origin(const PointSet& ps) {
  if (ps.reference_point.x != 0.0 || ps.reference_point.y != 0.0)
    throw UsageError("algebraic visibility tests require the origin as reference point");
}

// Direction of point i relative to the reference, in a form suitable for
// exact collinearity tests.
struct Direction {
  ModulePoint m;
  LatticePoint l;
  PlanarPoint p;
};

bool same_ray(const PointSet& ps, const Direction& u, const Direction& v) {
  if (u.p.x * v.p.x + u.p.y * v.p.y <= 0.0) return false;
  switch (ps.kind) {
  case PointKind::Exact:
    return (u.m.x1 * v.m.x2 - u.m.x2 * v.m.x1).is_zero();
  case PointKind::Lattice:
    return static_cast<__int128>(u.l.a) * v.l.b == static_cast<__int128>(u.l.b) * v.l.a;
  case PointKind::Float:
    break;
  }
  return true; // float directions are already grouped by angle
}

bool cms_keep(const ModulePoint& x, const CmsSpec& spec) {
  if (x.x1.is_zero() && x.x2.is_zero()) return false;
  const std::int64_t nc = norm_class(x);
  const PlanarPoint xs = embed_internal(x);
  double lambda = 0.0;
  if (nc == 1)
    lambda = spec.lambda1;
  else if (nc == 2 && spec.tag->n == 12)
    lambda = spec.lambda2;
  else
    return false;
  return !spec.window.contains(-lambda * xs);
}

void check_cms_input(const PointSet& ps, const CmsSpec& spec) {
  if (ps.kind != PointKind::Exact || ps.tag == nullptr || ps.tag->n != spec.tag->n)
    throw UsageError("model-set visibility test '" + spec.name + "' needs exact points of order " +
                     std::to_string(spec.tag->n));
  require_origin(ps);
}

std::vector<char> mask_cms_impl(const PointSet& ps, const CmsSpec& spec, bool parallel) {
  check_cms_input(ps, spec);
  const auto n = static_cast<std::int64_t>(ps.exact.size());
  std::vector<char> mask(ps.exact.size(), 0);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) mask[static_cast<std::size_t>(i)] = cms_keep(ps.exact[static_cast<std::size_t>(i)], spec);
  } else {
    for (std::int64_t i = 0; i < n; ++i) mask[static_cast<std::size_t>(i)] = cms_keep(ps.exact[static_cast<std::size_t>(i)], spec);
  }
  return mask;
}

std::vector<char> mask_z2_impl(const PointSet& ps, bool parallel) {
  if (ps.kind != PointKind::Lattice) throw UsageError("gcd visibility test needs a lattice point set");
  require_origin(ps);
  const auto n = static_cast<std::int64_t>(ps.lattice.size());
  std::vector<char> mask(ps.lattice.size(), 0);
  auto keep = [&](std::int64_t i) {
    const auto& p = ps.lattice[static_cast<std::size_t>(i)];
    mask[static_cast<std::size_t>(i)] = igcd(p.a, p.b) == 1;
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) keep(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) keep(i);
  }
  return mask;
}

} // namespace

VisibilityMethod visibility_method_from_name(const std::string& name) {
  if (name == "brute" || name == "brute_force") return VisibilityMethod::BruteForce;
  if (name == "gcd" || name == "z2") return VisibilityMethod::GcdZ2;
  if (name == "cms" || name == "algebraic") return VisibilityMethod::CmsLocal;
  throw UsageError("unknown visibility method '" + name + "' (valid: brute, gcd, cms)");
}

const char* visibility_method_name(VisibilityMethod m) noexcept {
  switch (m) {
  case VisibilityMethod::BruteForce:
    return "brute";
  case VisibilityMethod::GcdZ2:
    return "gcd";
  case VisibilityMethod::CmsLocal:
    break;
  }
  return "cms";
}

std::int64_t norm_class(const ModulePoint& x) {
  if (x.x1.is_zero() && x.x2.is_zero()) return 0;
  const std::int64_t n = norm(gcd(x.x1, x.x2));
  return n < 0 ? -n : n;
}

std::vector<char> visibility_mask_brute_force(const PointSet& ps, double angle_tol) {
  const std::size_t ref = require_reference(ps);
  const std::size_t n = ps.size();
  std::vector<Direction> dir(n);
  std::vector<double> angle(n, 0.0);
  std::vector<double> dist2(n, 0.0);
  const PlanarPoint x0 = ps.planar(ref);
  const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t si = 0; si < sn; ++si) {
    const auto i = static_cast<std::size_t>(si);
    Direction d;
    switch (ps.kind) {
    case PointKind::Exact:
      d.m = ps.exact[i] - ps.exact[ref];
      d.p = embed_direct(d.m);
      break;
    case PointKind::Lattice:
      d.l = {ps.lattice[i].a - ps.lattice[ref].a, ps.lattice[i].b - ps.lattice[ref].b};
      d.p = {static_cast<double>(d.l.a), static_cast<double>(d.l.b)};
      break;
    case PointKind::Float:
      d.p = ps.floating[i] - x0;
      break;
    }
    double a = std::atan2(d.p.y, d.p.x);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    angle[i] = a;
    dist2[i] = d.p.x * d.p.x + d.p.y * d.p.y;
    dir[i] = d;
  }

  std::vector<std::size_t> order;
  order.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    if (i != ref) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return angle[a] < angle[b] || (angle[a] == angle[b] && a < b);
  });

  // Group boundaries along the sorted circle; the last group wraps into the
  // first when they meet across the 0/2pi seam.
  std::vector<std::size_t> starts;
  for (std::size_t k = 0; k < order.size(); ++k)
    if (k == 0 || angle[order[k]] - angle[order[k - 1]] > angle_tol) starts.push_back(k);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t g = 0; g < starts.size(); ++g) {
    const std::size_t end = g + 1 < starts.size() ? starts[g + 1] : order.size();
    groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(starts[g]),
                        order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  if (groups.size() > 1 &&
      angle[groups.front().front()] + kTwoPi - angle[groups.back().back()] <= angle_tol) {
    groups.front().insert(groups.front().end(), groups.back().begin(), groups.back().end());
    groups.pop_back();
  }

  std::vector<char> mask(n, 0);
  for (const auto& g : groups) {
    // Representatives: nearest point of each ray within the group.
    std::vector<std::size_t> reps;
    for (std::size_t i : g) {
      bool placed = false;
      for (auto& r : reps)
        if (same_ray(ps, dir[r], dir[i])) {
          if (dist2[i] < dist2[r]) r = i;
          placed = true;
          break;
        }
      if (!placed) reps.push_back(i);
    }
    for (std::size_t r : reps) mask[r] = 1;
  }
  return mask;
}

std::vector<char> visibility_mask_z2(const PointSet& ps) { return mask_z2_impl(ps, true); }

std::vector<char> visibility_mask_cms(const PointSet& ps, const CmsSpec& spec) {
  return mask_cms_impl(ps, spec, true);
}

PointSet visible_brute_force(const PointSet& ps, double angle_tol) {
  PointSet out = ps.filtered(visibility_mask_brute_force(ps, angle_tol));
  out.provenance.set("visibility", "brute");
  return out;
}

PointSet visible_z2(const PointSet& ps) {
  PointSet out = ps.filtered(visibility_mask_z2(ps));
  out.provenance.set("visibility", "gcd");
  return out;
}

PointSet visible_cms(const PointSet& ps, const CmsSpec& spec) {
  PointSet out = ps.filtered(visibility_mask_cms(ps, spec));
  out.provenance.set("visibility", "cms");
  return out;
}

PointSet visible_ab(const PointSet& ps, const CmsSpec& spec) {
  if (spec.tag->n != 8) throw UsageError("visible_ab needs the octagonal model set");
  return visible_cms(ps, spec);
}

PointSet visible_tt(const PointSet& ps, const CmsSpec& spec) {
  if (spec.tag->n != 5) throw UsageError("visible_tt needs the decagonal model set");
  return visible_cms(ps, spec);
}

PointSet visible_gs(const PointSet& ps, const CmsSpec& spec) {
  if (spec.tag->n != 12) throw UsageError("visible_gs needs the dodecagonal model set");
  return visible_cms(ps, spec);
}

namespace serial {

std::vector<char> visibility_mask_z2(const PointSet& ps) { return mask_z2_impl(ps, false); }

std::vector<char> visibility_mask_cms(const PointSet& ps, const CmsSpec& spec) {
  return mask_cms_impl(ps, spec, false);
}

} // namespace serial

} // namespace radproj
