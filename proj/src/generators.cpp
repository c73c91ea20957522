#include "radproj/generators.hpp"

#include "radproj/error.hpp"
#include "radproj/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace radproj {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_radius(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw UsageError("radius must be positive and finite");
}

void check_budget(double estimate, std::size_t max_points, const char* what) {
  if (estimate > static_cast<double>(max_points)) {
    std::ostringstream os;
    os << what << ": about " << static_cast<long long>(estimate) << " points required, budget is "
       << max_points << " (raise max_points or lower the radius)";
    throw ResourceError(os.str());
  }
}

// Window orientations reproducing the standard tilings: the octagon and
// dodecagon have edges along the internal images of the module directions.
constexpr double kRotationAB = kPi / 8.0;
constexpr double kRotationTT = 0.0;
constexpr double kRotationGS = kPi / 12.0;

PlanarPoint default_shift(double edge) {
  return {kDefaultShiftPerEdge.x * edge, kDefaultShiftPerEdge.y * edge};
}

// Geometry needed by the strip enumeration of a CMS.
struct CmsGeometry {
  double w, wc;   // omega and its conjugate
  double c, s;    // direct image of zeta
  double cp, sp;  // internal image of zeta
  std::array<double, 4> box;
  double R;
  double margin;

  CmsGeometry(const CmsSpec& spec, double radius) {
    const auto& rd = ring_data(spec.tag->ring);
    w = rd.omega;
    wc = rd.omega_conj;
    c = std::cos(2.0 * kPi / spec.tag->n);
    s = std::sin(2.0 * kPi / spec.tag->n);
    cp = std::cos(2.0 * kPi * spec.tag->star_power / spec.tag->n);
    sp = std::sin(2.0 * kPi * spec.tag->star_power / spec.tag->n);
    box = spec.window.bounding_box();
    R = radius;
    margin = 1e-7 * (1.0 + radius);
  }
};

// Calls f(a, b) for every integer pair with a + b*w in [lo1, hi1] and
// a + b*wc in [lo2, hi2].
template <class F>
void for_each_pair(double lo1, double hi1, double lo2, double hi2, double w, double wc, F&& f) {
  const double d = w - wc;
  const auto bmin = static_cast<std::int64_t>(std::ceil((lo1 - hi2) / d));
  const auto bmax = static_cast<std::int64_t>(std::floor((hi1 - lo2) / d));
  for (std::int64_t b = bmin; b <= bmax; ++b) {
    const double lo = std::max(lo1 - b * w, lo2 - b * wc);
    const double hi = std::min(hi1 - b * w, hi2 - b * wc);
    const auto amin = static_cast<std::int64_t>(std::ceil(lo));
    const auto amax = static_cast<std::int64_t>(std::floor(hi));
    for (std::int64_t a = amin; a <= amax; ++a) f(a, b);
  }
}

struct Range {
  double lo, hi;
};

Range x2_direct_range(const CmsGeometry& g) { return {-g.R / g.s - g.margin, g.R / g.s + g.margin}; }

Range x2_internal_range(const CmsGeometry& g) {
  double lo = g.box[2] / g.sp;
  double hi = g.box[3] / g.sp;
  if (lo > hi) std::swap(lo, hi);
  return {lo - g.margin, hi + g.margin};
}

// All members whose x2 has the given b coefficient.
void enumerate_strip(const CmsSpec& spec, const CmsGeometry& g, std::int64_t b2,
                     std::vector<ModulePoint>& out) {
  const Ring ring = spec.tag->ring;
  const Range d2 = x2_direct_range(g);
  const Range i2 = x2_internal_range(g);
  const double lo = std::max(d2.lo - b2 * g.w, i2.lo - b2 * g.wc);
  const double hi = std::min(d2.hi - b2 * g.w, i2.hi - b2 * g.wc);
  const auto amin = static_cast<std::int64_t>(std::ceil(lo));
  const auto amax = static_cast<std::int64_t>(std::floor(hi));
  for (std::int64_t a2 = amin; a2 <= amax; ++a2) {
    const QuadInt x2{a2, b2, ring};
    const double e2 = a2 + b2 * g.w;
    const double f2 = a2 + b2 * g.wc;
    const double y = e2 * g.s;
    if (std::abs(y) > g.R + g.margin) continue;
    const double half = std::sqrt(std::max(0.0, g.R * g.R - y * y));
    const double lo1 = -half - e2 * g.c - g.margin;
    const double hi1 = half - e2 * g.c + g.margin;
    const double lo2 = g.box[0] - f2 * g.cp - g.margin;
    const double hi2 = g.box[1] - f2 * g.cp + g.margin;
    for_each_pair(lo1, hi1, lo2, hi2, g.w, g.wc, [&](std::int64_t a1, std::int64_t b1) {
      ModulePoint x{QuadInt{a1, b1, ring}, x2, *spec.tag};
      if (cms_member(spec, x, g.R)) out.push_back(x);
    });
  }
}

std::pair<std::int64_t, std::int64_t> strip_range(const CmsGeometry& g) {
  const Range d2 = x2_direct_range(g);
  const Range i2 = x2_internal_range(g);
  const double d = g.w - g.wc;
  return {static_cast<std::int64_t>(std::ceil((d2.lo - i2.hi) / d)),
          static_cast<std::int64_t>(std::floor((d2.hi - i2.lo) / d))};
}

PointSet cms_shell(const CmsSpec& spec, double R) {
  PointSet ps = PointSet::make_exact(*spec.tag);
  ps.provenance.generator = spec.name;
  ps.provenance.radius = R;
  ps.provenance.set("window_sides", std::to_string(spec.window.sides()));
  ps.provenance.set("window_edge", fmt(spec.window.edge_length()));
  ps.provenance.set("window_rotation", fmt(spec.window.rotation()));
  ps.provenance.set("window_shift_x", fmt(spec.window.shift().x));
  ps.provenance.set("window_shift_y", fmt(spec.window.shift().y));
  return ps;
}

PointSet poisson_impl(double R, double intensity, std::uint64_t seed, std::size_t max_points,
                      bool parallel) {
  require_radius(R);
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw UsageError("Poisson intensity must be positive and finite");
  const double mean = intensity * kPi * R * R;
  check_budget(mean + 6.0 * std::sqrt(mean), max_points, "gen_poisson");

  CounterRng count_rng(seed, 0);
  std::poisson_distribution<std::int64_t> count_dist(mean);
  const auto n = static_cast<std::int64_t>(count_dist(count_rng));

  PointSet ps = PointSet::make_float();
  ps.floating.resize(static_cast<std::size_t>(n));
  auto draw = [&](std::int64_t i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i) + 1);
    for (;;) {
      const double x = (2.0 * rng.uniform() - 1.0) * R;
      const double y = (2.0 * rng.uniform() - 1.0) * R;
      if (x * x + y * y <= R * R) {
        ps.floating[static_cast<std::size_t>(i)] = {x, y};
        return;
      }
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) draw(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) draw(i);
  }
  ps.floating.push_back({0.0, 0.0});
  ps.canonical_sort();
  ps.provenance.generator = "poisson";
  ps.provenance.radius = R;
  ps.provenance.seed = seed;
  ps.provenance.set("intensity", fmt(intensity));
  ps.provenance.set("origin_added", "true");
  return ps;
}

PointSet cms_impl(const CmsSpec& spec, double R, std::size_t max_points, bool parallel) {
  require_radius(R);
  check_budget(1.1 * cms_expected_count(spec, R) + 100.0, max_points, "gen_cms");
  const CmsGeometry g(spec, R);
  const auto [bmin, bmax] = strip_range(g);
  const std::int64_t nstrips = bmax - bmin + 1;
  std::vector<std::vector<ModulePoint>> strips(static_cast<std::size_t>(std::max<std::int64_t>(nstrips, 0)));
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < nstrips; ++k)
      enumerate_strip(spec, g, bmin + k, strips[static_cast<std::size_t>(k)]);
  } else {
    for (std::int64_t k = 0; k < nstrips; ++k)
      enumerate_strip(spec, g, bmin + k, strips[static_cast<std::size_t>(k)]);
  }
  PointSet ps = cms_shell(spec, R);
  std::size_t total = 0;
  for (const auto& s : strips) total += s.size();
  ps.exact.reserve(total);
  for (auto& s : strips) ps.exact.insert(ps.exact.end(), s.begin(), s.end());
  ps.canonical_sort();
  return ps;
}

} // namespace

PointSet gen_lattice(double R, std::size_t max_points) {
  require_radius(R);
  check_budget(kPi * (R + 1.0) * (R + 1.0), max_points, "gen_lattice");
  PointSet ps = PointSet::make_lattice();
  const auto r = static_cast<std::int64_t>(std::floor(R));
  // Exact comparison a^2 + b^2 <= R^2 using the largest integer-squared
  // bound below R^2.
  const double R2 = R * R;
  for (std::int64_t a = -r; a <= r; ++a) {
    auto b = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(0.0, R2 - double(a * a)))));
    while (double(a * a + (b + 1) * (b + 1)) <= R2) ++b;
    while (b >= 0 && double(a * a + b * b) > R2) --b;
    for (std::int64_t k = -b; k <= b; ++k) ps.lattice.push_back({a, k});
  }
  ps.provenance.generator = "z2";
  ps.provenance.radius = R;
  return ps;
}

PointSet gen_poisson(double R, double intensity, std::uint64_t seed, std::size_t max_points) {
  return poisson_impl(R, intensity, seed, max_points, true);
}

CmsSpec cms_ab(std::optional<double> rotation, std::optional<PlanarPoint> shift) {
  return {"ab", &CycloTag::octagonal(),
          Window(8, 1.0, rotation.value_or(kRotationAB), shift.value_or(PlanarPoint{})),
          1.0 + std::numbers::sqrt2, 0.0};
}

CmsSpec cms_tt(std::optional<double> rotation, std::optional<PlanarPoint> shift) {
  const double tau = std::numbers::phi;
  const double edge = std::sqrt((tau + 2.0) / 5.0);
  return {"tt", &CycloTag::decagonal(),
          Window(10, edge, rotation.value_or(kRotationTT), shift.value_or(default_shift(edge))),
          tau, 0.0};
}

CmsSpec cms_gs(std::optional<double> rotation, std::optional<PlanarPoint> shift) {
  const double s3 = std::numbers::sqrt3;
  return {"gs", &CycloTag::dodecagonal(),
          Window(12, 1.0, rotation.value_or(kRotationGS), shift.value_or(default_shift(1.0))),
          1.0 + s3, (1.0 + s3) / 2.0};
}

CmsSpec cms_by_name(const std::string& name, std::optional<double> rotation,
                    std::optional<PlanarPoint> shift) {
  if (name == "ab") return cms_ab(rotation, shift);
  if (name == "tt") return cms_tt(rotation, shift);
  if (name == "gs") return cms_gs(rotation, shift);
  throw UsageError("unknown model set '" + name + "' (valid: ab, tt, gs)");
}

double cms_expected_count(const CmsSpec& spec, double R) {
  const CmsGeometry g(spec, R);
  Eigen::Matrix4d m;
  // Columns: 1, w, zeta, w*zeta in (direct x, direct y, internal x, internal y).
  m << 1, g.w, g.c, g.w * g.c,
       0, 0, g.s, g.w * g.s,
       1, g.wc, g.cp, g.wc * g.cp,
       0, 0, g.sp, g.wc * g.sp;
  const int N = spec.window.sides();
  const double rho = spec.window.circumradius();
  const double area = 0.5 * N * rho * rho * std::sin(2.0 * kPi / N);
  return area / std::abs(m.determinant()) * kPi * R * R;
}

bool cms_member(const CmsSpec& spec, const ModulePoint& x, double R) {
  const PlanarPoint p = embed_direct(x);
  if (p.x * p.x + p.y * p.y > R * R) return false;
  return spec.window.contains(embed_internal(x));
}

PointSet gen_cms(const CmsSpec& spec, double R, std::size_t max_points) {
  return cms_impl(spec, R, max_points, true);
}

namespace serial {

PointSet gen_poisson(double R, double intensity, std::uint64_t seed, std::size_t max_points) {
  return poisson_impl(R, intensity, seed, max_points, false);
}

PointSet gen_cms(const CmsSpec& spec, double R, std::size_t max_points) {
  return cms_impl(spec, R, max_points, false);
}

PointSet gen_cms_box(const CmsSpec& spec, double R, std::int64_t B) {
  require_radius(R);
  const Ring ring = spec.tag->ring;
  PointSet ps = cms_shell(spec, R);
  for (std::int64_t a1 = -B; a1 <= B; ++a1)
    for (std::int64_t b1 = -B; b1 <= B; ++b1)
      for (std::int64_t a2 = -B; a2 <= B; ++a2)
        for (std::int64_t b2 = -B; b2 <= B; ++b2) {
          ModulePoint x{QuadInt{a1, b1, ring}, QuadInt{a2, b2, ring}, *spec.tag};
          if (cms_member(spec, x, R)) ps.exact.push_back(x);
        }
  ps.canonical_sort();
  return ps;
}

} // namespace serial

} // namespace radproj
