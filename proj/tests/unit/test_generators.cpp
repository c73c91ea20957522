#include "radproj/error.hpp"
#include "radproj/generators.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

using namespace radproj;
using std::numbers::pi;

namespace {

std::vector<double> nearest_neighbour_distances(const std::vector<PlanarPoint>& pts) {
  std::vector<double> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = INFINITY;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (i != j) best = std::min(best, std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y));
    if (std::isfinite(best)) out.push_back(best);
  }
  return out;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

bool same_points(const PointSet& a, const PointSet& b) {
  if (a.kind != b.kind || a.size() != b.size()) return false;
  if (a.kind == PointKind::Exact) return a.exact == b.exact;
  if (a.kind == PointKind::Lattice) return a.lattice == b.lattice;
  return a.floating == b.floating;
}

} // namespace

TEST_SUITE("generators") {

TEST_CASE("lattice counts") {
  CHECK(gen_lattice(1.5).size() == 9);
  CHECK(gen_lattice(1.0).size() == 5);
  CHECK(gen_lattice(10.0).size() == 317);
  const double ratio = gen_lattice(500).size() / (pi * 500 * 500);
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.01));
  CHECK_THROWS_AS(gen_lattice(0.0), UsageError);
  CHECK_THROWS_AS(gen_lattice(-1.0), UsageError);
  CHECK_THROWS_AS(gen_lattice(100.0, 1000), ResourceError);
}

TEST_CASE("lattice patches are nested") {
  const PointSet a = gen_lattice(7.3), b = gen_lattice(12.0);
  const std::set<LatticePoint> big(b.lattice.begin(), b.lattice.end());
  for (const auto& p : a.lattice) CHECK(big.count(p) == 1);
}

TEST_CASE("poisson determinism and reference point") {
  const PointSet a = gen_poisson(10, 1.0, 7), b = gen_poisson(10, 1.0, 7);
  CHECK(same_points(a, b));
  CHECK(a.reference_index().has_value());
  CHECK(same_points(a, serial::gen_poisson(10, 1.0, 7)));
  CHECK_FALSE(same_points(a, gen_poisson(10, 1.0, 8)));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::hypot(a.planar(i).x, a.planar(i).y) <= 10.0);
  CHECK_THROWS_AS(gen_poisson(10, 0.0, 1), UsageError);
  CHECK_THROWS_AS(gen_poisson(10, -1.0, 1), UsageError);
}

TEST_CASE("poisson mean count") {
  double sum = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) sum += double(gen_poisson(50, 1.0, seed).size() - 1);
  CHECK(std::abs(sum / 200 - 2500 * pi) < 3 * std::sqrt(2500 * pi));
}

TEST_CASE("poisson cropping matches direct generation") {
  std::vector<double> cropped, direct;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::vector<PlanarPoint> inner;
    for (const auto& p : gen_poisson(20, 1.0, seed).floating)
      if (std::hypot(p.x, p.y) <= 10 && (p.x != 0 || p.y != 0)) inner.push_back(p);
    auto d = nearest_neighbour_distances(inner);
    cropped.insert(cropped.end(), d.begin(), d.end());
    std::vector<PlanarPoint> fresh;
    for (const auto& p : gen_poisson(10, 1.0, 1000 + seed).floating)
      if (p.x != 0 || p.y != 0) fresh.push_back(p);
    d = nearest_neighbour_distances(fresh);
    direct.insert(direct.end(), d.begin(), d.end());
  }
  CHECK(two_sample_ks(cropped, direct) < 0.02);
}

TEST_CASE("cms windows and members") {
  const CmsSpec ab = cms_ab(), tt = cms_tt(), gs = cms_gs();
  CHECK(ab.window.edge_length() == 1.0);
  CHECK(gs.window.edge_length() == 1.0);
  const double tau = (1 + std::sqrt(5.0)) / 2;
  CHECK(tt.window.edge_length() == doctest::Approx(std::sqrt((tau + 2) / 5)).epsilon(1e-15));
  CHECK(ab.lambda1 == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK(tt.lambda1 == doctest::Approx(tau));
  CHECK(gs.lambda1 == doctest::Approx(1 + std::sqrt(3.0)));
  CHECK(gs.lambda2 == doctest::Approx((1 + std::sqrt(3.0)) / 2));
  CHECK(gs.lambda1 * gs.lambda2 == doctest::Approx(2 + std::sqrt(3.0)));
  CHECK_THROWS_AS(cms_by_name("penrose"), UsageError);

  const PointSet ps = gen_cms(ab, 20);
  CHECK(ps.size() > 100);
  const auto& t8 = CycloTag::octagonal();
  CHECK(std::binary_search(ps.exact.begin(), ps.exact.end(), ModulePoint::zero(t8), coefficient_less));
  CHECK(std::binary_search(ps.exact.begin(), ps.exact.end(), ModulePoint::one(t8), coefficient_less));
  for (const auto& x : ps.exact) CHECK(cms_member(ab, x, 20));
}

TEST_CASE("cms enumeration equals the coefficient box") {
  for (const CmsSpec& spec : {cms_ab(), cms_tt(), cms_gs()}) {
    const PointSet fast = gen_cms(spec, 8), box = serial::gen_cms_box(spec, 8, 12);
    CHECK(same_points(fast, box));
    CHECK(same_points(fast, serial::gen_cms(spec, 8)));
    CHECK(same_points(gen_cms(spec, 40), serial::gen_cms(spec, 40)));
  }
}

TEST_CASE("cms density is uniform") {
  for (const CmsSpec& spec : {cms_ab(), cms_tt(), cms_gs()}) {
    const double n1 = double(gen_cms(spec, 100).size()), n2 = double(gen_cms(spec, 200).size());
    CHECK(n2 / n1 == doctest::Approx(4.0).epsilon(0.02));
    CHECK(n2 / cms_expected_count(spec, 200) == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("cms budget") { CHECK_THROWS_AS(gen_cms(cms_ab(), 100, 1000), ResourceError); }

}
