#include "radproj/error.hpp"
#include "radproj/generators.hpp"
#include "radproj/radial.hpp"
#include "radproj/visibility.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

using namespace radproj;
using std::numbers::pi;

namespace {

PointSet float_of(std::initializer_list<PlanarPoint> pts) {
  PointSet ps = PointSet::make_float();
  ps.floating.assign(pts.begin(), pts.end());
  return ps;
}

AngularProfile profile(std::vector<double> angles) {
  AngularProfile ap;
  ap.angles = std::move(angles);
  return ap;
}

GapList gaps_of(std::vector<double> g) {
  GapList gl;
  gl.gaps = std::move(g);
  return gl;
}

} // namespace

TEST_SUITE("radial-pipeline") {

TEST_CASE("angles of simple sets") {
  const AngularProfile ap = project_angles(float_of({{0, -1}, {1, 0}, {-1, 0}, {0, 1}, {0, 0}}));
  REQUIRE(ap.n() == 4);
  CHECK(ap.angles[0] == 0.0);
  CHECK(ap.angles[1] == doctest::Approx(pi / 2));
  CHECK(ap.angles[2] == doctest::Approx(pi));
  CHECK(ap.angles[3] == doctest::Approx(3 * pi / 2));
  const AngularProfile one = project_angles(float_of({{1, 1}}));
  REQUIRE(one.n() == 1);
  CHECK(one.angles[0] == doctest::Approx(pi / 4));
  CHECK_THROWS_AS(project_angles(float_of({{1, 1}, {2, 2}})), IntegrityError);
}

TEST_CASE("rotation shifts the angles") {
  const PointSet ps = gen_poisson(20, 1.0, 3);
  const double theta = 0.7;
  PointSet rot = ps;
  for (auto& p : rot.floating)
    p = {std::cos(theta) * p.x - std::sin(theta) * p.y, std::sin(theta) * p.x + std::cos(theta) * p.y};
  const auto a = project_angles(ps), b = project_angles(rot);
  std::vector<double> shifted;
  for (double t : a.angles) shifted.push_back(std::fmod(t + theta, 2 * pi));
  std::sort(shifted.begin(), shifted.end());
  REQUIRE(shifted.size() == b.n());
  for (std::size_t i = 0; i < shifted.size(); ++i) CHECK(shifted[i] == doctest::Approx(b.angles[i]).epsilon(1e-12));

  const auto ga = normalized_gaps(a, true).gaps, gb = normalized_gaps(b, true).gaps;
  std::vector<double> sa = ga, sb = gb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  for (std::size_t i = 0; i < sa.size(); ++i) CHECK(sa[i] == doctest::Approx(sb[i]).epsilon(1e-9));
}

TEST_CASE("scaling leaves the profile unchanged") {
  const PointSet ps = gen_poisson(20, 1.0, 4);
  for (double c : {0.25, 8.0}) {
    PointSet scaled = ps;
    for (auto& p : scaled.floating) p = c * p;
    CHECK(project_angles(scaled).angles == project_angles(ps).angles);
    CHECK(normalized_gaps(project_angles(scaled)).gaps == normalized_gaps(project_angles(ps)).gaps);
  }
  PointSet scaled = ps;
  for (auto& p : scaled.floating) p = 3.7 * p;
  const auto a = project_angles(ps).angles, b = project_angles(scaled).angles;
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-14);
}

TEST_CASE("serial and parallel projection agree") {
  const PointSet v = visible_z2(gen_lattice(200));
  CHECK(project_angles(v).angles == serial::project_angles(v).angles);
}

TEST_CASE("normalised gaps") {
  const GapList g4 = normalized_gaps(profile({0, pi / 2, pi, 3 * pi / 2}));
  REQUIRE(g4.gaps.size() == 3);
  for (double g : g4.gaps) CHECK(g == doctest::Approx(1.0));
  const GapList g2 = normalized_gaps(profile({0, pi}));
  REQUIRE(g2.gaps.size() == 1);
  CHECK(g2.gaps[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(normalized_gaps(profile({1.0})), UsageError);

  const AngularProfile ap = project_angles(gen_poisson(30, 1.0, 9));
  const GapList wrap = normalized_gaps(ap, true);
  CHECK(wrap.gaps.size() == ap.n());
  const double sum = std::accumulate(wrap.gaps.begin(), wrap.gaps.end(), 0.0);
  CHECK(std::abs(sum - double(ap.n())) < 1e-9);
  const GapList open = normalized_gaps(ap, false);
  const double open_sum = std::accumulate(open.gaps.begin(), open.gaps.end(), 0.0);
  CHECK(std::abs(open_sum - ap.n() * (ap.angles.back() - ap.angles.front()) / (2 * pi)) < 1e-9);
  for (double g : open.gaps) CHECK(g > 0);
}

TEST_CASE("histogram binning") {
  const SpacingHistogram h = histogram(gaps_of({1, 1, 1}), 0.5, 2.0);
  REQUIRE(h.bins() == 4);
  CHECK(h.counts[2] == 3);
  CHECK(h.left(2) == 1.0);
  CHECK(h.right(2) == 1.5);
  CHECK(h.total == 3);
  CHECK(h.overflow == 0);
  const SpacingHistogram over = histogram(gaps_of({5, 6}), 0.5, 2.0);
  CHECK(over.overflow == 2);
  CHECK(std::accumulate(over.counts.begin(), over.counts.end(), std::uint64_t{0}) == 0);
  CHECK(over.in_range_fraction() == 0.0);
  CHECK_THROWS_AS(histogram(gaps_of({1}), 0.0, 2.0), UsageError);

  const SpacingHistogram d = histogram(gaps_of({0.1, 0.2, 0.2, 0.9, 3.0}), 0.25, 2.0);
  double mass = 0;
  for (std::size_t k = 0; k < d.bins(); ++k) mass += d.density(k) * (d.right(k) - d.left(k));
  CHECK(mass == doctest::Approx(d.in_range_fraction()));
  CHECK(d.in_range_fraction() == doctest::Approx(0.8));
}

TEST_CASE("merge is additive and associative") {
  const GapList a = gaps_of({0.3, 0.7, 1.2, 5.0}), b = gaps_of({0.01, 2.5}), c = gaps_of({1.0, 1.0, 3.99});
  const auto h = [](const GapList& g) { return histogram(g, 0.01, 4.0); };
  std::vector<double> all = a.gaps;
  all.insert(all.end(), b.gaps.begin(), b.gaps.end());
  all.insert(all.end(), c.gaps.begin(), c.gaps.end());
  const SpacingHistogram whole = h(gaps_of(all));
  const SpacingHistogram left = merge(merge(h(a), h(b)), h(c)), right = merge(h(a), merge(h(b), h(c)));
  CHECK(left.counts == whole.counts);
  CHECK(right.counts == whole.counts);
  CHECK(left.total == whole.total);
  CHECK(left.overflow == whole.overflow);
  CHECK_THROWS_AS(merge(h(a), histogram(b, 0.02, 4.0)), UsageError);
}

}
