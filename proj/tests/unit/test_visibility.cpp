#include "radproj/error.hpp"
#include "radproj/generators.hpp"
#include "radproj/visibility.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

using namespace radproj;

namespace {

PointSet lattice_of(std::initializer_list<LatticePoint> pts) {
  PointSet ps = PointSet::make_lattice();
  ps.lattice.assign(pts.begin(), pts.end());
  return ps;
}

bool has(const PointSet& ps, LatticePoint p) {
  return std::find(ps.lattice.begin(), ps.lattice.end(), p) != ps.lattice.end();
}

std::size_t kept(const std::vector<char>& mask) { return std::count(mask.begin(), mask.end(), 1); }

} // namespace

TEST_SUITE("visibility") {

TEST_CASE("brute force on small lattice patches") {
  const PointSet v = visible_brute_force(gen_lattice(3));
  CHECK(has(v, {1, 0}));
  CHECK_FALSE(has(v, {2, 0}));
  CHECK_FALSE(has(v, {0, 0}));
  const PointSet diag = visible_brute_force(lattice_of({{0, 0}, {1, 1}, {2, 2}, {-3, -3}}));
  CHECK(diag.size() == 2);
  CHECK(has(diag, {1, 1}));
  CHECK(has(diag, {-3, -3}));
  CHECK_THROWS_AS(visible_brute_force(lattice_of({{1, 0}})), UsageError);
}

TEST_CASE("gcd test on the lattice") {
  const PointSet v = visible_z2(gen_lattice(6));
  CHECK(has(v, {1, 0}));
  CHECK_FALSE(has(v, {2, 0}));
  CHECK(has(v, {3, 4}));
  const PointSet ps = gen_lattice(60);
  CHECK(visibility_mask_z2(ps) == visibility_mask_brute_force(ps));
  CHECK(visibility_mask_z2(ps) == serial::visibility_mask_z2(ps));
  const auto mask = visibility_mask_z2(ps);
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!mask[i]) {
      const auto [a, b] = ps.lattice[i];
      CHECK(std::gcd(std::abs(a), std::abs(b)) != 1);
    }
}

TEST_CASE("visible lattice density") {
  const PointSet ps = gen_lattice(1000);
  const double frac = double(kept(visibility_mask_z2(ps))) / double(ps.size());
  CHECK(std::abs(frac - 6 / (std::numbers::pi * std::numbers::pi)) < 0.002);
}

TEST_CASE("poisson points are all visible") {
  std::size_t removed = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PointSet ps = gen_poisson(30, 1.0, seed);
    removed += ps.size() - 1 - kept(visibility_mask_brute_force(ps));
  }
  CHECK(removed == 0);
}

TEST_CASE("octagonal local test clauses") {
  const CmsSpec ab = cms_ab();
  const auto& t = CycloTag::octagonal();
  PointSet ps = gen_cms(ab, 10);
  const auto mask = visibility_mask_cms(ps, ab);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps.exact[i] == ModulePoint::one(t)) CHECK(mask[i] == 1);
    if (!ps.exact[i].x1.is_zero() || !ps.exact[i].x2.is_zero())
      if (!is_unit(gcd(ps.exact[i].x1, ps.exact[i].x2))) CHECK(mask[i] == 0);
  }
  // sqrt2 * zeta has a non-unit gcd
  const ModulePoint x{QuadInt::zero(Ring::Sqrt2), QuadInt::omega(Ring::Sqrt2), t};
  CHECK(norm_class(x) == 2);
  CHECK(ab.lambda1 > ab.window.circumradius());
}

TEST_CASE("decagonal unit gcd keeps the point coprime") {
  const auto& t = CycloTag::decagonal();
  const QuadInt tau = QuadInt::omega(Ring::GoldenTau);
  CHECK(norm_class(ModulePoint{tau, tau, t}) == 1);
  CHECK(cms_tt().lambda1 > cms_tt().window.circumradius());
  const PointSet ps = gen_cms(cms_tt(), 10);
  const auto mask = visibility_mask_cms(ps, cms_tt());
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps.exact[i] == ModulePoint::one(t)) CHECK(mask[i] == 1);
}

TEST_CASE("dodecagonal norm classes") {
  const auto& t = CycloTag::dodecagonal();
  const QuadInt a{1, 1, Ring::Sqrt3};
  CHECK(norm_class(ModulePoint{a, a, t}) == 2);
  CHECK(norm_class(ModulePoint::one(t)) == 1);
  const CmsSpec gs = cms_gs();
  const PointSet ps = gen_cms(gs, 30);
  const auto mask = visibility_mask_cms(ps, gs);
  std::size_t second = 0;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (mask[i]) {
      const auto n = norm_class(ps.exact[i]);
      CHECK((n == 1 || n == 2));
      second += n == 2;
    }
  CHECK(second > 0);
}

TEST_CASE("local tests agree with the oracle") {
  for (const CmsSpec& spec : {cms_ab(), cms_tt(), cms_gs()}) {
    const PointSet ps = gen_cms(spec, 30);
    const auto fast = visibility_mask_cms(ps, spec);
    CHECK(fast == visibility_mask_brute_force(ps));
    CHECK(fast == serial::visibility_mask_cms(ps, spec));
  }
}

TEST_CASE("method names") {
  CHECK(visibility_method_from_name("gcd") == VisibilityMethod::GcdZ2);
  CHECK(visibility_method_from_name("cms") == VisibilityMethod::CmsLocal);
  CHECK(visibility_method_from_name("brute") == VisibilityMethod::BruteForce);
  CHECK_THROWS_AS(visibility_method_from_name("fast"), UsageError);
  CHECK_THROWS_AS(visibility_mask_z2(gen_cms(cms_ab(), 3)), UsageError);
}

}
