#include "radproj/analysis.hpp"
#include "radproj/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace radproj;
using std::numbers::pi;

namespace {

const double kB1 = 3 / (pi * pi);
const double kB2 = 12 / (pi * pi);

// integral of f over [0, inf) split at the branch points of g
template <class F> double integrate_g(F f) {
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  return ts.integrate(f, kB1, kB2) + es.integrate(f, kB2, INFINITY);
}

GapList gaps_of(std::vector<double> g) {
  GapList gl;
  gl.gaps = std::move(g);
  return gl;
}

// inverse of cdf_z2 by bisection
double quantile_z2(double u, double lo, double hi) {
  for (int i = 0; i < 60 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf_z2(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace

TEST_SUITE("analysis") {

TEST_CASE("density values") {
  CHECK(density_z2(0.2) == 0.0);
  CHECK(density_z2(0.5) == doctest::Approx(1.2102620098916507).epsilon(1e-12));
  CHECK(density_z2(2.0) == doctest::Approx(0.062898407395904987).epsilon(1e-12));
  CHECK_THROWS_AS(density_z2(0.0), UsageError);
  CHECK_THROWS_AS(density_z2(-1.0), UsageError);
  CHECK(cdf_z2(1.0) == doctest::Approx(0.66812443903696345).epsilon(1e-10));
  CHECK(cdf_z2(2.0) == doctest::Approx(0.94408238714115249).epsilon(1e-10));
  CHECK(cdf_z2(0.1) == 0.0);
}

TEST_CASE("density is continuous and nonnegative") {
  // both adjacent closed forms agree at the branch points
  const auto middle = [](double t) { return 6 / (pi * pi * t * t) * std::log(pi * pi * t / 3); };
  const auto outer = [](double t) { return 12 / (pi * pi * t * t) * std::log(2.0); };
  CHECK(std::abs(density_z2(kB1)) < 1e-10);
  CHECK(std::abs(density_z2(kB2) - middle(kB2)) < 1e-10);
  CHECK(std::abs(density_z2(kB2) - outer(kB2)) < 1e-10);
  // one-sided approach; the upper branch has a square-root cusp
  double prev = INFINITY;
  for (double h : {1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
    const double jump = std::abs(density_z2(kB2 * (1 + h)) - density_z2(kB2 * (1 - h)));
    CHECK(jump < prev);
    prev = jump;
    CHECK(std::abs(density_z2(kB1 * (1 + h))) < 10 * h);
  }
  CHECK(prev < 1e-5);
  for (double t = 0.01; t < 20; t += 0.0137) CHECK(density_z2(t) >= 0.0);
  // near the upper branch point the stable form keeps full accuracy
  const double t = kB2 * (1 + 1e-10);
  const double naive = 12 / (pi * pi * t * t) * std::log(2 / (1 + std::sqrt(1 - 12 / (pi * pi * t))));
  CHECK(density_z2(t) == doctest::Approx(naive).epsilon(1e-4));
}

TEST_CASE("unit mass and unit mean") {
  CHECK(std::abs(integrate_g([](double t) { return density_z2(t); }) - 1.0) < 1e-6);
  CHECK(std::abs(integrate_g([](double t) { return t * density_z2(t); }) - 1.0) < 1e-6);
  CHECK(std::abs(cdf_z2(1e6) - (1.0 - 0.5 * kZ2TailC3 * 1e-12)) < 1e-13);
}

TEST_CASE("second moment diverges logarithmically") {
  boost::math::quadrature::tanh_sinh<double> ts;
  const auto m2 = [&](double T) {
    double s = ts.integrate([](double t) { return t * t * density_z2(t); }, kB1, kB2);
    for (double a = kB2; a < T; a *= 10) s += ts.integrate([](double t) { return t * t * density_z2(t); }, a, std::min(10 * a, T));
    return s;
  };
  const double d1 = m2(1e6) - m2(1e5), d2 = m2(1e9) - m2(1e8);
  CHECK(d1 == doctest::Approx(kZ2TailC3 * std::log(10.0)).epsilon(1e-4));
  CHECK(d2 == doctest::Approx(kZ2TailC3 * std::log(10.0)).epsilon(1e-4));
  CHECK(m2(1e12) > 10.0);
}

TEST_CASE("tail expansion") {
  CHECK(kZ2TailC3 == doctest::Approx(36 / std::pow(pi, 4)).epsilon(1e-15));
  CHECK(kZ2TailC3 == doctest::Approx(0.369575361168636).epsilon(1e-14));
  CHECK(kZ2TailC4 == doctest::Approx(0.168506158673928).epsilon(1e-14));
  const auto ratio = [](double t) { return (density_z2(1 / t) - density_z2_tail(t)) / std::pow(t, 5); };
  CHECK(ratio(1e-2) == doctest::Approx(0.11473783560857).epsilon(1e-6));
  CHECK(ratio(1e-3) == doctest::Approx(0.11391252132862).epsilon(1e-5));
  CHECK(std::abs(ratio(1e-3) - kZ2TailC5) < 1e-3);
}

TEST_CASE("exponential density") {
  CHECK(density_exp(1, 0) == 1.0);
  CHECK(density_exp(1, -1) == 0.0);
  CHECK_THROWS_AS(density_exp(0, 1), UsageError);
  boost::math::quadrature::exp_sinh<double> es;
  CHECK(std::abs(es.integrate([](double x) { return density_exp(1, x); }, 0.0, INFINITY) - 1.0) < 1e-8);
  const ReferenceDensity e = reference_by_name("exp");
  CHECK(e.cdf(1.0) == doctest::Approx(1 - std::exp(-1.0)));
  CHECK_THROWS_AS(reference_by_name("gauss"), UsageError);
}

TEST_CASE("gap size") {
  CHECK(gap_size(gaps_of({1, 1, 1})) == 1.0);
  CHECK(gap_size(gaps_of({2, 0.5, 3})) == 0.5);
  CHECK_THROWS_AS(gap_size(gaps_of({})), UsageError);
}

TEST_CASE("tail fit recovers the expansion from noiseless bin masses") {
  std::vector<double> edges, masses;
  for (double d = 10; d <= 100 + 1e-9; d += 0.5) edges.push_back(d);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) masses.push_back(cdf_z2(edges[k + 1]) - cdf_z2(edges[k]));
  const TailFit f = tail_fit_masses(edges, masses, 1 - cdf_z2(100), 10, 100);
  CHECK(f.c3 == doctest::Approx(kZ2TailC3).epsilon(0.01));
  CHECK(f.c4 == doctest::Approx(kZ2TailC4).epsilon(0.01));
  CHECK(f.residual >= 0);
  CHECK(f.d_lo == 10);
  CHECK(f.d_hi == 100);
}

TEST_CASE("tail fit on samples drawn from g") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // tabulated inverse for the bulk, exact bisection in the tail
  std::vector<double> grid, cdf;
  for (double t = kB1; t <= 5.0; t += 1e-3) {
    grid.push_back(t);
    cdf.push_back(cdf_z2(t));
  }
  const double c5 = cdf_z2(5.0);
  std::vector<double> g;
  g.reserve(10'000'000);
  for (int i = 0; i < 10'000'000; ++i) {
    const double u = unif(rng);
    if (u >= c5) {
      g.push_back(quantile_z2(u, 5.0, 1e9));
      continue;
    }
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t k = std::clamp<std::size_t>(it - cdf.begin(), 1, cdf.size() - 1);
    const double w = (u - cdf[k - 1]) / std::max(cdf[k] - cdf[k - 1], 1e-300);
    g.push_back(grid[k - 1] + w * (grid[k] - grid[k - 1]));
  }
  const TailFit f = tail_fit(gaps_of(std::move(g)), 5, 50);
  CHECK(std::abs(f.c3 - 0.369) < 0.02);
}

TEST_CASE("tail fit preconditions") {
  CHECK_THROWS_AS(tail_fit(gaps_of(std::vector<double>(1000, 1.0)), 5, 50), UsageError);
  CHECK_THROWS_AS(tail_fit(gaps_of(std::vector<double>(1000, 10.0)), 50, 5), UsageError);
}

TEST_CASE("comparison metrics") {
  GapList gl;
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> ex(1.0);
  for (int i = 0; i < 200000; ++i) gl.gaps.push_back(ex(rng));
  const SpacingHistogram h = histogram(gl, 0.01, 4.0);
  const Comparison self = compare(h, reference_from_histogram(h));
  CHECK(self.l1 < 1e-12);
  CHECK(self.sup < 1e-12);
  const Comparison c = compare(h, reference_exp());
  CHECK(c.l1 < 0.05);
  CHECK(c.ks < 0.01);
  CHECK(ks_distance(gl, reference_exp()) < 0.01);
  CHECK(compare(h, reference_z2()).l1 > 0.5);
}

}
