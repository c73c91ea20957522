#include "radproj/analysis.hpp"

#include "radproj/error.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace radproj {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kT1 = 3.0 / kPi2;
constexpr double kT2 = 12.0 / kPi2;

// log(2 / (1 + sqrt(1 - x))) for 0 <= x <= 1 without cancellation near x = 0.
double outer_log(double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x));
  return -std::log1p(-x / (2.0 * (1.0 + s)));
}

// Integral of density_z2 over [t, inf) for t >= 12/pi^2, after u = 1/t.
double survival_outer(double t) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  // g(1/u) / u^2 = (12/pi^2) * outer_log(12 u / pi^2)
  return kT2 * integrator.integrate([](double u) { return outer_log(kT2 * u); }, 0.0, 1.0 / t);
}

} // namespace

double density_z2(double t) {
  if (!(t > 0.0)) throw UsageError("density_z2 needs t > 0");
  if (t <= kT1) return 0.0;
  if (t <= kT2) return 6.0 / (kPi2 * t * t) * std::log(kPi2 * t / 3.0);
  return 12.0 / (kPi2 * t * t) * outer_log(kT2 / t);
}

double cdf_z2(double t) {
  if (t <= kT1) return 0.0;
  if (t <= kT2) return 2.0 - 6.0 / kPi2 * (std::log(kPi2 * t / 3.0) + 1.0) / t;
  return 1.0 - survival_outer(t);
}

double density_z2_tail(double t) {
  return kZ2TailC3 * t * t * t + kZ2TailC4 * t * t * t * t;
}

double density_exp(double lambda, double x) {
  if (!(lambda > 0.0)) throw UsageError("exponential rate must be positive");
  return x < 0.0 ? 0.0 : lambda * std::exp(-lambda * x);
}

ReferenceDensity reference_z2() {
  return {"z2", [](double t) { return t > 0.0 ? density_z2(t) : 0.0; }, cdf_z2};
}

ReferenceDensity reference_exp(double lambda) {
  if (!(lambda > 0.0)) throw UsageError("exponential rate must be positive");
  return {"exp", [lambda](double x) { return density_exp(lambda, x); },
          [lambda](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-lambda * x); }};
}

ReferenceDensity reference_from_histogram(const SpacingHistogram& h) {
  auto dens = [h](double t) {
    if (t < h.t_min || t >= h.t_max || h.counts.empty()) return 0.0;
    auto k = static_cast<std::size_t>((t - h.t_min) / h.bin_width);
    k = std::min(k, h.bins() - 1);
    return h.density(k);
  };
  auto cdf = [h](double t) {
    if (h.total == 0 || t <= h.t_min) return 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < h.bins(); ++k) {
      const double m = static_cast<double>(h.counts[k]) / static_cast<double>(h.total);
      if (t >= h.right(k)) {
        acc += m;
      } else {
        acc += m * (t - h.left(k)) / (h.right(k) - h.left(k));
        return acc;
      }
    }
    return acc;
  };
  return {"histogram", dens, cdf};
}

ReferenceDensity reference_by_name(const std::string& name) {
  if (name == "z2" || name == "g") return reference_z2();
  if (name == "exp" || name == "poisson") return reference_exp(1.0);
  throw UsageError("unknown reference density '" + name + "' (valid: g, exp)");
}

double gap_size(const GapList& gl) {
  if (gl.gaps.empty()) throw UsageError("gap_size of an empty gap list");
  return *std::min_element(gl.gaps.begin(), gl.gaps.end());
}

TailFit fit_survival(const std::vector<double>& d, const std::vector<double>& s, int terms) {
  if (terms < 1) throw UsageError("tail fit needs at least one term");
  const auto m = static_cast<Eigen::Index>(d.size());
  if (m < terms + 1)
    throw UsageError("tail fit needs at least " + std::to_string(terms + 1) + " knots, got " + std::to_string(m));
  Eigen::MatrixXd X(m, terms);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    y(i) = s[static_cast<std::size_t>(i)];
    for (int j = 0; j < terms; ++j) {
      const int k = 3 + j;
      X(i, j) = std::pow(d[static_cast<std::size_t>(i)], 1.0 - k) / (k - 1);
    }
  }
  // Column equilibration keeps the QR well conditioned across d^-2 .. d^-4.
  Eigen::VectorXd scale = X.colwise().norm().transpose();
  for (int j = 0; j < terms; ++j) X.col(j) /= scale(j);
  Eigen::VectorXd c = X.colPivHouseholderQr().solve(y);
  const double residual = (X * c - y).squaredNorm();
  for (int j = 0; j < terms; ++j) c(j) /= scale(j);

  TailFit fit;
  fit.terms = terms;
  fit.knots = d.size();
  fit.residual = residual;
  fit.coefficients.assign(c.data(), c.data() + terms);
  fit.c3 = c(0);
  fit.c4 = terms > 1 ? c(1) : 0.0;
  return fit;
}

constexpr double kTieTol = 1e-9;

TailFit tail_fit(const GapList& gl, double d_lo, double d_hi, int terms, std::size_t min_per_bin) {
  if (!(d_hi > d_lo) || !(d_lo > 0.0)) throw UsageError("tail fit range must satisfy 0 < d_lo < d_hi");
  std::vector<double> g = gl.gaps;
  std::sort(g.begin(), g.end());
  const double N = static_cast<double>(g.size());
  const auto lo = static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), d_lo) - g.begin());
  const auto hi = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), d_hi) - g.begin());
  const std::size_t in_range = hi - lo;
  if (in_range < 100)
    throw UsageError("tail fit needs at least 100 gaps in [" + std::to_string(d_lo) + ", " +
                     std::to_string(d_hi) + "], found " + std::to_string(in_range));
  std::vector<double> knots{d_lo};
  std::vector<double> surv{static_cast<double>(g.size() - lo) / N};
  std::size_t i = lo;
  for (;;) {
    std::size_t j = i + min_per_bin;
    if (j >= hi) break;
    // never split values that differ only by rounding (lattice gaps come in symmetric atoms)
    while (j < hi && g[j] - g[j - 1] <= kTieTol * g[j]) ++j;
    if (j >= hi) break;
    const double edge = 0.5 * (g[j - 1] + g[j]);
    knots.push_back(edge);
    surv.push_back(static_cast<double>(g.size() - j) / N);
    i = j;
  }
  // close the range at d_hi
  const auto top = static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), d_hi) - g.begin());
  if (d_hi > knots.back()) {
    knots.push_back(d_hi);
    surv.push_back(static_cast<double>(g.size() - top) / N);
  }
  TailFit fit = fit_survival(knots, surv, terms);
  fit.d_lo = d_lo;
  fit.d_hi = d_hi;
  fit.sample_count = in_range;
  return fit;
}

TailFit tail_fit_masses(const std::vector<double>& edges, const std::vector<double>& masses, double overflow_mass,
                        double d_lo, double d_hi, int terms) {
  if (edges.size() != masses.size() + 1) throw UsageError("tail fit: need one more edge than masses");
  if (!(d_hi > d_lo) || !(d_lo > 0.0)) throw UsageError("tail fit range must satisfy 0 < d_lo < d_hi");
  std::vector<double> tail(edges.size(), overflow_mass);
  for (std::size_t k = masses.size(); k-- > 0;) tail[k] = tail[k + 1] + masses[k];
  std::vector<double> knots, surv;
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (edges[k] >= d_lo && edges[k] <= d_hi) {
      knots.push_back(edges[k]);
      surv.push_back(tail[k]);
    }
  if (knots.size() < static_cast<std::size_t>(terms) + 1 || tail[0] <= 0.0)
    throw UsageError("tail fit: no usable mass inside [" + std::to_string(d_lo) + ", " + std::to_string(d_hi) + "]");
  TailFit fit = fit_survival(knots, surv, terms);
  fit.d_lo = d_lo;
  fit.d_hi = d_hi;
  fit.sample_count = knots.size();
  return fit;
}

TailFit tail_fit(const SpacingHistogram& h, double d_lo, double d_hi, int terms) {
  if (h.total == 0) throw UsageError("tail fit of an empty histogram");
  std::vector<double> edges, masses;
  for (std::size_t k = 0; k < h.bins(); ++k) {
    edges.push_back(h.left(k));
    masses.push_back(static_cast<double>(h.counts[k]) / static_cast<double>(h.total));
  }
  edges.push_back(h.t_max);
  const double over = static_cast<double>(h.overflow) / static_cast<double>(h.total);
  return tail_fit_masses(edges, masses, over, d_lo, d_hi, terms);
}

Comparison compare(const SpacingHistogram& h, const ReferenceDensity& ref) {
  Comparison c;
  if (h.total == 0) return c;
  double emp = 0.0;
  double prev = ref.cdf(h.t_min);
  c.ks = std::abs(prev);
  for (std::size_t k = 0; k < h.bins(); ++k) {
    const double next = ref.cdf(h.right(k));
    const double m = static_cast<double>(h.counts[k]) / static_cast<double>(h.total);
    const double dev = std::abs(m - (next - prev));
    c.l1 += dev;
    c.sup = std::max(c.sup, dev);
    emp += m;
    c.ks = std::max(c.ks, std::abs(emp - next));
    prev = next;
  }
  return c;
}

double ks_distance(const GapList& gl, const ReferenceDensity& ref) {
  std::vector<double> g = gl.gaps;
  if (g.empty()) throw UsageError("KS distance of an empty gap list");
  std::sort(g.begin(), g.end());
  const double n = static_cast<double>(g.size());
  double d = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double F = ref.cdf(g[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
  }
  return d;
}

} // namespace radproj
