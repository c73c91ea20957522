#pragma once

#include "radproj/radial.hpp"

#include <functional>
#include <string>
#include <vector>

namespace radproj {

/// Spacing density of the visible points of Z^2 (three-branch closed form).
double density_z2(double t);
/// Cumulative distribution of density_z2.
double cdf_z2(double t);
/// Two-term expansion of density_z2(1/t) for small t.
double density_z2_tail(double t);
double density_exp(double lambda, double x);

/// Coefficients of t^3, t^4, t^5 in the expansion of density_z2(1/t).
inline constexpr double kZ2TailC3 = 36.0 / 97.40909103400243723644; // 36 / pi^4
inline constexpr double kZ2TailC4 = 162.0 / 961.38919357530443703022; // 162 / pi^6
inline constexpr double kZ2TailC5 = 1080.0 / 9488.53101607057401128; // 1080 / pi^8

struct ReferenceDensity {
  std::string name;
  std::function<double(double)> density;
  std::function<double(double)> cdf;
};

ReferenceDensity reference_z2();
ReferenceDensity reference_exp(double lambda = 1.0);
/// Piecewise-constant density given by a histogram's own bins.
ReferenceDensity reference_from_histogram(const SpacingHistogram& h);
/// Looks up "z2"/"g" or "exp".
ReferenceDensity reference_by_name(const std::string& name);

/// Smallest normalised gap.
double gap_size(const GapList& gl);

/// Power-law tail fit of the gap survival function
///   S(d) = sum_k c_k d^(1-k) / (k-1),  k = 3 .. 2 + terms,
/// which integrates the density model g(d) = sum_k c_k d^-k, i.e.
/// g(1/t) = c3 t^3 + c4 t^4 + ...
struct TailFit {
  double c3 = 0.0;
  double c4 = 0.0;
  std::vector<double> coefficients; // c3, c4, ... in order
  double residual = 0.0;            // sum of squared residuals
  double d_lo = 0.0;
  double d_hi = 0.0;
  std::size_t sample_count = 0; // gaps (or knots for mass input) inside [d_lo, d_hi]
  std::size_t knots = 0;
  int terms = 0;
};

inline constexpr double kDefaultFitLo = 5.0;
inline constexpr double kDefaultFitHi = 50.0;
inline constexpr int kDefaultFitTerms = 3;
inline constexpr std::size_t kMinPerFitBin = 50;

/// Least-squares fit of survival values s at knots d.
TailFit fit_survival(const std::vector<double>& d, const std::vector<double>& s, int terms);

/// Fit on raw gaps. Knots are the left edges of consecutive bins holding at
/// least min_per_bin gaps, with edges placed between distinct gap values,
/// plus d_hi itself.
TailFit tail_fit(const GapList& gl, double d_lo = kDefaultFitLo, double d_hi = kDefaultFitHi,
                 int terms = kDefaultFitTerms, std::size_t min_per_bin = kMinPerFitBin);

/// Fit on binned probability masses: masses[k] lies in [edges[k], edges[k+1])
/// and overflow_mass beyond the last edge.
TailFit tail_fit_masses(const std::vector<double>& edges, const std::vector<double>& masses,
                        double overflow_mass, double d_lo = kDefaultFitLo, double d_hi = kDefaultFitHi,
                        int terms = kDefaultFitTerms);

TailFit tail_fit(const SpacingHistogram& h, double d_lo = kDefaultFitLo, double d_hi = kDefaultFitHi,
                 int terms = kDefaultFitTerms);

struct Comparison {
  double l1 = 0.0;  // sum over bins of |empirical mass - reference mass|
  double sup = 0.0; // largest single-bin deviation
  double ks = 0.0;  // largest CDF deviation at bin edges
};

Comparison compare(const SpacingHistogram& h, const ReferenceDensity& ref);

/// Kolmogorov-Smirnov distance of the raw gaps against ref.cdf.
double ks_distance(const GapList& gl, const ReferenceDensity& ref);

} // namespace radproj
