#include "radproj/svg.hpp"

#include "radproj/config.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <ostream>

namespace radproj {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 420;
constexpr double kMargin = 50;

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

} // namespace

void write_histogram_svg(std::ostream& os, const SpacingHistogram& h, const ReferenceDensity& ref,
                         const std::string& title, bool timestamp) {
  double ymax = 0.0;
  for (std::size_t k = 0; k < h.bins(); ++k) ymax = std::max(ymax, h.density(k));
  const std::size_t samples = 400;
  std::vector<double> ref_y(samples + 1);
  for (std::size_t i = 0; i <= samples; ++i) {
    const double t = h.t_min + (h.t_max - h.t_min) * static_cast<double>(i) / samples;
    ref_y[i] = t > 0.0 ? ref.density(t) : 0.0;
    ymax = std::max(ymax, ref_y[i]);
  }
  if (ymax <= 0.0) ymax = 1.0;
  ymax *= 1.05;
  const double pw = kWidth - 2 * kMargin;
  const double ph = kHeight - 2 * kMargin;
  auto X = [&](double t) { return kMargin + pw * (t - h.t_min) / (h.t_max - h.t_min); };
  auto Y = [&](double v) { return kHeight - kMargin - ph * v / ymax; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "<!-- generated " << buf << " -->\n";
  }
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << esc(title) << "</text>\n";
  os << "<g fill=\"#9ab\" stroke=\"none\">\n";
  for (std::size_t k = 0; k < h.bins(); ++k) {
    const double d = h.density(k);
    if (d <= 0.0) continue;
    os << "<rect x=\"" << num(X(h.left(k))) << "\" y=\"" << num(Y(d)) << "\" width=\""
       << num(X(h.right(k)) - X(h.left(k))) << "\" height=\"" << num(Y(0) - Y(d)) << "\"/>\n";
  }
  os << "</g>\n<polyline fill=\"none\" stroke=\"#c22\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i <= samples; ++i) {
    const double t = h.t_min + (h.t_max - h.t_min) * static_cast<double>(i) / samples;
    os << num(X(t)) << ',' << num(Y(ref_y[i])) << (i < samples ? " " : "");
  }
  os << "\"/>\n<g stroke=\"black\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
     << kHeight - kMargin << "\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << kHeight - kMargin
     << "\"/>\n";
  for (double t = std::ceil(h.t_min); t <= h.t_max + 1e-12; t += 1.0) {
    os << "<line x1=\"" << num(X(t)) << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << num(X(t)) << "\" y2=\""
       << kHeight - kMargin + 5 << "\"/>\n";
    os << "<text stroke=\"none\" x=\"" << num(X(t)) << "\" y=\"" << kHeight - kMargin + 18
       << "\" text-anchor=\"middle\">" << format_double(t) << "</text>\n";
  }
  const double ystep = ymax > 2 ? 0.5 : 0.2;
  for (double v = 0.0; v <= ymax; v += ystep) {
    os << "<line x1=\"" << kMargin - 5 << "\" y1=\"" << num(Y(v)) << "\" x2=\"" << kMargin << "\" y2=\"" << num(Y(v))
       << "\"/>\n";
    os << "<text stroke=\"none\" x=\"" << kMargin - 8 << "\" y=\"" << num(Y(v) + 4) << "\" text-anchor=\"end\">"
       << num(v) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
}

} // namespace radproj
