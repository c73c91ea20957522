#include "radproj/geometry.hpp"

#include "radproj/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace radproj {

namespace {
constexpr double kNormalZero = 1e-12;
}

Window::Window(int sides, double edge_length, double rotation, PlanarPoint shift)
    : sides_(sides), edge_(edge_length), rotation_(rotation), shift_(shift) {
  if (sides < 3) throw UsageError("window needs at least 3 sides");
  if (!(edge_length > 0.0) || !std::isfinite(edge_length))
    throw UsageError("window edge length must be positive and finite");
  if (!std::isfinite(shift.x) || !std::isfinite(shift.y) || !std::isfinite(rotation))
    throw UsageError("window rotation and shift must be finite");
  const double pi = std::numbers::pi;
  inradius_ = edge_ / (2.0 * std::tan(pi / sides_));
  normals_.reserve(sides_);
  closed_edge_.reserve(sides_);
  for (int k = 0; k < sides_; ++k) {
    // Edge k joins vertices k and k+1; its normal bisects their angles.
    const double phi = rotation_ + (2 * k + 1) * pi / sides_;
    PlanarPoint n{std::cos(phi), std::sin(phi)};
    if (std::abs(n.x) < kNormalZero) n.x = 0.0;
    if (std::abs(n.y) < kNormalZero) n.y = 0.0;
    normals_.push_back(n);
    closed_edge_.push_back(n.x < 0.0 || (n.x == 0.0 && n.y < 0.0));
  }
}

double Window::circumradius() const noexcept {
  return edge_ / (2.0 * std::sin(std::numbers::pi / sides_));
}

double Window::inradius() const noexcept { return inradius_; }

std::vector<PlanarPoint> Window::vertices() const {
  std::vector<PlanarPoint> v;
  v.reserve(sides_);
  const double rho = circumradius();
  for (int k = 0; k < sides_; ++k) {
    const double phi = rotation_ + 2.0 * std::numbers::pi * k / sides_;
    v.push_back({shift_.x + rho * std::cos(phi), shift_.y + rho * std::sin(phi)});
  }
  return v;
}

std::array<double, 4> Window::bounding_box() const {
  std::array<double, 4> box{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const auto& v : vertices()) {
    box[0] = std::min(box[0], v.x);
    box[1] = std::max(box[1], v.x);
    box[2] = std::min(box[2], v.y);
    box[3] = std::max(box[3], v.y);
  }
  return box;
}

bool Window::contains(PlanarPoint p) const {
  if (!std::isfinite(p.x) || !std::isfinite(p.y))
    throw UsageError("window containment query with non-finite point");
  const PlanarPoint q = p - shift_;
  for (int k = 0; k < sides_; ++k) {
    const double d = q.x * normals_[k].x + q.y * normals_[k].y - inradius_;
    if (d > boundary_tol) return false;
    if (d >= -boundary_tol && !closed_edge_[k]) return false;
  }
  return true;
}

double Window::signed_distance(PlanarPoint p) const {
  const PlanarPoint q = p - shift_;
  double worst = -INFINITY;
  for (const auto& n : normals_) worst = std::max(worst, q.x * n.x + q.y * n.y - inradius_);
  return worst;
}

Window Window::scaled(double s) const {
  if (!(s > 0.0)) throw UsageError("window scale factor must be positive");
  return Window(sides_, edge_ * s, rotation_, s * shift_);
}

Window Window::with_shift(PlanarPoint shift) const { return Window(sides_, edge_, rotation_, shift); }

} // namespace radproj
