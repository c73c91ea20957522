#pragma once

#include <array>
#include <vector>

namespace radproj {

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

inline PlanarPoint operator+(PlanarPoint a, PlanarPoint b) { return {a.x + b.x, a.y + b.y}; }
inline PlanarPoint operator-(PlanarPoint a, PlanarPoint b) { return {a.x - b.x, a.y - b.y}; }
inline PlanarPoint operator*(double s, PlanarPoint p) { return {s * p.x, s * p.y}; }

/// Regular convex polygon used as an acceptance domain.
///
/// Rotation 0 places a vertex on the positive x axis. `shift` translates the
/// whole polygon. Containment is half-open: a point on an edge belongs to the
/// window iff the outward normal of that edge points to negative x, or is
/// vertical and points to negative y. Points within `boundary_tol` of an
/// edge line count as lying on it.
class Window {
public:
  Window(int sides, double edge_length, double rotation = 0.0, PlanarPoint shift = {});

  int sides() const noexcept { return sides_; }
  double edge_length() const noexcept { return edge_; }
  double rotation() const noexcept { return rotation_; }
  PlanarPoint shift() const noexcept { return shift_; }

  double circumradius() const noexcept;
  double inradius() const noexcept;
  std::vector<PlanarPoint> vertices() const;

  /// Axis-aligned bounding box as {xmin, xmax, ymin, ymax}.
  std::array<double, 4> bounding_box() const;

  bool contains(PlanarPoint p) const;

  /// Largest signed distance of p beyond an edge line; <= 0 inside.
  double signed_distance(PlanarPoint p) const;

  /// Same polygon scaled about the origin: edge and shift multiplied by s.
  Window scaled(double s) const;

  Window with_shift(PlanarPoint shift) const;

  static constexpr double boundary_tol = 1e-9;

private:
  int sides_;
  double edge_;
  double rotation_;
  PlanarPoint shift_;
  double inradius_;
  std::vector<PlanarPoint> normals_;
  std::vector<bool> closed_edge_;
};

} // namespace radproj
