#pragma once

#include "radproj/geometry.hpp"
#include "radproj/point_set.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <vector>

namespace radproj {

/// x' = a*x + b*y + e,  y' = c*x + d*y + f
struct Affine {
  double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

  PlanarPoint operator()(PlanarPoint p) const noexcept {
    return {a * p.x + b * p.y + e, c * p.x + d * p.y + f};
  }
  double det() const noexcept { return a * d - b * c; }
  Affine inverse() const;

  static Affine similarity(double scale, double angle);
};

/// Composition: (f * g)(p) = f(g(p)).
Affine operator*(const Affine& f, const Affine& g) noexcept;

struct Prototile {
  std::string name;
  std::vector<PlanarPoint> vertices;
  double area() const noexcept;
};

struct PlacedTile {
  int proto = 0;
  Affine map;
};

/// Inflation rule. The inflation similarity is multiplier * R(rotation);
/// each production lists child placements inside the inflated parent,
/// expressed in the parent's own frame.
struct SubstitutionRule {
  std::string name;
  double multiplier = 1.0;
  double rotation = 0.0;
  std::vector<Prototile> prototiles;
  std::vector<std::vector<PlacedTile>> productions; // indexed by parent prototile
  std::vector<PlacedTile> seed;

  int prototile_index(const std::string& name) const;
  Affine inflation() const { return Affine::similarity(multiplier, rotation); }

  /// counts(i, j): number of children of type i produced by parent type j.
  Eigen::MatrixXd count_matrix() const;
  double dominant_eigenvalue() const;

  /// Problems found by the area identity and eigenvalue checks; empty when valid.
  std::vector<std::string> validation_problems(double tol = 1e-9) const;
  /// Throws UsageError carrying every problem.
  void validate(double tol = 1e-9) const;

  static SubstitutionRule parse(std::istream& in, const std::string& source = "<rule>");
  static SubstitutionRule load(const std::string& path);
};

/// Resolves a shipped rule name ("lancon_billard", "chair") or a file path.
std::string resolve_rule_path(const std::string& name_or_path);

/// Applies one production step to every tile.
std::vector<PlacedTile> inflate(const SubstitutionRule& rule, const std::vector<PlacedTile>& tiles);

/// Tile counts per prototile.
std::vector<std::size_t> tile_counts(const SubstitutionRule& rule, const std::vector<PlacedTile>& tiles);

/// Radius of the largest origin-centred disk covered by the patch.
double covered_radius(const SubstitutionRule& rule, const std::vector<PlacedTile>& tiles);

inline constexpr double kDedupTol = 1e-6;

/// Vertices of the patch after `steps` inflations, deduplicated and
/// cropped to |p| <= R. R <= 0 selects covered_radius(). Vertex sets that
/// lie on Z^2 are returned as Lattice kind.
PointSet gen_substitution(const SubstitutionRule& rule, int steps, double R,
                          std::size_t max_points = 100'000'000);

namespace serial {
std::vector<PlacedTile> inflate(const SubstitutionRule& rule, const std::vector<PlacedTile>& tiles);
}

} // namespace radproj
