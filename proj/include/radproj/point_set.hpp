#pragma once

#include "radproj/cyclo.hpp"
#include "radproj/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace radproj {

enum class PointKind { Exact, Lattice, Float };

struct LatticePoint {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// Where a point set came from. `params` keeps insertion order so that
/// serialised output is stable.
struct Provenance {
  std::string generator;
  double radius = 0.0;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> params;

  void set(const std::string& key, const std::string& value);
  const std::string* get(const std::string& key) const;
};

/// Finite planar point collection. Exactly one of the coordinate vectors is
/// populated, selected by `kind`.
struct PointSet {
  PointKind kind = PointKind::Float;
  const CycloTag* tag = nullptr; // Exact kind only
  std::vector<ModulePoint> exact;
  std::vector<LatticePoint> lattice;
  std::vector<PlanarPoint> floating;
  Provenance provenance;
  PlanarPoint reference_point{};

  static PointSet make_exact(const CycloTag& t);
  static PointSet make_lattice();
  static PointSet make_float();

  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  PlanarPoint planar(std::size_t i) const noexcept;

  /// Copy of the metadata with an empty coordinate list.
  PointSet empty_like() const;
  /// Subset keeping entries where mask[i] != 0, order preserved.
  PointSet filtered(const std::vector<char>& mask) const;
  /// Index of the point coinciding with the reference point, if any.
  std::optional<std::size_t> reference_index() const;

  /// Sorts coordinates into the canonical order used for output.
  void canonical_sort();
};

const char* kind_name(PointKind k) noexcept;

} // namespace radproj
