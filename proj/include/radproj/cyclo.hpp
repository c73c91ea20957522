#pragma once

#include "radproj/geometry.hpp"
#include "radproj/quadint.hpp"

namespace radproj {

/// A cyclotomic module Z[w] + Z[w]*zeta_n with zeta^2 = u*zeta + v.
struct CycloTag {
  int n;
  Ring ring;
  int star_power;
  QuadInt u;
  QuadInt v;
  // zeta^star_power expressed in the {1, zeta} basis.
  QuadInt star_c0;
  QuadInt star_c1;

  static const CycloTag& octagonal();   // n = 8, Z[sqrt2]
  static const CycloTag& decagonal();   // n = 5, Z[tau]
  static const CycloTag& dodecagonal(); // n = 12, Z[sqrt3]
  static const CycloTag& for_order(int n);

  friend bool operator==(const CycloTag& a, const CycloTag& b) { return a.n == b.n; }
};

struct ModulePoint {
  QuadInt x1;
  QuadInt x2;
  const CycloTag* tag = nullptr;

  ModulePoint() = default;
  ModulePoint(QuadInt a, QuadInt b, const CycloTag& t);

  static ModulePoint zero(const CycloTag& t);
  static ModulePoint one(const CycloTag& t);
  static ModulePoint zeta(const CycloTag& t);

  friend bool operator==(const ModulePoint& a, const ModulePoint& b) {
    return a.x1 == b.x1 && a.x2 == b.x2 && a.tag->n == b.tag->n;
  }
};

ModulePoint operator+(const ModulePoint& x, const ModulePoint& y);
ModulePoint operator-(const ModulePoint& x, const ModulePoint& y);
/// Module multiplication using the reduction zeta^2 = u*zeta + v.
ModulePoint operator*(const ModulePoint& x, const ModulePoint& y);
ModulePoint operator*(const QuadInt& c, const ModulePoint& x);

/// Galois map zeta -> zeta^s applied to the whole element.
ModulePoint star(const ModulePoint& x);

PlanarPoint embed_direct(const ModulePoint& x) noexcept;
/// Equals embed_direct(star(x)), evaluated without forming star(x).
PlanarPoint embed_internal(const ModulePoint& x) noexcept;

/// Lexicographic order on the four integer coefficients.
bool coefficient_less(const ModulePoint& a, const ModulePoint& b) noexcept;

} // namespace radproj
