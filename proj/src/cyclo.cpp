#include "radproj/cyclo.hpp"

#include "radproj/error.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

namespace radproj {

namespace {

// (x1 + x2 z)(y1 + y2 z) with z^2 = u z + v.
std::pair<QuadInt, QuadInt> mul_raw(const QuadInt& x1, const QuadInt& x2, const QuadInt& y1,
                                    const QuadInt& y2, const QuadInt& u, const QuadInt& v) {
  const QuadInt t = x2 * y2;
  return {x1 * y1 + v * t, x1 * y2 + x2 * y1 + u * t};
}

CycloTag make_tag(int n, Ring ring, int s, QuadInt u) {
  CycloTag t{n, ring, s, u, QuadInt{-1, 0, ring}, {}, {}};
  QuadInt c0 = QuadInt::one(ring);
  QuadInt c1 = QuadInt::zero(ring);
  for (int k = 0; k < s; ++k)
    std::tie(c0, c1) = mul_raw(c0, c1, QuadInt::zero(ring), QuadInt::one(ring), t.u, t.v);
  t.star_c0 = c0;
  t.star_c1 = c1;
  return t;
}

void require_same_module(const ModulePoint& x, const ModulePoint& y) {
  if (x.tag->n != y.tag->n) throw UsageError("module points belong to different modules");
}

} // namespace

const CycloTag& CycloTag::octagonal() {
  static const CycloTag t = make_tag(8, Ring::Sqrt2, 3, QuadInt{0, 1, Ring::Sqrt2});
  return t;
}

const CycloTag& CycloTag::decagonal() {
  // zeta_5 + 1/zeta_5 = tau - 1
  static const CycloTag t = make_tag(5, Ring::GoldenTau, 2, QuadInt{-1, 1, Ring::GoldenTau});
  return t;
}

const CycloTag& CycloTag::dodecagonal() {
  static const CycloTag t = make_tag(12, Ring::Sqrt3, 5, QuadInt{0, 1, Ring::Sqrt3});
  return t;
}

const CycloTag& CycloTag::for_order(int n) {
  switch (n) {
  case 8:
    return octagonal();
  case 5:
    return decagonal();
  case 12:
    return dodecagonal();
  }
  throw UsageError("unsupported cyclotomic order " + std::to_string(n) + " (expected 5, 8 or 12)");
}

ModulePoint::ModulePoint(QuadInt a, QuadInt b, const CycloTag& t) : x1(a), x2(b), tag(&t) {
  if (a.ring != t.ring || b.ring != t.ring)
    throw UsageError("module point coefficients do not match the module ring");
}

ModulePoint ModulePoint::zero(const CycloTag& t) {
  return {QuadInt::zero(t.ring), QuadInt::zero(t.ring), t};
}

ModulePoint ModulePoint::one(const CycloTag& t) {
  return {QuadInt::one(t.ring), QuadInt::zero(t.ring), t};
}

ModulePoint ModulePoint::zeta(const CycloTag& t) {
  return {QuadInt::zero(t.ring), QuadInt::one(t.ring), t};
}

ModulePoint operator+(const ModulePoint& x, const ModulePoint& y) {
  require_same_module(x, y);
  return {x.x1 + y.x1, x.x2 + y.x2, *x.tag};
}

ModulePoint operator-(const ModulePoint& x, const ModulePoint& y) {
  require_same_module(x, y);
  return {x.x1 - y.x1, x.x2 - y.x2, *x.tag};
}

ModulePoint operator*(const ModulePoint& x, const ModulePoint& y) {
  require_same_module(x, y);
  const auto [a, b] = mul_raw(x.x1, x.x2, y.x1, y.x2, x.tag->u, x.tag->v);
  return {a, b, *x.tag};
}

ModulePoint operator*(const QuadInt& c, const ModulePoint& x) {
  return {c * x.x1, c * x.x2, *x.tag};
}

ModulePoint star(const ModulePoint& x) {
  const CycloTag& t = *x.tag;
  const QuadInt c2 = conj(x.x2);
  return {conj(x.x1) + c2 * t.star_c0, c2 * t.star_c1, t};
}

PlanarPoint embed_direct(const ModulePoint& x) noexcept {
  const double th = 2.0 * std::numbers::pi / x.tag->n;
  const double a = embed(x.x1);
  const double b = embed(x.x2);
  return {a + b * std::cos(th), b * std::sin(th)};
}

PlanarPoint embed_internal(const ModulePoint& x) noexcept {
  const double th = 2.0 * std::numbers::pi * x.tag->star_power / x.tag->n;
  const double a = embed_conj(x.x1);
  const double b = embed_conj(x.x2);
  return {a + b * std::cos(th), b * std::sin(th)};
}

bool coefficient_less(const ModulePoint& a, const ModulePoint& b) noexcept {
  return std::tie(a.x1.a, a.x1.b, a.x2.a, a.x2.b) < std::tie(b.x1.a, b.x1.b, b.x2.a, b.x2.b);
}

} // namespace radproj
