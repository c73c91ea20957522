#include "radproj/quadint.hpp"

#include "radproj/error.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace radproj {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kSqrt3 = 1.73205080756887729353;
constexpr double kTau = 1.61803398874989484820;

constexpr RingData kRings[] = {
    {0, 2, kSqrt2, -kSqrt2, 1, 1, "Z[sqrt2]"},
    {1, 1, kTau, 1.0 - kTau, 0, 1, "Z[tau]"},
    {0, 3, kSqrt3, -kSqrt3, 2, 1, "Z[sqrt3]"},
};

std::int64_t add_checked(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r))
    throw ArithmeticError("integer overflow in quadratic-ring addition");
  return r;
}

std::int64_t sub_checked(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_sub_overflow(x, y, &r))
    throw ArithmeticError("integer overflow in quadratic-ring subtraction");
  return r;
}

std::int64_t mul_checked(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r))
    throw ArithmeticError("integer overflow in quadratic-ring multiplication");
  return r;
}

void require_same_ring(const QuadInt& x, const QuadInt& y) {
  if (x.ring != y.ring)
    throw UsageError("quadratic-ring operands belong to different rings");
}

// Round u/n to the nearest integer, ties away from zero. n != 0.
std::int64_t round_div(std::int64_t u, std::int64_t n) {
  const bool negative = (u < 0) != (n < 0);
  // |u| and |n| as unsigned to survive INT64_MIN.
  const auto au = static_cast<unsigned __int128>(u < 0 ? -static_cast<__int128>(u) : u);
  const auto an = static_cast<unsigned __int128>(n < 0 ? -static_cast<__int128>(n) : n);
  const unsigned __int128 r = (2 * au + an) / (2 * an);
  if (r > static_cast<unsigned __int128>(INT64_MAX))
    throw ArithmeticError("integer overflow in quadratic-ring division");
  const auto v = static_cast<std::int64_t>(r);
  return negative ? -v : v;
}

// Sign of A + B*sqrt(D) for D > 0 non-square, using 128-bit squares.
int sign_surd(__int128 A, __int128 B, __int128 D) {
  const int sa = (A > 0) - (A < 0);
  const int sb = (B > 0) - (B < 0);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare A^2 with D*B^2.
  const __int128 lhs = A * A;
  const __int128 rhs = D * B * B;
  if (lhs == rhs) return 0; // unreachable for irrational sqrt(D) unless A=B=0
  return lhs > rhs ? sa : sb;
}

} // namespace

const RingData& ring_data(Ring r) noexcept { return kRings[static_cast<int>(r)]; }

QuadInt QuadInt::fundamental_unit(Ring r) {
  const auto& d = ring_data(r);
  return {d.unit_a, d.unit_b, r};
}

QuadInt operator+(const QuadInt& x, const QuadInt& y) {
  require_same_ring(x, y);
  return {add_checked(x.a, y.a), add_checked(x.b, y.b), x.ring};
}

QuadInt operator-(const QuadInt& x, const QuadInt& y) {
  require_same_ring(x, y);
  return {sub_checked(x.a, y.a), sub_checked(x.b, y.b), x.ring};
}

QuadInt operator-(const QuadInt& x) { return {sub_checked(0, x.a), sub_checked(0, x.b), x.ring}; }

QuadInt operator*(const QuadInt& x, const QuadInt& y) {
  require_same_ring(x, y);
  const auto& d = ring_data(x.ring);
  // (a + b w)(c + e w) = ac + q*be + (ae + bc + p*be) w
  const std::int64_t ac = mul_checked(x.a, y.a);
  const std::int64_t be = mul_checked(x.b, y.b);
  const std::int64_t ae = mul_checked(x.a, y.b);
  const std::int64_t bc = mul_checked(x.b, y.a);
  const std::int64_t ra = add_checked(ac, mul_checked(d.q, be));
  const std::int64_t rb = add_checked(add_checked(ae, bc), mul_checked(d.p, be));
  return {ra, rb, x.ring};
}

QuadInt operator*(std::int64_t k, const QuadInt& x) {
  return {mul_checked(k, x.a), mul_checked(k, x.b), x.ring};
}

std::int64_t norm(const QuadInt& x) {
  const auto& d = ring_data(x.ring);
  // a^2 + p*ab - q*b^2
  const std::int64_t aa = mul_checked(x.a, x.a);
  const std::int64_t ab = mul_checked(x.a, x.b);
  const std::int64_t bb = mul_checked(x.b, x.b);
  return sub_checked(add_checked(aa, mul_checked(d.p, ab)), mul_checked(d.q, bb));
}

QuadInt conj(const QuadInt& x) {
  const auto& d = ring_data(x.ring);
  // w -> p - w:  a + b(p - w) = (a + p b) - b w
  return {add_checked(x.a, mul_checked(d.p, x.b)), sub_checked(0, x.b), x.ring};
}

double embed(const QuadInt& x) noexcept {
  return static_cast<double>(x.a) + static_cast<double>(x.b) * ring_data(x.ring).omega;
}

double embed_conj(const QuadInt& x) noexcept {
  return static_cast<double>(x.a) + static_cast<double>(x.b) * ring_data(x.ring).omega_conj;
}

int sign(const QuadInt& x) {
  switch (x.ring) {
  case Ring::Sqrt2:
    return sign_surd(x.a, x.b, 2);
  case Ring::Sqrt3:
    return sign_surd(x.a, x.b, 3);
  case Ring::GoldenTau:
    // a + b(1 + sqrt5)/2 = ((2a + b) + b sqrt5) / 2
    return sign_surd(2 * static_cast<__int128>(x.a) + x.b, x.b, 5);
  }
  return 0;
}

int compare(const QuadInt& x, const QuadInt& y) { return sign(x - y); }

DivMod divmod(const QuadInt& x, const QuadInt& y) {
  require_same_ring(x, y);
  if (y.is_zero()) throw UsageError("division by zero in quadratic ring");
  const std::int64_t n = norm(y);
  const QuadInt num = x * conj(y);
  const QuadInt q{round_div(num.a, n), round_div(num.b, n), x.ring};
  return {q, x - q * y};
}

bool divides(const QuadInt& y, const QuadInt& x) {
  require_same_ring(x, y);
  if (y.is_zero()) return x.is_zero();
  const std::int64_t n = norm(y);
  const QuadInt num = x * conj(y);
  return num.a % n == 0 && num.b % n == 0;
}

bool is_unit(const QuadInt& x) {
  const std::int64_t n = norm(x);
  return n == 1 || n == -1;
}

QuadInt canonical_associate(const QuadInt& x) {
  if (x.is_zero()) return x;
  QuadInt r = sign(x) < 0 ? -x : x;
  const QuadInt eps = QuadInt::fundamental_unit(x.ring);
  const QuadInt eps_inv = conj(eps) * QuadInt{norm(eps), 0, x.ring}; // 1/eps = conj(eps)/N(eps)
  const QuadInt one = QuadInt::one(x.ring);
  // Bring r into [1, eps). Each step changes log|r| by log(eps), so the
  // loop count is O(log of coefficient size).
  while (compare(r, eps) >= 0) r = r * eps_inv;
  while (compare(r, one) < 0) r = r * eps;
  return r;
}

QuadInt gcd(const QuadInt& x, const QuadInt& y) {
  require_same_ring(x, y);
  if (x.is_zero() && y.is_zero()) throw UsageError("gcd(0, 0) is undefined");
  QuadInt u = x;
  QuadInt v = y;
  while (!v.is_zero()) {
    QuadInt r = divmod(u, v).remainder;
    u = v;
    v = r;
  }
  return canonical_associate(u);
}

bool associates(const QuadInt& x, const QuadInt& y) {
  require_same_ring(x, y);
  if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
  return divides(x, y) && divides(y, x);
}

std::ostream& operator<<(std::ostream& os, const QuadInt& x) {
  const char* w = x.ring == Ring::Sqrt2 ? "sqrt2" : x.ring == Ring::Sqrt3 ? "sqrt3" : "tau";
  return os << '(' << x.a << (x.b < 0 ? " - " : " + ") << (x.b < 0 ? -x.b : x.b) << '*' << w << ')';
}

} // namespace radproj
