#pragma once

// Exact arithmetic in the real quadratic rings Z[sqrt2], Z[tau], Z[sqrt3].
//
// An element is stored as a + b*w in the {1, w} basis where w satisfies
// w^2 = p*w + q. All three rings are norm-Euclidean, which is what makes
// the gcd-based coprimality tests exact.

#include <cstdint>
#include <iosfwd>
#include <string_view>

namespace radproj {

enum class Ring : std::uint8_t { Sqrt2, GoldenTau, Sqrt3 };

/// Defining data of the generator w of a ring: w^2 = p*w + q.
struct RingData {
  std::int64_t p;
  std::int64_t q;
  double omega;      // real value of w
  double omega_conj; // real value of the Galois conjugate p - w
  std::int64_t unit_a; // fundamental unit, a + b*w
  std::int64_t unit_b;
  std::string_view name;
};

const RingData& ring_data(Ring r) noexcept;

struct QuadInt {
  std::int64_t a = 0;
  std::int64_t b = 0;
  Ring ring = Ring::Sqrt2;

  constexpr QuadInt() = default;
  constexpr QuadInt(std::int64_t a_, std::int64_t b_, Ring r) : a(a_), b(b_), ring(r) {}

  static QuadInt zero(Ring r) { return {0, 0, r}; }
  static QuadInt one(Ring r) { return {1, 0, r}; }
  static QuadInt omega(Ring r) { return {0, 1, r}; }
  /// The fundamental unit: 1+sqrt2, tau, 2+sqrt3.
  static QuadInt fundamental_unit(Ring r);

  bool is_zero() const noexcept { return a == 0 && b == 0; }
  friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

// Arithmetic throws UsageError on mismatched rings and ArithmeticError on
// int64 overflow.
QuadInt operator+(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x);
QuadInt operator*(const QuadInt& x, const QuadInt& y);
QuadInt operator*(std::int64_t k, const QuadInt& x);

/// Signed algebraic norm x * conj(x).
std::int64_t norm(const QuadInt& x);
/// Galois conjugate w -> p - w.
QuadInt conj(const QuadInt& x);
/// Real embedding a + b*w.
double embed(const QuadInt& x) noexcept;
/// Real value of the conjugate, a + b*conj(w).
double embed_conj(const QuadInt& x) noexcept;

/// Exact sign of the real number a + b*w: -1, 0 or +1.
int sign(const QuadInt& x);
/// Exact comparison of real embeddings.
int compare(const QuadInt& x, const QuadInt& y);

struct DivMod {
  QuadInt quotient;
  QuadInt remainder;
};

/// Euclidean division: quotient is the field quotient x/y with both
/// coordinates rounded to nearest (ties away from zero), so
/// |norm(remainder)| < |norm(y)|.
DivMod divmod(const QuadInt& x, const QuadInt& y);

/// True when y divides x exactly.
bool divides(const QuadInt& y, const QuadInt& x);

bool is_unit(const QuadInt& x);

/// Canonical associate: positive embedding in [1, fundamental unit).
QuadInt canonical_associate(const QuadInt& x);

/// Greatest common divisor, normalised with canonical_associate.
/// Throws UsageError when both arguments are zero.
QuadInt gcd(const QuadInt& x, const QuadInt& y);

bool associates(const QuadInt& x, const QuadInt& y);

std::ostream& operator<<(std::ostream& os, const QuadInt& x);

} // namespace radproj
