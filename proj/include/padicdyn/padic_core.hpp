#pragma once

#include <cstdint>
#include <vector>

#include "padicdyn/rational.hpp"

namespace padicdyn {

/// An element of Q_p carried to a fixed number of significant base-p digits.
///
/// A nonzero value is p^valuation * unit with unit in [1, p^precision) and
/// unit % p != 0; the representation certifies the value modulo
/// p^(valuation + precision). The zero element carries no digits; its
/// valuation is +infinity and it compares equal only to zero. The absolute
/// value |x|_p = p^(-valuation) is always an exact power of p, never a float.
///
/// Values are immutable after construction; all operations are pure.
class PadicScalar {
 public:
  static PadicScalar zero(std::int64_t p, int precision = kDefaultPrecision);

  /// Base-p expansion of an exact rational, truncated to `precision`
  /// significant digits of the unit part.
  static PadicScalar from_rational(const Rational& q, std::int64_t p,
                                   int precision = kDefaultPrecision);

  /// Builds p^valuation * (unit mod p^precision); unit must not be divisible
  /// by p after reduction.
  static PadicScalar from_unit(std::int64_t p, std::int64_t valuation,
                               BigInt unit, int precision);

  std::int64_t prime() const { return prime_; }
  bool is_zero() const { return zero_; }
  int precision() const { return precision_; }

  /// Valuation of a nonzero value; throws InvalidInput on zero (whose
  /// valuation is the +infinity marker).
  std::int64_t valuation() const;

  /// Unit part as an integer in [1, p^precision); throws on zero.
  const BigInt& unit() const;

  /// Leading unit digit u0 in [1, p-1]; throws on zero.
  int leading_digit() const;

  /// Base-p digits of the unit part, length = precision (zero: empty).
  std::vector<int> digits() const;

  /// Exact rational value of the finite representation p^valuation * unit.
  Rational truncation_as_rational() const;

  /// Truncates to n <= precision significant digits.
  PadicScalar with_precision(int n) const;

  /// True when the two representations agree modulo the shared certified
  /// modulus p^min(valuation + precision). Never throws.
  bool agrees_with(const PadicScalar& other) const;

  /// Representation equality; zero compares equal only to zero.
  bool operator==(const PadicScalar& other) const;
  bool operator!=(const PadicScalar& other) const { return !(*this == other); }

  /// Quadratic-residue test (Lemma-style criterion): even valuation and
  /// leading digit a QR mod p. Throws InvalidInput on zero.
  bool is_square() const;

  /// Hensel-lifted square root at full available precision. The canonical
  /// branch has leading digit in [1, (p-1)/2]. Throws NotASquare.
  PadicScalar sqrt() const;

  friend PadicScalar add(const PadicScalar& x, const PadicScalar& y);
  friend PadicScalar sub(const PadicScalar& x, const PadicScalar& y);
  friend PadicScalar mul(const PadicScalar& x, const PadicScalar& y);
  friend PadicScalar div(const PadicScalar& x, const PadicScalar& y);
  friend PadicScalar neg(const PadicScalar& x);
  friend PadicScalar inv(const PadicScalar& x);

 private:
  PadicScalar(std::int64_t p, int precision);  // zero
  PadicScalar(std::int64_t p, std::int64_t valuation, BigInt unit,
              int precision);

  std::int64_t prime_;
  bool zero_;
  std::int64_t valuation_;  // meaningful only when !zero_
  BigInt unit_;             // in [1, p^precision_), not divisible by p
  int precision_;
};

PadicScalar add(const PadicScalar& x, const PadicScalar& y);
PadicScalar sub(const PadicScalar& x, const PadicScalar& y);
PadicScalar mul(const PadicScalar& x, const PadicScalar& y);
PadicScalar div(const PadicScalar& x, const PadicScalar& y);
PadicScalar neg(const PadicScalar& x);
PadicScalar inv(const PadicScalar& x);

}  // namespace padicdyn
