#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "padicdyn/padic_core.hpp"

namespace padicdyn {

/// A point of P^1(Q_p): a finite scalar [x : 1] or the point at infinity
/// [1 : 0]. Homogeneous coordinates are normalized on ingestion.
class ProjPoint {
 public:
  static ProjPoint infinity(std::int64_t p);
  static ProjPoint finite(PadicScalar value);

  bool is_infinity() const { return !value_.has_value(); }
  const PadicScalar& value() const;
  std::int64_t prime() const { return prime_; }

  bool operator==(const ProjPoint& other) const;
  bool operator!=(const ProjPoint& other) const { return !(*this == other); }

 private:
  ProjPoint(std::int64_t p, std::optional<PadicScalar> v);
  std::int64_t prime_;
  std::optional<PadicScalar> value_;
};

/// Spherical distance rho(P, Q) as an exact power of p: the returned
/// exponent e satisfies rho = p^e (always e <= 0); nullopt marks rho = 0.
/// Throws PrecisionExhausted when the difference of two finite points
/// cannot be certified nonzero or certified zero.
std::optional<std::int64_t> spherical_distance_exponent(const ProjPoint& P,
                                                        const ProjPoint& Q);

enum class DiskKind {
  Standard,    // closed disk { |x - c| <= p^m } in Q_p
  Complement,  // { |x - c| >= p^m } together with infinity
};

/// A closed disk of P^1(Q_p) with radius an exact power p^m.
struct PDisk {
  PDisk(ProjPoint center, std::int64_t radius_exponent, DiskKind kind);
  ProjPoint center;  // finite (for Complement: center of the removed disk)
  std::int64_t radius_exponent;
  DiskKind kind;
};

/// Exact membership, decided on valuations.
bool contains(const PDisk& d, const ProjPoint& P);

/// Deterministic sample of points on the sphere S(0, p^i) = { |x|_p = p^i }:
/// each returned point has valuation exactly -i.
std::vector<ProjPoint> sphere_members_sample(std::int64_t p, std::int64_t i,
                                             int count, std::uint64_t seed,
                                             int precision = kDefaultPrecision);

/// Random scalar with the given exact valuation (unit digits uniform).
PadicScalar random_scalar_with_valuation(std::mt19937_64& rng, std::int64_t p,
                                         std::int64_t valuation, int precision);

/// Uniform random rational point of the standard disk D(center, p^m),
/// drawn from the lattice center + p^{-m} * [0, p^digits).
Rational random_rational_in_disk(std::mt19937_64& rng, std::int64_t p,
                                 const Rational& center,
                                 std::int64_t radius_exponent, int digits);

/// Digit-mode variant: center + offset with |offset| <= p^m.
PadicScalar random_in_standard_disk(std::mt19937_64& rng,
                                    const PadicScalar& center,
                                    std::int64_t radius_exponent,
                                    int precision);

}  // namespace padicdyn
