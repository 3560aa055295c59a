#include "padicdyn/projective.hpp"

#include <algorithm>

namespace padicdyn {

ProjPoint::ProjPoint(std::int64_t p, std::optional<PadicScalar> v)
    : prime_(p), value_(std::move(v)) {}

ProjPoint ProjPoint::infinity(std::int64_t p) {
  require_odd_prime(p);
  return ProjPoint(p, std::nullopt);
}

ProjPoint ProjPoint::finite(PadicScalar value) {
  std::int64_t p = value.prime();
  return ProjPoint(p, std::move(value));
}

const PadicScalar& ProjPoint::value() const {
  if (!value_) throw InvalidInput("the point at infinity carries no scalar");
  return *value_;
}

bool ProjPoint::operator==(const ProjPoint& other) const {
  if (prime_ != other.prime_) return false;
  if (is_infinity() || other.is_infinity()) {
    return is_infinity() && other.is_infinity();
  }
  return *value_ == *other.value_;
}

std::optional<std::int64_t> spherical_distance_exponent(const ProjPoint& P,
                                                        const ProjPoint& Q) {
  if (P.prime() != Q.prime()) {
    throw InvalidInput("spherical distance: mismatched primes");
  }
  if (P.is_infinity() && Q.is_infinity()) return std::nullopt;
  if (P.is_infinity() || Q.is_infinity()) {
    const PadicScalar& z = P.is_infinity() ? Q.value() : P.value();
    if (z.is_zero()) return 0;  // rho(0, inf) = 1
    return std::min<std::int64_t>(z.valuation(), 0);
  }
  const PadicScalar& a = P.value();
  const PadicScalar& b = Q.value();
  PadicScalar diff = sub(a, b);
  if (diff.is_zero()) return std::nullopt;
  std::int64_t ma = a.is_zero() ? 0 : std::min<std::int64_t>(a.valuation(), 0);
  std::int64_t mb = b.is_zero() ? 0 : std::min<std::int64_t>(b.valuation(), 0);
  return -diff.valuation() + ma + mb;
}

PDisk::PDisk(ProjPoint center_, std::int64_t radius_exponent_, DiskKind kind_)
    : center(std::move(center_)), radius_exponent(radius_exponent_), kind(kind_) {
  if (center.is_infinity()) {
    throw InvalidInput("PDisk: center must be a finite point");
  }
}

bool contains(const PDisk& d, const ProjPoint& P) {
  if (d.center.prime() != P.prime()) {
    throw InvalidInput("contains: mismatched primes");
  }
  if (P.is_infinity()) return d.kind == DiskKind::Complement;
  const PadicScalar& x = P.value();
  const PadicScalar& c = d.center.value();
  try {
    PadicScalar diff = sub(x, c);
    if (diff.is_zero()) return d.kind == DiskKind::Standard;
    if (d.kind == DiskKind::Standard) {
      return diff.valuation() >= -d.radius_exponent;
    }
    return diff.valuation() <= -d.radius_exponent;
  } catch (const PrecisionExhausted&) {
    // Full cancellation: all that is known is v(x - c) >= M, the shared
    // certified bound. Membership is still decidable when the radius is
    // coarser than p^-M.
    std::int64_t bound = std::min(x.valuation() + x.precision(),
                                  c.valuation() + c.precision());
    if (d.kind == DiskKind::Standard && -bound <= d.radius_exponent) {
      return true;
    }
    if (d.kind == DiskKind::Complement && -bound < d.radius_exponent) {
      return false;
    }
    throw;
  }
}

PadicScalar random_scalar_with_valuation(std::mt19937_64& rng, std::int64_t p,
                                         std::int64_t valuation,
                                         int precision) {
  std::uniform_int_distribution<std::int64_t> lead(1, p - 1);
  std::uniform_int_distribution<std::int64_t> any(0, p - 1);
  BigInt unit = lead(rng);
  BigInt pk = p;
  for (int i = 1; i < precision; ++i) {
    unit += pk * any(rng);
    pk *= p;
  }
  return PadicScalar::from_unit(p, valuation, std::move(unit), precision);
}

std::vector<ProjPoint> sphere_members_sample(std::int64_t p, std::int64_t i,
                                             int count, std::uint64_t seed,
                                             int precision) {
  if (count < 1) throw InvalidInput("sphere_members_sample: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<ProjPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    out.push_back(
        ProjPoint::finite(random_scalar_with_valuation(rng, p, -i, precision)));
  }
  return out;
}

Rational random_rational_in_disk(std::mt19937_64& rng, std::int64_t p,
                                 const Rational& center,
                                 std::int64_t radius_exponent, int digits) {
  std::uniform_int_distribution<std::int64_t> any(0, p - 1);
  BigInt r = 0;
  BigInt pk = 1;
  for (int i = 0; i < digits; ++i) {
    r += pk * any(rng);
    pk *= p;
  }
  // |r * p^{-m}|_p = |r|_p * p^m <= p^m, uniform at depth `digits`.
  return center + Rational(r) * rational_pow(p, -radius_exponent);
}

PadicScalar random_in_standard_disk(std::mt19937_64& rng,
                                    const PadicScalar& center,
                                    std::int64_t radius_exponent,
                                    int precision) {
  std::int64_t p = center.prime();
  std::uniform_int_distribution<std::int64_t> any(0, p - 1);
  BigInt r = 0;
  BigInt pk = 1;
  for (int i = 0; i < precision; ++i) {
    r += pk * any(rng);
    pk *= p;
  }
  if (r == 0) return center;
  PadicScalar offset = PadicScalar::from_rational(
      Rational(r) * rational_pow(p, -radius_exponent), p, precision);
  return add(center, offset);
}

}  // namespace padicdyn
