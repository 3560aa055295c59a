#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "padicdyn/errors.hpp"

namespace padicdyn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Default count of significant base-p digits carried by digit-mode values.
inline constexpr int kDefaultPrecision = 64;

bool is_odd_prime(std::int64_t p);

/// Throws InvalidInput unless p is an odd prime (p >= 3).
void require_odd_prime(std::int64_t p);

/// base^exp for exp >= 0.
BigInt pow_bigint(std::int64_t base, std::int64_t exp);

/// p^e as an exact rational, e of either sign.
Rational rational_pow(std::int64_t p, std::int64_t e);

/// Exponent of p in a nonzero integer.
std::int64_t vp_int(const BigInt& n, std::int64_t p);

/// p-adic valuation of a rational; nullopt is the +infinity marker for q = 0.
std::optional<std::int64_t> vp(const Rational& q, std::int64_t p);

/// q / p^vp(q) for q != 0; numerator and denominator both coprime to p.
Rational unit_part(const Rational& q, std::int64_t p);

/// Least nonnegative residue of the unit part of q modulo p^k (q != 0, k >= 1).
BigInt unit_residue(const Rational& q, std::int64_t p, std::int64_t k);

/// Inverse of a modulo m (gcd(a, m) = 1).
BigInt mod_inverse(const BigInt& a, const BigInt& m);

BigInt mod_pow(BigInt base, BigInt exp, const BigInt& m);

/// Euler criterion for a unit u modulo an odd prime p.
bool is_quadratic_residue(const BigInt& u, std::int64_t p);

/// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
BigInt sqrt_mod_p(const BigInt& u, std::int64_t p);

/// Square test in Q_p on exact rationals: even valuation and QR leading unit.
/// q = 0 is rejected (callers must decide the zero case explicitly).
bool is_square_rational(const Rational& q, std::int64_t p);

/// Parses "num" or "num/den" with optional sign.
Rational parse_rational(const std::string& text);

std::string rational_to_string(const Rational& q);

}  // namespace padicdyn
