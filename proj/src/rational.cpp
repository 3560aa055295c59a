#include "padicdyn/rational.hpp"

#include <sstream>

namespace padicdyn {

bool is_odd_prime(std::int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

void require_odd_prime(std::int64_t p) {
  if (!is_odd_prime(p)) {
    throw InvalidInput("p must be an odd prime (p >= 3), got " +
                       std::to_string(p));
  }
}

BigInt pow_bigint(std::int64_t base, std::int64_t exp) {
  if (exp < 0) throw InvalidInput("pow_bigint: negative exponent");
  BigInt result = 1;
  BigInt b = base;
  std::int64_t e = exp;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

Rational rational_pow(std::int64_t p, std::int64_t e) {
  if (e >= 0) return Rational(pow_bigint(p, e));
  return Rational(1, pow_bigint(p, -e));
}

std::int64_t vp_int(const BigInt& n, std::int64_t p) {
  if (n == 0) throw InvalidInput("vp_int: zero argument");
  BigInt m = abs(n);
  std::int64_t v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

std::optional<std::int64_t> vp(const Rational& q, std::int64_t p) {
  require_odd_prime(p);
  if (q == 0) return std::nullopt;
  return vp_int(numerator(q), p) - vp_int(denominator(q), p);
}

Rational unit_part(const Rational& q, std::int64_t p) {
  if (q == 0) throw InvalidInput("unit_part: zero argument");
  auto v = vp(q, p);
  return q / rational_pow(p, *v);
}

BigInt unit_residue(const Rational& q, std::int64_t p, std::int64_t k) {
  if (k < 1) throw InvalidInput("unit_residue: k must be >= 1");
  Rational u = unit_part(q, p);
  BigInt m = pow_bigint(p, k);
  BigInt num = numerator(u) % m;
  if (num < 0) num += m;
  BigInt den = denominator(u) % m;
  if (den < 0) den += m;
  return (num * mod_inverse(den, m)) % m;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  // extended Euclid
  BigInt old_r = a % m, r = m;
  if (old_r < 0) old_r += m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw InvalidInput("mod_inverse: arguments not coprime");
  old_s %= m;
  if (old_s < 0) old_s += m;
  return old_s;
}

BigInt mod_pow(BigInt base, BigInt exp, const BigInt& m) {
  base %= m;
  if (base < 0) base += m;
  BigInt result = 1;
  while (exp > 0) {
    if ((exp & 1) != 0) result = (result * base) % m;
    base = (base * base) % m;
    exp >>= 1;
  }
  return result;
}

bool is_quadratic_residue(const BigInt& u, std::int64_t p) {
  BigInt r = u % p;
  if (r < 0) r += p;
  if (r == 0) throw InvalidInput("is_quadratic_residue: not a unit mod p");
  return mod_pow(r, BigInt((p - 1) / 2), BigInt(p)) == 1;
}

BigInt sqrt_mod_p(const BigInt& u, std::int64_t p) {
  BigInt n = u % p;
  if (n < 0) n += p;
  if (n == 0) throw InvalidInput("sqrt_mod_p: not a unit mod p");
  if (!is_quadratic_residue(n, p)) throw NotASquare("sqrt_mod_p: non-residue");
  BigInt bp(p);
  if (p % 4 == 3) return mod_pow(n, (bp + 1) / 4, bp);

  // Tonelli-Shanks
  BigInt q = bp - 1;
  std::int64_t s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  BigInt z = 2;
  while (is_quadratic_residue(z, p)) ++z;
  BigInt m = s;
  BigInt c = mod_pow(z, q, bp);
  BigInt t = mod_pow(n, q, bp);
  BigInt r = mod_pow(n, (q + 1) / 2, bp);
  while (t != 1) {
    BigInt t2 = t;
    std::int64_t i = 0;
    while (t2 != 1) {
      t2 = (t2 * t2) % bp;
      ++i;
      if (BigInt(i) == m) throw InternalError("sqrt_mod_p: lost residue");
    }
    BigInt b = c;
    for (BigInt j = 0; j < m - i - 1; ++j) b = (b * b) % bp;
    m = i;
    c = (b * b) % bp;
    t = (t * c) % bp;
    r = (r * b) % bp;
  }
  return r;
}

bool is_square_rational(const Rational& q, std::int64_t p) {
  require_odd_prime(p);
  if (q == 0) throw InvalidInput("is_square_rational: zero argument");
  auto v = vp(q, p);
  if (*v % 2 != 0) return false;
  return is_quadratic_residue(unit_residue(q, p, 1), p);
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(text));
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw InvalidInput("rational with zero denominator: " + text);
    return Rational(num, den);
  } catch (const InvalidInput&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidInput("cannot parse rational: '" + text + "'");
  }
}

std::string rational_to_string(const Rational& q) {
  std::ostringstream out;
  out << numerator(q);
  if (denominator(q) != 1) out << "/" << denominator(q);
  return out.str();
}

}  // namespace padicdyn
