#include "padicdyn/padic_core.hpp"

#include <algorithm>
#include <utility>

namespace padicdyn {

namespace {

void require_precision(int n) {
  if (n < 1) throw InvalidInput("precision must be >= 1");
}

}  // namespace

PadicScalar::PadicScalar(std::int64_t p, int precision)
    : prime_(p), zero_(true), valuation_(0), unit_(0), precision_(precision) {}

PadicScalar::PadicScalar(std::int64_t p, std::int64_t valuation, BigInt unit,
                         int precision)
    : prime_(p),
      zero_(false),
      valuation_(valuation),
      unit_(std::move(unit)),
      precision_(precision) {}

PadicScalar PadicScalar::zero(std::int64_t p, int precision) {
  require_odd_prime(p);
  require_precision(precision);
  return PadicScalar(p, precision);
}

PadicScalar PadicScalar::from_unit(std::int64_t p, std::int64_t valuation,
                                   BigInt unit, int precision) {
  require_odd_prime(p);
  require_precision(precision);
  BigInt m = pow_bigint(p, precision);
  unit %= m;
  if (unit < 0) unit += m;
  if (unit == 0 || unit % p == 0) {
    throw InvalidInput("from_unit: unit part divisible by p");
  }
  return PadicScalar(p, valuation, std::move(unit), precision);
}

PadicScalar PadicScalar::from_rational(const Rational& q, std::int64_t p,
                                       int precision) {
  require_odd_prime(p);
  require_precision(precision);
  if (q == 0) return zero(p, precision);
  std::int64_t v = *vp(q, p);
  Rational u = q / rational_pow(p, v);
  BigInt m = pow_bigint(p, precision);
  BigInt num = numerator(u) % m;
  if (num < 0) num += m;
  BigInt den = denominator(u) % m;
  if (den < 0) den += m;
  BigInt unit = (num * mod_inverse(den, m)) % m;
  return PadicScalar(p, v, std::move(unit), precision);
}

std::int64_t PadicScalar::valuation() const {
  if (zero_) throw InvalidInput("valuation of zero is the +infinity marker");
  return valuation_;
}

const BigInt& PadicScalar::unit() const {
  if (zero_) throw InvalidInput("zero has no unit part");
  return unit_;
}

int PadicScalar::leading_digit() const {
  return static_cast<int>(unit() % prime_);
}

std::vector<int> PadicScalar::digits() const {
  if (zero_) return {};
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(precision_));
  BigInt u = unit_;
  for (int i = 0; i < precision_; ++i) {
    out.push_back(static_cast<int>(u % prime_));
    u /= prime_;
  }
  return out;
}

Rational PadicScalar::truncation_as_rational() const {
  if (zero_) return Rational(0);
  return Rational(unit_) * rational_pow(prime_, valuation_);
}

PadicScalar PadicScalar::with_precision(int n) const {
  require_precision(n);
  if (n > precision_) {
    throw InvalidInput("with_precision: cannot extend certified digits");
  }
  if (zero_) return zero(prime_, n);
  return PadicScalar(prime_, valuation_, unit_ % pow_bigint(prime_, n), n);
}

bool PadicScalar::agrees_with(const PadicScalar& other) const {
  if (prime_ != other.prime_) return false;
  if (zero_ && other.zero_) return true;
  if (zero_ || other.zero_) return false;
  std::int64_t bound = std::min(valuation_ + precision_,
                                other.valuation_ + other.precision_);
  if (valuation_ != other.valuation_) return false;
  std::int64_t digits_shared = bound - valuation_;
  BigInt m = pow_bigint(prime_, digits_shared);
  return unit_ % m == other.unit_ % m;
}

bool PadicScalar::operator==(const PadicScalar& other) const {
  if (prime_ != other.prime_) return false;
  if (zero_ || other.zero_) return zero_ && other.zero_;
  return valuation_ == other.valuation_ && precision_ == other.precision_ &&
         unit_ == other.unit_;
}

bool PadicScalar::is_square() const {
  if (zero_) throw InvalidInput("is_square: zero input (decide explicitly)");
  if (valuation_ % 2 != 0) return false;
  return is_quadratic_residue(unit_ % prime_, prime_);
}

PadicScalar PadicScalar::sqrt() const {
  if (zero_) throw NotASquare("sqrt: zero input");
  if (valuation_ % 2 != 0) throw NotASquare("sqrt: odd valuation");
  if (!is_quadratic_residue(unit_ % prime_, prime_)) {
    throw NotASquare("sqrt: leading digit is a non-residue mod p");
  }
  // Hensel lift: quadratic Newton steps r <- (r + U/r)/2 with doubling moduli.
  BigInt r = sqrt_mod_p(unit_ % prime_, prime_);
  int k = 1;
  while (k < precision_) {
    int k2 = std::min(2 * k, precision_);
    BigInt m = pow_bigint(prime_, k2);
    BigInt inv2 = mod_inverse(BigInt(2), m);
    r = ((r + (unit_ % m) * mod_inverse(r, m)) % m * inv2) % m;
    k = k2;
  }
  BigInt m = pow_bigint(prime_, precision_);
  if (r % prime_ > (prime_ - 1) / 2) r = m - r;  // canonical branch
  return PadicScalar(prime_, valuation_ / 2, std::move(r), precision_);
}

PadicScalar neg(const PadicScalar& x) {
  if (x.zero_) return x;
  BigInt m = pow_bigint(x.prime_, x.precision_);
  return PadicScalar(x.prime_, x.valuation_, m - x.unit_, x.precision_);
}

PadicScalar add(const PadicScalar& x, const PadicScalar& y) {
  if (x.prime_ != y.prime_) throw InvalidInput("add: mismatched primes");
  if (x.zero_) return y;
  if (y.zero_) return x;
  const PadicScalar& lo = (x.valuation_ <= y.valuation_) ? x : y;
  const PadicScalar& hi = (x.valuation_ <= y.valuation_) ? y : x;
  std::int64_t d = hi.valuation_ - lo.valuation_;
  std::int64_t certified =
      std::min<std::int64_t>(lo.precision_, d + hi.precision_);
  BigInt m = pow_bigint(lo.prime_, certified);
  BigInt s = lo.unit_ % m;
  if (d < certified) s = (s + pow_bigint(lo.prime_, d) * hi.unit_) % m;
  if (s == 0) {
    // Full cancellation of the certified digits: the true sum could be zero
    // or merely smaller than the certified modulus.
    throw PrecisionExhausted(
        "add/sub: cancellation leaves zero certified digits");
  }
  std::int64_t t = vp_int(s, lo.prime_);
  if (t > 0) s /= pow_bigint(lo.prime_, t);
  return PadicScalar(lo.prime_, lo.valuation_ + t, std::move(s),
                     static_cast<int>(certified - t));
}

PadicScalar sub(const PadicScalar& x, const PadicScalar& y) {
  // Subtracting a value from itself is the one full cancellation digit mode
  // certifies: identical representations denote the same value.
  if (x.prime_ == y.prime_ && !x.zero_ && !y.zero_ &&
      x.valuation_ == y.valuation_ && x.precision_ == y.precision_ &&
      x.unit_ == y.unit_) {
    return PadicScalar::zero(x.prime_, x.precision_);
  }
  return add(x, neg(y));
}

PadicScalar mul(const PadicScalar& x, const PadicScalar& y) {
  if (x.prime_ != y.prime_) throw InvalidInput("mul: mismatched primes");
  int precision = std::min(x.precision_, y.precision_);
  if (x.zero_ || y.zero_) return PadicScalar::zero(x.prime_, precision);
  BigInt m = pow_bigint(x.prime_, precision);
  return PadicScalar(x.prime_, x.valuation_ + y.valuation_,
                     (x.unit_ * y.unit_) % m, precision);
}

PadicScalar inv(const PadicScalar& x) {
  if (x.zero_) throw DivisionByZero("inv: zero argument");
  BigInt m = pow_bigint(x.prime_, x.precision_);
  return PadicScalar(x.prime_, -x.valuation_, mod_inverse(x.unit_, m),
                     x.precision_);
}

PadicScalar div(const PadicScalar& x, const PadicScalar& y) {
  if (x.prime_ != y.prime_) throw InvalidInput("div: mismatched primes");
  if (y.zero_) throw DivisionByZero("div: zero divisor");
  if (x.zero_) return PadicScalar::zero(x.prime_, std::min(x.precision_, y.precision_));
  return mul(x, inv(y));
}

}  // namespace padicdyn
