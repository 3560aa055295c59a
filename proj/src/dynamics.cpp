#include "padicdyn/dynamics.hpp"

#include <algorithm>
#include <cstdlib>

#include "padicdyn/symbolic.hpp"

namespace padicdyn {

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::GoodReduction: return "GoodReduction";
    case Regime::EscapeAll: return "EscapeAll";
    case Regime::FullShiftTwo: return "FullShiftTwo";
    case Regime::MinimalOffOrigin: return "MinimalOffOrigin";
    case Regime::ChaoticSFT: return "ChaoticSFT";
  }
  throw InternalError("regime_name: bad enum");
}

MapParams::MapParams(std::int64_t p_, Rational a_, int precision_)
    : p(p_), a(std::move(a_)), precision(precision_) {
  require_odd_prime(p);
  if (a == 0) throw InvalidInput("map parameter a must be nonzero");
  if (precision < 1) throw InvalidInput("precision must be >= 1");
}

PadicScalar MapParams::a_scalar() const { return a_scalar(precision); }

PadicScalar MapParams::a_scalar(int precision_override) const {
  return PadicScalar::from_rational(a, p, precision_override);
}

ClassificationDetail classify_detail(const MapParams& params) {
  ClassificationDetail out;
  out.vp_a = *vp(params.a, params.p);
  if (out.vp_a == 0) {
    out.regime = Regime::GoodReduction;
    out.branch = "|a|_p = 1";
    return out;
  }
  // Regime boundaries are discrete: decide on the exact rational, never on
  // truncated digits.
  Rational tested = (out.vp_a < 0) ? Rational(1) - params.a : -params.a;
  out.branch = (out.vp_a < 0) ? "|a|_p > 1" : "|a|_p < 1";
  out.tested = (out.vp_a < 0) ? "1-a" : "-a";
  std::int64_t tv = *vp(tested, params.p);
  out.valuation_even = (tv % 2 == 0);
  out.unit_is_qr =
      is_quadratic_residue(unit_residue(tested, params.p, 1), params.p);
  bool square = *out.valuation_even && *out.unit_is_qr;
  if (out.vp_a < 0) {
    out.regime = square ? Regime::FullShiftTwo : Regime::EscapeAll;
  } else {
    out.regime = square ? Regime::ChaoticSFT : Regime::MinimalOffOrigin;
  }
  return out;
}

Regime classify(const MapParams& params) { return classify_detail(params).regime; }

ProjPoint apply(const MapParams& params, const ProjPoint& x) {
  if (x.prime() != params.p) throw InvalidInput("apply: mismatched primes");
  if (x.is_infinity()) return ProjPoint::infinity(params.p);
  const PadicScalar& v = x.value();
  if (v.is_zero()) return ProjPoint::infinity(params.p);
  PadicScalar ax = mul(params.a_scalar(v.precision()), v);
  try {
    return ProjPoint::finite(add(ax, inv(v)));
  } catch (const PrecisionExhausted&) {
    // ax + 1/x cancelled all certified digits. Read the representation as
    // the exact rational it denotes: if that value is a zero of phi, the
    // zero is certified; otherwise the cancellation is genuinely ambiguous.
    Rational q = v.truncation_as_rational();
    if (params.a * q * q + 1 == 0) {
      return ProjPoint::finite(PadicScalar::zero(params.p, v.precision()));
    }
    throw PrecisionExhausted(
        "apply: ax + 1/x cancelled all certified digits near a zero of phi");
  }
}

std::vector<ProjPoint> orbit(const MapParams& params, const ProjPoint& x,
                             int steps) {
  if (steps < 0) throw InvalidInput("orbit: steps must be >= 0");
  std::vector<ProjPoint> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(x);
  for (int k = 1; k <= steps; ++k) {
    if (out.back().is_infinity()) {
      out.push_back(out.back());
      continue;
    }
    try {
      out.push_back(apply(params, out.back()));
    } catch (const PrecisionExhausted& e) {
      throw PrecisionExhausted("orbit: certification failed at step " +
                               std::to_string(k) + ": " + e.what());
    }
  }
  return out;
}

RatPoint apply_exact(const MapParams& params, const RatPoint& x) {
  if (!x.has_value()) return std::nullopt;
  if (*x == 0) return std::nullopt;
  return params.a * *x + 1 / *x;
}

std::vector<RatPoint> orbit_exact(const MapParams& params, const RatPoint& x,
                                  int steps) {
  if (steps < 0) throw InvalidInput("orbit_exact: steps must be >= 0");
  std::vector<RatPoint> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(x);
  for (int k = 1; k <= steps; ++k) out.push_back(apply_exact(params, out.back()));
  return out;
}

std::string multiplier_class_name(MultiplierClass c) {
  switch (c) {
    case MultiplierClass::Attracting: return "attracting";
    case MultiplierClass::Indifferent: return "indifferent";
    case MultiplierClass::Repelling: return "repelling";
    case MultiplierClass::SuperAttracting: return "superattracting";
  }
  throw InternalError("multiplier_class_name: bad enum");
}

MultiplierClass classify_multiplier(const PadicScalar& multiplier) {
  if (multiplier.is_zero()) return MultiplierClass::SuperAttracting;
  std::int64_t v = multiplier.valuation();
  if (v > 0) return MultiplierClass::Attracting;
  if (v == 0) return MultiplierClass::Indifferent;
  return MultiplierClass::Repelling;
}

std::vector<FixedPointInfo> fixed_points(const MapParams& params) {
  std::vector<FixedPointInfo> out;
  PadicScalar inf_mult =
      PadicScalar::from_rational(Rational(1) / params.a, params.p, params.precision);
  out.push_back({ProjPoint::infinity(params.p), inf_mult,
                 classify_multiplier(inf_mult)});
  // Finite fixed points +-1/sqrt(1-a) exist iff 1-a is a nonzero square
  // (a = 1 degenerates the formula; the |a| = 1 branch owns that case).
  if (params.a == 1) return out;
  if (!is_square_rational(Rational(1) - params.a, params.p)) return out;
  PadicScalar root =
      PadicScalar::from_rational(Rational(1) - params.a, params.p, params.precision)
          .sqrt();
  PadicScalar x1 = inv(root);
  PadicScalar expected = PadicScalar::from_rational(2 * params.a - 1, params.p,
                                                    params.precision);
  for (const PadicScalar& x0 : {x1, neg(x1)}) {
    PadicScalar multiplier =
        sub(params.a_scalar(), inv(mul(x0, x0)));  // phi'(x0) = a - 1/x0^2
    if (!multiplier.agrees_with(expected)) {
      throw InternalError("fixed point multiplier disagrees with 2a-1");
    }
    out.push_back({ProjPoint::finite(x0), multiplier,
                   classify_multiplier(multiplier)});
  }
  return out;
}

EscapeVerdict escape_test(const MapParams& params, const ProjPoint& x,
                          int max_steps) {
  if (max_steps < 1) throw InvalidInput("escape_test: max_steps must be >= 1");
  Regime regime = classify(params);
  std::int64_t vpa = *vp(params.a, params.p);

  std::optional<std::pair<PDisk, PDisk>> branch_disks;
  std::optional<std::array<PDisk, 4>> regions;
  if (regime == Regime::FullShiftTwo) branch_disks = shift_disks(params);
  if (regime == Regime::ChaoticSFT) regions = sft_regions(params);

  auto in_omega = [&](const ProjPoint& pt) {
    if (branch_disks) {
      return contains(branch_disks->first, pt) ||
             contains(branch_disks->second, pt);
    }
    for (const PDisk& d : *regions) {
      if (contains(d, pt)) return true;
    }
    return false;
  };

  ProjPoint current = x;
  bool resident = true;  // in Omega at every step seen so far
  for (int step = 0; step <= max_steps; ++step) {
    if (current.is_infinity()) {
      // phi(inf) = inf: the tail is constant at the fixed point infinity.
      return {EscapeVerdict::Kind::EscapesToInfinity, step, std::nullopt,
              "reached the fixed point infinity exactly"};
    }
    const PadicScalar& v = current.value();
    if (!v.is_zero()) {
      if (vpa < 0 && v.valuation() <= 0) {
        // |a|_p > 1 and |x|_p >= 1 force |phi(x)|_p = |ax|_p > |x|_p.
        return {EscapeVerdict::Kind::EscapesToInfinity, step, std::nullopt,
                "|phi^k(x)|_p >= 1 with |a|_p > 1: monotone growth"};
      }
      if (regime == Regime::MinimalOffOrigin &&
          std::abs(v.valuation()) <= vpa / 2) {
        std::int64_t i = std::abs(v.valuation());
        return {EscapeVerdict::Kind::InCoreRegion, step, i,
                "landed in S(0,p^" + std::to_string(i) +
                    ") u S(0,p^-" + std::to_string(i) +
                    "); the pair is invariant and swapped by phi"};
      }
    }
    if ((regime == Regime::FullShiftTwo || regime == Regime::ChaoticSFT) &&
        resident) {
      resident = in_omega(current);
    }
    if (step == max_steps) break;
    try {
      current = apply(params, current);
    } catch (const PrecisionExhausted&) {
      return {EscapeVerdict::Kind::Undecided, step, std::nullopt,
              "precision exhausted at step " + std::to_string(step)};
    }
  }
  if (regime == Regime::GoodReduction) {
    return {EscapeVerdict::Kind::InCoreRegion, max_steps, std::nullopt,
            "good reduction: orbit bounded in the spherical metric"};
  }
  if ((regime == Regime::FullShiftTwo || regime == Regime::ChaoticSFT) &&
      resident) {
    return {EscapeVerdict::Kind::InCoreRegion, max_steps, std::nullopt,
            "remained in Omega through depth " + std::to_string(max_steps)};
  }
  return {EscapeVerdict::Kind::Undecided, max_steps, std::nullopt,
          "no certificate within " + std::to_string(max_steps) + " steps"};
}

namespace {

std::vector<Rational> series_reciprocal(const std::vector<Rational>& f,
                                        int order) {
  if (f.empty() || f[0] == 0) {
    throw PoleTooClose("series reciprocal at a zero of the denominator");
  }
  std::vector<Rational> out(static_cast<std::size_t>(order) + 1, Rational(0));
  Rational inv0 = 1 / f[0];
  out[0] = inv0;
  for (int n = 1; n <= order; ++n) {
    Rational acc = 0;
    for (int j = 1; j <= n; ++j) {
      if (j < static_cast<int>(f.size())) {
        acc += f[static_cast<std::size_t>(j)] *
               out[static_cast<std::size_t>(n - j)];
      }
    }
    out[static_cast<std::size_t>(n)] = -inv0 * acc;
  }
  return out;
}

// One application of phi to a series: a*f + 1/f.
std::vector<Rational> series_apply_phi(const Rational& a,
                                       const std::vector<Rational>& f,
                                       int order) {
  std::vector<Rational> out = series_reciprocal(f, order);
  for (int i = 0; i <= order; ++i) {
    if (i < static_cast<int>(f.size())) {
      out[static_cast<std::size_t>(i)] += a * f[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

}  // namespace

std::vector<Rational> taylor_coeffs_exact(const MapParams& params,
                                          int iterate_order, const Rational& x0,
                                          int count) {
  if (iterate_order != 1 && iterate_order != 2) {
    throw InvalidInput("taylor_coeffs: iterate order must be 1 or 2");
  }
  if (count < 1) throw InvalidInput("taylor_coeffs: count must be >= 1");
  if (x0 == 0) throw PoleTooClose("taylor_coeffs: x0 is a pole of phi");
  if (iterate_order == 2) {
    // Poles of phi^2 besides {0, inf} are the phi-preimages of 0. When
    // sqrt(-a) is not in Q_p they live in the quadratic extension and the two
    // distances |x0 -+ 1/sqrt(-a)| coincide, so the disk test reduces to the
    // exact rational inequality |x0^2 + 1/a| <= (|x0|/p)^2.
    std::int64_t v0 = *vp(x0, params.p);
    Rational probe = x0 * x0 + 1 / params.a;
    if (probe == 0) throw PoleTooClose("taylor_coeffs: x0 is a pole of phi^2");
    if (!is_square_rational(-params.a, params.p)) {
      if (*vp(probe, params.p) >= 2 * (v0 + 1)) {
        throw PoleTooClose("taylor_coeffs: pole of phi^2 within |x0|/p of x0");
      }
    } else {
      PadicScalar root = PadicScalar::from_rational(-params.a, params.p,
                                                    params.precision + 64)
                             .sqrt();
      PadicScalar pole = inv(root);
      PadicScalar x0s = PadicScalar::from_rational(x0, params.p,
                                                   params.precision + 64);
      for (const PadicScalar& r : {pole, neg(pole)}) {
        PadicScalar diff = sub(x0s, r);
        if (diff.is_zero() || diff.valuation() >= v0 + 1) {
          throw PoleTooClose("taylor_coeffs: pole of phi^2 within |x0|/p of x0");
        }
      }
    }
  }
  std::vector<Rational> series = {x0, Rational(1)};  // identity about x0
  for (int j = 0; j < iterate_order; ++j) {
    series = series_apply_phi(params.a, series, count);
  }
  return series;
}

TaylorCoeffs taylor_coeffs(const MapParams& params, int iterate_order,
                           const PadicScalar& x0, int count) {
  if (x0.prime() != params.p) throw InvalidInput("taylor_coeffs: prime mismatch");
  if (x0.is_zero()) throw PoleTooClose("taylor_coeffs: x0 is a pole of phi");
  std::vector<Rational> exact = taylor_coeffs_exact(
      params, iterate_order, x0.truncation_as_rational(), count);
  TaylorCoeffs out{x0, {}};
  out.coefficients.reserve(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) {
    out.coefficients.push_back(PadicScalar::from_rational(
        exact[static_cast<std::size_t>(i)], params.p, params.precision));
  }
  return out;
}

namespace {

bool rational_square_root(const Rational& b, Rational& root) {
  if (b <= 0) return false;
  BigInt n = numerator(b), d = denominator(b);
  BigInt rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return false;
  root = Rational(rn, rd);
  return true;
}

}  // namespace

std::optional<NormalizedMap> normalize_general(const Rational& a,
                                               const Rational& b,
                                               std::int64_t p, int precision) {
  require_odd_prime(p);
  if (b == 0) throw InvalidInput("normalize_general: b must be nonzero");
  if (!is_square_rational(b, p)) return std::nullopt;
  MapParams params(p, a, precision);
  Rational exact_root;
  if (rational_square_root(b, exact_root)) {
    // For rational perfect squares use the positive rational root; either
    // branch conjugates (phi is odd).
    return NormalizedMap{params,
                         PadicScalar::from_rational(1 / exact_root, p, precision),
                         1 / exact_root};
  }
  PadicScalar root = PadicScalar::from_rational(b, p, precision).sqrt();
  return NormalizedMap{params, inv(root), std::nullopt};
}

}  // namespace padicdyn
