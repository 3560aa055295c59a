#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicdyn/projective.hpp"

namespace padicdyn {

/// The five-way classification of the map x -> ax + 1/x on P^1(Q_p).
enum class Regime {
  GoodReduction,    // |a|_p = 1
  EscapeAll,        // |a|_p > 1, sqrt(1-a) not in Q_p
  FullShiftTwo,     // |a|_p > 1, sqrt(1-a) in Q_p
  MinimalOffOrigin, // |a|_p < 1, sqrt(-a) not in Q_p
  ChaoticSFT,       // |a|_p < 1, sqrt(-a) in Q_p
};

std::string regime_name(Regime r);

/// Parameters of phi(x) = ax + 1/x. `a` is held exactly; classification and
/// formula work run on the exact rational, digit-mode work at `precision`.
struct MapParams {
  MapParams(std::int64_t p, Rational a, int precision = kDefaultPrecision);
  std::int64_t p;
  Rational a;
  int precision;

  PadicScalar a_scalar() const;
  PadicScalar a_scalar(int precision_override) const;
};

/// Exact classification evidence: valuation parity and residue test on the
/// exact rational 1-a (resp. -a); truncated digits are never consulted.
struct ClassificationDetail {
  Regime regime;
  std::int64_t vp_a;
  std::string branch;                       // "|a|=1", "|a|>1", "|a|<1"
  std::optional<std::string> tested;        // "1-a" or "-a"
  std::optional<bool> valuation_even;
  std::optional<bool> unit_is_qr;
};

ClassificationDetail classify_detail(const MapParams& params);
Regime classify(const MapParams& params);

/// phi at a point of P^1: phi(0) = phi(inf) = inf; finite nonzero x maps to
/// ax + 1/x in digit mode with certified precision.
ProjPoint apply(const MapParams& params, const ProjPoint& x);

/// Digit-mode orbit (x, phi(x), ..., phi^n(x)); sticks at infinity once
/// reached. PrecisionExhausted is rethrown with the failing step index.
std::vector<ProjPoint> orbit(const MapParams& params, const ProjPoint& x,
                             int steps);

/// Exact-rational backend for short orbits and zero-tolerance oracles.
/// nullopt plays the role of infinity.
using RatPoint = std::optional<Rational>;
RatPoint apply_exact(const MapParams& params, const RatPoint& x);
std::vector<RatPoint> orbit_exact(const MapParams& params, const RatPoint& x,
                                  int steps);

enum class MultiplierClass { Attracting, Indifferent, Repelling, SuperAttracting };

std::string multiplier_class_name(MultiplierClass c);
MultiplierClass classify_multiplier(const PadicScalar& multiplier);

struct FixedPointInfo {
  ProjPoint point;
  PadicScalar multiplier;
  MultiplierClass cls;
};

/// All fixed points in P^1(Q_p): infinity (multiplier 1/a) always; the pair
/// +-1/sqrt(1-a) exactly when 1-a is a nonzero square. Finite multipliers are
/// computed as phi'(x0) = a - 1/x0^2 and checked against 2a - 1.
std::vector<FixedPointInfo> fixed_points(const MapParams& params);

struct EscapeVerdict {
  enum class Kind { EscapesToInfinity, InCoreRegion, Undecided };
  Kind kind;
  int step = 0;  // certification step (escape) or landing step N (core)
  std::optional<std::int64_t> sphere_index;  // MinimalOffOrigin landing i
  std::string descriptor;
};

/// Sound escape certification: EscapesToInfinity only via the proven
/// sufficient condition of the current regime, never via a large-value
/// heuristic. See regime notes in the implementation.
EscapeVerdict escape_test(const MapParams& params, const ProjPoint& x,
                          int max_steps);

struct TaylorCoeffs {
  PadicScalar center;
  std::vector<PadicScalar> coefficients;  // alpha_1 .. alpha_I
};

/// Coefficients of phi^k (k in {1,2}) about x0, in powers of x - x0,
/// computed by exact rational series expansion of the rational function.
/// The digit representation of x0 is read as the exact rational it denotes.
TaylorCoeffs taylor_coeffs(const MapParams& params, int iterate_order,
                           const PadicScalar& x0, int count);

/// Exact-rational route used by taylor_coeffs (index i holds alpha_i; the
/// constant term phi^k(x0) is returned at index 0).
std::vector<Rational> taylor_coeffs_exact(const MapParams& params,
                                          int iterate_order,
                                          const Rational& x0, int count);

struct NormalizedMap {
  MapParams params;              // parameters of the conjugated map ax + 1/x
  PadicScalar conjugacy_scalar;  // 1/sqrt(b)
  std::optional<Rational> conjugacy_exact;  // set when sqrt(b) is rational
};

/// Conjugates ax + b/x to ax + 1/x through x -> x/sqrt(b) when sqrt(b)
/// exists in Q_p; nullopt (unsupported) otherwise.
std::optional<NormalizedMap> normalize_general(const Rational& a,
                                               const Rational& b,
                                               std::int64_t p,
                                               int precision = kDefaultPrecision);

}  // namespace padicdyn
