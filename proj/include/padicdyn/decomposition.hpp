#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "padicdyn/dynamics.hpp"

namespace padicdyn {

/// Canonical identifier of one spherical ball of radius p^{-k} at level k.
/// The p^k + p^{k-1} balls partition P^1(Q_p): affine balls are residues
/// x mod p^k on Z_p; infinity-chart balls are classes [1 : p*y] with
/// y mod p^{k-1}, covering {|x| > 1} together with infinity.
struct BallId {
  int level;
  bool infinity_chart;
  BigInt residue;  // affine: in [0, p^k); chart: in [0, p^{k-1})

  bool operator==(const BallId& other) const = default;
};

std::int64_t ball_count(std::int64_t p, int level);
std::int64_t ball_index(const BallId& id, std::int64_t p);
BallId ball_from_index(std::int64_t index, std::int64_t p, int level);

/// The level-(k-1) ball containing this level-k ball (k >= 2).
BallId reduce_ball(const BallId& id, std::int64_t p);

/// Canonical ball containing x; requires the representation to certify k
/// digits past the valuation (throws PrecisionExhausted otherwise).
BallId reduce_point(const ProjPoint& x, int level);

/// Exact-rational route (nullopt = infinity).
BallId reduce_point_exact(const RatPoint& x, std::int64_t p, int level);

/// An interior rational representative of the ball (never infinity).
Rational ball_representative(const BallId& id, std::int64_t p);

/// Functional graph of the induced map on balls at one level.
/// GoodReduction: the full P^1 ball set under phi. MinimalOffOrigin: the
/// balls of the invariant core spheres S(0, p^i), |i| <= floor(v_p(a)/2),
/// under phi^2 (requires level > floor(v_p(a)/2) so spheres are ball unions).
/// Well-definedness is verified with two interior samples per ball.
struct LevelGraph {
  int level;
  std::vector<std::int64_t> domain;                  // sorted ball indices
  std::unordered_map<std::int64_t, std::int64_t> next;
};

/// Smallest level at which the regime's declared domain is a union of balls.
int min_level(const MapParams& params);

/// floor(v_p(a)/2), the core-sphere index bound of the MinimalOffOrigin regime.
std::int64_t core_sphere_bound(const MapParams& params);

LevelGraph induced_map(const MapParams& params, int level, std::uint64_t seed);

struct LevelCycles {
  std::vector<std::vector<std::int64_t>> cycles;     // ball indices per cycle
  std::unordered_map<std::int64_t, int> cycle_of;    // cyclic node -> cycle
  // transient node -> (distance to cycle, terminal cycle index)
  std::unordered_map<std::int64_t, std::pair<int, int>> transient;
};

LevelCycles cycles_at_level(const LevelGraph& graph);

/// One leaf-to-root chain of cycles linked child -> parent by reduction.
struct CycleChain {
  std::string label;  // PeriodicOrbitCandidate | MinimalComponentCandidate
  std::string multiplier_class;  // attracting/indifferent/repelling/unknown
  std::vector<std::pair<int, int>> lengths_by_level;  // (level, cycle length)
  BallId sample_ball;                                 // member at deepest level
  bool divisibility_ok;  // child length is a multiple of parent length
};

std::vector<CycleChain> lift_tree(const MapParams& params, int k_max,
                                  std::uint64_t seed);

struct LevelSummary {
  int level;
  std::int64_t domain_size;
  std::int64_t cyclic;
  std::int64_t transient;
  int cycle_count;
};

struct LandingRecord {
  Rational start;
  std::int64_t sphere_index;
  int step;
};

struct DecompositionReport {
  Regime regime;
  std::int64_t p;
  Rational a;
  int k_min;
  int k_max;
  std::vector<LevelSummary> levels;
  std::vector<CycleChain> chains;
  std::int64_t transient_count;  // at k_max
  bool divisibility_ok;          // across all parent/child pairs
  std::vector<LandingRecord> landing_table;  // MinimalOffOrigin only
};

/// Finite-level exploration of the minimal decomposition. Labels are
/// explicitly candidates at level k_max; exact minimal components are not
/// claimed. Throws WrongRegime outside GoodReduction/MinimalOffOrigin.
DecompositionReport decompose_report(const MapParams& params, int k_max,
                                     std::uint64_t seed = 0,
                                     int landing_samples = 50);

}  // namespace padicdyn
