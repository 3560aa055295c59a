#include "padicdyn/decomposition.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

namespace padicdyn {

std::int64_t ball_count(std::int64_t p, int level) {
  if (level < 1) throw InvalidInput("ball_count: level must be >= 1");
  BigInt total = pow_bigint(p, level) + pow_bigint(p, level - 1);
  if (total > BigInt(std::int64_t(1) << 62)) {
    throw InvalidInput("ball_count: level too deep for this prime");
  }
  return total.convert_to<std::int64_t>();
}

std::int64_t ball_index(const BallId& id, std::int64_t p) {
  BigInt base = id.infinity_chart ? pow_bigint(p, id.level) : BigInt(0);
  return (base + id.residue).convert_to<std::int64_t>();
}

BallId ball_from_index(std::int64_t index, std::int64_t p, int level) {
  BigInt pk = pow_bigint(p, level);
  if (index < 0 || BigInt(index) >= pk + pow_bigint(p, level - 1)) {
    throw InvalidInput("ball_from_index: index out of range");
  }
  if (BigInt(index) < pk) return {level, false, BigInt(index)};
  return {level, true, BigInt(index) - pk};
}

BallId reduce_ball(const BallId& id, std::int64_t p) {
  if (id.level < 2) throw InvalidInput("reduce_ball: level must be >= 2");
  int down = id.level - 1;
  BigInt m = pow_bigint(p, id.infinity_chart ? down - 1 : down);
  return {down, id.infinity_chart, id.residue % m};
}

BallId reduce_point_exact(const RatPoint& x, std::int64_t p, int level) {
  require_odd_prime(p);
  if (level < 1) throw InvalidInput("reduce_point: level must be >= 1");
  if (!x.has_value()) return {level, true, BigInt(0)};
  const Rational& q = *x;
  if (q == 0) return {level, false, BigInt(0)};
  std::int64_t v = *vp(q, p);
  if (v >= 0) {
    if (v >= level) return {level, false, BigInt(0)};
    BigInt residue =
        pow_bigint(p, v) * unit_residue(q, p, level - v);
    return {level, false, residue};
  }
  Rational w = 1 / q;  // |w| < 1; the class of [1 : w] with w = p*y
  std::int64_t vw = -v;
  if (vw >= level) return {level, true, BigInt(0)};
  BigInt wres = pow_bigint(p, vw) * unit_residue(w, p, level - vw);
  return {level, true, wres / p};
}

BallId reduce_point(const ProjPoint& x, int level) {
  std::int64_t p = x.prime();
  if (level < 1) throw InvalidInput("reduce_point: level must be >= 1");
  if (x.is_infinity()) return {level, true, BigInt(0)};
  const PadicScalar& s = x.value();
  if (s.is_zero()) return {level, false, BigInt(0)};
  std::int64_t v = s.valuation();
  if (v >= 0) {
    if (v >= level) return {level, false, BigInt(0)};
    if (s.precision() < level - v) {
      throw PrecisionExhausted("reduce_point: representation certifies fewer than " +
                               std::to_string(level) + " digits");
    }
    BigInt residue =
        pow_bigint(p, v) * (s.unit() % pow_bigint(p, level - v));
    return {level, false, residue};
  }
  PadicScalar w = inv(s);
  std::int64_t vw = w.valuation();
  if (vw >= level) return {level, true, BigInt(0)};
  if (w.precision() < level - vw) {
    throw PrecisionExhausted("reduce_point: representation certifies fewer than " +
                             std::to_string(level) + " digits");
  }
  BigInt wres = pow_bigint(p, vw) * (w.unit() % pow_bigint(p, level - vw));
  return {level, true, wres / p};
}

Rational ball_representative(const BallId& id, std::int64_t p) {
  if (!id.infinity_chart) {
    if (id.residue == 0) return Rational(pow_bigint(p, id.level));
    return Rational(id.residue);
  }
  if (id.residue == 0) return rational_pow(p, -id.level);
  return 1 / (Rational(id.residue) * p);
}

std::int64_t core_sphere_bound(const MapParams& params) {
  std::int64_t v = *vp(params.a, params.p);
  if (v <= 0) throw WrongRegime("core_sphere_bound: |a|_p must be < 1");
  return v / 2;
}

int min_level(const MapParams& params) {
  Regime regime = classify(params);
  if (regime == Regime::GoodReduction) return 1;
  if (regime == Regime::MinimalOffOrigin) {
    return static_cast<int>(core_sphere_bound(params)) + 1;
  }
  throw WrongRegime("decomposition covers GoodReduction/MinimalOffOrigin only");
}

namespace {

// Enumerates the ball domain for one level: everything for GoodReduction,
// the core spheres S(0, p^i), |i| <= floor(v_p(a)/2), for MinimalOffOrigin.
std::vector<std::int64_t> domain_for(const MapParams& params, int level) {
  Regime regime = classify(params);
  std::vector<std::int64_t> out;
  if (regime == Regime::GoodReduction) {
    std::int64_t total = ball_count(params.p, level);
    out.resize(static_cast<std::size_t>(total));
    for (std::int64_t i = 0; i < total; ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
  }
  std::int64_t bound = core_sphere_bound(params);
  std::int64_t p = params.p;
  // Affine side: spheres S(0, p^{-j}) for j in [0, bound]: residues p^j * u.
  for (std::int64_t j = 0; j <= bound; ++j) {
    BigInt pj = pow_bigint(p, j);
    BigInt limit = pow_bigint(p, level - j);
    for (BigInt u = 1; u < limit; ++u) {
      if (u % p == 0) continue;
      out.push_back(ball_index({level, false, pj * u}, p));
    }
  }
  // Chart side: spheres S(0, p^i) for i in [1, bound]: y = p^{i-1} * u.
  for (std::int64_t i = 1; i <= bound; ++i) {
    BigInt pi = pow_bigint(p, i - 1);
    BigInt limit = pow_bigint(p, level - i);
    for (BigInt u = 1; u < limit; ++u) {
      if (u % p == 0) continue;
      out.push_back(ball_index({level, true, pi * u}, p));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Two distinct interior rational points of a ball, drawn in its own chart.
std::array<Rational, 2> interior_samples(const BallId& id, std::int64_t p,
                                         std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> digit(0, p - 1);
  auto draw = [&](bool force_nonzero) {
    BigInt r = 0;
    BigInt pk = 1;
    for (int i = 0; i < 6; ++i) {
      r += pk * digit(rng);
      pk *= p;
    }
    if (force_nonzero && r == 0) r = 1;
    return r;
  };
  BigInt r1 = draw(false);
  BigInt r2 = draw(false);
  if (r2 == r1) r2 += 1;
  BigInt step = pow_bigint(p, id.level);
  if (!id.infinity_chart) {
    bool zero_ball = (id.residue == 0);
    if (zero_ball) {
      // keep samples nonzero so phi is evaluable
      if (r1 == 0) r1 = 1;
      if (r2 == 0 || r2 == r1) r2 = r1 + 1;
    }
    return {Rational(id.residue + step * r1), Rational(id.residue + step * r2)};
  }
  BigInt w_base = id.residue * p;
  BigInt w1 = w_base + step * r1;
  BigInt w2 = w_base + step * r2;
  if (w1 == 0) w1 = step;
  if (w2 == 0 || w2 == w1) w2 = w1 + step;
  return {1 / Rational(w1), 1 / Rational(w2)};
}

int phi_steps_per_map(Regime regime) {
  return regime == Regime::MinimalOffOrigin ? 2 : 1;
}

}  // namespace

LevelGraph induced_map(const MapParams& params, int level, std::uint64_t seed) {
  int k_min = min_level(params);  // also validates the regime
  if (level < k_min) {
    throw InvalidInput("induced_map: level " + std::to_string(level) +
                       " cannot resolve the declared domain (need >= " +
                       std::to_string(k_min) + ")");
  }
  Regime regime = classify(params);
  int steps = phi_steps_per_map(regime);
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(level)));
  LevelGraph graph;
  graph.level = level;
  graph.domain = domain_for(params, level);
  graph.next.reserve(graph.domain.size());
  for (std::int64_t idx : graph.domain) {
    BallId ball = ball_from_index(idx, params.p, level);
    auto samples = interior_samples(ball, params.p, rng);
    std::int64_t targets[2];
    for (int s = 0; s < 2; ++s) {
      RatPoint point = Rational(samples[static_cast<std::size_t>(s)]);
      for (int j = 0; j < steps; ++j) point = apply_exact(params, point);
      targets[s] = ball_index(reduce_point_exact(point, params.p, level), params.p);
    }
    if (targets[0] != targets[1]) {
      throw WellDefinednessViolation(
          "induced_map: interior samples " +
          rational_to_string(samples[0]) + " and " +
          rational_to_string(samples[1]) + " of one level-" +
          std::to_string(level) + " ball land in different balls");
    }
    graph.next[idx] = targets[0];
  }
  // Totality on the declared domain: MinimalOffOrigin targets must stay in
  // the invariant core spheres.
  if (regime == Regime::MinimalOffOrigin) {
    for (const auto& [from, to] : graph.next) {
      if (!std::binary_search(graph.domain.begin(), graph.domain.end(), to)) {
        throw InternalError("induced_map: image left the core spheres");
      }
    }
  }
  return graph;
}

LevelCycles cycles_at_level(const LevelGraph& graph) {
  LevelCycles out;
  enum : int { kUnseen = 0, kInProgress = 1, kDone = 2 };
  std::unordered_map<std::int64_t, int> state;
  state.reserve(graph.domain.size());
  for (std::int64_t start : graph.domain) {
    if (state[start] != kUnseen) continue;
    std::vector<std::int64_t> path;
    std::int64_t cur = start;
    while (state[cur] == kUnseen) {
      state[cur] = kInProgress;
      path.push_back(cur);
      cur = graph.next.at(cur);
    }
    if (state[cur] == kInProgress) {
      // new cycle: the suffix of the path starting at cur
      auto it = std::find(path.begin(), path.end(), cur);
      std::vector<std::int64_t> cycle(it, path.end());
      int cycle_idx = static_cast<int>(out.cycles.size());
      for (std::int64_t node : cycle) out.cycle_of[node] = cycle_idx;
      out.cycles.push_back(std::move(cycle));
    }
    for (std::int64_t node : path) state[node] = kDone;
  }
  // distances and terminal cycles for transient nodes
  for (std::int64_t start : graph.domain) {
    if (out.cycle_of.count(start) || out.transient.count(start)) continue;
    std::vector<std::int64_t> chain;
    std::int64_t cur = start;
    while (!out.cycle_of.count(cur) && !out.transient.count(cur)) {
      chain.push_back(cur);
      cur = graph.next.at(cur);
    }
    int dist_at_cur;
    int terminal;
    if (auto it = out.cycle_of.find(cur); it != out.cycle_of.end()) {
      dist_at_cur = 0;
      terminal = it->second;
    } else {
      const auto& info = out.transient.at(cur);
      dist_at_cur = info.first;
      terminal = info.second;
    }
    // node chain[i] sits chain.size() - i steps before `cur`
    for (std::size_t i = 0; i < chain.size(); ++i) {
      out.transient[chain[i]] = {
          dist_at_cur + static_cast<int>(chain.size() - i), terminal};
    }
  }
  return out;
}

namespace {

struct LevelData {
  LevelGraph graph;
  LevelCycles cycles;
};

std::vector<LevelData> compute_levels(const MapParams& params, int k_max,
                                      std::uint64_t seed) {
  int k_min = min_level(params);
  if (k_max < k_min) {
    throw InvalidInput("k_max must be >= " + std::to_string(k_min) +
                       " for these parameters");
  }
  std::vector<LevelData> out;
  for (int k = k_min; k <= k_max; ++k) {
    LevelData data{induced_map(params, k, seed), {}};
    data.cycles = cycles_at_level(data.graph);
    out.push_back(std::move(data));
  }
  return out;
}

// Contraction-ratio estimate of the return map around one cycle, measured in
// the chart coordinate of the sample ball. Returns a multiplier-class name.
std::string estimate_multiplier_class(const MapParams& params,
                                      const std::vector<std::int64_t>& cycle,
                                      int level) {
  Regime regime = classify(params);
  int steps =
      static_cast<int>(cycle.size()) * phi_steps_per_map(regime);
  BallId ball = ball_from_index(cycle.front(), params.p, level);
  int precision = std::max(params.precision,
                           level + 16 + 4 * std::min(steps, 96));
  try {
    Rational base = ball.infinity_chart ? Rational(ball.residue) * params.p
                                        : Rational(ball.residue);
    BigInt step = pow_bigint(params.p, level);
    Rational c1 = base + Rational(step);
    Rational c2 = base + Rational(step) * (params.p + 1);
    auto lift = [&](const Rational& chart_coord) {
      Rational v = chart_coord == 0 ? Rational(step) : chart_coord;
      return ball.infinity_chart ? 1 / v : v;
    };
    PadicScalar x1 = PadicScalar::from_rational(lift(c1), params.p, precision);
    PadicScalar x2 = PadicScalar::from_rational(lift(c2), params.p, precision);
    ProjPoint p1 = ProjPoint::finite(x1);
    ProjPoint p2 = ProjPoint::finite(x2);
    for (int j = 0; j < steps; ++j) {
      p1 = apply(params, p1);
      p2 = apply(params, p2);
    }
    if (p1.is_infinity() || p2.is_infinity()) return "unknown";
    auto chart = [&](const ProjPoint& pt) {
      return ball.infinity_chart ? inv(pt.value()) : pt.value();
    };
    // The start points differ by exactly p^(level+1) in chart coordinates.
    PadicScalar after = sub(chart(p2), chart(p1));
    if (after.is_zero()) return "unknown";
    std::int64_t ratio = after.valuation() - (level + 1);
    if (ratio > 0) return "attracting";
    if (ratio == 0) return "indifferent";
    return "repelling";
  } catch (const Error&) {
    return "unknown";
  }
}

std::vector<CycleChain> chains_from_levels(const MapParams& params,
                                           const std::vector<LevelData>& levels) {
  std::vector<CycleChain> chains;
  if (levels.empty()) return chains;
  const LevelData& top = levels.back();
  int k_max = top.graph.level;
  for (const auto& cycle : top.cycles.cycles) {
    CycleChain chain;
    chain.sample_ball = ball_from_index(cycle.front(), params.p, k_max);
    chain.divisibility_ok = true;
    std::vector<std::pair<int, int>> lengths;
    BallId ball = chain.sample_ball;
    lengths.emplace_back(k_max, static_cast<int>(cycle.size()));
    for (std::size_t li = levels.size(); li-- > 1;) {
      const LevelData& parent_level = levels[li - 1];
      ball = reduce_ball(ball, params.p);
      std::int64_t pidx = ball_index(ball, params.p);
      auto it = parent_level.cycles.cycle_of.find(pidx);
      if (it == parent_level.cycles.cycle_of.end()) {
        throw InternalError("lift_tree: reduction of a cycle is not cyclic");
      }
      lengths.emplace_back(parent_level.graph.level,
                           static_cast<int>(
                               parent_level.cycles.cycles[static_cast<std::size_t>(
                                   it->second)].size()));
    }
    std::reverse(lengths.begin(), lengths.end());
    for (std::size_t i = 1; i < lengths.size(); ++i) {
      if (lengths[i].second % lengths[i - 1].second != 0) {
        chain.divisibility_ok = false;
      }
    }
    chain.lengths_by_level = std::move(lengths);
    chain.multiplier_class = estimate_multiplier_class(params, cycle, k_max);
    bool tail_constant =
        chain.lengths_by_level.size() < 2 ||
        chain.lengths_by_level.back().second ==
            chain.lengths_by_level[chain.lengths_by_level.size() - 2].second;
    chain.label = (tail_constant && chain.multiplier_class == "attracting")
                      ? "PeriodicOrbitCandidate"
                      : "MinimalComponentCandidate";
    chains.push_back(std::move(chain));
  }
  return chains;
}

}  // namespace

std::vector<CycleChain> lift_tree(const MapParams& params, int k_max,
                                  std::uint64_t seed) {
  return chains_from_levels(params, compute_levels(params, k_max, seed));
}

DecompositionReport decompose_report(const MapParams& params, int k_max,
                                     std::uint64_t seed, int landing_samples) {
  std::vector<LevelData> levels = compute_levels(params, k_max, seed);
  Regime regime = classify(params);

  DecompositionReport report;
  report.regime = regime;
  report.p = params.p;
  report.a = params.a;
  report.k_min = levels.front().graph.level;
  report.k_max = k_max;
  for (const LevelData& data : levels) {
    LevelSummary summary;
    summary.level = data.graph.level;
    summary.domain_size = static_cast<std::int64_t>(data.graph.domain.size());
    summary.cyclic = static_cast<std::int64_t>(data.cycles.cycle_of.size());
    summary.transient = static_cast<std::int64_t>(data.cycles.transient.size());
    summary.cycle_count = static_cast<int>(data.cycles.cycles.size());
    report.levels.push_back(summary);
  }
  report.chains = chains_from_levels(params, levels);
  report.transient_count =
      static_cast<std::int64_t>(levels.back().cycles.transient.size());
  report.divisibility_ok = true;
  for (const CycleChain& chain : report.chains) {
    report.divisibility_ok = report.divisibility_ok && chain.divisibility_ok;
  }

  if (regime == Regime::MinimalOffOrigin && landing_samples > 0) {
    std::mt19937_64 rng(seed ^ 0xa5a5a5a5ULL);
    std::int64_t vpa = *vp(params.a, params.p);
    std::uniform_int_distribution<std::int64_t> val(-2 * vpa - 2, 2 * vpa + 2);
    for (int i = 0; i < landing_samples; ++i) {
      std::int64_t v = val(rng);
      PadicScalar x =
          random_scalar_with_valuation(rng, params.p, v, params.precision);
      int budget = static_cast<int>(std::abs(v)) + 8;
      EscapeVerdict verdict =
          escape_test(params, ProjPoint::finite(x), budget);
      LandingRecord record;
      record.start = x.truncation_as_rational();
      record.sphere_index =
          verdict.sphere_index.value_or(-1);  // -1 marks a failed landing
      record.step = verdict.step;
      report.landing_table.push_back(std::move(record));
    }
  }
  return report;
}

}  // namespace padicdyn
