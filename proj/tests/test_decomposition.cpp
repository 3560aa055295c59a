#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "padicdyn/decomposition.hpp"

using namespace padicdyn;

TEST_CASE("ball identifiers: counting, indexing, reduction") {
  CHECK(ball_count(3, 1) == 4);    // 3 + 1
  CHECK(ball_count(3, 2) == 12);   // 9 + 3
  CHECK(ball_count(5, 3) == 150);  // 125 + 25
  for (std::int64_t idx = 0; idx < ball_count(3, 2); ++idx) {
    BallId id = ball_from_index(idx, 3, 2);
    CHECK(ball_index(id, 3) == idx);
  }
  BallId affine{2, false, BigInt(7)};
  CHECK(reduce_ball(affine, 3) == BallId{1, false, BigInt(1)});
  BallId chart{3, true, BigInt(5)};
  CHECK(reduce_ball(chart, 3) == BallId{2, true, BigInt(2)});
  CHECK_THROWS_AS(reduce_ball(BallId{1, false, BigInt(0)}, 3), InvalidInput);
}

TEST_CASE("reduce_point: charts and examples") {
  CHECK(reduce_point(ProjPoint::infinity(3), 2) == BallId{2, true, BigInt(0)});
  CHECK(reduce_point_exact(std::nullopt, 3, 2) == BallId{2, true, BigInt(0)});

  ProjPoint four = ProjPoint::finite(PadicScalar::from_rational(Rational(4), 3, 8));
  CHECK(reduce_point(four, 2) == BallId{2, false, BigInt(4)});

  ProjPoint third =
      ProjPoint::finite(PadicScalar::from_rational(Rational(1, 3), 3, 8));
  CHECK(reduce_point(third, 1) == BallId{1, true, BigInt(0)});

  CHECK(reduce_point_exact(Rational(0), 3, 3) == BallId{3, false, BigInt(0)});
  CHECK(reduce_point_exact(Rational(27), 3, 2) == BallId{2, false, BigInt(0)});
  // 1/3 at level 2: w = 3, chart residue y = 1
  CHECK(reduce_point_exact(Rational(1, 3), 3, 2) == BallId{2, true, BigInt(1)});

  // digit and exact routes agree on random rationals
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> body(1, 10000);
  std::uniform_int_distribution<std::int64_t> e(-4, 4);
  for (int i = 0; i < 300; ++i) {
    std::int64_t num = body(rng), den = body(rng);
    while (num % 3 == 0) num = body(rng);
    while (den % 3 == 0) den = body(rng);
    Rational q = Rational(num, den) * rational_pow(3, e(rng));
    if (i % 2) q = -q;
    ProjPoint p = ProjPoint::finite(PadicScalar::from_rational(q, 3, 16));
    for (int k = 1; k <= 4; ++k) {
      CHECK(reduce_point(p, k) == reduce_point_exact(q, 3, k));
    }
  }

  // precision guard: 2 certified digits cannot resolve level 5
  ProjPoint coarse =
      ProjPoint::finite(PadicScalar::from_rational(Rational(7), 3, 2));
  CHECK_THROWS_AS(reduce_point(coarse, 5), PrecisionExhausted);

  // two points share a ball iff their spherical distance is <= p^-k
  std::mt19937_64 rng2(5);
  std::uniform_int_distribution<std::int64_t> val(-3, 3);
  for (int i = 0; i < 300; ++i) {
    PadicScalar x = random_scalar_with_valuation(rng2, 3, val(rng2), 16);
    PadicScalar y = random_scalar_with_valuation(rng2, 3, val(rng2), 16);
    ProjPoint px = ProjPoint::finite(x), py = ProjPoint::finite(y);
    auto rho = spherical_distance_exponent(px, py);
    for (int k = 1; k <= 3; ++k) {
      bool same = reduce_point(px, k) == reduce_point(py, k);
      bool close = !rho.has_value() || *rho <= -k;
      CHECK(same == close);
    }
  }
}

TEST_CASE("induced map at (3, 1, k=1): residue-field arithmetic of x + 1/x") {
  MapParams params(3, Rational(1));
  LevelGraph graph = induced_map(params, 1, 0);
  CHECK(graph.domain.size() == 4);
  // affine balls 0,1,2 and the chart ball at index 3
  CHECK(graph.next.at(1) == 2);  // 1 + 1/1 = 2
  CHECK(graph.next.at(2) == 1);  // 2 + 1/2 = 2 + 2 = 4 = 1 mod 3
  CHECK(graph.next.at(0) == 3);  // small values map to large ones
  CHECK(graph.next.at(3) == 3);  // the ball at infinity is fixed

  LevelCycles cycles = cycles_at_level(graph);
  CHECK(cycles.cycles.size() == 2);
  CHECK(cycles.cycle_of.count(1));
  CHECK(cycles.cycle_of.count(2));
  CHECK(cycles.cycle_of.at(1) == cycles.cycle_of.at(2));
  CHECK(cycles.cycle_of.count(3));
  CHECK(!cycles.cycle_of.count(0));
  CHECK(cycles.transient.at(0).first == 1);
  CHECK(cycles.transient.at(0).second == cycles.cycle_of.at(3));
}

TEST_CASE("cycles_at_level on synthetic graphs") {
  LevelGraph identity;
  identity.level = 1;
  identity.domain = {0, 1, 2};
  identity.next = {{0, 0}, {1, 1}, {2, 2}};
  LevelCycles ic = cycles_at_level(identity);
  CHECK(ic.cycles.size() == 3);
  CHECK(ic.transient.empty());

  LevelGraph ring;
  ring.level = 1;
  ring.domain = {0, 1, 2, 3, 4};
  ring.next = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  LevelCycles rc = cycles_at_level(ring);
  CHECK(rc.cycles.size() == 1);
  CHECK(rc.cycles[0].size() == 5);
  CHECK(rc.transient.empty());

  LevelGraph tadpole;
  tadpole.level = 1;
  tadpole.domain = {0, 1, 2, 3};
  tadpole.next = {{0, 1}, {1, 2}, {2, 1}, {3, 0}};
  LevelCycles tc = cycles_at_level(tadpole);
  CHECK(tc.cycles.size() == 1);
  CHECK(tc.cycles[0].size() == 2);
  CHECK(tc.transient.at(0).first == 1);
  CHECK(tc.transient.at(3).first == 2);
}

TEST_CASE("minimal-off-origin domain: core spheres under phi^2") {
  MapParams params(3, Rational(9));
  CHECK(core_sphere_bound(params) == 1);
  CHECK(min_level(params) == 2);
  CHECK_THROWS_AS(induced_map(params, 1, 0), InvalidInput);

  LevelGraph graph = induced_map(params, 2, 0);
  // S(0,1): 6 unit residues mod 9; S(0,1/3): 2 residues 3,6; S(0,3): 2 charts
  CHECK(graph.domain.size() == 10);
  for (std::int64_t idx : graph.domain) {
    std::int64_t target = graph.next.at(idx);
    CHECK(std::binary_search(graph.domain.begin(), graph.domain.end(), target));
    // phi^2 preserves each sphere: same chart side and same residue valuation
    BallId from = ball_from_index(idx, 3, 2);
    BallId to = ball_from_index(target, 3, 2);
    CHECK(from.infinity_chart == to.infinity_chart);
    if (!from.infinity_chart) {
      CHECK(vp_int(from.residue == 0 ? BigInt(9) : from.residue, 3) ==
            vp_int(to.residue == 0 ? BigInt(9) : to.residue, 3));
    }
  }
}

TEST_CASE("commutation of reduction with the induced map") {
  std::mt19937_64 rng(7);
  MapParams params(3, Rational(1));
  for (int k = 1; k <= 3; ++k) {
    LevelGraph graph = induced_map(params, k, 1);
    for (int i = 0; i < 100; ++i) {
      Rational x = random_rational_in_disk(rng, 3, Rational(0), 4, 8);
      if (x == 0) x = Rational(5);
      std::int64_t from = ball_index(reduce_point_exact(x, 3, k), 3);
      std::int64_t direct =
          ball_index(reduce_point_exact(apply_exact(params, x), 3, k), 3);
      CHECK(graph.next.at(from) == direct);
    }
  }
}

TEST_CASE("lift tree at (3, 1): divisibility and the attracting 2-cycle") {
  MapParams params(3, Rational(1));
  auto chains = lift_tree(params, 4, 0);
  CHECK(!chains.empty());
  bool found_attracting_two_cycle = false;
  for (const CycleChain& chain : chains) {
    CHECK(chain.divisibility_ok);
    CHECK(chain.lengths_by_level.front().first == 1);
    CHECK(chain.lengths_by_level.back().first == 4);
    if (chain.lengths_by_level.back().second == 2 &&
        chain.label == "PeriodicOrbitCandidate") {
      // the genuine attracting orbit of period 2 (x^2 = -1/2, multiplier 9)
      found_attracting_two_cycle = true;
      CHECK(chain.multiplier_class == "attracting");
      for (const auto& [level, len] : chain.lengths_by_level) CHECK(len == 2);
    }
  }
  CHECK(found_attracting_two_cycle);
}

TEST_CASE("decompose_report: structure at desk scale") {
  MapParams minimal(3, Rational(9));
  DecompositionReport report = decompose_report(minimal, 4, 0, 40);
  CHECK(report.regime == Regime::MinimalOffOrigin);
  CHECK(report.k_min == 2);
  for (const LevelSummary& s : report.levels) {
    CHECK(s.cyclic + s.transient == s.domain_size);
  }
  CHECK(report.divisibility_ok);
  CHECK(report.landing_table.size() == 40);
  for (const LandingRecord& rec : report.landing_table) {
    CHECK(rec.sphere_index >= 0);
    CHECK(rec.sphere_index <= 1);
  }

  MapParams good(3, Rational(1));
  DecompositionReport gr = decompose_report(good, 3, 0, 0);
  CHECK(gr.k_min == 1);
  for (const LevelSummary& s : gr.levels) {
    CHECK(s.domain_size == ball_count(3, s.level));
    CHECK(s.cyclic + s.transient == s.domain_size);
  }
  CHECK(gr.landing_table.empty());

  CHECK_THROWS_AS(decompose_report(MapParams(3, Rational(1, 3)), 4),
                  WrongRegime);
  CHECK_THROWS_AS(decompose_report(MapParams(5, Rational(-25)), 4),
                  WrongRegime);
}

TEST_CASE("ball representatives live in their ball") {
  std::mt19937_64 rng(11);
  for (int level = 1; level <= 4; ++level) {
    std::int64_t total = ball_count(3, level);
    std::uniform_int_distribution<std::int64_t> pick(0, total - 1);
    for (int i = 0; i < 40; ++i) {
      BallId id = ball_from_index(pick(rng), 3, level);
      Rational rep = ball_representative(id, 3);
      CHECK(reduce_point_exact(rep, 3, level) == id);
    }
  }
}
