#include "padicdyn/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "padicdyn/decomposition.hpp"
#include "padicdyn/symbolic.hpp"

namespace padicdyn {

namespace {

struct Checker {
  VerdictReport& report;

  template <class WitnessFn>
  void check(bool ok, WitnessFn witness) {
    ++report.cases;
    if (!ok) {
      ++report.failures;
      if (report.witnesses.size() < 16) report.witnesses.push_back(witness());
    }
  }

  void check(bool ok, const char* witness) {
    check(ok, [witness] { return std::string(witness); });
  }
};

int count_or(int override_value, int fallback) {
  return override_value > 0 ? override_value : fallback;
}

// ---------------------------------------------------------------------------
// Suite 1: the five canonical parameters plus randomized ones, cross-checked
// against a brute-force residue oracle (squares enumerated modulo p^3).
// ---------------------------------------------------------------------------

Regime oracle_regime(std::int64_t p, const Rational& a) {
  std::int64_t v = *vp(a, p);
  if (v == 0) return Regime::GoodReduction;
  Rational tested = v < 0 ? Rational(1) - a : -a;
  std::set<BigInt> squares;
  BigInt p3 = pow_bigint(p, 3);
  for (BigInt r = 0; r < p3; ++r) squares.insert((r * r) % p3);
  bool square = (*vp(tested, p) % 2 == 0) &&
                squares.count(unit_residue(tested, p, 3)) > 0;
  if (v < 0) return square ? Regime::FullShiftTwo : Regime::EscapeAll;
  return square ? Regime::ChaoticSFT : Regime::MinimalOffOrigin;
}

VerdictReport suite_classification(const VerifyOptions& options) {
  VerdictReport report;
  report.suite = "classification";
  Checker c{report};
  const std::vector<std::tuple<std::int64_t, Rational, Regime>> canonical = {
      {3, Rational(1, 3), Regime::EscapeAll},
      {5, Rational(1, 25), Regime::FullShiftTwo},
      {5, Rational(-25), Regime::ChaoticSFT},
      {3, Rational(9), Regime::MinimalOffOrigin},
      {7, Rational(3), Regime::GoodReduction},
  };
  for (const auto& [p, a, expected] : canonical) {
    Regime got = classify(MapParams(p, a));
    c.check(got == expected, [&, p = p, a = a] {
      return "canonical (" + std::to_string(p) + ", " + rational_to_string(a) +
             ") classified " + regime_name(got);
    });
    c.check(oracle_regime(p, a) == expected, "oracle disagrees on canonical");
  }
  std::mt19937_64 rng(options.seed);
  const std::int64_t primes[] = {3, 5, 7, 11, 13};
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_int_distribution<std::int64_t> exp(-6, 6);
  std::uniform_int_distribution<std::int64_t> body(1, 500);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 20; ++i) {
    std::int64_t p = primes[pick(rng)];
    std::int64_t num = body(rng);
    std::int64_t den = body(rng);
    while (num % p == 0) num = body(rng);
    while (den % p == 0) den = body(rng);
    Rational a = Rational(num, den) * rational_pow(p, exp(rng));
    if (coin(rng)) a = -a;
    MapParams params(p, a);
    Regime got = classify(params);
    Regime want = oracle_regime(p, a);
    c.check(got == want, [&] {
      return "random (" + std::to_string(p) + ", " + rational_to_string(a) +
             "): classify " + regime_name(got) + " oracle " + regime_name(want);
    });
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite 2: scaling isometry on the branch disks (exact rational route):
// v(phi(x) - phi(y)) - v(x - y) = v_p(a) for every pair in one disk.
// ---------------------------------------------------------------------------

VerdictReport suite_scaling(const VerifyOptions& options) {
  VerdictReport report;
  report.suite = "scaling";
  Checker c{report};
  int pairs = count_or(options.pairs, 1000);
  std::mt19937_64 rng(options.seed + 1);
  const std::vector<std::pair<std::int64_t, Rational>> cases = {
      {3, Rational(2, 9)}, {5, Rational(1, 25)}};
  for (const auto& [p, a] : cases) {
    MapParams params(p, a);
    std::int64_t v = *vp(a, p);
    std::int64_t m = v / 2 - 1;
    auto disks = shift_disks(params);
    for (const PDisk& disk : {disks.first, disks.second}) {
      Rational center = disk.center.value().truncation_as_rational();
      for (int i = 0; i < pairs; ++i) {
        Rational x = random_rational_in_disk(rng, p, center, m, 40);
        Rational y = random_rational_in_disk(rng, p, center, m, 40);
        while (y == x) y = random_rational_in_disk(rng, p, center, m, 40);
        Rational fx = *apply_exact(params, x);
        Rational fy = *apply_exact(params, y);
        std::int64_t lhs = *vp(fx - fy, p);
        std::int64_t rhs = v + *vp(x - y, p);
        c.check(lhs == rhs, [&] {
          return "(" + std::to_string(p) + ", " + rational_to_string(a) +
                 "): v(phi x - phi y) = " + std::to_string(lhs) +
                 " expected " + std::to_string(rhs) + " at x = " +
                 rational_to_string(x) + ", y = " + rational_to_string(y);
        });
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite 3: depth-8 full-shift structure at (p, a) = (5, 1/25): all 256
// cylinders nonempty, pairwise disjoint, on the exact radius law, and each
// center reproduces its word.
// ---------------------------------------------------------------------------

VerdictReport suite_fullshift(const VerifyOptions& options) {
  (void)options;
  VerdictReport report;
  report.suite = "fullshift";
  Checker c{report};
  MapParams params(5, Rational(1, 25));
  std::int64_t v = *vp(params.a, params.p);
  const int depth = 8;
  std::vector<CylinderDisk> cylinders;
  cylinders.reserve(1 << depth);
  for (int mask = 0; mask < (1 << depth); ++mask) {
    std::vector<int> symbols;
    for (int t = 0; t < depth; ++t) symbols.push_back(((mask >> t) & 1) + 1);
    Word w(2, symbols);
    try {
      CylinderDisk cd = cylinder(params, w);
      std::int64_t expected_radius = (v / 2 - 1) + (depth - 1) * v;
      c.check(cd.disk.radius_exponent == expected_radius, [&] {
        return "cylinder radius exponent " +
               std::to_string(cd.disk.radius_exponent) + " expected " +
               std::to_string(expected_radius);
      });
      ItineraryResult it = itinerary2(params, cd.disk.center, depth);
      c.check(!it.escape_step && it.word == w, [&] {
        std::ostringstream out;
        out << "center itinerary mismatch for word";
        for (int s : w.symbols) out << " " << s;
        return out.str();
      });
      cylinders.push_back(std::move(cd));
    } catch (const Error& e) {
      c.check(false, [&] { return std::string("cylinder failed: ") + e.what(); });
    }
  }
  c.check(cylinders.size() == (1u << depth), "not all 256 cylinders built");
  for (std::size_t i = 0; i < cylinders.size(); ++i) {
    for (std::size_t j = i + 1; j < cylinders.size(); ++j) {
      PadicScalar diff = sub(cylinders[i].disk.center.value(),
                             cylinders[j].disk.center.value());
      bool disjoint = !diff.is_zero() &&
                      diff.valuation() < -cylinders[i].disk.radius_exponent;
      c.check(disjoint, [&] {
        return "cylinders " + std::to_string(i) + " and " + std::to_string(j) +
               " are not disjoint";
      });
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite 4: SFT transitions at (5, -25): sampled orbits only realize
// transitions allowed by A; rows 1-3 are observed deterministic.
// ---------------------------------------------------------------------------

VerdictReport suite_sft(const VerifyOptions& options) {
  VerdictReport report;
  report.suite = "sft";
  Checker c{report};
  MapParams params(5, Rational(-25), 256);
  const int samples = count_or(options.samples, 10000);
  const int steps = 50;
  TransitionMatrix a_true = transition_matrix4();
  TransitionMatrix a_check = a_true;
  if (options.inject_fault) a_check.rows[0][2] = 0;  // break 1 -> 3

  auto regions = sft_regions(params);
  std::mt19937_64 rng(options.seed + 2);
  std::uniform_int_distribution<std::int64_t> d4_val(-8, 1);
  std::set<std::pair<int, int>> observed;
  std::map<int, std::set<int>> successors;
  long transitions = 0;
  long escapes = 0;  // orbits may exit Omega through the gap sphere S(0,|a|)
  for (int i = 0; i < samples; ++i) {
    ProjPoint x = ProjPoint::infinity(params.p);
    switch (i % 4) {
      case 0:
        x = ProjPoint::finite(random_in_standard_disk(
            rng, regions[0].center.value(), regions[0].radius_exponent, 256));
        break;
      case 1:
        x = ProjPoint::finite(random_in_standard_disk(
            rng, regions[1].center.value(), regions[1].radius_exponent, 256));
        break;
      case 2:
        x = ProjPoint::finite(random_in_standard_disk(
            rng, regions[2].center.value(), regions[2].radius_exponent, 256));
        break;
      case 3:
        if (i % 997 == 0) break;  // keep a few exact infinity starts
        x = ProjPoint::finite(
            random_scalar_with_valuation(rng, params.p, d4_val(rng), 256));
        break;
    }
    ItineraryResult it = itinerary4(params, x, steps);
    if (it.escape_step) ++escapes;
    for (std::size_t t = 1; t < it.word.symbols.size(); ++t) {
      int s = it.word.symbols[t - 1];
      int u = it.word.symbols[t];
      ++transitions;
      c.check(a_check.rows[static_cast<std::size_t>(s - 1)]
                          [static_cast<std::size_t>(u - 1)] == 1,
              [&] {
                return "forbidden transition " + std::to_string(s) + " -> " +
                       std::to_string(u) + " observed";
              });
      observed.insert({s, u});
      successors[s].insert(u);
    }
  }
  for (int s = 1; s <= 3; ++s) {
    c.check(successors[s].size() <= 1, [&] {
      return "row " + std::to_string(s) + " observed nondeterministic";
    });
  }
  c.check(transitions >= static_cast<long>(samples) * 3,
          "too few transitions observed");
  report.details["transitions"] = transitions;
  report.details["escaped_orbits"] = escapes;
  Json obs = Json::array();
  for (auto [s, u] : observed) obs.push_back(Json::array({s, u}));
  report.details["observed_pairs"] = obs;
  return report;
}

// ---------------------------------------------------------------------------
// Suite 5: the entropy constant: spectral radius 1.69562 within 1e-4 and
// root of x^3 - x^2 - 2 within 1e-8; word-count growth agrees.
// ---------------------------------------------------------------------------

VerdictReport suite_entropy(const VerifyOptions& options) {
  (void)options;
  VerdictReport report;
  report.suite = "entropy";
  Checker c{report};
  EntropyReport r = entropy(transition_matrix4());
  c.check(std::abs(r.lambda - 1.69562) <= 1e-4, [&] {
    return "lambda = " + std::to_string(r.lambda);
  });
  double cubic = r.lambda * r.lambda * r.lambda - r.lambda * r.lambda - 2.0;
  c.check(std::abs(cubic) <= 1e-8, [&] {
    return "lambda^3 - lambda^2 - 2 = " + std::to_string(cubic);
  });
  std::size_t L = r.word_counts.size();
  double ratio = static_cast<double>(r.word_counts[L - 1]) /
                 static_cast<double>(r.word_counts[L - 2]);
  c.check(std::abs(ratio - r.lambda) <= 0.05, [&] {
    return "word-count growth ratio " + std::to_string(ratio);
  });
  report.details = to_json(r);
  return report;
}

// ---------------------------------------------------------------------------
// Suite 6: good-reduction commutation: reduce(phi(x), k) equals the induced
// level-graph step of reduce(x, k).
// ---------------------------------------------------------------------------

VerdictReport suite_goodred(const VerifyOptions& options) {
  VerdictReport report;
  report.suite = "goodred";
  Checker c{report};
  int points = count_or(options.samples, 500);
  std::mt19937_64 rng(options.seed + 3);
  const std::vector<std::pair<std::int64_t, Rational>> cases = {
      {3, Rational(1)}, {5, Rational(2)}, {7, Rational(3)}};
  for (const auto& [p, a] : cases) {
    MapParams params(p, a);
    for (int k = 1; k <= 5; ++k) {
      LevelGraph graph = induced_map(params, k, options.seed);
      for (int i = 0; i < points; ++i) {
        RatPoint x;
        if (i % 100 == 7) {
          x = std::nullopt;  // infinity
        } else {
          x = random_rational_in_disk(rng, p, Rational(0), 6, 12);
          if (*x == 0) x = Rational(1);
        }
        std::int64_t from = ball_index(reduce_point_exact(x, p, k), p);
        std::int64_t via_graph = graph.next.at(from);
        std::int64_t direct =
            ball_index(reduce_point_exact(apply_exact(params, x), p, k), p);
        c.check(via_graph == direct, [&, p = p] {
          return "commutation failed at p=" + std::to_string(p) +
                 " k=" + std::to_string(k) + " x=" +
                 (x ? rational_to_string(*x) : std::string("inf"));
        });
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite 7: sphere swap and 1-Lipschitz phi^2 on core spheres at (3, 9).
// ---------------------------------------------------------------------------

VerdictReport suite_sphereswap(const VerifyOptions& options) {
  VerdictReport report;
  report.suite = "sphereswap";
  Checker c{report};
  MapParams params(3, Rational(9));
  int per_sphere = count_or(options.samples, 300);
  std::mt19937_64 rng(options.seed + 4);
  std::uniform_int_distribution<std::int64_t> body(1, 100000);
  auto sphere_point = [&](std::int64_t i) {
    std::int64_t u = body(rng);
    while (u % params.p == 0) u = body(rng);
    return Rational(u) * rational_pow(params.p, -i);  // valuation -i
  };
  std::vector<Rational> all;
  for (std::int64_t i : {-1, 0, 1}) {
    for (int n = 0; n < per_sphere; ++n) {
      Rational x = sphere_point(i);
      all.push_back(x);
      Rational fx = *apply_exact(params, x);
      c.check(*vp(fx, params.p) == i, [&] {
        return "phi(S(0,3^" + std::to_string(i) + ")) left S(0,3^" +
               std::to_string(-i) + ") at x = " + rational_to_string(x);
      });
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int n = 0; n < 3 * per_sphere; ++n) {
    Rational x = all[pick(rng)];
    Rational y = all[pick(rng)];
    if (x == y) continue;
    Rational f2x = *apply_exact(params, *apply_exact(params, x));
    Rational f2y = *apply_exact(params, *apply_exact(params, y));
    if (f2x == f2y) continue;  // valuation +inf dominates any bound
    c.check(*vp(f2x - f2y, params.p) >= *vp(x - y, params.p), [&] {
      return "phi^2 expanded the pair x = " + rational_to_string(x) +
             ", y = " + rational_to_string(y);
    });
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite 8: monotone escape at (3, 1/3): valuation drops by exactly 1 per
// step for points with |x| >= 1.
// ---------------------------------------------------------------------------

VerdictReport suite_escape(const VerifyOptions& options) {
  VerdictReport report;
  report.suite = "escape";
  Checker c{report};
  MapParams params(3, Rational(1, 3), 32);
  int points = count_or(options.samples, 100);
  std::mt19937_64 rng(options.seed + 5);
  std::uniform_int_distribution<std::int64_t> val(-10, 0);
  for (int i = 0; i < points; ++i) {
    PadicScalar x = random_scalar_with_valuation(rng, params.p, val(rng), 32);
    EscapeVerdict verdict = escape_test(params, ProjPoint::finite(x), 10);
    c.check(verdict.kind == EscapeVerdict::Kind::EscapesToInfinity &&
                verdict.step == 0,
            "escape not certified at step 0");
    std::vector<ProjPoint> path = orbit(params, ProjPoint::finite(x), 10);
    for (int k = 0; k < 10; ++k) {
      std::int64_t before = path[static_cast<std::size_t>(k)].value().valuation();
      std::int64_t after =
          path[static_cast<std::size_t>(k) + 1].value().valuation();
      c.check(after == before - 1, [&] {
        return "valuation step " + std::to_string(k) + ": " +
               std::to_string(before) + " -> " + std::to_string(after);
      });
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite 9: Taylor coefficient bounds for phi^2 about core-sphere centers at
// (3, 9): |alpha_i| <= (p/|x0|)^{i-1} as exact valuation inequalities.
// ---------------------------------------------------------------------------

VerdictReport suite_taylor(const VerifyOptions& options) {
  VerdictReport report;
  report.suite = "taylor";
  Checker c{report};
  MapParams params(3, Rational(9));
  int centers = count_or(options.samples, 20);
  std::mt19937_64 rng(options.seed + 6);
  std::uniform_int_distribution<std::int64_t> body(1, 100000);
  std::uniform_int_distribution<int> sphere(-1, 1);
  for (int n = 0; n < centers; ++n) {
    std::int64_t i = sphere(rng);
    std::int64_t u = body(rng);
    while (u % params.p == 0) u = body(rng);
    Rational x0 = Rational(u) * rational_pow(params.p, -i);
    std::int64_t v0 = -i;
    std::vector<Rational> coeffs = taylor_coeffs_exact(params, 2, x0, 8);
    // chain rule oracle for alpha_1
    Rational fx0 = *apply_exact(params, x0);
    Rational phi_prime_x0 = params.a - 1 / (x0 * x0);
    Rational phi_prime_fx0 = params.a - 1 / (fx0 * fx0);
    c.check(coeffs[1] == phi_prime_x0 * phi_prime_fx0,
            "alpha_1 disagrees with the chain rule");
    for (int idx = 1; idx <= 8; ++idx) {
      const Rational& alpha = coeffs[static_cast<std::size_t>(idx)];
      if (alpha == 0) {
        ++report.cases;
        continue;
      }
      // |alpha_i| <= (p/|x0|)^{i-1}  <=>  v(alpha_i) >= -(i-1)(1 + v(x0))
      c.check(*vp(alpha, params.p) >= -(idx - 1) * (1 + v0), [&] {
        return "Taylor bound violated at x0 = " + rational_to_string(x0) +
               " order " + std::to_string(idx);
      });
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suite 10: decomposition structure at (3, 9, k<=5) and (3, 1, k<=4):
// exact partition per level, cycle-length divisibility, landing behavior.
// ---------------------------------------------------------------------------

VerdictReport suite_decomposition(const VerifyOptions& options) {
  VerdictReport report;
  report.suite = "decomposition";
  Checker c{report};

  MapParams minimal(3, Rational(9));
  DecompositionReport rep_a = decompose_report(minimal, 5, options.seed, 200);
  for (const LevelSummary& s : rep_a.levels) {
    c.check(s.cyclic + s.transient == s.domain_size, [&] {
      return "level " + std::to_string(s.level) +
             ": balls not classified exactly once";
    });
  }
  c.check(rep_a.divisibility_ok, "cycle-length divisibility failed at (3, 9)");
  std::int64_t bound = core_sphere_bound(minimal);
  c.check(rep_a.landing_table.size() == 200, "missing landing records");
  for (const LandingRecord& rec : rep_a.landing_table) {
    c.check(rec.sphere_index >= 0 && rec.sphere_index <= bound, [&] {
      return "landing failed for x = " + rational_to_string(rec.start);
    });
  }
  // alternation after landing for a few samples
  std::mt19937_64 rng(options.seed + 7);
  for (int i = 0; i < 20; ++i) {
    PadicScalar x = random_scalar_with_valuation(
        rng, 3, static_cast<std::int64_t>(i % 9) - 4, 64);
    EscapeVerdict verdict = escape_test(minimal, ProjPoint::finite(x), 16);
    c.check(verdict.kind == EscapeVerdict::Kind::InCoreRegion,
            "landing verdict missing");
    if (verdict.kind != EscapeVerdict::Kind::InCoreRegion) continue;
    std::vector<ProjPoint> path = orbit(minimal, ProjPoint::finite(x),
                                        verdict.step + 6);
    std::int64_t expect = *verdict.sphere_index;
    for (int t = verdict.step; t <= verdict.step + 6; ++t) {
      std::int64_t got =
          std::abs(path[static_cast<std::size_t>(t)].value().valuation());
      c.check(got == expect, "orbit left the landing sphere pair");
    }
  }

  MapParams good(3, Rational(1));
  DecompositionReport rep_b = decompose_report(good, 4, options.seed, 0);
  for (const LevelSummary& s : rep_b.levels) {
    c.check(s.cyclic + s.transient == s.domain_size, [&] {
      return "level " + std::to_string(s.level) +
             ": balls not classified exactly once";
    });
    c.check(s.domain_size == ball_count(3, s.level),
            "good reduction domain is not the full ball set");
  }
  c.check(rep_b.divisibility_ok, "cycle-length divisibility failed at (3, 1)");
  report.details["minimal_chains"] = static_cast<int>(rep_a.chains.size());
  report.details["good_chains"] = static_cast<int>(rep_b.chains.size());
  return report;
}

using SuiteFn = std::function<VerdictReport(const VerifyOptions&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"classification", suite_classification},
      {"scaling", suite_scaling},
      {"fullshift", suite_fullshift},
      {"sft", suite_sft},
      {"entropy", suite_entropy},
      {"goodred", suite_goodred},
      {"sphereswap", suite_sphereswap},
      {"escape", suite_escape},
      {"taylor", suite_taylor},
      {"decomposition", suite_decomposition},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

VerdictReport run_suite(const std::string& name, const VerifyOptions& options) {
  for (const auto& [suite_name, fn] : registry()) {
    if (suite_name != name) continue;
    auto start = std::chrono::steady_clock::now();
    VerdictReport report = fn(options);
    auto stop = std::chrono::steady_clock::now();
    report.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    return report;
  }
  throw InvalidInput("unknown suite: " + name);
}

std::vector<VerdictReport> run_all_suites(const VerifyOptions& options) {
  std::vector<VerdictReport> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, options));
  return out;
}

}  // namespace padicdyn
