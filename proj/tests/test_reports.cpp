#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padicdyn/verify.hpp"

using namespace padicdyn;

TEST_CASE("scalar JSON: shape, sentinel, round trip") {
  PadicScalar x = PadicScalar::from_rational(Rational(24, 25), 5, 6);
  Json j = to_json(x);
  CHECK(j["p"] == 5);
  CHECK(j["valuation"] == -2);
  CHECK(j["precision"] == 6);
  CHECK(j["digits"].size() == 6);
  CHECK(scalar_from_json(j) == x);

  Json z = to_json(PadicScalar::zero(3, 4));
  CHECK(z["valuation"] == "inf");
  CHECK(z["digits"].empty());
  CHECK(scalar_from_json(z).is_zero());

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> val(-5, 5);
  for (int i = 0; i < 100; ++i) {
    PadicScalar s = random_scalar_with_valuation(rng, 7, val(rng), 9);
    CHECK(scalar_from_json(to_json(s)) == s);
  }
}

TEST_CASE("point, disk, word and report JSON shapes") {
  CHECK(to_json(ProjPoint::infinity(5)) == Json{{"inf", true}});
  PDisk d(ProjPoint::finite(PadicScalar::from_rational(Rational(1, 5), 5, 4)),
          -1, DiskKind::Standard);
  Json dj = to_json(d);
  CHECK(dj["kind"] == "standard");
  CHECK(dj["radius_exponent"] == -1);

  CHECK(to_json(Word(2, {1, 2, 1})) == Json::array({1, 2, 1}));
  Json aj = to_json(transition_matrix4());
  CHECK(aj[3] == Json::array({1, 1, 0, 1}));

  MapParams params(5, Rational(-25));
  Json cj = to_json(classify_detail(params), params);
  CHECK(cj["regime"] == "ChaoticSFT");
  CHECK(cj["reasons"]["vp_a"] == 2);

  Json ej = to_json(escape_test(params, ProjPoint::infinity(5), 4));
  CHECK(ej["kind"] == "EscapesToInfinity");

  DecompositionReport rep = decompose_report(MapParams(3, Rational(1)), 2, 0, 0);
  Json rj = to_json(rep);
  CHECK(rj["regime"] == "GoodReduction");
  CHECK(rj["levels"].size() == 2);
  CHECK(rj["chains"].is_array());
  CHECK(rj.contains("transients"));
}

TEST_CASE("verify harness: suites pass with default options") {
  VerifyOptions quick;
  quick.samples = 200;
  quick.pairs = 50;
  for (const std::string& name :
       {"classification", "entropy", "escape", "sphereswap", "taylor"}) {
    VerdictReport r = run_suite(name, quick);
    CHECK(r.suite == name);
    CHECK(r.cases > 0);
    CHECK(r.failures == 0);
    CHECK(r.witnesses.empty());
  }
  CHECK_THROWS_AS(run_suite("nonsense", quick), InvalidInput);
}

TEST_CASE("verify harness: injected fault is caught with a witness") {
  VerifyOptions quick;
  quick.samples = 300;
  VerdictReport clean = run_suite("sft", quick);
  CHECK(clean.failures == 0);

  quick.inject_fault = true;
  VerdictReport broken = run_suite("sft", quick);
  CHECK(broken.failures > 0);
  CHECK(!broken.witnesses.empty());
  CHECK(broken.witnesses.front().find("1 -> 3") != std::string::npos);
}

TEST_CASE("suite registry covers the acceptance criteria") {
  CHECK(suite_names().size() == 10);
}
