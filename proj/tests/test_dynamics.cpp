#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padicdyn/dynamics.hpp"

using namespace padicdyn;

namespace {

ProjPoint pt(const Rational& q, const MapParams& params) {
  return ProjPoint::finite(
      PadicScalar::from_rational(q, params.p, params.precision));
}

}  // namespace

TEST_CASE("apply: poles, zeros and plain evaluation") {
  MapParams chaotic(5, Rational(-25));
  ProjPoint image = apply(chaotic, pt(Rational(1, 5), chaotic));
  CHECK(!image.is_infinity());
  CHECK(image.value().is_zero());  // x = 1/sqrt(-a) is a zero of phi
  CHECK(apply(chaotic, image).is_infinity());
  CHECK(apply(chaotic, ProjPoint::infinity(5)).is_infinity());
  CHECK(apply(chaotic, pt(Rational(0), chaotic)).is_infinity());

  MapParams unit_map(3, Rational(1));
  ProjPoint two = apply(unit_map, pt(Rational(1), unit_map));
  CHECK(two.value().agrees_with(
      PadicScalar::from_rational(Rational(2), 3, unit_map.precision)));
}

TEST_CASE("orbit: growth, sticking at infinity, exact-mode agreement") {
  MapParams escape(3, Rational(1, 3));
  auto path = orbit(escape, pt(Rational(1), escape), 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(path[k + 1].value().valuation() ==
          path[k].value().valuation() - 1);  // |phi(x)| = 3|x|
  }
  auto exact = orbit_exact(escape, Rational(1), 3);
  for (int k = 0; k <= 3; ++k) {
    CHECK(path[k].value().agrees_with(PadicScalar::from_rational(
        *exact[k], 3, escape.precision)));
  }

  auto constant = orbit(escape, ProjPoint::infinity(3), 5);
  for (const auto& q : constant) CHECK(q.is_infinity());

  MapParams chaotic(5, Rational(-25));
  auto hit = orbit(chaotic, pt(Rational(1, 5), chaotic), 2);
  CHECK(hit[1].value().is_zero());
  CHECK(hit[2].is_infinity());
}

TEST_CASE("classify: canonical table and detail evidence") {
  CHECK(classify(MapParams(3, Rational(1, 3))) == Regime::EscapeAll);
  CHECK(classify(MapParams(5, Rational(1, 25))) == Regime::FullShiftTwo);
  CHECK(classify(MapParams(5, Rational(-25))) == Regime::ChaoticSFT);
  CHECK(classify(MapParams(3, Rational(9))) == Regime::MinimalOffOrigin);
  CHECK(classify(MapParams(7, Rational(3))) == Regime::GoodReduction);
  CHECK(classify(MapParams(3, Rational(1))) == Regime::GoodReduction);

  ClassificationDetail d = classify_detail(MapParams(3, Rational(1, 3)));
  CHECK(d.vp_a == -1);
  CHECK(*d.tested == "1-a");
  CHECK(!*d.valuation_even);  // v_3(2/3) = -1

  ClassificationDetail c = classify_detail(MapParams(5, Rational(1, 25)));
  CHECK(*c.valuation_even);
  CHECK(*c.unit_is_qr);  // 24 = 4 mod 5 is a QR

  CHECK_THROWS_AS(MapParams(3, Rational(0)), InvalidInput);
  CHECK_THROWS_AS(MapParams(2, Rational(1)), InvalidInput);
}

TEST_CASE("fixed points: infinity always, finite pair when 1-a is square") {
  MapParams fs(5, Rational(1, 25));
  auto fps = fixed_points(fs);
  REQUIRE(fps.size() == 3);
  CHECK(fps[0].point.is_infinity());
  CHECK(fps[0].multiplier.agrees_with(
      PadicScalar::from_rational(Rational(25), 5, fs.precision)));
  // 1/a = 25, |25|_5 = 1/25 < 1: infinity is attracting in this regime
  CHECK(fps[0].cls == MultiplierClass::Attracting);

  for (int i : {1, 2}) {
    // x^2 = 1/(1-a) = 25/24 and multiplier 2a - 1 = -23/25, |.|_5 = 25
    CHECK(mul(fps[i].point.value(), fps[i].point.value())
              .agrees_with(PadicScalar::from_rational(Rational(25, 24), 5,
                                                      fs.precision)));
    CHECK(fps[i].multiplier.agrees_with(
        PadicScalar::from_rational(Rational(-23, 25), 5, fs.precision)));
    CHECK(fps[i].cls == MultiplierClass::Repelling);
    ProjPoint back = apply(fs, fps[i].point);
    CHECK(back.value().agrees_with(fps[i].point.value()));
  }

  // (5, -25): infinity has multiplier -1/25, |.|_5 = 25: repelling
  auto chaotic = fixed_points(MapParams(5, Rational(-25)));
  CHECK(chaotic[0].cls == MultiplierClass::Repelling);

  // (3, 1/3): 1 - a = 2/3 is not a square, only infinity remains
  CHECK(fixed_points(MapParams(3, Rational(1, 3))).size() == 1);

  // a = 1 degenerates the finite formula
  CHECK(fixed_points(MapParams(3, Rational(1))).size() == 1);

  // a = 1/2: finite fixed points are superattracting (2a - 1 = 0)
  auto super = fixed_points(MapParams(7, Rational(1, 2)));
  REQUIRE(super.size() == 3);
  CHECK(super[1].cls == MultiplierClass::SuperAttracting);
  CHECK(super[1].multiplier.is_zero());
}

TEST_CASE("infinity multiplier classification matches the regime") {
  for (const auto& [p, a] : std::vector<std::pair<std::int64_t, Rational>>{
           {3, Rational(1, 3)}, {5, Rational(1, 25)}, {5, Rational(-25)},
           {3, Rational(9)}, {7, Rational(3)}}) {
    MapParams params(p, a);
    auto fps = fixed_points(params);
    std::int64_t v = *vp(a, p);
    if (v < 0) CHECK(fps[0].cls == MultiplierClass::Attracting);
    if (v == 0) CHECK(fps[0].cls == MultiplierClass::Indifferent);
    if (v > 0) CHECK(fps[0].cls == MultiplierClass::Repelling);
  }
}

TEST_CASE("escape_test certificates") {
  MapParams escape(3, Rational(1, 3));
  EscapeVerdict v1 = escape_test(escape, pt(Rational(1), escape), 8);
  CHECK(v1.kind == EscapeVerdict::Kind::EscapesToInfinity);
  CHECK(v1.step == 0);

  // |x| < 1 in EscapeAll still escapes, certified a step later
  EscapeVerdict v2 = escape_test(escape, pt(Rational(3), escape), 8);
  CHECK(v2.kind == EscapeVerdict::Kind::EscapesToInfinity);
  CHECK(v2.step >= 1);

  MapParams fs(5, Rational(1, 25));
  ProjPoint x1 = fixed_points(fs)[1].point;
  for (int depth : {5, 10, 20}) {
    EscapeVerdict v = escape_test(fs, x1, depth);
    CHECK(v.kind == EscapeVerdict::Kind::InCoreRegion);
    CHECK(v.step == depth);
  }

  MapParams minimal(3, Rational(9));
  EscapeVerdict v3 = escape_test(minimal, pt(Rational(1, 3), minimal), 8);
  CHECK(v3.kind == EscapeVerdict::Kind::InCoreRegion);
  CHECK(v3.sphere_index == 1);
  CHECK(v3.step == 0);
  // phi(1/3) = 6 has |6|_3 = 1/3: the orbit alternates the sphere pair
  CHECK(apply(minimal, pt(Rational(1, 3), minimal)).value().valuation() == 1);

  EscapeVerdict v4 = escape_test(minimal, pt(Rational(27), minimal), 12);
  CHECK(v4.kind == EscapeVerdict::Kind::InCoreRegion);
  CHECK(v4.step > 0);

  // exact infinity hits are certified escapes in every regime
  MapParams chaotic(5, Rational(-25));
  EscapeVerdict v5 = escape_test(chaotic, pt(Rational(1, 5), chaotic), 8);
  CHECK(v5.kind == EscapeVerdict::Kind::EscapesToInfinity);
  CHECK(v5.step == 2);  // 1/5 -> 0 -> inf

  // a region-4 resident never escapes
  EscapeVerdict v6 = escape_test(chaotic, pt(Rational(7), chaotic), 12);
  CHECK(v6.kind == EscapeVerdict::Kind::InCoreRegion);
}

TEST_CASE("taylor coefficients: chain rule and fixed-point derivative") {
  MapParams fs(5, Rational(1, 25));
  // alpha_1 of phi about a fixed point equals phi'(x1) = 2a - 1
  ProjPoint x1 = fixed_points(fs)[1].point;
  TaylorCoeffs t1 = taylor_coeffs(fs, 1, x1.value(), 3);
  CHECK(t1.coefficients[0].agrees_with(
      PadicScalar::from_rational(2 * fs.a - 1, 5, fs.precision)));

  // alpha_1 of phi^2 is the chain-rule product (exact rationals)
  MapParams minimal(3, Rational(9));
  Rational x0(5, 3);
  auto series = taylor_coeffs_exact(minimal, 2, x0, 6);
  Rational fx0 = *apply_exact(minimal, x0);
  Rational expected =
      (minimal.a - 1 / (x0 * x0)) * (minimal.a - 1 / (fx0 * fx0));
  CHECK(series[1] == expected);
  CHECK(series[0] == *apply_exact(minimal, fx0));

  // Newton-polygon bound at x0 = 1/3 (|x0| = 3): |alpha_i| <= 1
  auto bounded = taylor_coeffs_exact(minimal, 2, Rational(1, 3), 8);
  for (int i = 1; i <= 8; ++i) {
    if (bounded[i] == 0) continue;
    CHECK(*vp(bounded[i], 3) >= 0);
  }

  // evaluating the truncated series reproduces phi^2 nearby
  Rational step(81);  // |81|_3 = 3^-4 <= |x0|/3 = 1 for x0 = 1/3
  Rational series_value = 0;
  Rational power = 1;
  for (std::size_t i = 0; i < bounded.size(); ++i) {
    series_value += bounded[i] * power;
    power *= step;
  }
  Rational direct = *apply_exact(minimal, *apply_exact(minimal, Rational(1, 3) + step));
  // remainder terms have v >= 9 * v(step) = 36
  CHECK(*vp(series_value - direct, 3) >= 30);

  // x0 = 1/5 is a pole of phi^2 at (5, -25)
  MapParams chaotic(5, Rational(-25));
  CHECK_THROWS_AS(taylor_coeffs_exact(chaotic, 2, Rational(1, 5), 4),
                  PoleTooClose);
  CHECK_THROWS_AS(taylor_coeffs_exact(chaotic, 2, Rational(1, 5) + 25, 4),
                  PoleTooClose);
  CHECK_THROWS_AS(taylor_coeffs_exact(minimal, 1, Rational(0), 4), PoleTooClose);
  CHECK_THROWS_AS(taylor_coeffs_exact(minimal, 3, Rational(1), 4), InvalidInput);
}

TEST_CASE("normalize_general") {
  auto n1 = normalize_general(Rational(1), Rational(4), 3);
  REQUIRE(n1.has_value());
  CHECK(*n1->conjugacy_exact == Rational(1, 2));

  auto n2 = normalize_general(Rational(1, 25), Rational(24), 5);
  REQUIRE(n2.has_value());
  CHECK(!n2->conjugacy_exact.has_value());
  // (1/sqrt(24))^2 = 1/24
  CHECK(mul(n2->conjugacy_scalar, n2->conjugacy_scalar)
            .agrees_with(PadicScalar::from_rational(Rational(1, 24), 5,
                                                    kDefaultPrecision)));
  // sqrt(24) = 7 mod 25
  CHECK(inv(n2->conjugacy_scalar).unit() % 25 == 7);

  CHECK(!normalize_general(Rational(1), Rational(3), 3).has_value());
  CHECK_THROWS_AS(normalize_general(Rational(1), Rational(0), 3), InvalidInput);

  // the conjugacy actually transports ax + b/x to ax + 1/x:
  // h(psi(h^{-1}(x))) with h(x) = x/sqrt(b), psi(x) = ax + b/x
  Rational a(1, 25), b(24);
  MapParams fs(5, a);
  PadicScalar c = n2->conjugacy_scalar;  // 1/sqrt(b)
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    PadicScalar x = random_scalar_with_valuation(rng, 5, (i % 5) - 2, 32);
    PadicScalar pre = div(x, c);  // h^{-1}(x) = sqrt(b) x
    PadicScalar psi = add(mul(PadicScalar::from_rational(a, 5, 32), pre),
                          div(PadicScalar::from_rational(b, 5, 32), pre));
    PadicScalar lhs = mul(c, psi);  // h(psi(...))
    ProjPoint rhs = apply(fs, ProjPoint::finite(x));
    CHECK(lhs.agrees_with(rhs.value()));
  }
}

TEST_CASE("contraction at the zeros of phi (ChaoticSFT)") {
  // pairs in D(+-1/sqrt(-a), 1/(p sqrt(|a|))) contract by exactly |a|_p
  MapParams params(5, Rational(-25));
  std::mt19937_64 rng(71);
  std::int64_t v = *vp(params.a, params.p);
  std::int64_t radius = v / 2 - 1;  // 1/(p sqrt(|a|)) = p^(v/2 - 1)
  for (const Rational& center : {Rational(1, 5), Rational(-1, 5)}) {
    for (int i = 0; i < 300; ++i) {
      Rational x = random_rational_in_disk(rng, 5, center, radius, 24);
      Rational y = random_rational_in_disk(rng, 5, center, radius, 24);
      if (x == y || x == 0 || y == 0) continue;
      Rational fx = *apply_exact(params, x);
      Rational fy = *apply_exact(params, y);
      CHECK(*vp(fx - fy, 5) == v + *vp(x - y, 5));
    }
  }
}

TEST_CASE("ball stability of phi^2 on core disks (MinimalOffOrigin)") {
  // |phi^2(x) - phi^2(x0)| <= |x - x0| for x in D(x0, |x0|/p)
  MapParams params(3, Rational(9));
  std::mt19937_64 rng(73);
  std::uniform_int_distribution<std::int64_t> body(1, 100000);
  std::uniform_int_distribution<int> sphere(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::int64_t i = sphere(rng);
    std::int64_t u = body(rng);
    while (u % 3 == 0) u = body(rng);
    Rational x0 = Rational(u) * rational_pow(3, -i);  // |x0| = 3^i
    Rational x = random_rational_in_disk(rng, 3, x0, i - 1, 20);
    if (x == x0) continue;
    Rational f2x = *apply_exact(params, *apply_exact(params, x));
    Rational f2x0 = *apply_exact(params, *apply_exact(params, x0));
    if (f2x == f2x0) continue;
    CHECK(*vp(f2x - f2x0, 3) >= *vp(x - x0, 3));
  }
}

TEST_CASE("monotone escape valuations (EscapeAll)") {
  MapParams escape(3, Rational(1, 3));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> val(-6, 0);
  for (int i = 0; i < 100; ++i) {
    PadicScalar x = random_scalar_with_valuation(rng, 3, val(rng), 24);
    ProjPoint y = apply(escape, ProjPoint::finite(x));
    CHECK(y.value().valuation() == x.valuation() - 1);  // v(a) + v(x)
  }
}
