#include <doctest.h>

#include "mumford/pgl2.hpp"
#include "util.hpp"

using namespace mumford;
using mumford::testutil::random_invertible;

static MoebiusElement mk(long p, std::vector<std::vector<mpq_class>> rows) {
  return MoebiusElement(PadicMatrix::from_rows(p, rows));
}

TEST_CASE("dynamical classification") {
  long p = 5;
  auto c1 = classify(MoebiusElement::diag(p, 5, 1));
  CHECK(c1.kind == ElementClass::Hyperbolic);
  CHECK(c1.translation_length == 1);

  auto c2 = classify(mk(3, {{18, 0}, {0, 1}}));
  CHECK(c2.kind == ElementClass::Hyperbolic);
  CHECK(c2.translation_length == 2);

  CHECK(classify(mk(p, {{1, 1}, {0, 1}})).kind == ElementClass::Parabolic);
  CHECK(classify(mk(p, {{0, 1}, {1, 0}})).kind ==
        ElementClass::EllipticOrFiniteOrder);
}

TEST_CASE("classification is conjugation invariant") {
  std::mt19937 rng(21);
  for (long p : {2L, 5L}) {
    std::vector<MoebiusElement> samples = {
        MoebiusElement::diag(p, p, 1), mk(p, {{1, 1}, {0, 1}}),
        mk(p, {{0, 1}, {1, 0}}), mk(p, {{mpq_class(p) * p, 1}, {0, 1}})};
    for (int i = 0; i < 60; ++i) {
      MoebiusElement h(random_invertible(rng, p, 2));
      for (const auto& g : samples) {
        auto a = classify(g);
        auto b = classify(h * g * h.inverse());
        CHECK(a.kind == b.kind);
        CHECK(a.translation_length == b.translation_length);
      }
    }
  }
}

TEST_CASE("fixed points of hyperbolic elements") {
  long p = 5;
  auto [att, rep] = fixed_points(MoebiusElement::diag(p, 5, 1));
  // eigenvalue 1 acts on (0:1) and attracts since |1| > |5|
  CHECK(proj_equal(att, {PadicScalar(p, 0), PadicScalar(p, 1)}));
  CHECK(proj_equal(rep, {PadicScalar(p, 1), PadicScalar(p, 0)}));

  // char poly X^2 - (p+2)X + 1 has equal Newton slopes: not hyperbolic
  CHECK_THROWS_WITH_AS(fixed_points(mk(p, {{p + 1, p}, {1, 1}})),
                       doctest::Contains("NotHyperbolic"), DomainError);
  CHECK_THROWS_WITH_AS(fixed_points(mk(p, {{1, 1}, {0, 1}})),
                       doctest::Contains("NotHyperbolic"), DomainError);
}

TEST_CASE("fixed points are genuinely fixed") {
  std::mt19937 rng(22);
  for (long p : {3L, 5L}) {
    for (int i = 0; i < 40; ++i) {
      MoebiusElement h(random_invertible(rng, p, 2));
      MoebiusElement g = h * MoebiusElement::diag(p, p, 1) * h.inverse();
      auto [att, rep] = fixed_points(g);
      CHECK(proj_equal(g.apply(att), att));
      CHECK(proj_equal(g.apply(rep), rep));
      CHECK_FALSE(proj_equal(att, rep));
    }
  }
}

TEST_CASE("tate group generator") {
  auto g = tate_group(PadicScalar(5, 5));
  REQUIRE(g.size() == 1);
  CHECK(g[0].proj_equals(MoebiusElement::diag(5, 5, 1)));
  CHECK(classify(g[0]).kind == ElementClass::Hyperbolic);
  CHECK(classify(g[0]).translation_length == 1);

  CHECK_THROWS_WITH_AS(tate_group(PadicScalar(5, mpq_class(1, 5))),
                       doctest::Contains("BadMultiplier"), DomainError);
  CHECK_THROWS_WITH_AS(tate_group(PadicScalar(5, 0)),
                       doctest::Contains("BadMultiplier"), DomainError);

  auto g3 = tate_group(PadicScalar(3, 18));
  CHECK(classify(g3[0]).translation_length == 2);
}

TEST_CASE("whittaker group from involutions") {
  long p = 5;
  MoebiusElement s0 = mk(p, {{0, 1}, {1, 0}});
  MoebiusElement s1 = mk(p, {{0, p}, {1, 0}});
  auto gens = whittaker_group({s0, s1});
  REQUIRE(gens.size() == 1);
  CHECK(gens[0].proj_equals(MoebiusElement::diag(p, p, 1)));

  CHECK_THROWS_WITH_AS(whittaker_group({s0, mk(p, {{1, 1}, {0, 1}})}),
                       doctest::Contains("NotInvolution"), DomainError);

  // g = 2: three trace-zero involutions give two products
  MoebiusElement s2 = mk(p, {{1, 2}, {3, -1}});
  CHECK(s2.matrix().trace() == 0);
  auto gens2 = whittaker_group({s0, s1, s2});
  REQUIRE(gens2.size() == 2);
  CHECK(gens2[0].proj_equals(s1 * s0));
  CHECK(gens2[1].proj_equals(s2 * s0));
}

TEST_CASE("ball images under Moebius maps") {
  long p = 5;
  PadicBall b01{PadicScalar(p, 0), 1, false, true};
  // translation is an isometry
  PadicBall t = ball_image(mk(p, {{1, 1}, {0, 1}}), b01);
  CHECK(t.center == PadicScalar(p, 1));
  CHECK(t.radius_exp == 1);
  CHECK_FALSE(t.complement);
  // scaling by p shrinks by one exponent
  PadicBall s = ball_image(MoebiusElement::diag(p, p, 1),
                           PadicBall{PadicScalar(p, 0), 0, false, true});
  CHECK(s.center == PadicScalar(p, 0));
  CHECK(s.radius_exp == 1);
  // inversion fixes the unit sphere around 1
  PadicBall inv = ball_image(mk(p, {{0, 1}, {1, 0}}),
                             PadicBall{PadicScalar(p, 1), 1, false, true});
  CHECK(inv.center == PadicScalar(p, 1));
  CHECK(inv.radius_exp == 1);
  // pole inside is rejected
  CHECK_THROWS_WITH_AS(ball_image(mk(p, {{0, 1}, {1, 0}}),
                                  PadicBall{PadicScalar(p, 0), 0, false, true}),
                       doctest::Contains("PoleInBall"), DomainError);
}

TEST_CASE("region calculus: complement, membership, image") {
  std::mt19937 rng(23);
  long p = 3;
  std::uniform_int_distribution<int> re(-2, 2);
  for (int i = 0; i < 300; ++i) {
    PadicBall b{PadicScalar(p, testutil::random_rational(rng, p)), re(rng),
                re(rng) > 0, re(rng) <= 0};
    PadicBall cc = ball_complement(ball_complement(b));
    CHECK(cc.center == b.center);
    CHECK(cc.radius_exp == b.radius_exp);
    CHECK(cc.complement == b.complement);
    CHECK(cc.closed == b.closed);
    // a rational point lies in exactly one of b, complement(b)
    PadicScalar z(p, testutil::random_rational(rng, p));
    CHECK(ball_member(b, z) != ball_member(ball_complement(b), z));
    // Moebius images preserve membership
    MoebiusElement g(random_invertible(rng, p, 2));
    bool pole_is_z = g.matrix().at(1, 0) != 0 &&
                     (g.matrix().scalar_at(1, 0) * z +
                      g.matrix().scalar_at(1, 1)).is_zero();
    if (!pole_is_z) {
      PadicBall img = region_image(g, b);
      CHECK(ball_member(img, g.apply_affine(z)) == ball_member(b, z));
    }
  }
}

TEST_CASE("ball images compose") {
  std::mt19937 rng(24);
  long p = 5;
  std::uniform_int_distribution<int> re(-1, 2);
  for (int i = 0; i < 200; ++i) {
    MoebiusElement g(random_invertible(rng, p, 2)),
        h(random_invertible(rng, p, 2));
    PadicBall b{PadicScalar(p, testutil::random_rational(rng, p)), re(rng),
                false, true};
    PadicBall lhs = region_image(g * h, b);
    PadicBall rhs = region_image(g, region_image(h, b));
    CHECK(lhs.complement == rhs.complement);
    CHECK(lhs.closed == rhs.closed);
    CHECK(lhs.radius_exp == rhs.radius_exp);
    // centers agree as sets: each contains the other
    CHECK(ball_subset(lhs, rhs));
    CHECK(ball_subset(rhs, lhs));
  }
}

TEST_CASE("schottky ping-pong certification") {
  long p = 5;
  MoebiusElement g1 = MoebiusElement::diag(p, mpq_class(p) * p, 1);
  PadicBall b1p{PadicScalar(p, 0), 1, false, true};   // {|z| <= 1/p}
  PadicBall b1m{PadicScalar(p, 0), -1, true, true};   // {|z| >= p}
  auto v1 = schottky_ball_check({g1}, {{b1m, b1p}});
  CHECK(v1.good);

  // conjugate generator with domains around 1 and 2
  MoebiusElement m = mk(p, {{2, 1}, {1, 1}});
  MoebiusElement g2 = m * g1 * m.inverse();
  PadicBall b2p = region_image(m, b1p);
  PadicBall b2m = region_image(m, b1m);
  auto v2 = schottky_ball_check({g1, g2}, {{b1m, b1p}, {b2m, b2p}});
  CHECK(v2.good);

  // the identity moves nothing into a proper ball
  MoebiusElement id = MoebiusElement::diag(p, 1, 1);
  auto v3 = schottky_ball_check({id}, {{b1m, b1p}});
  CHECK_FALSE(v3.good);
  CHECK(v3.detail.find("generator 0") != std::string::npos);

  // overlapping balls are rejected outright
  CHECK_THROWS_WITH_AS(
      schottky_ball_check({g1}, {{PadicBall{PadicScalar(p, 0), 0, false, true},
                                  PadicBall{PadicScalar(p, 0), 1, false, true}}}),
      doctest::Contains("BallsNotDisjoint"), DomainError);
}

TEST_CASE("schottky violation for a too-weak generator") {
  long p = 5;
  // diag(p,1) does not push {|z| <= 1} inside {|z| <= 1/p^2}
  MoebiusElement g = MoebiusElement::diag(p, p, 1);
  PadicBall bp{PadicScalar(p, 0), 2, false, true};
  PadicBall bm{PadicScalar(p, 0), -1, true, true};
  auto v = schottky_ball_check({g}, {{bm, bp}});
  CHECK_FALSE(v.good);
}
