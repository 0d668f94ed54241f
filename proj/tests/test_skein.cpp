#include <gtest/gtest.h>

#include <random>

#include "kirbycalc/error.hpp"
#include "kirbycalc/skein.hpp"
#include "support/oracles.hpp"

using namespace kirbycalc;

namespace {

const Complex kGenericA = std::polar(1.0, 0.37);

void expect_near(Complex got, Complex want, double tol = 1e-9) {
  EXPECT_LT(std::abs(got - want), tol * std::max(1.0, std::abs(want))) << format_complex(got) << " vs "
                                                                       << format_complex(want);
}

std::vector<int> random_braid(std::mt19937_64& rng, int strands, int length) {
  std::vector<int> w;
  for (int i = 0; i < length; ++i) {
    int g = std::uniform_int_distribution<int>(1, strands - 1)(rng);
    w.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? g : -g);
  }
  return w;
}

}  // namespace

TEST(TemperleyLieb, GeneratorRelations) {
  const Complex delta = loop_value(kGenericA);
  auto e1 = tl_generator(3, 1);
  auto e2 = tl_generator(3, 2);
  EXPECT_TRUE(tl_approx_equal(tl_compose(e1, e1, 3, delta), tl_add({}, e1, delta)));
  EXPECT_TRUE(tl_approx_equal(tl_compose(tl_compose(e1, e2, 3, delta), e1, 3, delta), e1));
  EXPECT_TRUE(tl_approx_equal(tl_compose(tl_identity(3), e2, 3, delta), e2));
}

TEST(TemperleyLieb, TraceOfIdentityIsLoopPower) {
  const Complex delta = loop_value(kGenericA);
  expect_near(tl_trace(tl_identity(3), 3, delta), delta * delta * delta);
  expect_near(tl_trace(tl_generator(2, 1), 2, delta), delta);
}

TEST(JonesWenzl, IdempotentAndKilledByCups) {
  const Complex delta = loop_value(kGenericA);
  for (int n = 1; n <= 4; ++n) {
    auto p = jones_wenzl(n, kGenericA);
    EXPECT_TRUE(tl_approx_equal(tl_compose(p, p, n, delta), p, 1e-9)) << "n=" << n;
    for (int i = 1; i < n; ++i) {
      auto killed = tl_compose(p, tl_generator(n, i), n, delta);
      EXPECT_TRUE(tl_approx_equal(killed, {}, 1e-9)) << "n=" << n << " i=" << i;
    }
  }
}

TEST(JonesWenzl, TraceIsQuantumDimension) {
  for (int r = 4; r <= 7; ++r) {
    const Complex a = std::polar(1.0, kPi / (2.0 * r));
    for (int n = 0; n <= r - 2; ++n) {
      expect_near(tl_trace(jones_wenzl(n, a), n, loop_value(a)), oracle::tl_dim(r, n));
    }
  }
}

TEST(JonesWenzl, UndefinedPastTheRootOfUnity) {
  const Complex a = std::polar(1.0, kPi / 8.0);  // r = 4
  EXPECT_THROW(jones_wenzl(4, a), Error);
}

TEST(Bracket, EmptyAndUnknot) {
  PlanarCode empty;
  expect_near(kauffman_bracket({empty, {}}, kGenericA), 1.0);
  PlanarCode unknot;
  unknot.crossingless = {"u"};
  expect_near(kauffman_bracket({unknot, {}}, kGenericA), loop_value(kGenericA));
}

TEST(Bracket, KinkGivesTwistFactor) {
  const Complex a = kGenericA;
  const Complex delta = loop_value(a);
  expect_near(kauffman_bracket({kink_code("u", 1), {}}, a), -a * a * a * delta);
  expect_near(kauffman_bracket({kink_code("u", -1), {}}, a), -1.0 / (a * a * a) * delta);
}

TEST(Bracket, MatchesNaiveOnBraidClosures) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int strands = std::uniform_int_distribution<int>(2, 4)(rng);
    const int length = std::uniform_int_distribution<int>(1, 8)(rng);
    PlanarCode pd = oracle::braid_closure(strands, random_braid(rng, strands, length));
    validate_planar_code(pd);
    expect_near(kauffman_bracket({pd, {}}, kGenericA), oracle::naive_bracket(pd, kGenericA));
  }
}

TEST(Bracket, MatchesNaiveOnRandomNetworks) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    PlanarCode pd = oracle::random_network(rng, std::uniform_int_distribution<int>(1, 8)(rng));
    expect_near(kauffman_bracket({pd, {}}, kGenericA), oracle::naive_bracket(pd, kGenericA));
  }
}

TEST(Bracket, TrefoilJonesPolynomial) {
  const Complex a = kGenericA;
  PlanarCode trefoil = oracle::braid_closure(2, {1, 1, 1});
  const Complex f = std::pow(-a * a * a, -3) * kauffman_bracket({trefoil, {}}, a) / loop_value(a);
  const Complex t = std::pow(a, -4);
  expect_near(f, t + t * t * t - t * t * t * t);
}

TEST(Bracket, MarkovStabilisation) {
  std::mt19937_64 rng(3);
  const Complex a = kGenericA;
  for (int trial = 0; trial < 10; ++trial) {
    auto word = random_braid(rng, 3, 5);
    const Complex base = kauffman_bracket({oracle::braid_closure(3, word), {}}, a);
    for (int sign : {1, -1}) {
      auto longer = word;
      longer.push_back(3 * sign);
      const Complex stabilised = kauffman_bracket({oracle::braid_closure(4, longer), {}}, a);
      expect_near(stabilised, -std::pow(a, 3 * sign) * base);
    }
  }
}

TEST(Bracket, CabledHopfMatchesClosedForm) {
  for (int r = 4; r <= 6; ++r) {
    const Complex a = std::polar(1.0, kPi / (2.0 * r));
    for (int i = 0; i <= r - 2; ++i) {
      for (int k = 0; k <= r - 2; ++k) {
        SkeinDiagram s{hopf_code("a", "b"), {{"a", i}, {"b", k}}};
        expect_near(kauffman_bracket(s, a, -1), oracle::tl_hopf(r, i, k), 1e-8);
      }
    }
  }
}

TEST(Bracket, CabledKinkGivesTwist) {
  const int r = 5;
  const Complex a = std::polar(1.0, kPi / (2.0 * r));
  for (int i = 0; i <= r - 2; ++i) {
    SkeinDiagram s{kink_code("u", 1), {{"u", i}}};
    expect_near(kauffman_bracket(s, a, -1), oracle::tl_twist(r, i) * oracle::tl_dim(r, i), 1e-8);
  }
}

TEST(Bracket, ZeroWidthDeletesComponent) {
  SkeinDiagram s{hopf_code("a", "b"), {{"a", 0}}};
  expect_near(kauffman_bracket(s, kGenericA), loop_value(kGenericA));
}

TEST(Bracket, CrossingCap) {
  SkeinDiagram s{hopf_code("a", "b"), {{"a", 3}, {"b", 3}}};
  EXPECT_EQ(s.cabled_crossings(), 18);
  try {
    kauffman_bracket(s, kGenericA, 17);
    FAIL() << "expected ResourceLimit";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResourceLimit);
  }
  EXPECT_NO_THROW(kauffman_bracket(s, kGenericA, 18));
}
