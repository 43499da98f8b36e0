#include <random>

#include "doctest.h"
#include "klab/kottwitz.hpp"
#include "parameters.hpp"

using namespace klab;

namespace {

KottwitzParameter zero_parameter(const AmbientPtr& a) {
  KottwitzParameter c;
  c.ambient = a;
  c.beta_p = IntVector(a->pi1_I.rank(), Int(0));
  c.beta_infinity = IntVector(a->pi1_I.rank(), Int(0));
  return c;
}

RationalMatrix companion(long a, long d) { return {{Rational(0), Rational(-d)}, {Rational(1), Rational(a)}}; }

}  // namespace

TEST_CASE("KP0") {
  auto gl2 = presets::ambient_gl2();
  KottwitzParameter c = zero_parameter(gl2);
  c.beta_p = {Int(0), Int(-1)};
  CHECK(check_kp0(c));
  CHECK_FALSE(check_kp0(zero_parameter(gl2)));
  auto trivial_mu = gl2->with_mu({Int(0), Int(0)});
  CHECK(check_kp0(zero_parameter(trivial_mu)));
  CHECK_THROWS_WITH(kottwitz_invariant(zero_parameter(gl2)), "parameter violates KP0");
}

TEST_CASE("KP1 norm criterion for GL_2") {
  const long p = 5;
  IsocInvariants ordinary{{Rational(1), Rational(0)}, 1};
  IsocInvariants basic{{Rational(1, 2), Rational(1, 2)}, 1};
  CHECK(check_kp1_gl(companion(3, p), ordinary, 1, p));
  CHECK_FALSE(check_kp1_gl(companion(3, p), basic, 1, p));
  // p * I has slopes (1, 1) so no element with nu = (1/2, 1/2) has it as a norm.
  RationalMatrix central{{Rational(p), Rational(0)}, {Rational(0), Rational(p)}};
  CHECK_FALSE(check_kp1_gl(central, basic, 1, p));
  CHECK(check_kp1_gl(central, IsocInvariants{{Rational(1), Rational(1)}, 2}, 1, p));
  CHECK(check_kp1_gl(central, IsocInvariants{{Rational(1, 2), Rational(1, 2)}, 1}, 2, p));
  // Supersingular: x^2 + p^2 over n = 2.
  CHECK(check_kp1_gl(companion(0, p * p), basic, 2, p));
}

TEST_CASE("KP1 is invariant under sigma conjugation of b") {
  std::mt19937_64 rng(3);
  auto ctx = make_padic_context(5, 2);
  auto b = decent_representative(ctx, {Rational(1, 2), Rational(1, 2)});
  auto g = PadicMatrix::from_integers(ctx, IntMatrix{{1, 2}, {3, 7}});
  auto c = sigma_conjugate(b, g);
  RationalMatrix gamma0 = companion(0, 25);
  CHECK(check_kp1_gl(gamma0, isocrystal_invariants(b), 2, 5) == check_kp1_gl(gamma0, isocrystal_invariants(c), 2, 5));
}

TEST_CASE("rational characteristic polynomial") {
  RationalMatrix m{{Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
  auto cp = rational_charpoly(m);
  CHECK(cp[0] == -2);
  CHECK(cp[1] == -5);
  CHECK(cp[2] == 1);
}

TEST_CASE("kottwitz invariant examples") {
  auto gl2 = presets::ambient_gl2();
  KottwitzParameter c = zero_parameter(gl2);
  c.beta_p = {Int(3), Int(-4)};
  c.beta_infinity = {Int(1), Int(0)};
  CHECK(kottwitz_invariant_is_zero(c));
  CHECK(fourier_sum(c) == 1);
  CHECK(fourier_sum(c, -1) == -1);

  auto sl2 = presets::ambient_sl2();
  KottwitzParameter s = zero_parameter(sl2);
  CHECK(kottwitz_invariant_is_zero(s));
  CHECK(fourier_sum(s) == 2);
  s.beta_infinity = {Int(1)};
  CHECK_FALSE(kottwitz_invariant_is_zero(s));
  CHECK(kottwitz_invariant(s) == IntVector{Int(1)});
  CHECK(fourier_sum(s) == 0);
}

TEST_CASE("beta at infinity from mu") {
  auto gl2 = presets::ambient_gl2();
  CHECK(beta_infinity_from_mu(*gl2, {Int(1), Int(0)}) == IntVector{Int(1)});
  CHECK(beta_infinity_from_mu(*gl2, {Int(0), Int(0)}) == IntVector{Int(0)});
  auto sl2 = presets::ambient_sl2();
  CHECK(beta_infinity_from_mu(*sl2, {Int(1)}) == IntVector{Int(1)});
  CHECK(beta_infinity_from_mu(*sl2, {Int(2)}) == IntVector{Int(0)});
}

TEST_CASE("invalid beta data") {
  auto sl2 = presets::ambient_sl2("inert");
  KottwitzParameter c = zero_parameter(sl2);
  c.beta_finite["f0"] = {Int(1)};
  CHECK_THROWS_WITH(kottwitz_invariant(c), "beta at f0 is not in the local torsion group");
  c.beta_finite.clear();
  c.beta_finite["nowhere"] = {Int(1)};
  CHECK_THROWS(kottwitz_invariant(c));
}

TEST_CASE("invariant agrees with the closed form and is lift independent") {
  std::mt19937_64 rng(5);
  auto ambs = parameters::ambients();
  for (std::size_t i = 0; i < 200; ++i) {
    auto g = parameters::random_parameter(rng, ambs[i % ambs.size()], i);
    IntVector alpha = kottwitz_invariant(g.param);
    CHECK(kottwitz_invariant_is_zero(g.param) == g.alpha_zero);
    for (int t = 0; t < 10; ++t) CHECK(kottwitz_invariant(g.param, &rng) == alpha);
    Int k = g.param.ambient->k.k_group().order();
    CHECK(fourier_sum(g.param) == (g.alpha_zero ? k : Int(0)));
  }
}

TEST_CASE("invariant is additive on the SL_2 ambient") {
  auto sl2 = presets::ambient_sl2();
  const auto& e = sl2->k.e.e;
  for (long a = 0; a < 3; ++a)
    for (long b = 0; b < 3; ++b)
      for (long f = 0; f < 2; ++f) {
        KottwitzParameter x = zero_parameter(sl2), y = zero_parameter(sl2);
        x.beta_infinity = {Int(a)};
        x.beta_p = {Int(b)};
        y.beta_finite["f1"] = {Int(f)};
        y.beta_infinity = {Int(b + f)};
        auto sum = add_parameters(x, y);
        auto alpha = [&](const KottwitzParameter& c) { return e.from_canonical(kottwitz_invariant(c)); };
        CHECK(e.equal(alpha(sum), e.add(alpha(x), alpha(y))));
      }
}

TEST_CASE("cyclotomic sums") {
  CHECK(cyclotomic_sum({Int(4)}) == 4);
  CHECK(cyclotomic_sum({Int(2), Int(2)}) == 0);
  CHECK(cyclotomic_sum({Int(1), Int(1), Int(1), Int(1), Int(1), Int(1)}) == 0);
  CHECK(cyclotomic_sum({Int(3), Int(0), Int(0)}) == 3);
  CHECK_THROWS(cyclotomic_sum({Int(1), Int(1), Int(0)}));
}

TEST_CASE("parameter text format round trip") {
  const char* text = R"(param toy
ambient sl2-split
beta inf 1   # nonzero class at infinity
beta p 0
end
param ordinary
ambient gl2-inert
mu 1 0
gamma0 x^2 - 3x + 5
beta p 2 -3
beta inf 0 1
end
)";
  auto ps = parse_parameters(text);
  REQUIRE(ps.size() == 2);
  CHECK_FALSE(kottwitz_invariant_is_zero(ps[0]));
  CHECK(kottwitz_invariant_is_zero(ps[1]));
  CHECK(ps[1].gamma0 == "x^2 - 3x + 5");
  auto again = parse_parameters(serialize_parameters(ps));
  REQUIRE(again.size() == 2);
  CHECK(again[1].beta_p == ps[1].beta_p);
  CHECK(kottwitz_invariant(again[0]) == kottwitz_invariant(ps[0]));
  CHECK_THROWS(parse_parameters("param x\nambient gl2\nbeta p 1\nend\n"));
  CHECK_THROWS(parse_parameters("param x\nambient gl2\n"));
}
