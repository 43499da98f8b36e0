#include <random>
#include <set>

#include "doctest.h"
#include "klab/destabilization.hpp"
#include "klab/rootdata.hpp"
#include "synthetic.hpp"

using namespace klab;

TEST_CASE("fundamental groups of presets") {
  CHECK(pi1(presets::gl(3)).module().describe() == "Z");
  CHECK(pi1(presets::sl(2)).module().describe() == "0");
  CHECK(pi1(presets::sl(4)).module().describe() == "0");
  CHECK(pi1(presets::pgl(2)).module().describe() == "Z/2");
  CHECK(pi1(presets::pgl(3)).module().describe() == "Z/3");
  CHECK(pi1(presets::gsp4()).module().describe() == "Z");
}

TEST_CASE("pi_1 of SL_n -> PGL_n matches an independent quotient") {
  // The isogeny SL_n -> PGL_n on cocharacters is the Cartan matrix (coroots
  // map to coroots); its image in pi_1(PGL_n) is zero and the cokernel of the
  // coroot lattice inside the coweight lattice has order n = det(Cartan).
  for (std::size_t n = 2; n <= 5; ++n) {
    RootDatum s = presets::sl(n), p = presets::pgl(n);
    IntMatrix cartan = s.cartan_matrix();
    CHECK(abs(cartan.determinant()) == Int(static_cast<long>(n)));
    CHECK(pi1(p).module().order() == Int(static_cast<long>(n)));
    AbHom f(pi1(s).module(), pi1(p).module(), cartan.transpose());
    CHECK(f.is_zero());
  }
}

TEST_CASE("component groups and Tamagawa numbers") {
  CHECK(component_group_of_center_dual(presets::gl(2)).is_trivial());
  CHECK(component_group_of_center_dual(presets::norm_one_torus()).order() == 2);
  CHECK(component_group_of_center_dual(presets::pgl(2)).order() == 2);
  CHECK(tamagawa_number(presets::sl(2)) == 1);
  CHECK(tamagawa_number(presets::gl(2)) == 1);
  CHECK(tamagawa_number(presets::norm_one_torus()) == 2);
  CHECK(tamagawa_number(presets::induced_torus()) == 1);
  CHECK(tamagawa_number(presets::pgl(3)) == 3);
  RootDatum uncertified("custom", 1, {}, {}, {}, GaloisModule::lattice(FiniteGroup(), 1, {}), false);
  CHECK_THROWS_WITH(tamagawa_number(uncertified), "ker¹ not certified trivial");
}

TEST_CASE("Weyl group orders") {
  CHECK(weyl_group(presets::gl(3)).size() == 6);
  CHECK(weyl_group(presets::gsp4()).size() == 8);
  CHECK(weyl_group(presets::sl(2)).size() == 2);
}

TEST_CASE("elliptic endoscopy of SL_2, GL_2 and GSp_4") {
  auto sl2 = enumerate_elliptic_endoscopy(presets::sl(2), 4);
  REQUIRE(sl2.size() == 2);
  CHECK(sl2[0].out_order == 1);
  CHECK(sl2[1].out_order == 2);
  CHECK(sl2[1].h.roots().empty());
  CHECK(iota(presets::sl(2), sl2[0]) == 1);
  CHECK(iota(presets::sl(2), sl2[1]) == Rational(1, 4));
  auto gl2 = enumerate_elliptic_endoscopy(presets::gl(2), 4);
  REQUIRE(gl2.size() == 1);
  CHECK(iota(presets::gl(2), gl2[0]) == 1);
  CHECK(enumerate_elliptic_endoscopy(presets::gsp4(), 4).size() == 2);
}

TEST_CASE("endoscopy enumeration saturates") {
  for (std::string name : {"SL2", "GL2", "PGL2", "GSp4", "SL3", "SL2xSL2"}) {
    RootDatum rd = presets::by_name(name);
    CHECK(enumerate_elliptic_endoscopy(rd, 6).size() == enumerate_elliptic_endoscopy(rd, 12).size());
  }
}

TEST_CASE("iota is multiplicative on products") {
  RootDatum a = presets::sl(2);
  RootDatum ab = presets::product(a, a);
  auto single = enumerate_elliptic_endoscopy(a, 4);
  auto both = enumerate_elliptic_endoscopy(ab, 4);
  REQUIRE(both.size() == 4);
  std::multiset<std::string> expected, got;
  for (const auto& x : single)
    for (const auto& y : single) expected.insert(Rational(iota(a, x) * iota(a, y)).get_str());
  for (const auto& d : both) got.insert(iota(ab, d).get_str());
  CHECK(expected == got);
}

TEST_CASE("enumeration rejects large presets") {
  CHECK_THROWS_WITH(enumerate_elliptic_endoscopy(presets::gl(5), 2), "preset enumeration only");
}

TEST_CASE("destabilization toy cases") {
  SyntheticData empty;
  empty.tau_g = 1;
  auto r0 = destabilization_check(empty);
  CHECK(r0.lhs == 0);
  CHECK(r0.passed());

  // SL_2: K-group Z/2, the nontrivial kappa has a two-element fiber on the torus datum.
  SyntheticData d;
  d.tau_g = 1;
  d.data = {{"G", Rational(1), Rational(1), {}}, {"T", Rational(2), Rational(2), {}}};
  SyntheticClass c;
  c.label = "regular";
  c.iota_bar_g = 1;
  c.fibers = {{0, Rational(3), {Rational(1)}, {Rational(3)}}, {1, Rational(5), {Rational(1), Rational(1)}, {Rational(5), Rational(5)}}};
  d.classes = {c};
  auto r = destabilization_check(d);
  CHECK(r.passed());
  CHECK(r.lhs == 8);

  SyntheticData bad = d;
  bad.classes[0].fibers[1].iota_bar_h.pop_back();
  bad.classes[0].fibers[1].stable_orbital.pop_back();
  CHECK_FALSE(destabilization_check(bad).passed());
}

TEST_CASE("destabilization on random synthetic data") {
  std::mt19937_64 rng(21);
  int corrupted = 0;
  for (int t = 0; t < 200; ++t) {
    SyntheticData d = synthetic::consistent(rng);
    CHECK(destabilization_check(d).passed());
    if (d.classes.empty()) continue;
    ++corrupted;
    CHECK_FALSE(destabilization_check(synthetic::corrupt_one_fiber(d, rng)).passed());
  }
  CHECK(corrupted > 100);
}

TEST_CASE("a twist and its inverse give one datum") {
  auto sl3 = enumerate_elliptic_endoscopy(presets::sl(3), 6);
  REQUIRE(sl3.size() == 2);
  CHECK(sl3[1].twist_order == 3);
  CHECK(sl3[1].out_order == 3);
}
