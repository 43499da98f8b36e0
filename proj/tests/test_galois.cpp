#include <random>

#include "doctest.h"
#include "klab/galois.hpp"
#include "oracles.hpp"

using namespace klab;

namespace {

// Z/2 acting on Z by -1 (the norm-one torus lattice).
GaloisModule sign_lattice() {
  FiniteGroup g = FiniteGroup::cyclic(2);
  return GaloisModule::lattice(g, 1, {IntMatrix{{-1}}});
}

GaloisModule swap_lattice() {
  FiniteGroup g = FiniteGroup::cyclic(2);
  return GaloisModule::lattice(g, 2, {IntMatrix{{0, 1}, {1, 0}}});
}

}  // namespace

TEST_CASE("coinvariants of small lattices") {
  auto s = sign_lattice();
  CHECK(coinvariants(s, {0}).group.describe() == "Z");
  CHECK(coinvariants(s, s.group().all_elements()).group.describe() == "Z/2");
  auto w = swap_lattice();
  auto q = coinvariants(w, w.group().all_elements());
  CHECK(q.group.describe() == "Z");
  CHECK(q.group.equal({Int(1), Int(0)}, {Int(0), Int(1)}));
}

TEST_CASE("local functor at the archimedean place") {
  auto s = sign_lattice();
  PlaceSystem ps = PlaceSystem::standard(s.group(), 1);
  auto a = a_functor(s, ps.archimedean);
  CHECK(a.group.order() == 2);
  CHECK(a.inclusion.is_injective());
  // Trivial action of an order-two group: ker(norm) = 0.
  FiniteGroup g = FiniteGroup::cyclic(2);
  auto triv = GaloisModule::lattice(g, 1, {IntMatrix{{1}}});
  CHECK(a_functor(triv, PlaceSystem::standard(g, 1).archimedean).group.is_trivial());
  // Finite place with trivial decomposition group on a lattice.
  CHECK(a_functor(s, ps.find("f0")).group.is_trivial());
}

TEST_CASE("archimedean local functor lands in torsion of coinvariants") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    auto r = oracle::random_pi_one(rng);
    PlaceSystem ps = PlaceSystem::standard(r.group, r.conj);
    auto a = a_functor(r.I, ps.archimedean);
    const FgAbGroup& mh = a.inclusion.target();
    for (std::size_t j = 0; j < a.group.ngens(); ++j)
      CHECK(mh.element_order(a.inclusion.matrix().column(j)).has_value());
    CHECK(a.inclusion.is_injective());
  }
}

TEST_CASE("p map on the norm-one lattice") {
  auto s = sign_lattice();
  PlaceSystem ps = PlaceSystem::standard(s.group(), 1);
  PMap pm = p_map(s, ps);
  CHECK(pm.global.group.order() == 2);
  // Places: inf, f0 (trivial), f1 (whole group).
  REQUIRE(pm.local.size() == 3);
  CHECK(pm.local[1].group.is_trivial());
  CHECK(pm.local[2].group.order() == 2);
  CHECK(pm.map.is_surjective());
}

TEST_CASE("e group for the two basic tori") {
  FiniteGroup g = FiniteGroup::cyclic(2);
  PlaceSystem ps = PlaceSystem::standard(g, 1);
  // Elliptic torus in GL_2: pi_1(I) = Z^2 swapped, pi_1(G) = Z.
  auto gl_I = swap_lattice();
  auto gl_G = GaloisModule::lattice(g, 1, {IntMatrix{{1}}});
  auto e1 = e_group(gl_I, gl_G, IntMatrix{{1, 1}}, ps);
  CHECK(e1.k_torsion.group.order() == 2);
  CHECK(e1.e.is_trivial());
  // Elliptic torus in SL_2: pi_1(G) = 0.
  auto sl_I = sign_lattice();
  auto sl_G = GaloisModule::lattice(g, 0, {IntMatrix(0, 0)});
  auto e2 = e_group(sl_I, sl_G, IntMatrix(0, 1), ps);
  CHECK(e2.e.describe() == "Z/2");
  auto k2 = kottwitz_k_group(sl_I, sl_G, IntMatrix(0, 1), ps);
  CHECK(k2.k_group().order() == 2);
}

TEST_CASE("e group rejects a non-surjective map") {
  FiniteGroup g = FiniteGroup::cyclic(2);
  PlaceSystem ps = PlaceSystem::standard(g, 1);
  auto I = swap_lattice();
  auto G = GaloisModule::lattice(g, 1, {IntMatrix{{1}}});
  CHECK_THROWS_WITH(e_group(I, G, IntMatrix{{2, 2}}, ps), "π₁ map must be surjective");
}

TEST_CASE("e group agrees with enumeration on random data") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    auto r = oracle::random_pi_one(rng);
    PlaceSystem ps = PlaceSystem::standard(r.group, r.conj);
    auto e = e_group(r.I, r.G, r.map, ps);
    CHECK(e.e.order() == oracle::e_group_order_by_enumeration(r.I, r.G, r.map, ps));
  }
}

TEST_CASE("adding a split finite place does not change the e group") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    auto r = oracle::random_pi_one(rng);
    PlaceSystem ps = PlaceSystem::standard(r.group, r.conj);
    auto base = e_group(r.I, r.G, r.map, ps).e.order();
    PlaceSystem more = ps;
    Place split;
    split.subgroup = {0};
    split.label = "extra";
    more.finite.push_back(split);
    CHECK(e_group(r.I, r.G, r.map, more).e.order() == base);
    PlaceSystem fewer = ps;
    fewer.finite.erase(fewer.finite.begin());  // the trivial cyclic subgroup comes first
    CHECK(e_group(r.I, r.G, r.map, fewer).e.order() == base);
  }
}

TEST_CASE("k group of a product is the product of k groups") {
  FiniteGroup g = FiniteGroup::cyclic(2);
  PlaceSystem ps = PlaceSystem::standard(g, 1);
  auto sl_I = sign_lattice();
  auto sl_G = GaloisModule::lattice(g, 0, {IntMatrix(0, 0)});
  auto I2 = direct_sum({sl_I, sl_I});
  auto G2 = GaloisModule::lattice(g, 0, {IntMatrix(0, 0)});
  auto k = kottwitz_k_group(I2, G2, IntMatrix(0, 2), ps);
  CHECK(k.k_group().describe() == "Z/2 + Z/2");
}

TEST_CASE("coinvariant torsion matches determinantal divisors") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    auto r = oracle::random_pi_one(rng);
    if (r.I.rank() > 6) continue;
    for (const auto& h : r.group.cyclic_subgroup_classes()) {
      auto q = coinvariants(r.I, h);
      // A cyclic subgroup's augmentation is generated by (generator - 1).
      std::size_t gen = h.size() > 1 ? h[1] : 0;
      for (auto x : h)
        if (r.group.element_order(x) == h.size()) gen = x;
      Int expect = oracle::torsion_order_by_minors(r.I.action(gen) - IntMatrix::identity(r.I.rank()));
      Int got = 1;
      for (const auto& d : q.group.torsion_invariants()) got *= d;
      CHECK(got == expect);
    }
  }
}

TEST_CASE("coinvariants along a subgroup chain") {
  // Coinvariants for the whole group equal coinvariants of the coinvariants
  // for a subgroup, taken for the whole group again.
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    auto r = oracle::random_pi_one(rng);
    auto all = r.group.all_elements();
    for (const auto& h : r.group.cyclic_subgroup_classes()) {
      auto mh = coinvariants(r.I, h).group;
      auto mg = coinvariants(r.I, all).group;
      IntMatrix rel = mh.relations();
      for (auto e : all) {
        IntMatrix d = r.I.action(e) - IntMatrix::identity(r.I.rank());
        rel = rel.hcat(d);
      }
      FgAbGroup two_step(r.I.rank(), rel);
      CHECK(two_step.describe() == mg.describe());
    }
  }
}

TEST_CASE("tn sequence composites vanish") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    auto r = oracle::random_pi_one(rng);
    PlaceSystem ps = PlaceSystem::standard(r.group, r.conj);
    auto rep = tn_sequence_check(r.I, r.G, r.map, ps);
    CHECK(rep.all_composites_zero);
    for (const auto& p : rep.places) CHECK(p.image_order <= p.kernel_order);
  }
}

TEST_CASE("text format round trip") {
  const char* text = R"(# norm-one torus inside SL_2
group 2
perm 1 0
conj 1 0
module I 1
act 0 -1
module G 0
map
)";
  KGroupProblem p = parse_kgroup_problem(text);
  CHECK(p.group.order() == 2);
  CHECK(p.complex_conjugation == 1);
  PlaceSystem ps = PlaceSystem::standard(p.group, p.complex_conjugation);
  CHECK(e_group(p.pi1_I, p.pi1_G, p.map, ps).e.order() == 2);
  KGroupProblem q = parse_kgroup_problem(serialize_kgroup_problem(p));
  CHECK(q.pi1_I.action(1) == p.pi1_I.action(1));
  CHECK_THROWS(parse_kgroup_problem("group 2\nperm 1 0\nmodule I 1\nact 0 2\nmodule G 0\nmap\n"));
}
