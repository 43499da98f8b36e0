// Independent reference computations shared by the unit and acceptance tests.
#pragma once

#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "klab/galois.hpp"

namespace oracle {

using klab::Int;
using klab::IntMatrix;
using klab::IntVector;

// Order of the torsion of Z^n / colspan(R) as the gcd of the maximal nonzero
// minors (determinantal divisors), avoiding any Smith reduction.
inline Int torsion_order_by_minors(const IntMatrix& r) {
  const std::size_t n = r.rows(), m = r.cols();
  for (std::size_t k = std::min(n, m); k >= 1; --k) {
    Int g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    std::function<void(std::size_t, std::size_t)> pick_cols;
    std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t idx, std::size_t start) {
      if (idx == k) {
        pick_cols(0, 0);
        return;
      }
      for (std::size_t i = start; i < n; ++i) {
        rows[idx] = i;
        pick_rows(idx + 1, i + 1);
      }
    };
    pick_cols = [&](std::size_t idx, std::size_t start) {
      if (idx == k) {
        IntMatrix sub(k, k);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub(a, b) = r(rows[a], cols[b]);
        Int d = sub.determinant();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        return;
      }
      for (std::size_t j = start; j < m; ++j) {
        cols[idx] = j;
        pick_cols(idx + 1, j + 1);
      }
    };
    pick_rows(0, 0);
    if (g != 0) return g;
  }
  return 1;
}

// Order of the quotient K_{Gamma',tors} / (sum of local kernels), computed by
// enumerating every local torsion group, testing each element against the map
// to pi_1(I)_{Gamma_v}, and closing the images under addition.
inline Int e_group_order_by_enumeration(const klab::GaloisModule& pi1_I, const klab::GaloisModule& pi1_G,
                                        const IntMatrix& map, const klab::PlaceSystem& places) {
  klab::EGroupResult e = klab::e_group(pi1_I, pi1_G, map, places);
  const klab::GaloisModule& K = e.kernel_lattice;
  klab::FgAbGroup kg = klab::coinvariants(K, K.group().all_elements()).group;
  std::vector<IntVector> gens;
  for (const auto& v : places.all()) {
    klab::FgAbGroup kh = klab::coinvariants(K, v.subgroup).group;
    klab::FgAbGroup ih = klab::coinvariants(pi1_I, v.subgroup).group;
    auto tv = klab::torsion_subgroup(kh);
    for (const auto& x : tv.group.elements()) {
      IntVector in_k = tv.inclusion.apply(x);
      if (ih.is_zero(e.kernel_basis * in_k)) gens.push_back(in_k);
    }
  }
  // Closure inside K_{Gamma'} of the collected elements.
  std::set<IntVector> closure{kg.canonical(kg.zero())};
  std::vector<IntVector> frontier{kg.zero()};
  while (!frontier.empty()) {
    IntVector x = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      IntVector y = kg.add(x, g);
      if (closure.insert(kg.canonical(y)).second) frontier.push_back(y);
    }
  }
  Int tors = 1;
  for (const auto& d : kg.torsion_invariants()) tors *= d;
  return tors / Int(static_cast<unsigned long>(closure.size()));
}

// Random Galois data with a surjective equivariant map: pi_1(I) is a sum of
// permutation modules and sign modules, pi_1(G) a trivial lattice receiving
// augmentations from some permutation summands.
struct RandomPiOne {
  klab::FiniteGroup group;
  std::size_t conj = 0;
  klab::GaloisModule I;
  klab::GaloisModule G;
  IntMatrix map;
};

inline std::vector<klab::FiniteGroup> small_groups() {
  using klab::FiniteGroup;
  return {FiniteGroup::cyclic(2),
          FiniteGroup::cyclic(3),
          FiniteGroup::cyclic(4),
          FiniteGroup::cyclic(6),
          FiniteGroup::from_permutations({{1, 0, 3, 2}, {2, 3, 0, 1}}),  // Klein four
          FiniteGroup::from_permutations({{1, 2, 0}, {1, 0, 2}}),        // S3
          FiniteGroup::from_permutations({{1, 2, 3, 0}, {3, 2, 1, 0}})}; // dihedral of order 8
}

inline RandomPiOne random_pi_one(std::mt19937_64& rng) {
  auto groups = small_groups();
  RandomPiOne r;
  r.group = groups[rng() % groups.size()];
  const auto& g = r.group;
  // Complex conjugation: identity or a random involution.
  std::vector<std::size_t> invol{0};
  for (std::size_t a = 1; a < g.order(); ++a)
    if (g.element_order(a) == 2) invol.push_back(a);
  r.conj = invol[rng() % invol.size()];

  std::vector<klab::GaloisModule> parts;
  std::vector<int> augment_target;  // -1: maps to zero
  std::size_t g_rank = 1 + rng() % 2;
  auto subgroups = g.cyclic_subgroup_classes();
  std::size_t nparts = 1 + rng() % 3;
  for (std::size_t i = 0; i < nparts; ++i) {
    const auto& h = subgroups[rng() % subgroups.size()];
    if (g.order() / h.size() > 4) {
      --i;
      continue;
    }
    parts.push_back(klab::permutation_module(g, h));
    augment_target.push_back(static_cast<int>(i % g_rank));
  }
  if (parts.size() < g_rank) g_rank = parts.size();
  // Optional sign module from an index-two subgroup given by cosets of a cyclic subgroup.
  if (rng() % 2) {
    for (const auto& h : subgroups) {
      if (2 * h.size() != g.order()) continue;
      std::vector<int> sign(g.order(), -1);
      for (auto x : h) sign[x] = 1;
      bool hom = true;
      for (std::size_t a = 0; a < g.order() && hom; ++a)
        for (std::size_t b = 0; b < g.order() && hom; ++b)
          if (sign[g.mul(a, b)] != sign[a] * sign[b]) hom = false;
      if (!hom) continue;
      parts.push_back(klab::sign_module(g, sign));
      augment_target.push_back(-1);
      break;
    }
  }
  r.I = klab::direct_sum(parts);
  r.G = klab::GaloisModule::lattice(g, g_rank, std::vector<IntMatrix>(g.generators().size(), IntMatrix::identity(g_rank)));
  r.map = IntMatrix(g_rank, r.I.rank());
  std::size_t off = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (augment_target[i] >= 0 && static_cast<std::size_t>(augment_target[i]) < g_rank)
      for (std::size_t j = 0; j < parts[i].rank(); ++j) r.map(augment_target[i], off + j) = 1;
    off += parts[i].rank();
  }
  return r;
}

}  // namespace oracle
