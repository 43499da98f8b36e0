#pragma once

#include <string>
#include <vector>

#include "klab/abelian.hpp"

namespace klab {

// Finite group given by generating permutations.  Elements are indexed
// 0..order-1 with 0 the identity; mul(a, b) is "apply b, then a".
class FiniteGroup {
 public:
  FiniteGroup();
  static FiniteGroup from_permutations(const std::vector<std::vector<std::size_t>>& generators);
  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup trivial() { return FiniteGroup(); }

  std::size_t order() const { return perms_.size(); }
  std::size_t identity() const { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t element_order(std::size_t a) const;
  const std::vector<std::size_t>& generators() const { return generators_; }
  const std::vector<std::size_t>& permutation(std::size_t a) const { return perms_[a]; }
  // Index of an element given as a permutation; throws if not in the group.
  std::size_t index_of(const std::vector<std::size_t>& perm) const;

  // Word reaching each element from the identity: element = gen[w_k] ... gen[w_1].
  // parent(e) is the element before the last generator was applied.
  std::size_t parent(std::size_t e) const { return parent_[e]; }
  std::size_t parent_generator(std::size_t e) const { return parent_gen_[e]; }

  // Sorted element list of the cyclic subgroup generated by a.
  std::vector<std::size_t> cyclic_subgroup(std::size_t a) const;
  std::vector<std::size_t> conjugate_subgroup(const std::vector<std::size_t>& h, std::size_t g) const;
  // One representative of every conjugacy class of cyclic subgroups.
  std::vector<std::vector<std::size_t>> cyclic_subgroup_classes() const;
  std::vector<std::size_t> all_elements() const;

 private:
  std::vector<std::vector<std::size_t>> perms_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> generators_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_gen_;
};

// Finitely generated abelian group with an action of a finite group through
// endomorphisms of its presentation.  A torsion-free module with no relations is
// a Galois lattice; torsion is allowed so that quotients such as pi_1(PGL_n) fit.
class GaloisModule {
 public:
  GaloisModule() = default;
  // generator_matrices[i] is the action of group.generators()[i].  Throws if the
  // matrices are not well defined on the group or fail the group relations.
  GaloisModule(FiniteGroup group, FgAbGroup module, const std::vector<IntMatrix>& generator_matrices);
  static GaloisModule lattice(FiniteGroup group, std::size_t rank,
                              const std::vector<IntMatrix>& generator_matrices);
  static GaloisModule trivial_action(FiniteGroup group, FgAbGroup module);

  const FiniteGroup& group() const { return group_; }
  const FgAbGroup& module() const { return module_; }
  std::size_t rank() const { return module_.ngens(); }
  const IntMatrix& action(std::size_t element) const { return action_[element]; }
  bool is_lattice() const;

 private:
  FiniteGroup group_;
  FgAbGroup module_;
  std::vector<IntMatrix> action_;
};

using GaloisLattice = GaloisModule;

// Z[group / subgroup] with the group permuting left cosets.
GaloisModule permutation_module(const FiniteGroup& group, const std::vector<std::size_t>& subgroup);
// Rank-one lattice where g acts by sign[g] (a homomorphism to {+1, -1}).
GaloisModule sign_module(const FiniteGroup& group, const std::vector<int>& sign);
GaloisModule direct_sum(const std::vector<GaloisModule>& parts);

struct Place {
  enum class Kind { finite, archimedean };
  Kind kind = Kind::finite;
  std::vector<std::size_t> subgroup;  // sorted element indices
  std::string label;
};

struct PlaceSystem {
  FiniteGroup group;
  Place archimedean;
  std::vector<Place> finite;
  // Archimedean decomposition group generated by `complex_conjugation` (an
  // element of order 1 or 2) and one finite place per class of cyclic subgroups.
  static PlaceSystem standard(const FiniteGroup& group, std::size_t complex_conjugation);
  std::vector<Place> all() const;
  // Place with the given label; throws if absent.
  const Place& find(const std::string& label) const;
};

// M_H together with the projection M -> M_H.
QuotientResult coinvariants(const GaloisModule& m, const std::vector<std::size_t>& h);

// The local functor at a place, as a subgroup of M_{Gamma_v} (always landing in its
// torsion).  Finite places: torsion of the coinvariants.  Archimedean: the Tate
// group ker(norm) / augmentation, embedded in the coinvariants.
SubgroupResult a_functor(const GaloisModule& m, const Place& v);
// Global version: torsion of M_{Gamma'}.
SubgroupResult a_functor_global(const GaloisModule& m);

// Sum over the places of the local functors mapped into the global one.
struct PMap {
  std::vector<SubgroupResult> local;  // per place of places.all()
  SubgroupResult global;
  AbHom map;  // direct sum of local groups -> global group
};
PMap p_map(const GaloisModule& m, const PlaceSystem& places);

// Action of the group on a saturated sublattice given by a basis (columns in
// the coordinates of m).
GaloisModule restrict_to_sublattice(const GaloisModule& m, const IntMatrix& basis);
// Equivariance of a matrix between two modules, modulo the target relations.
bool is_equivariant(const GaloisModule& src, const GaloisModule& dst, const IntMatrix& f);

struct EGroupResult {
  GaloisModule kernel_lattice;  // K with induced action
  IntMatrix kernel_basis;       // K -> pi_1(I), columns in pi_1(I) coordinates
  FgAbGroup k_coinvariants;     // K_{Gamma'}
  SubgroupResult k_torsion;     // K_{Gamma',tors} inside K_{Gamma'}
  FgAbGroup e;                  // the quotient
  AbHom projection;             // K_{Gamma',tors} -> e
  // Generators (in K_{Gamma',tors} coordinates) killed by each place.
  std::vector<IntMatrix> local_kernels;
};

// pi1_I -> pi1_G given by `map` must be equivariant and surjective.
EGroupResult e_group(const GaloisModule& pi1_I, const GaloisModule& pi1_G, const IntMatrix& map,
                     const PlaceSystem& places);

struct KGroupResult {
  EGroupResult e;
  FiniteDual duality;  // characters of e, i.e. the elements of the K-group
  FgAbGroup k_group() const { return duality.dual(); }
};
KGroupResult kottwitz_k_group(const GaloisModule& pi1_I, const GaloisModule& pi1_G,
                              const IntMatrix& map, const PlaceSystem& places);

struct TnPlaceReport {
  std::string label;
  Int order_k;
  Int order_i;
  Int order_g;
  bool composite_zero = false;
  Int image_order;   // |image(A(K) -> A(pi_1 I))|
  Int kernel_order;  // |kernel(A(pi_1 I) -> A(pi_1 G))|
};
struct TnReport {
  std::vector<TnPlaceReport> places;  // local places, then "global"
  bool all_composites_zero = true;
};
TnReport tn_sequence_check(const GaloisModule& pi1_I, const GaloisModule& pi1_G, const IntMatrix& map,
                           const PlaceSystem& places);

// Line-based text format for a pair of modules and a map between them,
// documented in docs/formats.md.
struct KGroupProblem {
  FiniteGroup group;
  std::size_t complex_conjugation = 0;
  GaloisModule pi1_I;
  GaloisModule pi1_G;
  IntMatrix map;
};
KGroupProblem parse_kgroup_problem(const std::string& text);
std::string serialize_kgroup_problem(const KGroupProblem& p);

}  // namespace klab
