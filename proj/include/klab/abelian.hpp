#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klab/int_matrix.hpp"

namespace klab {

// Finitely generated abelian group Z^n / colspan(R).  Elements are coordinate
// vectors of length n in the presentation.  The Smith form is computed at
// construction so instances are immutable and safe to share across threads.
class FgAbGroup {
 public:
  FgAbGroup();
  FgAbGroup(std::size_t ngens, IntMatrix relations);

  static FgAbGroup free(std::size_t rank);
  // Z/d_1 + ... + Z/d_k.  A zero entry contributes a free factor.
  static FgAbGroup cyclic_sum(const std::vector<long>& orders);
  static FgAbGroup direct_sum(const std::vector<FgAbGroup>& parts);

  std::size_t ngens() const { return ngens_; }
  const IntMatrix& relations() const { return relations_; }
  const SmithForm& smith() const { return smith_; }

  // Non-trivial invariant factors d_i > 1 (in divisibility order) and free rank.
  const IntVector& torsion_invariants() const { return torsion_invariants_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_invariants_.empty(); }
  // Order of a finite group; throws for infinite groups.
  Int order() const;

  // Smith coordinates: torsion part reduced into [0, d_i), free part as-is.
  IntVector canonical(const IntVector& x) const;
  bool is_zero(const IntVector& x) const;
  bool equal(const IntVector& x, const IntVector& y) const;
  IntVector add(const IntVector& x, const IntVector& y) const;
  IntVector neg(const IntVector& x) const;
  IntVector zero() const { return IntVector(ngens_, Int(0)); }
  // Presentation vector of the element with the given canonical coordinates.
  IntVector from_canonical(const IntVector& c) const;
  // Order of an element; nullopt if infinite.
  std::optional<Int> element_order(const IntVector& x) const;

  // All elements of a finite group, as presentation vectors.  Throws above `limit`.
  std::vector<IntVector> elements(std::size_t limit = 1000000) const;

  // Coordinates of x restricted to the torsion factors (length = #torsion invariants).
  // Throws if x has a nonzero free component.
  IntVector torsion_coordinates(const IntVector& x) const;

  std::string describe() const;

 private:
  std::size_t ngens_ = 0;
  IntMatrix relations_;
  SmithForm smith_;
  std::vector<std::size_t> torsion_index_;  // smith rows with d_i > 1
  std::size_t first_free_ = 0;               // smith rows >= this are free
  IntVector torsion_invariants_;
  std::size_t free_rank_ = 0;
};

// Homomorphism given by a matrix on presentation coordinates
// (target.ngens rows, source.ngens cols).  Well-definedness is checked.
class AbHom {
 public:
  AbHom();
  AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(const IntVector& x) const;
  AbHom compose_after(const AbHom& first) const;  // this o first
  bool is_zero() const;
  bool is_injective() const;
  bool is_surjective() const;

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

// A group together with a homomorphism into (inclusion) or out of (projection)
// an ambient group.
struct SubgroupResult {
  FgAbGroup group;
  AbHom inclusion;
};
struct QuotientResult {
  FgAbGroup group;
  AbHom projection;
};

// Subgroup of `ambient` generated by the columns of `gens`.
SubgroupResult subgroup_generated(const FgAbGroup& ambient, const IntMatrix& gens);
// Coordinates (in the subgroup presentation) of an ambient element lying in the
// subgroup, or nullopt if it does not lie in it.
std::optional<IntVector> subgroup_coordinates(const SubgroupResult& sub, const IntVector& x);

SubgroupResult kernel(const AbHom& f);
QuotientResult cokernel(const AbHom& f);
// Quotient of a group by the subgroup generated by the columns of `gens`.
QuotientResult quotient(const FgAbGroup& g, const IntMatrix& gens);
SubgroupResult image(const AbHom& f);
SubgroupResult torsion_subgroup(const FgAbGroup& g);

// Pontryagin dual of a finite group.  Characters are represented by exponent
// vectors k_i in Z/d_i on the Smith factors; pair(x, k) = sum k_i y_i / d_i mod 1.
class FiniteDual {
 public:
  FiniteDual() : FiniteDual(FgAbGroup()) {}
  explicit FiniteDual(const FgAbGroup& g);
  const FgAbGroup& group() const { return group_; }
  const FgAbGroup& dual() const { return dual_; }
  // Exact value in [0, 1).
  Rational pair(const IntVector& x, const IntVector& character) const;
  std::vector<IntVector> characters() const { return dual_.elements(); }

 private:
  FgAbGroup group_;
  FgAbGroup dual_;
};

FiniteDual dual_and_pairing(const FgAbGroup& g);

// Reduce a rational into [0, 1).
Rational frac(const Rational& q);

}  // namespace klab
