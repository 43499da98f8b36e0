#pragma once

#include <string>
#include <vector>

#include "klab/galois.hpp"

namespace klab {

// Based root datum with a Galois action on the cocharacter lattice.  Roots live
// in X^* = Z^rank and coroots in X_* = Z^rank with the standard pairing; roots[i]
// and coroots[i] correspond.
class RootDatum {
 public:
  RootDatum();
  RootDatum(std::string name, std::size_t rank, std::vector<IntVector> roots, std::vector<IntVector> coroots,
            std::vector<std::size_t> simple, GaloisModule cocharacters, bool certified_ker1);

  const std::string& name() const { return name_; }
  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& roots() const { return roots_; }
  const std::vector<IntVector>& coroots() const { return coroots_; }
  const std::vector<std::size_t>& simple() const { return simple_; }
  const GaloisModule& cocharacters() const { return cochar_; }
  const FiniteGroup& galois() const { return cochar_.group(); }
  bool certified_ker1() const { return certified_ker1_; }
  bool is_split() const;
  std::size_t semisimple_rank() const { return simple_.size(); }
  IntMatrix cartan_matrix() const;

 private:
  std::string name_;
  std::size_t rank_;
  std::vector<IntVector> roots_;
  std::vector<IntVector> coroots_;
  std::vector<std::size_t> simple_;
  GaloisModule cochar_;
  bool certified_ker1_;
};

namespace presets {
RootDatum gl(std::size_t n);
RootDatum sl(std::size_t n);
RootDatum pgl(std::size_t n);
RootDatum gsp4();
// Kernel of the norm from a quadratic field: X_* = Z with the nontrivial element acting by -1.
RootDatum norm_one_torus();
// Restriction of scalars of G_m from a quadratic field: X_* = Z^2 with swap.
RootDatum induced_torus();
RootDatum product(const RootDatum& a, const RootDatum& b);
// Lookup by name: GL2, SL3, PGL2, GSp4, norm-one, induced, and products joined by 'x'.
RootDatum by_name(const std::string& name);
}  // namespace presets

Int pairing(const IntVector& x, const IntVector& y);

// X_* modulo the coroot lattice with the induced action.
GaloisModule pi1(const RootDatum& rd);
// Torsion of the coinvariants of pi_1 under the whole Galois group.
FgAbGroup component_group_of_center_dual(const RootDatum& rd);
// |pi_0 of the Galois-fixed dual center|; requires a certified-trivial ker^1.
Rational tamagawa_number(const RootDatum& rd);

struct EndoscopicDatum {
  std::vector<Rational> s;    // point of X^* (x) Q/Z, entries in [0, 1)
  std::vector<std::size_t> h_coroots;  // indices (into the ambient coroots) of the roots of H-hat
  IntMatrix twist;            // action of the twisting generator on X^*
  std::size_t twist_order = 1;
  std::string twist_label;
  bool elliptic = false;
  Int out_order;              // lambda
  RootDatum h;                // root datum of H with the twisted Galois action
  std::string describe() const;
};

std::vector<EndoscopicDatum> enumerate_elliptic_endoscopy(const RootDatum& rd, std::size_t n_max);
// tau(G) / tau(H) / lambda.
Rational iota(const RootDatum& g, const EndoscopicDatum& datum);

// Weyl group as matrices acting on X^*.
std::vector<IntMatrix> weyl_group(const RootDatum& rd);

}  // namespace klab
