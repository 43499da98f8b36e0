#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "klab/galois.hpp"
#include "klab/padic.hpp"

namespace klab {

using RationalMatrix = std::vector<std::vector<Rational>>;

// pi_1(I_0) -> pi_1(G) with its places, the place above p and the lift mu of
// the Hodge class, together with the precomputed e group.
struct AmbientData {
  std::string name;
  GaloisModule pi1_I;
  GaloisModule pi1_G;
  IntMatrix map;
  PlaceSystem places;
  std::string p_place;
  IntVector mu;  // in pi_1(I_0) coordinates
  KGroupResult k;

  static std::shared_ptr<const AmbientData> make(std::string name, GaloisModule pi1_I, GaloisModule pi1_G,
                                                 IntMatrix map, PlaceSystem places, std::string p_place, IntVector mu);
  IntVector mu_class() const { return pi1_G.module().canonical(map * mu); }
  std::shared_ptr<const AmbientData> with_mu(const IntVector& mu) const;
};
using AmbientPtr = std::shared_ptr<const AmbientData>;

namespace presets {
// Elliptic maximal torus of GL_2 (pi_1 = Z^2 with swap) and of SL_2 (Z with sign),
// quadratic splitting field; p_place is "inert" or "split".
AmbientPtr ambient_gl2(const std::string& p_type = "inert");
AmbientPtr ambient_sl2(const std::string& p_type = "split");
AmbientPtr ambient_by_name(const std::string& name);
}  // namespace presets

// beta data in pi_1(I_0) coordinates.  Finite places other than p are keyed by
// place label; absent places carry zero.
struct KottwitzParameter {
  AmbientPtr ambient;
  std::string label;
  std::string gamma0;
  std::map<std::string, IntVector> beta_finite;
  IntVector beta_p;
  IntVector beta_infinity;
  int sign = 1;
};

bool check_kp0(const KottwitzParameter& c);

// det(x - m) over Q, coefficients c_0 .. c_d.
std::vector<Rational> rational_charpoly(const RationalMatrix& m);

// Norm criterion: Newton slopes of gamma0 divided by n equal nu_b, and
// v(det gamma0) = n * kappa_b.
bool check_kp1_gl(const RationalMatrix& gamma0, const IsocInvariants& b, int n, long p);

// Element of the e group (canonical coordinates).  With an rng the lifts are
// re-chosen at random.
IntVector kottwitz_invariant(const KottwitzParameter& c, std::mt19937_64* rng = nullptr);
bool kottwitz_invariant_is_zero(const KottwitzParameter& c);

// sign * sum over the K-group of <alpha, kappa>, evaluated in Z[zeta].
Int fourier_sum(const KottwitzParameter& c, int sign = 1);
// sum_k zeta_M^k * counts[k] reduced exactly; throws if the result is not an integer.
Int cyclotomic_sum(const std::vector<Int>& counts);

IntVector beta_infinity_from_mu(const AmbientData& ambient, const IntVector& mu_h);

// Componentwise sum of beta data over the same ambient.
KottwitzParameter add_parameters(const KottwitzParameter& a, const KottwitzParameter& b);

// Records of the form
//   param <label>
//   ambient <preset>
//   mu <coords>            (optional)
//   gamma0 <text>          (optional)
//   sign <+1|-1>           (optional)
//   beta <place|p|inf> <coords>
//   end
std::vector<KottwitzParameter> parse_parameters(const std::string& text);
std::string serialize_parameters(const std::vector<KottwitzParameter>& params);

}  // namespace klab
