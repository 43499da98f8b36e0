#pragma once

#include <string>
#include <vector>

#include "klab/padic.hpp"

namespace klab {

// Lattice in Q_{p^n}^d given by the columns of an upper triangular Hermite
// normal form: diagonal p^{e_i}, entries above the diagonal reduced modulo the
// diagonal entry of their row, after scaling by p^{-shift} so that the lattice
// sits inside the standard lattice but not inside p times it.
struct LatticeHNF {
  PadicMatrix basis;  // unscaled basis (columns), equal to p^shift * normalized
  long shift = 0;
  std::vector<long> exponents;
  std::string key;        // identifies the lattice
  std::string class_key;  // identifies the homothety class
};

LatticeHNF lattice_hnf(const PadicMatrix& basis);

// Elementary divisor exponents of B1^{-1} B2, weakly decreasing: the relative
// position of the lattice spanned by B2 with respect to the one spanned by B1.
std::vector<long> relative_position(const PadicMatrix& b1, const PadicMatrix& b2);

// Tree distance between homothety classes (d = 2).
long vertex_distance(const PadicMatrix& b1, const PadicMatrix& b2);

// Neighbours (index-p^n sublattices containing p L) of a rank-two lattice.
std::vector<PadicMatrix> tree_neighbours(const PadicMatrix& basis);

// All lattices with p^r L0 <= L <= p^{-r} L0.  Throws "enumeration cap exceeded"
// when the count would pass `cap`.
std::vector<LatticeHNF> enumerate_lattices(PadicContextPtr ctx, std::size_t d, long r, std::size_t cap = 2000000);
// Homothety classes at tree distance at most r from the standard vertex (d = 2),
// enumerated through Hermite forms of sublattices M of L0 with L0/M cyclic.
std::vector<LatticeHNF> enumerate_vertices(PadicContextPtr ctx, long r, std::size_t cap = 2000000);

struct AdlvReport {
  std::vector<LatticeHNF> points;
  long depth_used = 0;
  bool saturated = false;          // same count one depth further out
  std::size_t count_next_depth = 0;
  bool frobenius_stable = false;   // the norm of b permutes the points it keeps in range
};

// Lattices L in the depth window with inv(L, b sigma(L)) = mu.
AdlvReport adlv_points(const PadicMatrix& b, const std::vector<long>& mu, long depth, bool modulo_homothety,
                       std::size_t cap = 2000000);

// Local field generated by a 2x2 matrix over Q_p with integral characteristic
// polynomial x^2 - a x + d.
enum class LocalType { central, split, inert, ramified };
LocalType classify_quadratic(const Int& trace, const Int& det, long p, bool central);
std::string to_string(LocalType t);

struct TwistedOrbitalIntegral {
  Rational value;
  bool finite = false;            // the solution set is bounded
  std::size_t points = 0;         // homothety classes (finite case)
  long ramification = 1;          // divisor applied in the finite case
  std::vector<std::size_t> counts_by_radius;  // classes within radius r of the standard vertex
  long radius_start = 0;
  LocalType norm_type = LocalType::central;
};

struct TwistedOrbitalOptions {
  long depth = 3;            // radii examined beyond the first point found
  std::size_t cap = 200000;  // bound on explored vertices
};

// Twisted orbital integral of the characteristic function of
// GL_2(Z_{p^n}) p^mu GL_2(Z_{p^n}) at delta, with the sigma-centralizer
// normalized so that its maximal compact subgroup has volume one.  d = 1 and
// d = 2 are supported.
TwistedOrbitalIntegral twisted_orbital_integral(const PadicMatrix& delta, const std::vector<long>& mu,
                                                const TwistedOrbitalOptions& opts = {});

// Level structure at l^e for the prime-to-p orbital integrals.
enum class LevelKind { full, point };  // Y(N) and Y_1(N)
struct LocalLevel {
  LevelKind kind = LevelKind::full;
  long exponent = 0;  // e with l^e || N
};

enum class CentralizerMeasure { maximal_order, generated_order };

struct OrbitalIntegralReport {
  Rational value;
  long conductor = 0;     // l-adic conductor exponent of Z_l[gamma]
  LocalType type = LocalType::central;
  Int unit_index = 1;     // [O_K^x : Z_l[gamma]^x]
  std::size_t fiber_vertices = 0;
};

// Orbital integral at l of the characteristic function of the level subgroup for
// an integral gamma in GL_2(Z_l): count of gamma-stable lattices in the fiber over
// one maximal-order vertex, weighted by the number of gamma-fixed level
// structures.  With `generated_order` the torus is normalized by Z_l[gamma]^x.
OrbitalIntegralReport orbital_integral_gl2(const IntMatrix& gamma, long l, const LocalLevel& level,
                                           CentralizerMeasure measure = CentralizerMeasure::maximal_order);

// |GL_2(Z/l^e)|.
Int gl2_order(long l, long e);
// Number of level structures on (Z/l^e)^2 fixed by the integer matrix m.
Int fixed_level_structures(const IntMatrix& m, long l, const LocalLevel& level);

}  // namespace klab
