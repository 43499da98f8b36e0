#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "klab/galois.hpp"

namespace klab {

// Unramified extension Q_{p^n} = Q_p(t) with t a root of a fixed monic lift f
// of an irreducible polynomial over F_p.  Unit parts live in (Z/p^k)[t]/(f) with
// k the relative precision cap; p^k must fit in 62 bits.
struct PadicContext {
  long p = 2;
  int degree = 1;
  int precision = 20;
  std::vector<std::int64_t> pow;       // p^0 .. p^precision
  std::vector<std::int64_t> modulus;   // f = t^n + sum modulus[i] t^i
  std::vector<std::vector<std::int64_t>> frobenius_images;  // sigma(t^j) mod p^precision

  // Largest precision supported for p.
  static int max_precision(long p);
};

using PadicContextPtr = std::shared_ptr<const PadicContext>;
PadicContextPtr make_padic_context(long p, int degree, int precision = 0);

// Element p^v * u with u a unit known modulo p^r (capped relative precision).
// Zero elements carry the absolute precision to which they are known to vanish.
class Padic {
 public:
  static constexpr long kExact = 1L << 40;

  Padic() = default;
  static Padic zero(PadicContextPtr ctx, long absolute_precision = kExact);
  static Padic from_int(PadicContextPtr ctx, const Int& a);
  static Padic from_rational(PadicContextPtr ctx, const Rational& a);
  // p^v * sum coeffs[j] t^j.
  static Padic from_coefficients(PadicContextPtr ctx, long v, const std::vector<Int>& coeffs);
  static Padic generator(PadicContextPtr ctx);

  const PadicContextPtr& context() const { return ctx_; }
  bool is_zero() const { return zero_; }
  // Valuation; for zero elements, the absolute precision.
  long valuation() const { return val_; }
  long absolute_precision() const { return zero_ ? val_ : val_ + rel_; }
  int relative_precision() const { return zero_ ? 0 : rel_; }
  const std::vector<std::int64_t>& unit_coefficients() const { return unit_; }

  Padic operator+(const Padic& o) const;
  Padic operator-(const Padic& o) const;
  Padic operator-() const;
  Padic operator*(const Padic& o) const;
  Padic operator/(const Padic& o) const;
  Padic inverse() const;
  Padic frobenius(int times = 1) const;
  // Exact difference vanishes to the available precision.
  bool equals(const Padic& o) const { return (*this - o).is_zero(); }
  // Reduce relative precision to at most r digits.
  Padic truncated(int r) const;
  // Coefficients of p^v u in the power basis, exact as rationals.
  std::vector<Rational> coefficients() const;
  bool in_base_field() const;
  std::string str() const;

 private:
  friend class PadicAccess;
  PadicContextPtr ctx_;
  bool zero_ = true;
  long val_ = kExact;
  int rel_ = 0;
  std::vector<std::int64_t> unit_;
};

class PadicMatrix {
 public:
  PadicMatrix() = default;
  PadicMatrix(PadicContextPtr ctx, std::size_t rows, std::size_t cols);
  static PadicMatrix identity(PadicContextPtr ctx, std::size_t d);
  static PadicMatrix from_integers(PadicContextPtr ctx, const IntMatrix& m);
  // diag(p^e_1, ..., p^e_d).
  static PadicMatrix p_power_diagonal(PadicContextPtr ctx, const std::vector<long>& exponents);

  const PadicContextPtr& context() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Padic& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Padic& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PadicMatrix operator*(const PadicMatrix& o) const;
  PadicMatrix operator+(const PadicMatrix& o) const;
  PadicMatrix operator-(const PadicMatrix& o) const;
  PadicMatrix scaled(const Padic& c) const;
  PadicMatrix frobenius(int times = 1) const;
  bool equals(const PadicMatrix& o) const;
  Padic determinant() const;
  PadicMatrix inverse() const;
  // Characteristic polynomial det(x - M), coefficients c_0 .. c_d (c_d = 1).
  std::vector<Padic> charpoly() const;
  // Smallest valuation among entries (kExact if all zero).
  long min_valuation() const;
  std::string str() const;

 private:
  PadicContextPtr ctx_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Padic> data_;
};

// Literal syntax: [[e, e], [e, e]] with entries p^v * (c0 + c1*t + c2*t^2),
// plain polynomials in t, or p^v.
PadicMatrix parse_padic_matrix(PadicContextPtr ctx, const std::string& text);
Padic parse_padic(PadicContextPtr ctx, const std::string& text);

// b sigma(b) ... sigma^{s-1}(b).
PadicMatrix sigma_norm(const PadicMatrix& b, int s);
// g b sigma(g)^{-1}.
PadicMatrix sigma_conjugate(const PadicMatrix& b, const PadicMatrix& g);

// Slopes of the Newton polygon of a polynomial (roots' valuations), sorted
// decreasingly.  Throws "insufficient precision" when the polygon is not determined.
std::vector<Rational> newton_slopes(const std::vector<Padic>& poly);

struct IsocInvariants {
  std::vector<Rational> newton;  // weakly decreasing
  long kappa = 0;
};

std::vector<Rational> newton_point(const PadicMatrix& b);
long kottwitz_point(const PadicMatrix& b);
IsocInvariants isocrystal_invariants(const PadicMatrix& b);
// Class of a coweight in the coinvariants of a torus lattice under the given
// decomposition group, as canonical coordinates.
IntVector torus_kottwitz_point(const GaloisModule& cocharacters, const std::vector<std::size_t>& decomposition,
                               const IntVector& coweight);

bool is_decent(const PadicMatrix& b, int s);

struct NormResult {
  PadicMatrix norm;
  std::vector<Padic> charpoly;
  bool charpoly_in_base_field = false;
};
NormResult degree_n_norm(const PadicMatrix& delta);

// Decent representative with the given Newton point (each slope r/s appearing
// with multiplicity divisible by s): block sum of p^r-companion matrices.
PadicMatrix decent_representative(PadicContextPtr ctx, const std::vector<Rational>& newton);

// Laurent polynomial sum coeffs[i] u^(offset + i) over Z.
struct LaurentPoly {
  long offset = 0;
  std::vector<Int> coeffs;
  static LaurentPoly monomial(const Int& c, long exponent);
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  bool is_zero() const;
  // Minimum p-adic valuation of the coefficients.
  long gauss_valuation(long p) const;
  // Lowest exponent with a nonzero coefficient.
  long u_valuation() const;
  Padic evaluate(PadicContextPtr ctx, const Padic& u) const;
};

// Square matrix with Laurent polynomial entries and the three valuations of
// its determinant: Gauss (p-adic content), u-adic, and after u -> p.
struct LaurentFamily {
  std::vector<std::vector<LaurentPoly>> entries;
  LaurentPoly determinant() const;
  long kappa_gauss(long p) const;
  long kappa_u() const;
  long kappa_specialized(PadicContextPtr ctx) const;
};

}  // namespace klab
