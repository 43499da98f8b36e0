#pragma once

#include <map>
#include <string>
#include <vector>

#include "klab/adlv.hpp"

namespace klab {

enum class CurveKind { full, point };  // Y(N): full level structure, Y_1(N): point of exact order N
std::string to_string(CurveKind k);
CurveKind curve_kind_from_string(const std::string& s);

struct CurveCountRequest {
  long p = 5;
  int m = 1;
  long N = 3;
  CurveKind kind = CurveKind::full;
  // Throws "level not neat" for N < 3 (N < 4 for Y_1), invalid_argument otherwise.
  void validate() const;
  long q() const;
};

// Finite field F_{p^m}, elements encoded as base-p digit vectors of the
// polynomial basis, with full operation tables.
class FiniteField {
 public:
  FiniteField(long p, int m);
  long p() const { return p_; }
  int degree() const { return m_; }
  long size() const { return q_; }
  int add(int a, int b) const { return add_[a * q_ + b]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg_[b]); }
  int inv(int a) const { return inv_[a]; }
  // A square root of a, or -1 for non-squares.
  int sqrt(int a) const { return sqrt_[a]; }
  int from_int(long x) const;
  int pow(int a, long e) const;
  int generator() const { return generator_; }

 private:
  long p_;
  int m_;
  long q_;
  std::vector<int> add_, mul_, neg_, inv_, sqrt_;
  int generator_ = 1;
};

enum class CountStrategy { weierstrass_pairs, j_invariant_twists };

struct PointCount {
  Int count;
  Rational mass;                      // sum of 1/|Aut| over curves carrying a structure
  std::map<long, Rational> by_trace;  // structures/|Aut| summed per Frobenius trace
};

// Number of F_{p^m}-points of Y(N) or Y_1(N), as structures/|Aut| summed over
// isomorphism classes of elliptic curves.
PointCount count_points_detail(const CurveCountRequest& req, CountStrategy strategy = CountStrategy::weierstrass_pairs);
Int count_points(const CurveCountRequest& req, CountStrategy strategy = CountStrategy::weierstrass_pairs);

struct QuadraticOrderData {
  Int discriminant;
  Int h;
  int w = 2;
};
// Reduced primitive forms |b| <= a <= c of discriminant D < 0.
QuadraticOrderData class_number(const Int& D);
// D = f^2 * d_K with d_K fundamental.
std::pair<Int, Int> fundamental_discriminant(const Int& D);

struct LocalFactor {
  long l = 0;
  long conductor = 0;
  long level_exponent = 0;
  Int unit_index = 1;
  Rational value;
};

struct RhsTerm {
  long trace = 0;
  Int det;
  std::string type;  // ordinary, supersingular, central
  Rational c1, c2, O, TO;
  Rational value;
  std::vector<LocalFactor> locals;
  std::string delta;  // matrix used at p
};

struct RhsOptions {
  CentralizerMeasure measure = CentralizerMeasure::maximal_order;
  unsigned jobs = 1;
  long depth = 3;
  std::size_t cap = 200000;
  // Negative control: rescales c1 without the matching change in O.
  bool corrupt_normalization = false;
};

struct PcfReport {
  CurveCountRequest request;
  bool has_lhs = false;
  Int lhs;
  std::vector<RhsTerm> terms;
  std::vector<std::string> skipped;  // gamma0 without a matching delta, with reason
  Rational rhs_total;
  bool match = false;
  std::map<std::string, double> timings;  // seconds
};

PcfReport rhs_assemble(const CurveCountRequest& req, const RhsOptions& opts = {});
PcfReport compare(const CurveCountRequest& req, const RhsOptions& opts = {});

}  // namespace klab
