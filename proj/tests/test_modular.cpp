#include "doctest.h"
#include "klab/modular.hpp"
#include <set>

using namespace klab;

namespace {

CurveCountRequest req(long p, int m, long N, CurveKind kind = CurveKind::full) {
  CurveCountRequest r;
  r.p = p;
  r.m = m;
  r.N = N;
  r.kind = kind;
  return r;
}

}  // namespace

TEST_CASE("finite field tables") {
  for (auto [p, m] : {std::pair{5L, 1}, std::pair{5L, 2}, std::pair{7L, 2}, std::pair{3L, 3}}) {
    FiniteField F(p, m);
    long q = F.size();
    for (int a = 1; a < q; ++a) {
      CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.add(a, F.neg(a)) == 0);
    }
    long squares = 0;
    for (int a = 1; a < q; ++a)
      if (F.sqrt(a) >= 0) {
        ++squares;
        CHECK(F.mul(F.sqrt(a), F.sqrt(a)) == a);
      }
    CHECK(squares == (q - 1) / 2);
    CHECK(F.pow(F.generator(), q - 1) == 1);
    for (long d = 1; d < q - 1; ++d)
      if ((q - 1) % d == 0) CHECK(F.pow(F.generator(), d) != 1);
    // Frobenius is additive.
    for (int a = 0; a < q; a += 3)
      for (int b = 0; b < q; b += 5) CHECK(F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p)));
  }
}

TEST_CASE("class numbers from reduced forms") {
  auto c4 = class_number(-4);
  CHECK(c4.h == 1);
  CHECK(c4.w == 4);
  auto c3 = class_number(-3);
  CHECK(c3.h == 1);
  CHECK(c3.w == 6);
  auto c23 = class_number(-23);
  CHECK(c23.h == 3);
  CHECK(c23.w == 2);
  CHECK(class_number(-47).h == 5);
  CHECK(class_number(-20).h == 2);
  CHECK(class_number(-16).h == 1);  // non-maximal order Z[2i]
  CHECK_THROWS(class_number(-5));
  CHECK_THROWS(class_number(4));
}

TEST_CASE("fundamental discriminants") {
  CHECK(fundamental_discriminant(-16) == std::pair<Int, Int>(2, -4));
  CHECK(fundamental_discriminant(-12) == std::pair<Int, Int>(2, -3));
  CHECK(fundamental_discriminant(-99) == std::pair<Int, Int>(3, -11));
  CHECK(fundamental_discriminant(-20) == std::pair<Int, Int>(1, -20));
  CHECK(fundamental_discriminant(-144) == std::pair<Int, Int>(6, -4));
}

TEST_CASE("request validation") {
  CHECK_THROWS_WITH(count_points(req(5, 1, 1)), "level not neat");
  CHECK_THROWS_WITH(count_points(req(5, 1, 2)), "level not neat");
  CHECK_THROWS_WITH(count_points(req(5, 1, 3, CurveKind::point)), "level not neat");
  CHECK_THROWS(count_points(req(5, 1, 10)));
  CHECK_THROWS(count_points(req(6, 1, 3)));
}

TEST_CASE("the two curve enumerations agree") {
  for (long p : {5L, 7L, 11L, 13L})
    for (long N : {3L, 4L, 5L})
      for (auto kind : {CurveKind::full, CurveKind::point}) {
        if (N % p == 0 || (kind == CurveKind::point && N < 4)) continue;
        auto a = count_points_detail(req(p, 1, N, kind), CountStrategy::weierstrass_pairs);
        auto b = count_points_detail(req(p, 1, N, kind), CountStrategy::j_invariant_twists);
        CHECK(a.count == b.count);
        CHECK(a.by_trace == b.by_trace);
        CHECK(a.mass == b.mass);
      }
  for (long N : {3L, 4L}) {
    auto a = count_points_detail(req(7, 2, N), CountStrategy::weierstrass_pairs);
    auto b = count_points_detail(req(7, 2, N), CountStrategy::j_invariant_twists);
    CHECK(a.count == b.count);
    CHECK(a.by_trace == b.by_trace);
  }
}

TEST_CASE("structural checks on point counts") {
  for (long p : {5L, 7L, 13L})
    for (int m : {1, 2})
      for (long N : {3L, 4L}) {
        auto r = req(p, m, N);
        Int c = count_points(r);
        Int gl2 = N == 3 ? 48 : 96;
        // Each class contributes |GL_2(Z/N)|/|Aut| with |Aut| dividing 12.
        CHECK(Int(12 * c) % gl2 == 0);
        // The Weil pairing forces mu_N into F_q.
        if ((r.q() - 1) % N != 0) CHECK(c == 0);
      }
  // Points over F_q persist over F_{q^2}.
  CHECK(count_points(req(7, 1, 3)) <= count_points(req(7, 2, 3)));
  CHECK(count_points(req(13, 1, 4)) <= count_points(req(13, 2, 4)));
  CHECK(count_points(req(5, 1, 4, CurveKind::point)) <= count_points(req(5, 2, 4, CurveKind::point)));
}

TEST_CASE("regression fixtures for brute-force counts") {
  CHECK(count_points(req(5, 1, 3)) == 0);
  CHECK(count_points(req(7, 1, 3)) == 8);
  CHECK(count_points(req(13, 1, 3)) == 20);
  CHECK(count_points(req(5, 2, 3)) == 44);
  CHECK(count_points(req(7, 1, 4, CurveKind::point)) == 5);
}

TEST_CASE("point-counting formula matches per trace") {
  struct Case {
    long p;
    int m;
    long N;
    CurveKind kind;
  };
  for (auto c : {Case{7, 1, 3, CurveKind::full}, Case{13, 1, 4, CurveKind::full}, Case{5, 2, 3, CurveKind::full},
                 Case{5, 2, 6, CurveKind::full}, Case{7, 2, 4, CurveKind::full}, Case{11, 1, 5, CurveKind::point},
                 Case{7, 1, 9, CurveKind::point}, Case{5, 2, 4, CurveKind::point}}) {
    auto r = req(c.p, c.m, c.N, c.kind);
    auto lhs = count_points_detail(r);
    auto rep = rhs_assemble(r);
    CHECK(rep.rhs_total.get_den() == 1);
    CHECK(rep.rhs_total == Rational(lhs.count));
    std::map<long, Rational> rhs;
    for (const auto& t : rep.terms) {
      rhs[t.trace] = t.value;
      CHECK(t.value == t.c1 * t.c2 * t.O * t.TO);
    }
    for (const auto& [a, v] : lhs.by_trace) CHECK(rhs[a] == v);
    auto alt = rhs_assemble(r, RhsOptions{CentralizerMeasure::generated_order});
    CHECK(alt.rhs_total == rep.rhs_total);
  }
}

TEST_CASE("compare flags a corrupted normalization") {
  auto good = compare(req(7, 2, 3));
  CHECK(good.match);
  CHECK(good.lhs == 92);
  RhsOptions bad;
  bad.corrupt_normalization = true;
  auto broken = compare(req(7, 2, 3), bad);
  CHECK_FALSE(broken.match);
}

TEST_CASE("term types and supersingular support") {
  auto rep = rhs_assemble(req(5, 2, 3));
  std::set<std::string> types;
  for (const auto& t : rep.terms) types.insert(t.type);
  CHECK(types.count("ordinary"));
  CHECK(types.count("central"));
  CHECK(types.count("supersingular"));
  // x^2 + 25 is split at 5, so no sigma-conjugacy class has it as norm.
  bool skipped_zero = false;
  for (const auto& s : rep.skipped) skipped_zero |= s.rfind("a=0:", 0) == 0;
  CHECK(skipped_zero);
  auto rep7 = rhs_assemble(req(7, 2, 3));
  bool has_zero = false;
  for (const auto& t : rep7.terms) has_zero |= t.trace == 0;
  CHECK(has_zero);
}
