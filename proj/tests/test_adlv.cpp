#include <random>
#include <set>

#include "doctest.h"
#include "klab/adlv.hpp"
#include "padic_random.hpp"

using namespace klab;

namespace {

// Number of subgroups of (Z/m)^d, by closing every d-tuple of generators.
std::size_t subgroup_count(long m, std::size_t d) {
  long size = 1;
  for (std::size_t i = 0; i < d; ++i) size *= m;
  auto decode = [&](long x) {
    std::vector<long> v(d);
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = x % m;
      x /= m;
    }
    return v;
  };
  auto encode = [&](const std::vector<long>& v) {
    long x = 0;
    for (std::size_t i = d; i-- > 0;) x = x * m + v[i];
    return x;
  };
  std::set<std::vector<bool>> subgroups;
  std::vector<long> gens(d, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == d) {
      std::vector<bool> in(size, false);
      std::vector<long> members{0};
      in[0] = true;
      for (std::size_t i = 0; i < members.size(); ++i)
        for (long g : gens) {
          auto a = decode(members[i]), b = decode(g);
          for (std::size_t t = 0; t < d; ++t) a[t] = (a[t] + b[t]) % m;
          long s = encode(a);
          if (!in[s]) {
            in[s] = true;
            members.push_back(s);
          }
        }
      subgroups.insert(in);
      return;
    }
    for (long g = k ? gens[k - 1] : 0; g < size; ++g) {
      gens[k] = g;
      rec(k + 1);
    }
  };
  rec(0);
  return subgroups.size();
}

PadicMatrix mat2(PadicContextPtr ctx, const Padic& a, const Padic& b, const Padic& c, const Padic& d) {
  PadicMatrix m(ctx, 2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

// Classes within radius r of the standard vertex whose image under b sigma is adjacent.
std::size_t exhaustive_points(const PadicMatrix& delta, long r) {
  std::size_t n = 0;
  for (const auto& v : enumerate_vertices(delta.context(), r)) {
    auto e = relative_position(v.basis, delta * v.basis.frobenius());
    if (e == std::vector<long>{1, 0}) ++n;
  }
  return n;
}

// sum_{j <= c} [O_K^x : (Z + l^j O_K)^x] in closed form.
Rational order_sum(LocalType t, long l, long c) {
  Rational s = 1;
  long pw = 1;
  for (long j = 1; j <= c; ++j) {
    if (t == LocalType::inert) s += (l + 1) * pw;
    if (t == LocalType::split) s += (l - 1) * pw;
    pw *= l;
    if (t == LocalType::ramified) s += pw;
  }
  return s;
}

}  // namespace

TEST_CASE("lattice counts in rank one and subgroup oracle") {
  for (long p : {2L, 3L})
    for (long r = 0; r <= 3; ++r) CHECK(enumerate_lattices(make_padic_context(p, 1), 1, r).size() == std::size_t(2 * r + 1));
  CHECK(enumerate_lattices(make_padic_context(2, 2), 1, 2).size() == 5);
  CHECK(enumerate_lattices(make_padic_context(2, 1), 2, 1).size() == subgroup_count(4, 2));
  CHECK(enumerate_lattices(make_padic_context(3, 1), 2, 1).size() == subgroup_count(9, 2));
  CHECK(enumerate_lattices(make_padic_context(2, 1), 2, 2).size() == subgroup_count(16, 2));
  CHECK(enumerate_lattices(make_padic_context(2, 1), 3, 1).size() == subgroup_count(4, 3));
  CHECK_THROWS_WITH(enumerate_lattices(make_padic_context(2, 1), 2, 3, 50), "enumeration cap exceeded");
}

TEST_CASE("enumerated lattices are distinct and inside the window") {
  auto ctx = make_padic_context(3, 2);
  auto lats = enumerate_lattices(ctx, 2, 1);
  std::set<std::string> keys;
  for (const auto& l : lats) {
    keys.insert(l.key);
    auto e = relative_position(PadicMatrix::identity(ctx, 2), l.basis);
    CHECK(e.front() <= 1);
    CHECK(e.back() >= -1);
  }
  CHECK(keys.size() == lats.size());
}

TEST_CASE("vertex enumeration matches sphere sizes and tree distances") {
  for (auto [p, n] : {std::pair{2L, 1}, std::pair{3L, 1}, std::pair{2L, 2}}) {
    auto ctx = make_padic_context(p, n);
    long q = 1;
    for (int i = 0; i < n; ++i) q *= p;
    auto verts = enumerate_vertices(ctx, 3);
    std::vector<std::size_t> by(4, 0);
    std::set<std::string> keys;
    for (const auto& v : verts) {
      keys.insert(v.class_key);
      ++by[vertex_distance(PadicMatrix::identity(ctx, 2), v.basis)];
    }
    CHECK(keys.size() == verts.size());
    CHECK(by[0] == 1);
    for (long k = 1; k <= 3; ++k) {
      long expect = 1;
      for (long i = 1; i < k; ++i) expect *= q;
      CHECK(by[k] == std::size_t(expect * (q + 1)));
    }
    // Neighbours of every vertex are at distance one.
    for (const auto& nb : tree_neighbours(verts.back().basis)) CHECK(vertex_distance(verts.back().basis, nb) == 1);
  }
}

TEST_CASE("twisted orbital integrals in rank one") {
  auto ctx = make_padic_context(3, 2);
  PadicMatrix d(ctx, 1, 1);
  d(0, 0) = Padic::from_coefficients(ctx, 2, {Int(1), Int(1)});
  CHECK(twisted_orbital_integral(d, {2}).value == 1);
  CHECK(twisted_orbital_integral(d, {1}).value == 0);
}

TEST_CASE("basic twisted orbital integrals agree with exhaustive enumeration") {
  std::mt19937_64 rng(7);
  for (long p : {2L, 3L, 5L})
    for (int n : {1, 2}) {
      auto ctx = make_padic_context(p, n);
      std::vector<PadicMatrix> deltas;
      const Padic one = Padic::from_int(ctx, 1), zero = Padic::zero(ctx);
      const Padic pu = Padic::from_coefficients(ctx, 1, {Int(1)});
      deltas.push_back(mat2(ctx, zero, pu, one, zero));
      if (n == 2) {
        deltas.push_back(mat2(ctx, zero, Padic::from_coefficients(ctx, 1, {Int(1), Int(1)}), one, zero));
        deltas.push_back(mat2(ctx, zero, one, pu, zero));
      }
      for (const auto& d0 : deltas) {
        auto base = twisted_orbital_integral(d0, {1, 0});
        CHECK(base.finite);
        CHECK(base.points == exhaustive_points(d0, 3));
        Rational expect(long(base.points), base.ramification);
        expect.canonicalize();
        CHECK(base.value == expect);
        for (int trial = 0; trial < 2; ++trial) {
          PadicMatrix g = padic_random::integral_unit(ctx, rng, 2);
          PadicMatrix d1 = sigma_conjugate(d0, g);
          auto moved = twisted_orbital_integral(d1, {1, 0});
          CHECK(moved.value == base.value);
          CHECK(moved.points == exhaustive_points(d1, 3));
        }
      }
    }
}

TEST_CASE("twisted orbital integral values for the basic families") {
  auto ctx1 = make_padic_context(3, 1);
  const Padic one1 = Padic::from_int(ctx1, 1), zero1 = Padic::zero(ctx1);
  auto ram = twisted_orbital_integral(mat2(ctx1, zero1, Padic::from_int(ctx1, 3), one1, zero1), {1, 0});
  CHECK(ram.norm_type == LocalType::ramified);
  CHECK(ram.points == 2);
  CHECK(ram.value == 1);

  auto ctx = make_padic_context(5, 2);
  const Padic one = Padic::from_int(ctx, 1), zero = Padic::zero(ctx);
  auto central = twisted_orbital_integral(mat2(ctx, zero, one, Padic::from_int(ctx, 5), zero), {1, 0});
  CHECK(central.norm_type == LocalType::central);
  CHECK(central.value == 1);
  auto inert = twisted_orbital_integral(mat2(ctx, zero, Padic::from_coefficients(ctx, 1, {Int(0), Int(1)}), one, zero), {1, 0});
  CHECK(inert.norm_type == LocalType::inert);
  CHECK(inert.value == 2);
  CHECK(inert.counts_by_radius.back() == 2);
}

TEST_CASE("ordinary twisted orbital integral grows linearly") {
  for (int n : {1, 2}) {
    auto ctx = make_padic_context(3, n);
    PadicMatrix d = PadicMatrix::p_power_diagonal(ctx, {0, 1});
    d(0, 0) = Padic::from_coefficients(ctx, 0, {Int(2)});
    auto res = twisted_orbital_integral(d, {1, 0});
    CHECK_FALSE(res.finite);
    CHECK(res.norm_type == LocalType::split);
    CHECK(res.value == 1);
  }
}

TEST_CASE("empty and mismatched twisted orbital integrals") {
  auto ctx = make_padic_context(2, 1);
  PadicMatrix d = PadicMatrix::p_power_diagonal(ctx, {0, 1});
  CHECK(twisted_orbital_integral(d, {2, 0}).value == 0);
  // Points at distance one from the axis: p - 1 of them per translation step.
  CHECK(twisted_orbital_integral(d, {2, -1}).value == 1);
  PadicMatrix far = PadicMatrix::p_power_diagonal(ctx, {3, -2});
  CHECK(twisted_orbital_integral(far, {1, 0}).value == 0);
}

TEST_CASE("adlv points with saturation and Frobenius stability") {
  auto ctx = make_padic_context(2, 1);
  const Padic one = Padic::from_int(ctx, 1), zero = Padic::zero(ctx);
  auto rep = adlv_points(mat2(ctx, zero, Padic::from_int(ctx, 2), one, zero), {1, 0}, 1, true);
  CHECK(rep.points.size() == 2);
  CHECK(rep.saturated);
  CHECK(rep.frobenius_stable);
  auto lat = adlv_points(mat2(ctx, zero, Padic::from_int(ctx, 2), one, zero), {1, 0}, 1, false);
  CHECK(lat.points.size() == 5);
  CHECK_FALSE(lat.saturated);
  CHECK(lat.frobenius_stable);
}

TEST_CASE("local types of quadratic orders") {
  CHECK(classify_quadratic(0, 1, 3, false) == LocalType::inert);   // x^2 + 1
  CHECK(classify_quadratic(0, 1, 5, false) == LocalType::split);
  CHECK(classify_quadratic(0, 3, 3, false) == LocalType::ramified);
  CHECK(classify_quadratic(1, 1, 2, false) == LocalType::inert);   // disc -3
  CHECK(classify_quadratic(1, 2, 2, false) == LocalType::split);   // disc -7
  CHECK(classify_quadratic(0, 1, 2, false) == LocalType::ramified);
}

TEST_CASE("prime-to-p orbital integrals against order sums") {
  struct Case {
    long a, q, l;
  };
  for (auto [a, q, l] : {Case{0, 5, 2}, Case{2, 5, 2}, Case{1, 7, 3}, Case{0, 9, 2}, Case{3, 13, 3}, Case{4, 13, 3},
                          Case{0, 13, 2}, Case{6, 25, 2}, Case{1, 25, 3}, Case{0, 5, 3}}) {
    IntMatrix g{{0, -q}, {1, a}};
    auto rep = orbital_integral_gl2(g, l, LocalLevel{});
    CHECK(rep.value == order_sum(rep.type, l, rep.conductor));
    auto alt = orbital_integral_gl2(g, l, LocalLevel{}, CentralizerMeasure::generated_order);
    CHECK(alt.value * Rational(alt.unit_index) == rep.value);
    Rational top = order_sum(rep.type, l, rep.conductor) - order_sum(rep.type, l, rep.conductor - 1);
    if (rep.conductor > 0) CHECK(Rational(rep.unit_index) == top);
  }
}

TEST_CASE("level weights and central orbital integrals") {
  CHECK(gl2_order(2, 1) == 6);
  CHECK(gl2_order(3, 1) == 48);
  CHECK(gl2_order(2, 2) == 96);
  IntMatrix id{{1, 0}, {0, 1}};
  CHECK(fixed_level_structures(id, 3, {LevelKind::point, 1}) == 8);
  CHECK(fixed_level_structures(id, 2, {LevelKind::point, 2}) == 12);
  IntMatrix seven{{7, 0}, {0, 7}};
  CHECK(orbital_integral_gl2(seven, 3, {LevelKind::full, 1}).value == 48);
  CHECK(orbital_integral_gl2(seven, 2, {LevelKind::full, 2}).value == 0);
  // Frobenius x^2 - 2x + 5 is 1 + 2i, trivial on E[2] exactly when (g-1)/2 is integral on L.
  IntMatrix g{{0, -5}, {1, 2}};
  auto rep = orbital_integral_gl2(g, 2, {LevelKind::full, 1});
  CHECK(rep.value == 6);
}
