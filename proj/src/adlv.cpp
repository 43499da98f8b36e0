#include "klab/adlv.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace klab {

namespace {

Padic p_power(const PadicContextPtr& ctx, long e) { return Padic::from_coefficients(ctx, e, {Int(1)}); }

Int int_pow(long b, long e) {
  Int r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

long int_valuation(Int x, long p) {
  if (x == 0) throw std::invalid_argument("valuation of zero");
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// Integer coefficients of an integral element, each taken modulo p^e.
std::vector<Int> digits_mod(const Padic& x, long e) {
  const auto& ctx = x.context();
  std::vector<Int> out(ctx->degree, Int(0));
  if (x.is_zero()) {
    if (x.valuation() < e) throw std::domain_error("insufficient precision");
    return out;
  }
  if (x.valuation() < 0) throw std::invalid_argument("element is not integral");
  if (x.valuation() >= e) return out;
  if (x.absolute_precision() < e) throw std::domain_error("insufficient precision");
  Int m = int_pow(ctx->p, e);
  Int pv = int_pow(ctx->p, x.valuation());
  for (int j = 0; j < ctx->degree; ++j) {
    Int c = Int(static_cast<long>(x.unit_coefficients()[j])) * pv;
    c %= m;
    if (c < 0) c += m;
    out[j] = c;
  }
  return out;
}

Padic reduce_mod(const Padic& x, long e) {
  return Padic::from_coefficients(x.context(), 0, digits_mod(x, e));
}

// All elements of Z_{p^n}/p^e as coefficient vectors with digits in [0, p^e).
std::vector<Padic> residues(const PadicContextPtr& ctx, long e, bool units_only = false) {
  std::vector<Padic> out;
  if (e <= 0) {
    if (!units_only) out.push_back(Padic::zero(ctx));
    return out;
  }
  const long m = int_pow(ctx->p, e).get_si();
  std::vector<long> digit(ctx->degree, 0);
  while (true) {
    bool unit = false;
    for (long c : digit)
      if (c % ctx->p) unit = true;
    if (!units_only || unit) {
      std::vector<Int> coeffs(digit.begin(), digit.end());
      out.push_back(Padic::from_coefficients(ctx, 0, coeffs));
    }
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == m) digit[k++] = 0;
    if (k == digit.size()) break;
  }
  return out;
}

void scale_column(PadicMatrix& m, std::size_t j, const Padic& c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = m(i, j) * c;
}

// col_dst -= k * col_src
void sub_column(PadicMatrix& m, std::size_t dst, std::size_t src, const Padic& k) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) = m(i, dst) - k * m(i, src);
}

void swap_columns(PadicMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

PadicMatrix submatrix(const PadicMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  PadicMatrix s(m.context(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
  return s;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::string digits_key(const std::vector<Int>& d) {
  std::string s;
  for (const auto& x : d) s += x.get_str() + ",";
  return s;
}

}  // namespace

LatticeHNF lattice_hnf(const PadicMatrix& basis) {
  const auto& ctx = basis.context();
  const std::size_t d = basis.rows(), m = basis.cols();
  if (m < d) throw std::invalid_argument("lattice needs at least d generators");
  LatticeHNF out;
  out.basis = basis;
  out.shift = basis.min_valuation();
  if (out.shift >= Padic::kExact) throw std::domain_error("insufficient precision");
  PadicMatrix b = basis.scaled(p_power(ctx, -out.shift));
  const std::size_t extra = m - d;
  for (std::size_t ii = d; ii-- > 0;) {
    const std::size_t target = ii + extra;
    std::size_t piv = m;
    for (std::size_t j = 0; j <= target; ++j)
      if (!b(ii, j).is_zero() && (piv == m || b(ii, j).valuation() < b(ii, piv).valuation())) piv = j;
    if (piv == m) throw std::domain_error("insufficient precision");
    swap_columns(b, piv, target);
    const long v = b(ii, target).valuation();
    Padic unit = b(ii, target) * p_power(ctx, -v);
    scale_column(b, target, unit.inverse());
    b(ii, target) = p_power(ctx, v);
    for (std::size_t j = 0; j < target; ++j) {
      if (b(ii, j).is_zero()) {
        b(ii, j) = Padic::zero(ctx);
        continue;
      }
      Padic k = b(ii, j) / b(ii, target);
      sub_column(b, j, target, k);
      b(ii, j) = Padic::zero(ctx);
    }
  }
  PadicMatrix h(ctx, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) h(i, j) = b(i, j + extra);
  out.exponents.resize(d);
  for (std::size_t i = 0; i < d; ++i) out.exponents[i] = h(i, i).valuation();
  // Reduce above the diagonal, bottom row first so finished rows stay put.
  for (std::size_t i = d; i-- > 0;)
    for (std::size_t j = i + 1; j < d; ++j) {
      Padic x = h(i, j);
      Padic r = reduce_mod(x, out.exponents[i]);
      Padic diff = x - r;
      if (!diff.is_zero()) sub_column(h, j, i, diff / h(i, i));
      h(i, j) = r;
    }
  std::ostringstream os;
  for (std::size_t i = 0; i < d; ++i) {
    os << out.exponents[i] << ":";
    for (std::size_t j = i + 1; j < d; ++j) os << digits_key(digits_mod(h(i, j), out.exponents[i])) << ";";
    os << "|";
  }
  out.class_key = os.str();
  out.key = std::to_string(out.shift) + "#" + out.class_key;
  out.basis = h.scaled(p_power(ctx, out.shift));
  return out;
}

std::vector<long> relative_position(const PadicMatrix& b1, const PadicMatrix& b2) {
  const std::size_t d = b1.rows();
  PadicMatrix mm = b1.inverse() * b2;
  std::vector<long> delta(d + 1, 0);
  for (std::size_t k = 1; k <= d; ++k) {
    long best = Padic::kExact;
    for_each_subset(d, k, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(d, k, [&](const std::vector<std::size_t>& cols) {
        Padic m = k == 1 ? mm(rows[0], cols[0]) : submatrix(mm, rows, cols).determinant();
        best = std::min(best, m.valuation());
      });
    });
    if (best >= Padic::kExact) throw std::domain_error("insufficient precision");
    delta[k] = best;
  }
  std::vector<long> e(d);
  for (std::size_t k = 0; k < d; ++k) e[k] = delta[k + 1] - delta[k];
  std::sort(e.rbegin(), e.rend());
  return e;
}

long vertex_distance(const PadicMatrix& b1, const PadicMatrix& b2) {
  auto e = relative_position(b1, b2);
  return e.front() - e.back();
}

std::vector<PadicMatrix> tree_neighbours(const PadicMatrix& basis) {
  const auto& ctx = basis.context();
  std::vector<PadicMatrix> out;
  for (const auto& c : residues(ctx, 1)) {
    PadicMatrix step(ctx, 2, 2);
    step(0, 0) = Padic::from_int(ctx, 1);
    step(1, 0) = c;
    step(0, 1) = Padic::zero(ctx);
    step(1, 1) = p_power(ctx, 1);
    out.push_back(basis * step);
  }
  out.push_back(basis * PadicMatrix::p_power_diagonal(ctx, {1, 0}));
  return out;
}

std::vector<LatticeHNF> enumerate_lattices(PadicContextPtr ctx, std::size_t d, long r, std::size_t cap) {
  if (d == 0) throw std::invalid_argument("rank must be positive");
  if (r < 0) throw std::invalid_argument("depth must be non-negative");
  const long top = 2 * r;
  std::vector<LatticeHNF> out;
  // Hermite forms of M = p^r L with p^{2r} L0 <= M <= L0, built column by
  // column; containment of p^{2r} e_j is solved by back substitution so only
  // admissible entries are generated.
  PadicMatrix h(ctx, d, d);
  std::vector<long> e(d, 0);
  const Padic scale = p_power(ctx, -r);
  std::function<void(std::size_t)> column;
  std::function<void(std::size_t, std::size_t, std::vector<Padic>&)> entry;

  column = [&](std::size_t j) {
    if (j == d) {
      if (out.size() >= cap) throw std::runtime_error("enumeration cap exceeded");
      out.push_back(lattice_hnf(h.scaled(scale)));
      return;
    }
    for (long ej = 0; ej <= top; ++ej) {
      e[j] = ej;
      for (std::size_t i = 0; i < d; ++i) h(i, j) = Padic::zero(ctx);
      h(j, j) = p_power(ctx, ej);
      // x[k] are the coefficients expressing p^{2r} e_j in the columns.
      std::vector<Padic> x(d, Padic::zero(ctx));
      x[j] = p_power(ctx, top - ej);
      if (j == 0) {
        column(1);
      } else {
        entry(j, j - 1, x);
      }
    }
  };

  // Choose h(i, j) for the current column j, rows i = j-1 down to 0.
  entry = [&](std::size_t j, std::size_t i, std::vector<Padic>& x) {
    Padic s = Padic::zero(ctx);
    for (std::size_t k = i + 1; k < j; ++k) s = s + x[k] * h(i, k);
    const long ei = e[i];
    const long kx = top - e[j];
    std::vector<Padic> choices;
    if (ei == 0) {
      choices.push_back(Padic::zero(ctx));
    } else if (kx >= ei) {
      if (!s.is_zero() && s.valuation() < ei) return;
      choices = residues(ctx, ei);
    } else {
      // p^kx * h + s = 0 mod p^ei
      if (!s.is_zero() && s.valuation() < kx) return;
      Padic base = s.is_zero() ? Padic::zero(ctx) : reduce_mod(-(s * p_power(ctx, -kx)), ei - kx);
      for (const auto& t : residues(ctx, kx)) choices.push_back(reduce_mod(base + t * p_power(ctx, ei - kx), ei));
    }
    for (const auto& c : choices) {
      h(i, j) = c;
      Padic total = x[j] * c + s;
      std::vector<Padic> x2 = x;
      x2[i] = total.is_zero() ? Padic::zero(ctx) : -(total * p_power(ctx, -ei));
      if (i == 0) {
        column(j + 1);
      } else {
        entry(j, i - 1, x2);
      }
    }
    h(i, j) = Padic::zero(ctx);
  };

  column(0);
  return out;
}

std::vector<LatticeHNF> enumerate_vertices(PadicContextPtr ctx, long r, std::size_t cap) {
  std::vector<LatticeHNF> out;
  auto push = [&](const Padic& a, const Padic& c, const Padic& b) {
    if (out.size() >= cap) throw std::runtime_error("enumeration cap exceeded");
    PadicMatrix m(ctx, 2, 2);
    m(0, 0) = a;
    m(0, 1) = c;
    m(1, 0) = Padic::zero(ctx);
    m(1, 1) = b;
    out.push_back(lattice_hnf(m));
  };
  const Padic one = Padic::from_int(ctx, 1);
  for (long k = 0; k <= r; ++k) {
    push(one, Padic::zero(ctx), p_power(ctx, k));
    if (k == 0) continue;
    for (const auto& c : residues(ctx, k)) push(p_power(ctx, k), c, one);
    for (long e0 = 1; e0 < k; ++e0)
      for (const auto& c : residues(ctx, e0, true)) push(p_power(ctx, e0), c, p_power(ctx, k - e0));
  }
  return out;
}

namespace {

bool in_window(const PadicMatrix& basis, long r) {
  auto e = relative_position(PadicMatrix::identity(basis.context(), basis.rows()), basis);
  return e.front() <= r && e.back() >= -r;
}

std::vector<LatticeHNF> adlv_filter(const PadicMatrix& b, const std::vector<long>& mu, long depth, bool homothety,
                                    std::size_t cap) {
  std::vector<LatticeHNF> pts;
  std::set<std::string> seen;
  // Modulo homothety the rank-two window is the ball of radius 2 * depth in the tree.
  auto candidates = homothety && b.rows() == 2 ? enumerate_vertices(b.context(), 2 * depth, cap)
                                               : enumerate_lattices(b.context(), b.rows(), depth, cap);
  for (auto& l : candidates) {
    if (relative_position(l.basis, b * l.basis.frobenius()) != mu) continue;
    if (!seen.insert(homothety ? l.class_key : l.key).second) continue;
    pts.push_back(std::move(l));
  }
  return pts;
}

}  // namespace

AdlvReport adlv_points(const PadicMatrix& b, const std::vector<long>& mu_in, long depth, bool modulo_homothety,
                       std::size_t cap) {
  if (b.rows() != b.cols() || mu_in.size() != b.rows()) throw std::invalid_argument("mu must have one entry per row");
  std::vector<long> mu = mu_in;
  std::sort(mu.rbegin(), mu.rend());
  AdlvReport rep;
  rep.depth_used = depth;
  rep.points = adlv_filter(b, mu, depth, modulo_homothety, cap);
  rep.count_next_depth = adlv_filter(b, mu, depth + 1, modulo_homothety, cap).size();
  rep.saturated = rep.count_next_depth == rep.points.size();
  std::set<std::string> keys;
  for (const auto& l : rep.points) keys.insert(modulo_homothety ? l.class_key : l.key);
  const PadicMatrix norm = sigma_norm(b, b.context()->degree);
  rep.frobenius_stable = true;
  for (const auto& l : rep.points) {
    PadicMatrix img = norm * l.basis;
    if (!modulo_homothety && !in_window(img, depth)) continue;
    LatticeHNF h = lattice_hnf(img);
    if (modulo_homothety) {
      if (!keys.count(h.class_key) && in_window(h.basis.scaled(p_power(b.context(), -h.shift)), depth))
        rep.frobenius_stable = false;
    } else if (!keys.count(h.key)) {
      rep.frobenius_stable = false;
    }
  }
  return rep;
}

LocalType classify_quadratic(const Int& trace, const Int& det, long p, bool central) {
  if (central) return LocalType::central;
  Int disc = trace * trace - 4 * det;
  if (disc == 0) throw std::invalid_argument("non-semisimple element");
  long v = int_valuation(disc, p);
  if (v % 2) return LocalType::ramified;
  Int u = disc;
  for (long i = 0; i < v; ++i) u /= p;
  if (p == 2) {
    Int r = u % 8;
    if (r < 0) r += 8;
    if (r == 1) return LocalType::split;
    if (r == 5) return LocalType::inert;
    return LocalType::ramified;
  }
  Int leg;
  Int pp = p;
  mpz_powm(leg.get_mpz_t(), Int(u % pp + pp).get_mpz_t(), Int((p - 1) / 2).get_mpz_t(), pp.get_mpz_t());
  return leg == 1 ? LocalType::split : LocalType::inert;
}

std::string to_string(LocalType t) {
  switch (t) {
    case LocalType::central: return "central";
    case LocalType::split: return "split";
    case LocalType::inert: return "inert";
    case LocalType::ramified: return "ramified";
  }
  return "?";
}

namespace {

Int rational_to_int(const Rational& r) {
  if (r.get_den() != 1) throw std::domain_error("expected an integral value");
  return r.get_num();
}

// Type of the field generated by a 2x2 matrix with characteristic polynomial over Q_p.
LocalType matrix_local_type(const PadicMatrix& m, const std::vector<Padic>& cp) {
  const auto& ctx = m.context();
  bool central = m(0, 1).is_zero() && m(1, 0).is_zero() && m(0, 0).equals(m(1, 1));
  if (central) return LocalType::central;
  Padic c0 = cp[0], c1 = cp[1];
  long s = 0;
  if (!c1.is_zero() && c1.valuation() < 0) s = std::max(s, -c1.valuation());
  if (!c0.is_zero() && c0.valuation() < 0) s = std::max(s, (-c0.valuation() + 1) / 2);
  Padic ps = p_power(ctx, s);
  Int a = rational_to_int((-(c1 * ps)).coefficients()[0]);
  Int d = rational_to_int((c0 * ps * ps).coefficients()[0]);
  return classify_quadratic(a, d, ctx->p, false);
}

}  // namespace

TwistedOrbitalIntegral twisted_orbital_integral(const PadicMatrix& delta, const std::vector<long>& mu_in,
                                                const TwistedOrbitalOptions& opts) {
  const auto& ctx = delta.context();
  const std::size_t d = delta.rows();
  if (delta.cols() != d || mu_in.size() != d) throw std::invalid_argument("mu must have one entry per row");
  TwistedOrbitalIntegral res;
  if (d == 1) {
    res.finite = true;
    res.points = delta(0, 0).valuation() == mu_in[0] ? 1 : 0;
    res.value = Rational(static_cast<long>(res.points));
    res.counts_by_radius = {res.points};
    return res;
  }
  if (d != 2) throw std::invalid_argument("twisted orbital integrals are implemented for d <= 2");
  std::vector<long> mu = mu_in;
  std::sort(mu.rbegin(), mu.rend());
  const long k = mu[0] - mu[1];

  NormResult nr = degree_n_norm(delta);
  if (!nr.charpoly_in_base_field) throw std::domain_error("insufficient precision");
  res.norm_type = matrix_local_type(nr.norm, nr.charpoly);
  if (delta.determinant().valuation() != mu[0] + mu[1]) {
    res.finite = true;
    res.value = 0;
    return res;
  }

  auto displacement = [&](const PadicMatrix& b) {
    auto e = relative_position(b, delta * b.frobenius());
    return e[0] - e[1];
  };
  const PadicMatrix origin = PadicMatrix::identity(ctx, 2);

  // Displacement is convex along geodesics, so walking downhill reaches the
  // minimal set; beyond it nothing can satisfy the condition.
  PadicMatrix cur = origin;
  long disp = displacement(cur);
  std::size_t steps = 0;
  while (disp > k) {
    bool moved = false;
    for (const auto& nb : tree_neighbours(cur)) {
      long dn = displacement(nb);
      if (dn < disp) {
        cur = lattice_hnf(nb).basis;
        disp = dn;
        moved = true;
        break;
      }
    }
    if (!moved || ++steps > opts.cap) {
      res.finite = true;
      res.value = 0;
      return res;
    }
  }
  res.radius_start = vertex_distance(origin, cur);

  // Breadth-first search through the sublevel set {displacement <= k}, which is
  // a subtree.  `limit` bounds the distance to the standard vertex.
  struct Found {
    long dist;
    bool hit;
  };
  auto explore = [&](long limit, std::size_t budget, bool& complete) {
    std::vector<Found> found;
    std::unordered_set<std::string> seen;
    std::deque<PadicMatrix> queue;
    LatticeHNF start = lattice_hnf(cur);
    seen.insert(start.class_key);
    queue.push_back(start.basis);
    found.push_back({res.radius_start, disp == k});
    complete = true;
    while (!queue.empty()) {
      PadicMatrix v = queue.front();
      queue.pop_front();
      for (const auto& nb : tree_neighbours(v)) {
        LatticeHNF h = lattice_hnf(nb);
        if (seen.count(h.class_key)) continue;
        long dist = vertex_distance(origin, h.basis);
        if (limit >= 0 && dist > limit) continue;
        long dn = displacement(h.basis);
        seen.insert(h.class_key);
        if (dn > k) continue;
        if (found.size() >= budget) {
          complete = false;
          return found;
        }
        found.push_back({dist, dn == k});
        queue.push_back(h.basis);
      }
    }
    return found;
  };

  const long r0 = res.radius_start + opts.depth;
  bool complete = false;
  if (res.norm_type != LocalType::split) {
    auto found = explore(-1, opts.cap, complete);
    if (!complete) throw std::runtime_error("infinite orbit suspected");
    res.finite = true;
    for (const auto& f : found) res.points += f.hit ? 1 : 0;
    long maxdist = 0;
    for (const auto& f : found) maxdist = std::max(maxdist, f.dist);
    for (long r = res.radius_start; r <= std::max(r0, maxdist); ++r) {
      std::size_t c = 0;
      for (const auto& f : found) c += (f.hit && f.dist <= r) ? 1 : 0;
      res.counts_by_radius.push_back(c);
    }
    // The centralizer modulo p^Z times its maximal compact subgroup has order
    // two exactly when it contains elements of odd determinant valuation.
    res.ramification = (res.norm_type == LocalType::ramified || res.norm_type == LocalType::central) ? 2 : 1;
    res.value = Rational(static_cast<long>(res.points), res.ramification);
    res.value.canonicalize();
    return res;
  }
  auto found = explore(r0 + 2, opts.cap, complete);
  if (!complete) throw std::runtime_error("enumeration cap exceeded");
  for (long r = res.radius_start; r <= r0 + 2; ++r) {
    std::size_t c = 0;
    for (const auto& f : found) c += (f.hit && f.dist <= r) ? 1 : 0;
    res.counts_by_radius.push_back(c);
  }
  const auto& n = res.counts_by_radius;
  const std::size_t m = n.size();
  long d1 = static_cast<long>(n[m - 1]) - static_cast<long>(n[m - 2]);
  long d2 = static_cast<long>(n[m - 2]) - static_cast<long>(n[m - 3]);
  if (d1 != d2 || d1 <= 0) throw std::runtime_error("infinite orbit suspected");
  // Linear growth: each unit of translation along the axis adds one point at
  // either end of the ball.
  res.finite = false;
  res.value = Rational(d1, 2);
  res.value.canonicalize();
  return res;
}

Int gl2_order(long l, long e) {
  if (e == 0) return 1;
  return int_pow(l, 4 * (e - 1)) * Int((l * l - 1) * (l * l - l));
}

Int fixed_level_structures(const IntMatrix& m, long l, const LocalLevel& level) {
  if (level.exponent == 0) return 1;
  const Int mod = int_pow(l, level.exponent);
  auto red = [&](const Int& x) {
    Int r = x % mod;
    if (r < 0) r += mod;
    return r;
  };
  if (level.kind == LevelKind::full) {
    bool ident = red(m(0, 0) - 1) == 0 && red(m(1, 1) - 1) == 0 && red(m(0, 1)) == 0 && red(m(1, 0)) == 0;
    return ident ? gl2_order(l, level.exponent) : Int(0);
  }
  const long md = mod.get_si();
  Int count = 0;
  for (long x = 0; x < md; ++x)
    for (long y = 0; y < md; ++y) {
      if (x % l == 0 && y % l == 0) continue;
      if (red((m(0, 0) - 1) * x + m(0, 1) * y) == 0 && red(m(1, 0) * x + (m(1, 1) - 1) * y) == 0) ++count;
    }
  return count;
}

OrbitalIntegralReport orbital_integral_gl2(const IntMatrix& gamma, long l, const LocalLevel& level,
                                           CentralizerMeasure measure) {
  if (gamma.rows() != 2 || gamma.cols() != 2) throw std::invalid_argument("gamma must be 2x2");
  const Int a = gamma(0, 0) + gamma(1, 1);
  const Int det = gamma.determinant();
  if (det % l == 0) throw std::invalid_argument("gamma must lie in GL_2(Z_l)");
  OrbitalIntegralReport rep;
  if (gamma(0, 1) == 0 && gamma(1, 0) == 0 && gamma(0, 0) == gamma(1, 1)) {
    rep.type = LocalType::central;
    rep.value = Rational(fixed_level_structures(gamma, l, level));
    rep.fiber_vertices = 1;
    return rep;
  }
  rep.type = classify_quadratic(a, det, l, false);

  // Largest c with (gamma - r)/l^c integral over Z_l for some integer r.
  long c = 0;
  Int shift = 0;
  while (true) {
    const Int lc = int_pow(l, c + 1), l2c = lc * lc;
    bool found = false;
    for (Int r = 0; r < lc; ++r) {
      Int t = a - 2 * r, n = r * r - a * r + det;
      if (t % lc == 0 && n % l2c == 0) {
        shift = r;
        found = true;
        break;
      }
    }
    if (!found) break;
    ++c;
  }
  rep.conductor = c;

  auto ctx = make_padic_context(l, 1);
  const PadicMatrix g = PadicMatrix::from_integers(ctx, gamma);
  PadicMatrix eta = g - PadicMatrix::identity(ctx, 2).scaled(Padic::from_int(ctx, shift));
  eta = eta.scaled(p_power(ctx, -c));

  auto order_vertex = [&](const PadicMatrix& b) {
    PadicMatrix gens(ctx, 2, 4);
    PadicMatrix eb = eta * b;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        gens(i, j) = b(i, j);
        gens(i, j + 2) = eb(i, j);
      }
    return lattice_hnf(gens).class_key;
  };
  const PadicMatrix origin = PadicMatrix::identity(ctx, 2);
  const std::string base = order_vertex(origin);

  // Fixed vertices form a subtree through the standard vertex; the fiber over
  // `base` lies within 2c of it.
  const long limit = 2 * c + 2;
  std::map<long, Rational> by_dist;
  std::unordered_set<std::string> seen;
  std::deque<std::pair<PadicMatrix, long>> queue;
  seen.insert(lattice_hnf(origin).class_key);
  queue.push_back({origin, 0});
  while (!queue.empty()) {
    auto [v, dist] = queue.front();
    queue.pop_front();
    if (order_vertex(v) == base) {
      PadicMatrix local = v.inverse() * g * v;
      IntMatrix im(2, 2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) im(i, j) = rational_to_int(Rational(local(i, j).coefficients()[0]));
      by_dist[dist] += Rational(fixed_level_structures(im, l, level));
      ++rep.fiber_vertices;
    }
    if (dist == limit) continue;
    for (const auto& nb : tree_neighbours(v)) {
      LatticeHNF h = lattice_hnf(nb);
      if (!seen.insert(h.class_key).second) continue;
      if (relative_position(h.basis, g * h.basis) != std::vector<long>{0, 0}) continue;
      queue.push_back({h.basis, dist + 1});
    }
  }
  Rational inner = 0, total = 0;
  for (const auto& [dist, w] : by_dist) {
    total += w;
    if (dist < limit) inner += w;
  }
  if (inner != total) throw std::runtime_error("orbital integral did not stabilize");

  if (c > 0) {
    // [O_K^x : Z_l[gamma]^x] by counting units of O_K / l^c.
    const Int lc = int_pow(l, c);
    const Int tr = a - 2 * shift;
    Int tre = tr / lc, nre = (shift * shift - a * shift + det) / (lc * lc);
    const long m = lc.get_si();
    Int units = 0, base_units = 0;
    for (long u = 0; u < m; ++u) {
      if (u % l) ++base_units;
      for (long v = 0; v < m; ++v) {
        Int nv = Int(u) * u + Int(u) * v * tre + Int(v) * v * nre;
        if (nv % l != 0) ++units;
      }
    }
    rep.unit_index = units / base_units;
  }
  rep.value = total;
  if (measure == CentralizerMeasure::generated_order) rep.value /= Rational(rep.unit_index);
  rep.value.canonicalize();
  return rep;
}

}  // namespace klab
