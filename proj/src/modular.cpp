#include "klab/modular.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>

#include "klab/kottwitz.hpp"
#include "klab/rootdata.hpp"

namespace klab {

std::string to_string(CurveKind k) { return k == CurveKind::full ? "Y" : "Y1"; }

CurveKind curve_kind_from_string(const std::string& s) {
  if (s == "Y" || s == "full" || s == "Y(N)") return CurveKind::full;
  if (s == "Y1" || s == "point" || s == "Y1(N)") return CurveKind::point;
  throw std::invalid_argument("unknown curve kind '" + s + "'");
}

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Prime powers l^e exactly dividing n.
std::vector<std::pair<long, long>> factor(long n) {
  std::vector<std::pair<long, long>> out;
  for (long l = 2; l * l <= n; ++l) {
    long e = 0;
    while (n % l == 0) {
      n /= l;
      ++e;
    }
    if (e) out.push_back({l, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

Int gl2_order_composite(long n) {
  Int r = 1;
  for (auto [l, e] : factor(n)) r *= gl2_order(l, e);
  return r;
}

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void CurveCountRequest::validate() const {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (p < 5) throw std::invalid_argument("short Weierstrass models need p >= 5");
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (N < 3 || (kind == CurveKind::point && N < 4)) throw std::invalid_argument("level not neat");
  if (N % p == 0) throw std::invalid_argument("level must be prime to p");
}

long CurveCountRequest::q() const {
  long r = 1;
  for (int i = 0; i < m; ++i) r *= p;
  return r;
}

FiniteField::FiniteField(long p, int m) : p_(p), m_(m), q_(1) {
  for (int i = 0; i < m; ++i) q_ *= p;
  if (q_ > 5000) throw std::invalid_argument("field too large for table arithmetic");
  using Poly = std::vector<long>;  // low degree first
  auto poly_mod = [&](Poly a, const Poly& f) {
    const std::size_t df = f.size() - 1;
    while (a.size() > df) {
      long c = a.back() % p;
      if (c) {
        const std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i <= df; ++i) a[shift + i] = ((a[shift + i] - c * f[i]) % p + p) % p;
      }
      a.pop_back();
    }
    return a;
  };
  // Monic f of degree m with no monic factor of degree <= m/2.
  Poly f;
  for (long code = 0;; ++code) {
    Poly cand(m + 1, 0);
    long x = code;
    for (int i = 0; i < m; ++i) {
      cand[i] = x % p;
      x /= p;
    }
    cand[m] = 1;
    if (x) throw std::logic_error("no irreducible polynomial found");
    bool irreducible = true;
    for (int k = 1; 2 * k <= m && irreducible; ++k) {
      long count = 1;
      for (int i = 0; i < k; ++i) count *= p;
      for (long gc = 0; gc < count && irreducible; ++gc) {
        Poly g(k + 1, 0);
        long y = gc;
        for (int i = 0; i < k; ++i) {
          g[i] = y % p;
          y /= p;
        }
        g[k] = 1;
        Poly r = poly_mod(cand, g);
        if (std::all_of(r.begin(), r.end(), [](long c) { return c == 0; })) irreducible = false;
      }
    }
    if (irreducible || m == 1) {
      f = cand;
      break;
    }
  }
  auto decode = [&](long e) {
    Poly d(m, 0);
    for (int i = 0; i < m; ++i) {
      d[i] = e % p;
      e /= p;
    }
    return d;
  };
  auto encode = [&](const Poly& d) {
    long e = 0;
    for (int i = m; i-- > 0;) e = e * p + (i < static_cast<int>(d.size()) ? d[i] : 0);
    return static_cast<int>(e);
  };
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  sqrt_.assign(q_, -1);
  std::vector<Poly> digits(q_);
  for (long a = 0; a < q_; ++a) digits[a] = decode(a);
  for (long a = 0; a < q_; ++a) {
    Poly n(m);
    for (int i = 0; i < m; ++i) n[i] = (p - digits[a][i]) % p;
    neg_[a] = encode(n);
    for (long b = 0; b < q_; ++b) {
      Poly s(m);
      for (int i = 0; i < m; ++i) s[i] = (digits[a][i] + digits[b][i]) % p;
      add_[a * q_ + b] = encode(s);
      Poly prod(2 * m - 1, 0);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p;
      mul_[a * q_ + b] = encode(poly_mod(prod, f));
    }
  }
  for (long a = 1; a < q_; ++a)
    for (long b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = static_cast<int>(b);
        break;
      }
  for (long b = 0; b < q_; ++b) {
    int s = mul_[b * q_ + b];
    if (sqrt_[s] < 0) sqrt_[s] = static_cast<int>(b);
  }
  for (long g = 1; g < q_; ++g) {
    long order = 1;
    int x = static_cast<int>(g);
    while (x != 1) {
      x = mul_[x * q_ + g];
      ++order;
    }
    if (order == q_ - 1) {
      generator_ = static_cast<int>(g);
      break;
    }
  }
}

int FiniteField::from_int(long x) const { return static_cast<int>(((x % p_) + p_) % p_); }

int FiniteField::pow(int a, long e) const {
  int r = 1;
  for (long i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

namespace {

struct CurvePoint {
  int x = 0, y = 0;
  bool inf = true;
};

CurvePoint add_points(const FiniteField& F, int A, const CurvePoint& P, const CurvePoint& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  int lambda;
  if (P.x == Q.x) {
    if (F.add(P.y, Q.y) == 0) return {};
    int num = F.add(F.mul(F.from_int(3), F.mul(P.x, P.x)), A);
    lambda = F.mul(num, F.inv(F.add(P.y, P.y)));
  } else {
    lambda = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)));
  }
  CurvePoint R;
  R.inf = false;
  R.x = F.sub(F.sub(F.mul(lambda, lambda), P.x), Q.x);
  R.y = F.sub(F.mul(lambda, F.sub(P.x, R.x)), P.y);
  return R;
}

struct CurveStructures {
  Int structures;
  long trace = 0;
};

// Level structures over F_q on y^2 = x^3 + A x + B.
CurveStructures curve_structures(const FiniteField& F, int A, int B, long N, CurveKind kind, const Int& gl2N) {
  const long q = F.size();
  std::vector<int> rhs(q);
  long points = 1;
  for (int x = 0; x < q; ++x) {
    rhs[x] = F.add(F.add(F.mul(F.mul(x, x), x), F.mul(A, x)), B);
    if (rhs[x] == 0)
      points += 1;
    else if (F.sqrt(rhs[x]) >= 0)
      points += 2;
  }
  CurveStructures out;
  out.trace = q + 1 - points;
  if (kind == CurveKind::full && ((q - 1) % N != 0 || points % (N * N) != 0)) return out;
  if (kind == CurveKind::point && points % N != 0) return out;
  // Order of each point, stopping once it exceeds N.
  long killed = 0, exact = 0;
  for (int x = 0; x < q; ++x) {
    int s = F.sqrt(rhs[x]);
    if (s < 0) continue;
    const int ys[2] = {s, F.neg(s)};
    for (int k = 0; k < (s == 0 ? 1 : 2); ++k) {
      CurvePoint P{x, ys[k], false}, R = P;
      long order = 1;
      while (!R.inf && order < N) {
        R = add_points(F, A, R, P);
        ++order;
      }
      if (!R.inf) continue;
      if (N % order == 0) ++killed;
      if (order == N) ++exact;
    }
  }
  ++killed;  // the identity
  if (kind == CurveKind::full)
    out.structures = killed == N * N ? gl2N : Int(0);
  else
    out.structures = exact;
  return out;
}

}  // namespace

PointCount count_points_detail(const CurveCountRequest& req, CountStrategy strategy) {
  req.validate();
  FiniteField F(req.p, req.m);
  const long q = F.size();
  const Int gl2N = gl2_order_composite(req.N);
  PointCount pc;
  auto nonsingular = [&](int A, int B) {
    int a3 = F.mul(F.mul(A, A), A), b2 = F.mul(B, B);
    return F.add(F.mul(F.from_int(4), a3), F.mul(F.from_int(27), b2)) != 0;
  };
  Rational total = 0;
  if (strategy == CountStrategy::weierstrass_pairs) {
    // Every class appears (q - 1)/|Aut| times among the pairs (A, B).
    Int pairs_with = 0;
    for (int A = 0; A < q; ++A)
      for (int B = 0; B < q; ++B) {
        if (!nonsingular(A, B)) continue;
        auto cs = curve_structures(F, A, B, req.N, req.kind, gl2N);
        if (cs.structures == 0) continue;
        total += Rational(cs.structures);
        pc.by_trace[cs.trace] += Rational(cs.structures, q - 1);
        ++pairs_with;
      }
    total /= Rational(q - 1);
    pc.mass = Rational(pairs_with, q - 1);
  } else {
    auto visit = [&](int A, int B, long aut) {
      auto cs = curve_structures(F, A, B, req.N, req.kind, gl2N);
      if (cs.structures == 0) return;
      Rational share(cs.structures, aut);
      total += share;
      pc.by_trace[cs.trace] += share;
      pc.mass += Rational(1, aut);
    };
    const int g = F.generator();
    int nonsquare = g;
    const int c1728 = F.from_int(1728);
    for (int j = 0; j < q; ++j) {
      if (j == 0) {
        long k = std::gcd(6L, q - 1);
        for (long i = 0; i < k; ++i) visit(0, F.pow(g, i), k);
      } else if (j == c1728) {
        long k = std::gcd(4L, q - 1);
        for (long i = 0; i < k; ++i) visit(F.pow(g, i), 0, k);
      } else {
        int t = F.sub(c1728, j);
        int A = F.mul(F.from_int(3), F.mul(j, t));
        int B = F.mul(F.from_int(2), F.mul(j, F.mul(t, t)));
        visit(A, B, 2);
        int c2 = F.mul(nonsquare, nonsquare);
        visit(F.mul(c2, A), F.mul(F.mul(c2, nonsquare), B), 2);
      }
    }
  }
  for (auto& [a, v] : pc.by_trace) v.canonicalize();
  total.canonicalize();
  pc.mass.canonicalize();
  if (total.get_den() != 1) throw std::runtime_error("point count is not integral: " + total.get_str());
  pc.count = total.get_num();
  return pc;
}

Int count_points(const CurveCountRequest& req, CountStrategy strategy) { return count_points_detail(req, strategy).count; }

QuadraticOrderData class_number(const Int& D) {
  Int r = D % 4;
  if (r < 0) r += 4;
  if (D >= 0 || (r != 0 && r != 1)) throw std::invalid_argument("invalid discriminant " + D.get_str());
  QuadraticOrderData out;
  out.discriminant = D;
  out.h = 0;
  const Int absd = -D;
  for (Int a = 1; 3 * a * a <= absd; ++a)
    for (Int b = -a + 1; b <= a; ++b) {
      Int num = b * b - D;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      Int g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g != 1) continue;
      ++out.h;
    }
  out.w = D == -3 ? 6 : D == -4 ? 4 : 2;
  return out;
}

std::pair<Int, Int> fundamental_discriminant(const Int& D) {
  Int d = D, f = 1;
  auto mod4 = [](const Int& x) {
    Int r = x % 4;
    if (r < 0) r += 4;
    return r;
  };
  for (Int l = 2; l * l <= abs(d); ++l) {
    Int l2 = l * l;
    while (d % l2 == 0 && (mod4(d / l2) == 0 || mod4(d / l2) == 1)) {
      d /= l2;
      f *= l;
    }
  }
  return {f, d};
}

namespace {

std::vector<Padic> unit_residues(const PadicContextPtr& ctx) {
  std::vector<Padic> out;
  const long p = ctx->p;
  std::vector<long> digit(ctx->degree, 0);
  while (true) {
    if (std::any_of(digit.begin(), digit.end(), [](long c) { return c != 0; }))
      out.push_back(Padic::from_coefficients(ctx, 0, std::vector<Int>(digit.begin(), digit.end())));
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == p) digit[k++] = 0;
    if (k == digit.size()) break;
  }
  return out;
}

Padic field_norm(const Padic& x) {
  Padic r = x;
  for (int i = 1; i < x.context()->degree; ++i) r = r * x.frobenius(i);
  return r;
}

Padic field_trace(const Padic& x) {
  Padic r = x;
  for (int i = 1; i < x.context()->degree; ++i) r = r + x.frobenius(i);
  return r;
}

// x in Z_{p^n}^x with N(x) = lambda for a unit lambda of Z_p.
Padic norm_preimage(const PadicContextPtr& ctx, const Padic& lambda) {
  if (ctx->degree == 1) return lambda;
  Padic x;
  bool found = false;
  for (const auto& r : unit_residues(ctx)) {
    Padic diff = field_norm(r) - lambda;
    if (diff.is_zero() || diff.valuation() >= 1) {
      x = r;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("norm is not surjective on residues");
  Padic dir;
  for (const auto& r : unit_residues(ctx)) {
    Padic tr = field_trace(r);
    if (!tr.is_zero() && tr.valuation() == 0) {
      dir = r;
      break;
    }
  }
  const Padic tr_inv = field_trace(dir).inverse();
  const Padic one = Padic::from_int(ctx, 1);
  for (int iter = 0; iter < 4 * ctx->precision; ++iter) {
    Padic err = lambda / field_norm(x) - one;
    if (err.is_zero()) return x;
    x = x * (one + err * tr_inv * dir);
  }
  throw std::domain_error("insufficient precision");
}

// Newton iteration for a simple root of x^2 - b x + c from a residue guess.
Padic hensel_quadratic(const Padic& guess, const Padic& b, const Padic& c) {
  Padic x = guess;
  for (int iter = 0; iter < 64; ++iter) {
    Padic fx = x * x - b * x + c;
    if (fx.is_zero()) return x;
    Padic two_x = x + x;
    x = x - fx / (two_x - b);
  }
  throw std::domain_error("insufficient precision");
}

PadicMatrix diag2(const PadicContextPtr& ctx, const Padic& a, const Padic& d) {
  PadicMatrix m(ctx, 2, 2);
  m(0, 0) = a;
  m(1, 1) = d;
  m(0, 1) = Padic::zero(ctx);
  m(1, 0) = Padic::zero(ctx);
  return m;
}

PadicMatrix antidiag2(const PadicContextPtr& ctx, const Padic& upper, const Padic& lower) {
  PadicMatrix m(ctx, 2, 2);
  m(0, 0) = Padic::zero(ctx);
  m(1, 1) = Padic::zero(ctx);
  m(0, 1) = upper;
  m(1, 0) = lower;
  return m;
}

Padic p_pow(const PadicContextPtr& ctx, long e) { return Padic::from_coefficients(ctx, e, {Int(1)}); }

// An element of GL_2(Q_{p^m}) whose sigma-norm has characteristic polynomial
// x^2 - a x + q, or nothing when none of the constructions applies.
std::optional<PadicMatrix> delta_for(const PadicContextPtr& ctx, long a, const Int& q, bool ordinary, bool central,
                                     std::string& why) {
  const int m = ctx->degree;
  const long p = ctx->p;
  if (m == 1) return PadicMatrix::from_integers(ctx, IntMatrix{{0, -q.get_si()}, {1, a}});
  const Padic qa = Padic::from_int(ctx, q), aa = Padic::from_int(ctx, a);
  if (ordinary) {
    Padic lambda1 = hensel_quadratic(Padic::from_int(ctx, a), aa, qa);
    Padic lambda2 = qa / lambda1;
    Padic x1 = norm_preimage(ctx, lambda1);
    Padic x2 = norm_preimage(ctx, lambda2 * p_pow(ctx, -m));
    return diag2(ctx, x1, p_pow(ctx, 1) * x2);
  }
  if (m != 2) {
    why = "basic terms are implemented for m <= 2";
    throw std::invalid_argument(why);
  }
  if (central) return antidiag2(ctx, Padic::from_int(ctx, 1), Padic::from_int(ctx, a / 2));
  // delta = [[0, p w], [1, 0]] has norm diag(p w, p sigma(w)); w must be a root of
  // x^2 - (a/p) x + 1 outside Q_p.
  const Padic b = Padic::from_int(ctx, a / p), one = Padic::from_int(ctx, 1);
  for (const auto& r : unit_residues(ctx)) {
    if (r.in_base_field()) continue;
    Padic g = r * r - b * r + one;
    if (!g.is_zero() && g.valuation() == 0) continue;
    Padic w = hensel_quadratic(r, b, one);
    if (w.in_base_field()) continue;
    return antidiag2(ctx, p_pow(ctx, 1) * w, one);
  }
  why = "no sigma-conjugacy class has this norm (split at p)";
  return std::nullopt;
}

long int_valuation(Int x, long l) {
  long v = 0;
  while (x != 0 && x % l == 0) {
    x /= l;
    ++v;
  }
  return v;
}

}  // namespace

PcfReport rhs_assemble(const CurveCountRequest& req, const RhsOptions& opts) {
  req.validate();
  const auto t0 = std::chrono::steady_clock::now();
  PcfReport rep;
  rep.request = req;
  const long p = req.p;
  const int m = req.m;
  const Int q = req.q();
  auto ctx = make_padic_context(p, m);
  auto ctx1 = make_padic_context(p, 1);

  // The e group of the elliptic GL_2 torus is trivial, so every gamma0 carries
  // alpha = 0; c2 is the order of ker^1 for the induced torus.
  for (const char* place : {"inert", "split"})
    if (presets::ambient_gl2(place)->k.k_group().order() != 1) throw std::logic_error("K group of GL_2 torus is not trivial");
  if (!presets::induced_torus().certified_ker1()) throw std::logic_error("ker^1 of the induced torus is not certified");
  const Rational c2 = 1;

  std::vector<long> traces;
  for (long a = 0; Int(a) * a <= 4 * q; ++a) {
    traces.push_back(a);
    if (a) traces.push_back(-a);
  }
  std::sort(traces.begin(), traces.end());
  const auto levels = factor(req.N);

  std::vector<std::optional<RhsTerm>> terms(traces.size());
  std::vector<std::string> skipped(traces.size());
  TwistedOrbitalOptions to_opts;
  to_opts.depth = opts.depth;
  to_opts.cap = opts.cap;

  parallel_for(traces.size(), opts.jobs, [&](std::size_t idx) {
    const long a = traces[idx];
    RhsTerm t;
    t.trace = a;
    t.det = q;
    const Int D = Int(a) * a - 4 * q;
    const bool central = D == 0;
    IntMatrix gamma0{{0, -q.get_si()}, {1, a}};
    if (central && m % 2) return;

    // Newton slopes at p decide ordinary versus basic.
    auto slopes = newton_point(PadicMatrix::from_integers(ctx1, gamma0));
    const bool ordinary = slopes.front() != slopes.back();
    if (!ordinary && slopes.front() * 2 != Rational(m)) return;
    t.type = central ? "central" : ordinary ? "ordinary" : "supersingular";

    Rational c1, O = 1;
    Int f = 1;
    if (central) {
      // Mass of the maximal order in the quaternion algebra ramified at p and infinity.
      c1 = Rational(p - 1, 24);
      c1.canonicalize();
      IntMatrix scalar{{a / 2, 0}, {0, a / 2}};
      for (auto [l, e] : levels) {
        auto r = orbital_integral_gl2(scalar, l, LocalLevel{req.kind == CurveKind::full ? LevelKind::full : LevelKind::point, e});
        t.locals.push_back({l, 0, e, 1, r.value});
        O *= r.value;
      }
    } else {
      auto [cond, dk] = fundamental_discriminant(D);
      f = cond;
      auto od = class_number(dk);
      c1 = Rational(od.h, od.w);
      c1.canonicalize();
      std::vector<std::pair<long, long>> places;
      for (auto [l, e] : levels) places.push_back({l, e});
      for (auto [l, e] : factor(f.get_si()))
        if (l != p && req.N % l != 0) places.push_back({l, 0});
      for (auto [l, e] : places) {
        auto r = orbital_integral_gl2(gamma0, l, LocalLevel{req.kind == CurveKind::full ? LevelKind::full : LevelKind::point, e},
                                      opts.measure);
        if (r.conductor != int_valuation(f, l)) throw std::logic_error("local conductor disagrees with the discriminant");
        t.locals.push_back({l, r.conductor, e, r.unit_index, r.value});
        O *= r.value;
        if (opts.measure == CentralizerMeasure::generated_order) c1 *= Rational(r.unit_index);
      }
      if (opts.corrupt_normalization) c1 *= 2;
    }

    std::string why;
    auto delta = delta_for(ctx, a, q, ordinary, central, why);
    if (!delta) {
      skipped[idx] = "a=" + std::to_string(a) + ": " + why;
      return;
    }
    NormResult nr = degree_n_norm(*delta);
    if (!nr.charpoly[0].equals(Padic::from_int(ctx, q)) || !nr.charpoly[1].equals(Padic::from_int(ctx, -a)))
      throw std::logic_error("norm of delta does not match gamma0");
    auto to = twisted_orbital_integral(*delta, {1, 0}, to_opts);
    if (to.value == 0) {
      skipped[idx] = "a=" + std::to_string(a) + ": empty twisted orbital integral";
      return;
    }
    t.delta = delta->str();
    t.c1 = c1;
    t.c2 = c2;
    t.O = O;
    t.TO = to.value;
    t.value = c1 * c2 * O * to.value;
    t.value.canonicalize();
    terms[idx] = std::move(t);
  });

  rep.rhs_total = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (terms[i]) {
      rep.rhs_total += terms[i]->value;
      rep.terms.push_back(std::move(*terms[i]));
    }
    if (!skipped[i].empty()) rep.skipped.push_back(skipped[i]);
  }
  rep.rhs_total.canonicalize();
  rep.timings["rhs"] = seconds_since(t0);
  return rep;
}

PcfReport compare(const CurveCountRequest& req, const RhsOptions& opts) {
  PcfReport rep;
  try {
    rep = rhs_assemble(req, opts);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("rhs: ") + e.what());
  }
  const auto t0 = std::chrono::steady_clock::now();
  try {
    rep.lhs = count_points(req);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("lhs: ") + e.what());
  }
  rep.timings["lhs"] = seconds_since(t0);
  rep.has_lhs = true;
  rep.match = rep.rhs_total.get_den() == 1 && rep.rhs_total.get_num() == rep.lhs;
  return rep;
}

}  // namespace klab
