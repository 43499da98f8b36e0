#include "klab/padic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace klab {

namespace {

using i64 = std::int64_t;
using i128 = __int128;
using Coeffs = std::vector<i64>;

i64 mod(i128 a, i64 m) {
  i128 r = a % m;
  return static_cast<i64>(r < 0 ? r + m : r);
}

// Polynomials over F_p (low degree first), used only to pick the modulus.
using SmallPoly = std::vector<long>;

void trim(SmallPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long inv_mod_p(long a, long p) {
  long r = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

SmallPoly poly_rem(SmallPoly a, const SmallPoly& b, long p) {
  trim(a);
  long lead_inv = inv_mod_p(b.back(), p);
  while (a.size() >= b.size()) {
    long c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

SmallPoly poly_mulmod(const SmallPoly& a, const SmallPoly& b, const SmallPoly& f, long p) {
  if (a.empty() || b.empty()) return {};
  SmallPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_rem(r, f, p);
}

SmallPoly poly_gcd(SmallPoly a, SmallPoly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    SmallPoly r = poly_rem(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

// x^(p^e) mod f.
SmallPoly frobenius_power_of_x(const SmallPoly& f, long p, int e) {
  SmallPoly x = poly_rem({0, 1}, f, p);
  for (int k = 0; k < e; ++k) {
    SmallPoly r{1}, base = x;
    long n = p;
    while (n > 0) {
      if (n & 1) r = poly_mulmod(r, base, f, p);
      base = poly_mulmod(base, base, f, p);
      n >>= 1;
    }
    x = r;
  }
  return x;
}

bool irreducible(const SmallPoly& f, long p) {
  int n = static_cast<int>(f.size()) - 1;
  SmallPoly x = poly_rem({0, 1}, f, p);
  SmallPoly full = frobenius_power_of_x(f, p, n);
  SmallPoly diff = full;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = ((diff[1] - 1) % p + p) % p;
  trim(diff);
  if (!diff.empty() && !(poly_rem(diff, f, p).empty())) return false;
  for (int l = 2; l <= n; ++l) {
    if (n % l) continue;
    bool prime = true;
    for (int q = 2; q * q <= l; ++q)
      if (l % q == 0) prime = false;
    if (!prime) continue;
    SmallPoly part = frobenius_power_of_x(f, p, n / l);
    part.resize(std::max<std::size_t>(part.size(), 2), 0);
    part[1] = ((part[1] - 1) % p + p) % p;
    trim(part);
    SmallPoly g = poly_gcd(f, part, p);
    if (g.size() > 1) return false;
  }
  return true;
}

SmallPoly find_modulus(long p, int n) {
  if (n == 1) return {p - 1, 1};
  std::vector<long> digits(n, 0);
  for (;;) {
    SmallPoly f(digits.begin(), digits.end());
    f.push_back(1);
    if (f[0] != 0 && irreducible(f, p)) return f;
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
    if (i == digits.size()) throw std::logic_error("no irreducible polynomial found");
  }
}

// Arithmetic in (Z/p^r)[t]/(f).
Coeffs ring_mul(const PadicContext& c, const Coeffs& a, const Coeffs& b, int r) {
  const int n = c.degree;
  const i64 m = c.pow[r];
  std::vector<i64> prod(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) prod[i + j] = mod(static_cast<i128>(prod[i + j]) + static_cast<i128>(a[i]) * b[j], m);
  }
  for (int i = 2 * n - 2; i >= n; --i) {
    i64 top = prod[i];
    if (top == 0) continue;
    for (int j = 0; j < n; ++j)
      prod[i - n + j] = mod(static_cast<i128>(prod[i - n + j]) - static_cast<i128>(top) * c.modulus[j], m);
  }
  prod.resize(n);
  return prod;
}

Coeffs ring_reduce(const PadicContext& c, Coeffs a, int r) {
  for (auto& x : a) x = mod(x, c.pow[r]);
  return a;
}

Coeffs ring_unit_inverse(const PadicContext& c, const Coeffs& u, int r) {
  const int n = c.degree;
  // Inverse modulo p by exponentiation in F_{p^n}.
  Coeffs base = ring_reduce(c, u, 1), w(n, 0);
  w[0] = 1;
  i128 e = 1;
  for (int i = 0; i < n; ++i) e *= c.p;
  e -= 2;
  while (e > 0) {
    if (e & 1) w = ring_mul(c, w, base, 1);
    base = ring_mul(c, base, base, 1);
    e >>= 1;
  }
  // Newton iteration w <- w (2 - u w).
  for (int prec = 1; prec < r;) {
    prec = std::min(2 * prec, r);
    Coeffs uw = ring_mul(c, ring_reduce(c, u, prec), w, prec);
    for (auto& x : uw) x = mod(-static_cast<i128>(x), c.pow[prec]);
    uw[0] = mod(static_cast<i128>(uw[0]) + 2, c.pow[prec]);
    w = ring_mul(c, w, uw, prec);
  }
  return w;
}

int coeff_valuation(i64 x, long p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0 && v < cap) {
    x /= p;
    ++v;
  }
  return v;
}

long sat_add(long a, long b) {
  long s = a + b;
  return std::min(s, Padic::kExact);
}

}  // namespace

int PadicContext::max_precision(long p) {
  int k = 0;
  i128 x = 1;
  while (x * p < (static_cast<i128>(1) << 62)) {
    x *= p;
    ++k;
  }
  return k;
}

PadicContextPtr make_padic_context(long p, int degree, int precision) {
  if (p < 2) throw std::invalid_argument("p must be prime");
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) throw std::invalid_argument("p must be prime");
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  auto c = std::make_shared<PadicContext>();
  c->p = p;
  c->degree = degree;
  int cap = PadicContext::max_precision(p);
  c->precision = precision <= 0 ? cap : std::min(precision, cap);
  c->pow.resize(c->precision + 1);
  c->pow[0] = 1;
  for (int i = 1; i <= c->precision; ++i) c->pow[i] = c->pow[i - 1] * p;
  SmallPoly f = find_modulus(p, degree);
  c->modulus.assign(f.begin(), f.end() - 1);

  const int k = c->precision, n = degree;
  // Frobenius of t: the root of f congruent to t^p, by Newton iteration.
  Coeffs t(n, 0);
  if (n == 1) {
    t[0] = mod(-static_cast<i128>(c->modulus[0]), c->pow[k]);
  } else {
    t[1] = 1;
  }
  Coeffs root(n, 0);
  root[0] = 1;
  for (long e = 0; e < p; ++e) root = ring_mul(*c, root, t, k);
  auto eval = [&](const Coeffs& x, bool derivative) {
    Coeffs acc(n, 0);
    // Horner over f (or f') with coefficients modulus + leading 1.
    std::vector<i64> coeffs(c->modulus.begin(), c->modulus.end());
    coeffs.push_back(1);
    if (derivative) {
      std::vector<i64> d;
      for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(mod(static_cast<i128>(coeffs[i]) * static_cast<long>(i), c->pow[k]));
      coeffs = d;
    }
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      acc = ring_mul(*c, acc, x, k);
      acc[0] = mod(static_cast<i128>(acc[0]) + coeffs[i], c->pow[k]);
    }
    return acc;
  };
  for (int iter = 0; iter < 2 * k + 2; ++iter) {
    Coeffs fx = eval(root, false);
    if (std::all_of(fx.begin(), fx.end(), [](i64 v) { return v == 0; })) break;
    Coeffs step = ring_mul(*c, fx, ring_unit_inverse(*c, eval(root, true), k), k);
    for (int j = 0; j < n; ++j) root[j] = mod(static_cast<i128>(root[j]) - step[j], c->pow[k]);
  }
  Coeffs power(n, 0);
  power[0] = 1;
  for (int j = 0; j < n; ++j) {
    c->frobenius_images.push_back(power);
    power = ring_mul(*c, power, root, k);
  }
  return c;
}

// ---------------------------------------------------------------- Padic

namespace {

Padic make_unit(PadicContextPtr ctx, long v, int r, Coeffs u);

// Normalise p^v * s with s known modulo p^m.
Padic normalise(const PadicContextPtr& ctx, long v, int m, Coeffs s) {
  if (m <= 0) return Padic::zero(ctx, v);
  int c = m;
  for (auto& x : s) {
    x = mod(x, ctx->pow[m]);
    c = std::min(c, coeff_valuation(x, ctx->p, m));
  }
  if (c >= m) return Padic::zero(ctx, v + m);
  for (auto& x : s) x /= ctx->pow[c];
  return make_unit(ctx, v + c, m - c, std::move(s));
}

}  // namespace

class PadicAccess {
 public:
  static Padic build(PadicContextPtr ctx, long v, int r, Coeffs u) {
    Padic x;
    x.ctx_ = std::move(ctx);
    x.zero_ = false;
    x.val_ = v;
    x.rel_ = r;
    x.unit_ = std::move(u);
    for (auto& c : x.unit_) c = mod(c, x.ctx_->pow[r]);
    return x;
  }
};

namespace {
Padic make_unit(PadicContextPtr ctx, long v, int r, Coeffs u) { return PadicAccess::build(std::move(ctx), v, r, std::move(u)); }
}  // namespace

Padic Padic::zero(PadicContextPtr ctx, long absolute_precision) {
  Padic x;
  x.ctx_ = std::move(ctx);
  x.zero_ = true;
  x.val_ = std::min(absolute_precision, kExact);
  x.rel_ = 0;
  x.unit_.assign(x.ctx_->degree, 0);
  return x;
}

Padic Padic::from_coefficients(PadicContextPtr ctx, long v, const std::vector<Int>& coeffs) {
  const int n = ctx->degree;
  if (static_cast<int>(coeffs.size()) > n) throw std::invalid_argument("too many coefficients for the extension degree");
  // Pull out the common p-power exactly, then reduce.
  long shift = kExact;
  Int pp = ctx->p;
  for (const auto& c : coeffs) {
    if (c == 0) continue;
    long e = 0;
    Int x = c;
    while (x % pp == 0) {
      x /= pp;
      ++e;
    }
    shift = std::min(shift, e);
  }
  if (shift == kExact) return zero(ctx);
  Coeffs u(n, 0);
  Int pk = Int(1);
  for (long i = 0; i < shift; ++i) pk *= pp;
  Int big_mod = Int(static_cast<long>(ctx->pow[ctx->precision]));
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    Int q = coeffs[j] / pk;
    Int r = q % big_mod;
    if (r < 0) r += big_mod;
    u[j] = r.get_si();
  }
  return make_unit(ctx, v + shift, ctx->precision, u);
}

Padic Padic::from_int(PadicContextPtr ctx, const Int& a) { return from_coefficients(std::move(ctx), 0, {a}); }

Padic Padic::from_rational(PadicContextPtr ctx, const Rational& a) {
  Padic num = from_int(ctx, a.get_num());
  if (a.get_den() == 1) return num;
  return num / from_int(ctx, a.get_den());
}

Padic Padic::generator(PadicContextPtr ctx) {
  if (ctx->degree == 1) {
    Int root = -Int(static_cast<long>(ctx->modulus[0]));
    return from_int(ctx, root);
  }
  std::vector<Int> c(ctx->degree, Int(0));
  c[1] = 1;
  return from_coefficients(ctx, 0, c);
}

Padic Padic::operator+(const Padic& o) const {
  if (zero_ && val_ >= kExact) return o;
  if (o.zero_ && o.val_ >= kExact) return *this;
  long a = std::min(absolute_precision(), o.absolute_precision());
  long v = std::min(val_, o.val_);
  if (a <= v) return zero(ctx_, a);
  int m = static_cast<int>(a - v);
  Coeffs s(ctx_->degree, 0);
  auto accumulate = [&](const Padic& x) {
    if (x.zero_) return;
    long shift = x.val_ - v;
    if (shift >= m) return;
    for (int j = 0; j < ctx_->degree; ++j)
      s[j] = mod(static_cast<i128>(s[j]) + static_cast<i128>(x.unit_[j]) * ctx_->pow[shift], ctx_->pow[m]);
  };
  accumulate(*this);
  accumulate(o);
  return normalise(ctx_, v, m, s);
}

Padic Padic::operator-() const {
  if (zero_) return *this;
  Coeffs u = unit_;
  for (auto& x : u) x = mod(-static_cast<i128>(x), ctx_->pow[rel_]);
  return make_unit(ctx_, val_, rel_, u);
}

Padic Padic::operator-(const Padic& o) const { return *this + (-o); }

Padic Padic::operator*(const Padic& o) const {
  if ((zero_ && val_ >= kExact) || (o.zero_ && o.val_ >= kExact)) return zero(ctx_);
  if (zero_ || o.zero_) return zero(ctx_, sat_add(val_, o.val_));
  int r = std::min(rel_, o.rel_);
  Coeffs u = ring_mul(*ctx_, ring_reduce(*ctx_, unit_, r), ring_reduce(*ctx_, o.unit_, r), r);
  return make_unit(ctx_, val_ + o.val_, r, u);
}

Padic Padic::inverse() const {
  if (zero_) throw std::domain_error("insufficient precision");
  return make_unit(ctx_, -val_, rel_, ring_unit_inverse(*ctx_, unit_, rel_));
}

Padic Padic::operator/(const Padic& o) const { return *this * o.inverse(); }

Padic Padic::frobenius(int times) const {
  if (zero_) return *this;
  const int n = ctx_->degree;
  int t = ((times % n) + n) % n;
  Coeffs u = unit_;
  for (int s = 0; s < t; ++s) {
    Coeffs next(n, 0);
    for (int i = 0; i < n; ++i) {
      if (u[i] == 0) continue;
      for (int j = 0; j < n; ++j)
        next[j] = mod(static_cast<i128>(next[j]) + static_cast<i128>(u[i]) * ctx_->frobenius_images[i][j], ctx_->pow[rel_]);
    }
    u = next;
  }
  return make_unit(ctx_, val_, rel_, u);
}

Padic Padic::truncated(int r) const {
  if (zero_ || r >= rel_) return *this;
  if (r <= 0) return zero(ctx_, val_);
  return make_unit(ctx_, val_, r, unit_);
}

std::vector<Rational> Padic::coefficients() const {
  std::vector<Rational> out(ctx_->degree, Rational(0));
  if (zero_) return out;
  Int pv = 1;
  mpz_pow_ui(pv.get_mpz_t(), Int(ctx_->p).get_mpz_t(), static_cast<unsigned long>(std::labs(val_)));
  for (int j = 0; j < ctx_->degree; ++j) {
    Rational c{Int(static_cast<long>(unit_[j]))};
    out[j] = val_ >= 0 ? Rational(c * pv) : Rational(c / pv);
  }
  return out;
}

bool Padic::in_base_field() const {
  if (zero_) return true;
  for (int j = 1; j < ctx_->degree; ++j)
    if (unit_[j] != 0) return false;
  return true;
}

std::string Padic::str() const {
  if (zero_) return val_ >= kExact ? "0" : "O(p^" + std::to_string(val_) + ")";
  std::ostringstream os;
  if (val_ != 0) os << "p^" << val_ << " * ";
  std::vector<std::string> terms;
  for (int j = 0; j < ctx_->degree; ++j) {
    if (unit_[j] == 0) continue;
    // Balanced residue, so -1 prints as -1.
    std::int64_t c = unit_[j];
    if (c > ctx_->pow[rel_] / 2) c -= ctx_->pow[rel_];
    std::string s = std::to_string(c);
    if (j == 1) s += "*t";
    if (j > 1) s += "*t^" + std::to_string(j);
    terms.push_back(s);
  }
  bool paren = val_ != 0 || terms.size() > 1;
  if (paren) os << "(";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 0)
      os << terms[i];
    else if (terms[i][0] == '-')
      os << " - " << terms[i].substr(1);
    else
      os << " + " << terms[i];
  }
  if (paren) os << ")";
  return os.str();
}

// ---------------------------------------------------------------- matrices

PadicMatrix::PadicMatrix(PadicContextPtr ctx, std::size_t rows, std::size_t cols)
    : ctx_(ctx), rows_(rows), cols_(cols), data_(rows * cols, Padic::zero(ctx)) {}

PadicMatrix PadicMatrix::identity(PadicContextPtr ctx, std::size_t d) {
  PadicMatrix m(ctx, d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = Padic::from_int(ctx, 1);
  return m;
}

PadicMatrix PadicMatrix::from_integers(PadicContextPtr ctx, const IntMatrix& a) {
  PadicMatrix m(ctx, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Padic::from_int(ctx, a(i, j));
  return m;
}

PadicMatrix PadicMatrix::p_power_diagonal(PadicContextPtr ctx, const std::vector<long>& exponents) {
  PadicMatrix m(ctx, exponents.size(), exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) m(i, i) = Padic::from_coefficients(ctx, exponents[i], {Int(1)});
  return m;
}

PadicMatrix PadicMatrix::operator*(const PadicMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix size mismatch");
  PadicMatrix r(ctx_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      Padic acc = Padic::zero(ctx_);
      for (std::size_t k = 0; k < cols_; ++k) acc = acc + (*this)(i, k) * o(k, j);
      r(i, j) = acc;
    }
  return r;
}

PadicMatrix PadicMatrix::operator+(const PadicMatrix& o) const {
  PadicMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

PadicMatrix PadicMatrix::operator-(const PadicMatrix& o) const {
  PadicMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

PadicMatrix PadicMatrix::scaled(const Padic& c) const {
  PadicMatrix r = *this;
  for (auto& x : r.data_) x = c * x;
  return r;
}

PadicMatrix PadicMatrix::frobenius(int times) const {
  PadicMatrix r = *this;
  for (auto& x : r.data_) x = x.frobenius(times);
  return r;
}

bool PadicMatrix::equals(const PadicMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!data_[i].equals(o.data_[i])) return false;
  return true;
}

std::vector<Padic> PadicMatrix::charpoly() const {
  if (rows_ != cols_) throw std::invalid_argument("charpoly of a non-square matrix");
  const std::size_t n = rows_;
  const Padic one = Padic::from_int(ctx_, 1);
  // Berkowitz: division free, coefficients from x^k down to x^0.
  std::vector<Padic> c{one};
  for (std::size_t k = 0; k < n; ++k) {
    // Leading k x k block A, column S = M[0..k)[k], row R = M[k][0..k), a = M[k][k].
    std::vector<Padic> col{one, -(*this)(k, k)};
    std::vector<Padic> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = (*this)(i, k);
    for (std::size_t step = 0; step < k; ++step) {
      Padic rs = Padic::zero(ctx_);
      for (std::size_t i = 0; i < k; ++i) rs = rs + (*this)(k, i) * v[i];
      col.push_back(-rs);
      std::vector<Padic> next(k, Padic::zero(ctx_));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) next[i] = next[i] + (*this)(i, j) * v[j];
      v = next;
    }
    std::vector<Padic> nc(k + 2, Padic::zero(ctx_));
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, k); ++j) nc[i] = nc[i] + col[i - j] * c[j];
    c = nc;
  }
  std::reverse(c.begin(), c.end());
  return c;
}

Padic PadicMatrix::determinant() const {
  auto c = charpoly();
  return rows_ % 2 ? -c[0] : c[0];
}

PadicMatrix PadicMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = rows_;
  PadicMatrix a = *this, inv = identity(ctx_, n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (!a(i, k).is_zero() && (piv == n || a(i, k).valuation() < a(piv, k).valuation())) piv = i;
    if (piv == n) throw std::domain_error("insufficient precision");
    if (piv != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    Padic pinv = a(k, k).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) = a(k, j) * pinv;
      inv(k, j) = inv(k, j) * pinv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      Padic f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = a(i, j) - f * a(k, j);
        inv(i, j) = inv(i, j) - f * inv(k, j);
      }
    }
  }
  return inv;
}

long PadicMatrix::min_valuation() const {
  long v = Padic::kExact;
  for (const auto& x : data_)
    if (!x.is_zero()) v = std::min(v, x.valuation());
  return v;
}

std::string PadicMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- parsing

namespace {

class LiteralParser {
 public:
  LiteralParser(PadicContextPtr ctx, const std::string& s) : ctx_(std::move(ctx)), s_(s) {}

  PadicMatrix matrix() {
    std::vector<std::vector<Padic>> rows;
    expect('[');
    do {
      expect('[');
      std::vector<Padic> row;
      do row.push_back(sum());
      while (accept(','));
      expect(']');
      rows.push_back(row);
    } while (accept(','));
    expect(']');
    finish();
    if (rows.empty()) throw std::invalid_argument("empty matrix literal");
    PadicMatrix m(ctx_, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size()) throw std::invalid_argument("ragged matrix literal");
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  Padic scalar() {
    Padic x = sum();
    finish();
    return x;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void finish() {
    skip();
    if (pos_ != s_.size()) fail("trailing input");
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("matrix literal: " + what + " at offset " + std::to_string(pos_));
  }
  long integer() {
    skip();
    bool neg = accept('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    long v = std::stol(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }
  Padic sum() {
    Padic x = accept('-') ? -product() : product();
    for (;;) {
      if (accept('+'))
        x = x + product();
      else if (accept('-'))
        x = x - product();
      else
        return x;
    }
  }
  Padic product() {
    Padic x = factor();
    while (accept('*')) x = x * factor();
    return x;
  }
  Padic factor() {
    skip();
    if (accept('(')) {
      Padic x = sum();
      expect(')');
      return x;
    }
    if (accept('p')) {
      long e = accept('^') ? integer() : 1;
      return Padic::from_coefficients(ctx_, e, {Int(1)});
    }
    if (accept('t')) {
      long e = accept('^') ? integer() : 1;
      Padic g = Padic::generator(ctx_), r = Padic::from_int(ctx_, 1);
      if (e < 0) {
        g = g.inverse();
        e = -e;
      }
      for (long i = 0; i < e; ++i) r = r * g;
      return r;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("unexpected character");
    return Padic::from_int(ctx_, Int(s_.substr(start, pos_ - start)));
  }

  PadicContextPtr ctx_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

PadicMatrix parse_padic_matrix(PadicContextPtr ctx, const std::string& text) { return LiteralParser(ctx, text).matrix(); }
Padic parse_padic(PadicContextPtr ctx, const std::string& text) { return LiteralParser(ctx, text).scalar(); }

// ---------------------------------------------------------------- invariants

PadicMatrix sigma_norm(const PadicMatrix& b, int s) {
  PadicMatrix r = PadicMatrix::identity(b.context(), b.rows());
  for (int i = 0; i < s; ++i) r = r * b.frobenius(i);
  return r;
}

PadicMatrix sigma_conjugate(const PadicMatrix& b, const PadicMatrix& g) { return g * b * g.frobenius().inverse(); }

std::vector<Rational> newton_slopes(const std::vector<Padic>& poly) {
  const std::size_t d = poly.size() - 1;
  if (poly[0].is_zero() || poly[d].is_zero()) throw std::domain_error("insufficient precision");
  std::vector<std::pair<long, long>> pts;
  for (std::size_t i = 0; i <= d; ++i)
    if (!poly[i].is_zero()) pts.push_back({static_cast<long>(i), poly[i].valuation()});
  // Lower convex hull, left to right.
  std::vector<std::pair<long, long>> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      // Drop the middle point when it lies on or above the chord.
      if ((y2 - y1) * (q.first - x1) >= (q.second - y1) * (x2 - x1))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }
  auto hull_at = [&](long x) {
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
      auto [x1, y1] = hull[s];
      auto [x2, y2] = hull[s + 1];
      if (x >= x1 && x <= x2) {
        Rational step(y2 - y1, x2 - x1);
        step.canonicalize();
        return Rational(Rational(y1) + step * (x - x1));
      }
    }
    return Rational(hull.back().second);
  };
  for (std::size_t i = 0; i <= d; ++i)
    if (poly[i].is_zero() && poly[i].valuation() < Padic::kExact && Rational(poly[i].valuation()) < hull_at(static_cast<long>(i)))
      throw std::domain_error("insufficient precision");
  std::vector<Rational> slopes;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    auto [x1, y1] = hull[s];
    auto [x2, y2] = hull[s + 1];
    Rational slope(y1 - y2, x2 - x1);
    slope.canonicalize();
    for (long k = x1; k < x2; ++k) slopes.push_back(slope);
  }
  std::sort(slopes.begin(), slopes.end(), [](const Rational& a, const Rational& b) { return a > b; });
  return slopes;
}

std::vector<Rational> newton_point(const PadicMatrix& b) {
  // sigma^n fixes L, so the n-fold norm is L-linear and its eigenvalue valuations give the slopes.
  const int n = b.context()->degree;
  auto slopes = newton_slopes(sigma_norm(b, n).charpoly());
  for (auto& x : slopes) {
    x /= n;
    x.canonicalize();
  }
  return slopes;
}

long kottwitz_point(const PadicMatrix& b) {
  Padic d = b.determinant();
  if (d.is_zero()) throw std::domain_error("insufficient precision");
  return d.valuation();
}

IsocInvariants isocrystal_invariants(const PadicMatrix& b) { return {newton_point(b), kottwitz_point(b)}; }

IntVector torus_kottwitz_point(const GaloisModule& cocharacters, const std::vector<std::size_t>& decomposition,
                               const IntVector& coweight) {
  auto q = coinvariants(cocharacters, decomposition);
  return q.group.canonical(q.projection.apply(coweight));
}

bool is_decent(const PadicMatrix& b, int s) {
  auto ctx = b.context();
  auto nu = newton_point(b);
  std::vector<long> exps;
  for (const auto& x : nu) {
    Rational e = x * s;
    e.canonicalize();
    if (e.get_den() != 1) return false;
    exps.push_back(e.get_num().get_si());
  }
  PadicMatrix norm = sigma_norm(b, s);
  const std::size_t d = b.rows();
  // Characteristic polynomial of diag(p^e_i).
  std::vector<Padic> target{Padic::from_int(ctx, 1)};
  for (long e : exps) {
    Padic root = Padic::from_coefficients(ctx, e, {Int(1)});
    std::vector<Padic> next(target.size() + 1, Padic::zero(ctx));
    for (std::size_t i = 0; i < target.size(); ++i) {
      next[i + 1] = next[i + 1] + target[i];
      next[i] = next[i] - root * target[i];
    }
    target = next;
  }
  auto cp = norm.charpoly();
  for (std::size_t i = 0; i <= d; ++i)
    if (!cp[i].equals(target[i])) return false;
  // Semisimplicity: the product over distinct eigenvalues annihilates the norm.
  std::vector<long> distinct = exps;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  PadicMatrix prod = PadicMatrix::identity(ctx, d);
  for (long e : distinct)
    prod = prod * (norm - PadicMatrix::identity(ctx, d).scaled(Padic::from_coefficients(ctx, e, {Int(1)})));
  return prod.equals(PadicMatrix(ctx, d, d));
}

NormResult degree_n_norm(const PadicMatrix& delta) {
  NormResult r;
  r.norm = sigma_norm(delta, delta.context()->degree);
  r.charpoly = r.norm.charpoly();
  r.charpoly_in_base_field = true;
  for (const auto& c : r.charpoly)
    if (!c.frobenius().equals(c)) r.charpoly_in_base_field = false;
  return r;
}

PadicMatrix decent_representative(PadicContextPtr ctx, const std::vector<Rational>& newton) {
  std::vector<Rational> slopes = newton;
  for (auto& x : slopes) x.canonicalize();
  std::sort(slopes.begin(), slopes.end(), [](const Rational& a, const Rational& b) { return a > b; });
  const std::size_t d = slopes.size();
  PadicMatrix m(ctx, d, d);
  std::size_t pos = 0;
  while (pos < d) {
    std::size_t end = pos;
    while (end < d && slopes[end] == slopes[pos]) ++end;
    long r = slopes[pos].get_num().get_si();
    std::size_t s = slopes[pos].get_den().get_ui();
    if ((end - pos) % s) throw std::invalid_argument("multiplicity of slope " + slopes[pos].get_str() + " is not a multiple of its denominator");
    for (std::size_t b = pos; b < end; b += s) {
      for (std::size_t i = 0; i + 1 < s; ++i) m(b + i + 1, b + i) = Padic::from_int(ctx, 1);
      m(b, b + s - 1) = Padic::from_coefficients(ctx, r, {Int(1)});
    }
    pos = end;
  }
  return m;
}

// ---------------------------------------------------------------- Laurent families

namespace {
LaurentPoly normalised(LaurentPoly a) {
  std::size_t lo = 0;
  while (lo < a.coeffs.size() && a.coeffs[lo] == 0) ++lo;
  if (lo == a.coeffs.size()) return {};
  a.coeffs.erase(a.coeffs.begin(), a.coeffs.begin() + static_cast<long>(lo));
  a.offset += static_cast<long>(lo);
  while (a.coeffs.back() == 0) a.coeffs.pop_back();
  return a;
}
}  // namespace

LaurentPoly LaurentPoly::monomial(const Int& c, long exponent) { return normalised({exponent, {c}}); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  LaurentPoly r{offset + o.offset, std::vector<Int>(coeffs.size() + o.coeffs.size() - 1, Int(0))};
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs.size(); ++j) r.coeffs[i + j] += coeffs[i] * o.coeffs[j];
  return normalised(r);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  long lo = std::min(offset, o.offset);
  long hi = std::max(offset + static_cast<long>(coeffs.size()), o.offset + static_cast<long>(o.coeffs.size()));
  LaurentPoly r{lo, std::vector<Int>(static_cast<std::size_t>(hi - lo), Int(0))};
  for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[offset - lo + i] += coeffs[i];
  for (std::size_t i = 0; i < o.coeffs.size(); ++i) r.coeffs[o.offset - lo + i] += o.coeffs[i];
  return normalised(r);
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly n = o;
  for (auto& c : n.coeffs) c = -c;
  return *this + n;
}

bool LaurentPoly::is_zero() const { return coeffs.empty(); }

long LaurentPoly::gauss_valuation(long p) const {
  if (is_zero()) throw std::domain_error("valuation of zero");
  Int g = 0;
  for (const auto& c : coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  long v = 0;
  while (g % p == 0) {
    g /= p;
    ++v;
  }
  return v;
}

long LaurentPoly::u_valuation() const {
  if (is_zero()) throw std::domain_error("valuation of zero");
  return offset;
}

Padic LaurentPoly::evaluate(PadicContextPtr ctx, const Padic& u) const {
  Padic acc = Padic::zero(ctx);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * u + Padic::from_int(ctx, coeffs[i]);
  Padic shift = Padic::from_int(ctx, 1);
  Padic base = offset >= 0 ? u : u.inverse();
  for (long i = 0; i < std::labs(offset); ++i) shift = shift * base;
  return acc * shift;
}

LaurentPoly LaurentFamily::determinant() const {
  const std::size_t n = entries.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  LaurentPoly total;
  do {
    LaurentPoly term = LaurentPoly::monomial(1, 0);
    for (std::size_t i = 0; i < n; ++i) term = term * entries[i][perm[i]];
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

long LaurentFamily::kappa_gauss(long p) const { return determinant().gauss_valuation(p); }
long LaurentFamily::kappa_u() const { return determinant().u_valuation(); }

long LaurentFamily::kappa_specialized(PadicContextPtr ctx) const {
  const std::size_t n = entries.size();
  PadicMatrix m(ctx, n, n);
  Padic u = Padic::from_int(ctx, ctx->p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entries[i][j].evaluate(ctx, u);
  return kottwitz_point(m);
}

}  // namespace klab
