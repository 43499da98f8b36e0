#include "klab/kottwitz.hpp"

#include <sstream>
#include <stdexcept>

namespace klab {

std::shared_ptr<const AmbientData> AmbientData::make(std::string name, GaloisModule pi1_I, GaloisModule pi1_G,
                                                     IntMatrix map, PlaceSystem places, std::string p_place,
                                                     IntVector mu) {
  auto a = std::make_shared<AmbientData>();
  a->name = std::move(name);
  a->pi1_I = std::move(pi1_I);
  a->pi1_G = std::move(pi1_G);
  a->map = std::move(map);
  a->places = std::move(places);
  a->p_place = std::move(p_place);
  if (a->places.find(a->p_place).kind != Place::Kind::finite) throw std::invalid_argument("the place above p must be finite");
  if (mu.size() != a->pi1_I.rank()) throw std::invalid_argument("mu has the wrong length");
  a->mu = std::move(mu);
  a->k = kottwitz_k_group(a->pi1_I, a->pi1_G, a->map, a->places);
  return a;
}

std::shared_ptr<const AmbientData> AmbientData::with_mu(const IntVector& m) const {
  if (m.size() != pi1_I.rank()) throw std::invalid_argument("mu has the wrong length");
  auto a = std::make_shared<AmbientData>(*this);
  a->mu = m;
  return a;
}

namespace presets {

namespace {
std::string p_label(const std::string& p_type) {
  if (p_type == "split") return "f0";
  if (p_type == "inert") return "f1";
  throw std::invalid_argument("p place must be split or inert");
}
}  // namespace

AmbientPtr ambient_gl2(const std::string& p_type) {
  FiniteGroup g = FiniteGroup::cyclic(2);
  auto I = GaloisModule::lattice(g, 2, {IntMatrix{{0, 1}, {1, 0}}});
  auto G = GaloisModule::lattice(g, 1, {IntMatrix{{1}}});
  return AmbientData::make("gl2-" + p_type, I, G, IntMatrix{{1, 1}}, PlaceSystem::standard(g, 1), p_label(p_type),
                           {Int(1), Int(0)});
}

AmbientPtr ambient_sl2(const std::string& p_type) {
  FiniteGroup g = FiniteGroup::cyclic(2);
  auto I = GaloisModule::lattice(g, 1, {IntMatrix{{-1}}});
  auto G = GaloisModule::lattice(g, 0, {IntMatrix(0, 0)});
  return AmbientData::make("sl2-" + p_type, I, G, IntMatrix(0, 1), PlaceSystem::standard(g, 1), p_label(p_type),
                           {Int(0)});
}

AmbientPtr ambient_by_name(const std::string& name) {
  auto dash = name.find('-');
  std::string group = name.substr(0, dash);
  std::string type = dash == std::string::npos ? "" : name.substr(dash + 1);
  if (group == "gl2") return ambient_gl2(type.empty() ? "inert" : type);
  if (group == "sl2") return ambient_sl2(type.empty() ? "split" : type);
  throw std::invalid_argument("unknown ambient preset: " + name);
}

}  // namespace presets

namespace {

IntMatrix augmentation(const GaloisModule& m, const std::vector<std::size_t>& h) {
  std::vector<IntVector> cols;
  IntMatrix id = IntMatrix::identity(m.rank());
  for (auto e : h) {
    if (e == m.group().identity()) continue;
    IntMatrix d = m.action(e) - id;
    for (std::size_t j = 0; j < m.rank(); ++j) cols.push_back(d.column(j));
  }
  return IntMatrix::from_columns(cols, m.rank());
}

bool zero_in_coinvariants(const GaloisModule& m, const std::vector<std::size_t>& h, const IntVector& x) {
  auto q = coinvariants(m, h);
  return q.group.is_zero(q.projection.apply(x));
}

void check_length(const AmbientData& a, const IntVector& x, const std::string& where) {
  if (x.size() != a.pi1_I.rank()) throw std::invalid_argument("beta at " + where + " has the wrong length");
}

// Representative of the class of x in pi_1(I)_{Gamma_v} whose image in pi_1(G)
// is exactly `target`.  nullopt if the classes do not match.
std::optional<IntVector> lift(const AmbientData& a, const Place& v, const IntVector& x, const IntVector& target,
                              std::mt19937_64* rng) {
  IntMatrix aug = augmentation(a.pi1_I, v.subgroup).hcat(a.pi1_I.module().relations());
  IntMatrix lhs = (a.map * aug).hcat(a.pi1_G.module().relations());
  IntVector rhs = target;
  IntVector mx = a.map * x;
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= mx[i];
  auto sol = solve_integer(lhs, rhs);
  if (!sol) return std::nullopt;
  IntVector z = sol->particular;
  if (rng)
    for (std::size_t j = 0; j < sol->kernel.cols(); ++j) {
      Int r = Int(static_cast<long>((*rng)() % 9)) - 4;
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += r * sol->kernel(i, j);
    }
  IntVector zi(z.begin(), z.begin() + static_cast<long>(aug.cols()));
  IntVector shift = aug * zi;
  IntVector y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += shift[i];
  return y;
}

}  // namespace

bool check_kp0(const KottwitzParameter& c) {
  const AmbientData& a = *c.ambient;
  check_length(a, c.beta_p, "p");
  IntVector s = a.map * c.beta_p;
  IntVector m = a.map * a.mu;
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += m[i];
  return zero_in_coinvariants(a.pi1_G, a.places.find(a.p_place).subgroup, s);
}

std::vector<Rational> rational_charpoly(const RationalMatrix& m) {
  // Faddeev-LeVerrier: exact over Q.
  const std::size_t n = m.size();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  RationalMatrix mk(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    // mk = m * (mk_prev + c_{n-k+1} I)
    RationalMatrix prev = mk;
    for (std::size_t i = 0; i < n; ++i) prev[i][i] += c[n - k + 1];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += m[i][l] * prev[l][j];
        mk[i][j] = s;
      }
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += mk[i][i];
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

bool check_kp1_gl(const RationalMatrix& gamma0, const IsocInvariants& b, int n, long p) {
  auto ctx = make_padic_context(p, 1);
  std::vector<Padic> cp;
  for (const auto& x : rational_charpoly(gamma0)) cp.push_back(Padic::from_rational(ctx, x));
  if (cp[0].is_zero()) return false;
  auto slopes = newton_slopes(cp);
  if (slopes.size() != b.newton.size()) return false;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    Rational s = slopes[i] / n;
    s.canonicalize();
    if (s != b.newton[i]) return false;
  }
  long vdet = cp[0].valuation();
  return vdet == static_cast<long>(n) * b.kappa;
}

IntVector kottwitz_invariant(const KottwitzParameter& c, std::mt19937_64* rng) {
  const AmbientData& a = *c.ambient;
  if (!check_kp0(c)) throw std::domain_error("parameter violates KP0");
  const std::size_t gr = a.pi1_G.rank();
  IntVector zero_g(gr, Int(0));
  IntVector mu_img = a.map * a.mu, neg_mu(gr);
  for (std::size_t i = 0; i < gr; ++i) neg_mu[i] = -mu_img[i];

  IntVector total(a.pi1_I.rank(), Int(0));
  auto add_lift = [&](const Place& v, const IntVector& x, const IntVector& target) {
    check_length(a, x, v.label);
    auto y = lift(a, v, x, target, rng);
    if (!y) throw std::invalid_argument("beta at " + v.label + " has the wrong image in pi_1(G)");
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += (*y)[i];
  };
  for (const auto& [label, x] : c.beta_finite) {
    if (label == a.p_place) throw std::invalid_argument("beta at the place above p belongs in beta_p");
    const Place& v = a.places.find(label);
    if (v.kind != Place::Kind::finite) throw std::invalid_argument("beta_finite may only name finite places");
    check_length(a, x, label);
    auto q = coinvariants(a.pi1_I, v.subgroup);
    if (!q.group.element_order(q.projection.apply(x)))
      throw std::invalid_argument("beta at " + label + " is not in the local torsion group");
    add_lift(v, x, zero_g);
  }
  add_lift(a.places.find(a.p_place), c.beta_p, neg_mu);
  add_lift(a.places.archimedean, c.beta_infinity, mu_img);

  // total lies in K; express it in K coordinates.
  const EGroupResult& e = a.k.e;
  IntMatrix sys = e.kernel_basis.hcat(a.pi1_I.module().relations());
  auto sol = solve_integer(sys, total);
  if (!sol) throw std::logic_error("sum of lifts is not in K");
  IntVector k(sol->particular.begin(), sol->particular.begin() + static_cast<long>(e.kernel_basis.cols()));
  auto tors = subgroup_coordinates(e.k_torsion, k);
  if (!tors) throw std::domain_error("Kottwitz invariant is not torsion");
  return e.e.canonical(e.projection.apply(*tors));
}

bool kottwitz_invariant_is_zero(const KottwitzParameter& c) {
  const FgAbGroup& e = c.ambient->k.e.e;
  return e.is_zero(e.from_canonical(kottwitz_invariant(c)));
}

Int cyclotomic_sum(const std::vector<Int>& counts) {
  const std::size_t m = counts.size();
  if (m == 0) return 0;
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, coefficients low to high.
  std::vector<std::vector<Int>> phi(m + 1);
  auto divide = [](std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> q(num.size() - den.size() + 1, Int(0));
    for (std::size_t i = q.size(); i-- > 0;) {
      q[i] = num[i + den.size() - 1];
      for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= q[i] * den[j];
    }
    return q;
  };
  for (std::size_t d = 1; d <= m; ++d) {
    if (m % d) continue;
    std::vector<Int> p(d + 1, Int(0));
    p[0] = -1;
    p[d] = 1;
    for (std::size_t e = 1; e < d; ++e)
      if (d % e == 0 && !phi[e].empty()) p = divide(p, phi[e]);
    phi[d] = p;
  }
  const auto& f = phi[m];
  std::vector<Int> r = counts;
  // Reduce modulo the monic Phi_m.
  const std::size_t deg = f.size() - 1;
  for (std::size_t i = r.size(); i-- > deg;) {
    Int top = r[i];
    if (top == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= top * f[j];
  }
  for (std::size_t i = 1; i < std::min(deg, r.size()); ++i)
    if (r[i] != 0) throw std::logic_error("character sum is not an integer");
  return r[0];
}

Int fourier_sum(const KottwitzParameter& c, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const FiniteDual& dual = c.ambient->k.duality;
  IntVector alpha = kottwitz_invariant(c);
  IntVector alpha_pres = dual.group().from_canonical(alpha);
  Int exponent = 1;
  for (const auto& d : dual.group().torsion_invariants()) exponent = lcm(exponent, d);
  std::vector<Int> counts(exponent.get_ui(), Int(0));
  for (const auto& chi : dual.characters()) {
    Rational q = dual.pair(alpha_pres, chi) * exponent;
    q.canonicalize();
    counts[q.get_num().get_ui()] += 1;
  }
  return cyclotomic_sum(counts) * sign;
}

IntVector beta_infinity_from_mu(const AmbientData& a, const IntVector& mu_h) {
  auto q = coinvariants(a.pi1_I, a.places.archimedean.subgroup);
  return q.group.canonical(q.projection.apply(mu_h));
}

KottwitzParameter add_parameters(const KottwitzParameter& a, const KottwitzParameter& b) {
  if (a.ambient.get() != b.ambient.get() && a.ambient->name != b.ambient->name)
    throw std::invalid_argument("parameters over different ambients");
  auto add = [](const IntVector& x, const IntVector& y) {
    IntVector r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
  };
  KottwitzParameter r = a;
  r.label = a.label + "+" + b.label;
  r.beta_p = add(a.beta_p, b.beta_p);
  r.beta_infinity = add(a.beta_infinity, b.beta_infinity);
  for (const auto& [label, x] : b.beta_finite) {
    auto it = r.beta_finite.find(label);
    if (it == r.beta_finite.end())
      r.beta_finite[label] = x;
    else
      it->second = add(it->second, x);
  }
  return r;
}

namespace {

IntVector read_vector(std::istringstream& in) {
  IntVector v;
  std::string tok;
  while (in >> tok) v.push_back(Int(tok));
  return v;
}

}  // namespace

std::vector<KottwitzParameter> parse_parameters(const std::string& text) {
  std::vector<KottwitzParameter> out;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  bool open = false;
  KottwitzParameter cur;
  IntVector mu;
  bool has_mu = false;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("parameters line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(lines, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream in(line);
    std::string key;
    if (!(in >> key)) continue;
    if (key == "param") {
      if (open) fail("missing end");
      open = true;
      cur = KottwitzParameter();
      has_mu = false;
      in >> cur.label;
      continue;
    }
    if (!open) fail("expected param");
    if (key == "ambient") {
      std::string name;
      in >> name;
      cur.ambient = presets::ambient_by_name(name);
    } else if (key == "mu") {
      mu = read_vector(in);
      has_mu = true;
    } else if (key == "gamma0") {
      std::getline(in >> std::ws, cur.gamma0);
    } else if (key == "sign") {
      in >> cur.sign;
      if (cur.sign != 1 && cur.sign != -1) fail("sign must be 1 or -1");
    } else if (key == "beta") {
      if (!cur.ambient) fail("ambient must precede beta");
      std::string place;
      in >> place;
      IntVector v = read_vector(in);
      if (v.size() != cur.ambient->pi1_I.rank()) fail("beta has the wrong length");
      if (place == "p" || place == cur.ambient->p_place)
        cur.beta_p = v;
      else if (place == "inf")
        cur.beta_infinity = v;
      else
        cur.beta_finite[place] = v;
    } else if (key == "end") {
      if (!cur.ambient) fail("parameter without ambient");
      if (has_mu) cur.ambient = cur.ambient->with_mu(mu);
      const std::size_t r = cur.ambient->pi1_I.rank();
      if (cur.beta_p.empty()) cur.beta_p = IntVector(r, Int(0));
      if (cur.beta_infinity.empty()) cur.beta_infinity = IntVector(r, Int(0));
      out.push_back(cur);
      open = false;
    } else {
      fail("unknown key " + key);
    }
  }
  if (open) fail("missing end");
  return out;
}

std::string serialize_parameters(const std::vector<KottwitzParameter>& params) {
  std::ostringstream os;
  auto vec = [&](const IntVector& v) {
    for (const auto& x : v) os << ' ' << x.get_str();
    os << '\n';
  };
  for (const auto& c : params) {
    os << "param " << c.label << '\n';
    os << "ambient " << c.ambient->name << '\n';
    os << "mu";
    vec(c.ambient->mu);
    if (!c.gamma0.empty()) os << "gamma0 " << c.gamma0 << '\n';
    os << "sign " << c.sign << '\n';
    os << "beta p";
    vec(c.beta_p);
    os << "beta inf";
    vec(c.beta_infinity);
    for (const auto& [label, x] : c.beta_finite) {
      os << "beta " << label;
      vec(x);
    }
    os << "end\n";
  }
  return os.str();
}

}  // namespace klab
