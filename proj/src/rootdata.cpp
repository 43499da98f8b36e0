#include "klab/rootdata.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace klab {

Int pairing(const IntVector& x, const IntVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pairing of vectors of different rank");
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

RootDatum::RootDatum()
    : name_("trivial"), rank_(0), cochar_(GaloisModule::lattice(FiniteGroup(), 0, {})), certified_ker1_(true) {}

RootDatum::RootDatum(std::string name, std::size_t rank, std::vector<IntVector> roots,
                     std::vector<IntVector> coroots, std::vector<std::size_t> simple, GaloisModule cochar,
                     bool certified_ker1)
    : name_(std::move(name)),
      rank_(rank),
      roots_(std::move(roots)),
      coroots_(std::move(coroots)),
      simple_(std::move(simple)),
      cochar_(std::move(cochar)),
      certified_ker1_(certified_ker1) {
  if (roots_.size() != coroots_.size()) throw std::invalid_argument("roots and coroots must pair up");
  if (cochar_.rank() != rank_) throw std::invalid_argument("cocharacter module has the wrong rank");
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (pairing(roots_[i], coroots_[i]) != 2) throw std::invalid_argument("root and coroot do not pair to 2");
  IntMatrix c = cartan_matrix();
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (i != j && c(i, j) > 0) throw std::invalid_argument("simple roots do not give a Cartan matrix");
  std::set<IntVector> coroot_set(coroots_.begin(), coroots_.end());
  for (auto g : galois().generators())
    for (const auto& a : coroots_)
      if (!coroot_set.count(cochar_.action(g) * a)) throw std::invalid_argument("Galois action does not permute coroots");
}

bool RootDatum::is_split() const {
  for (std::size_t e = 0; e < galois().order(); ++e)
    if (cochar_.action(e) != IntMatrix::identity(rank_)) return false;
  return true;
}

IntMatrix RootDatum::cartan_matrix() const {
  IntMatrix c(simple_.size(), simple_.size());
  for (std::size_t i = 0; i < simple_.size(); ++i)
    for (std::size_t j = 0; j < simple_.size(); ++j) c(i, j) = pairing(roots_[simple_[i]], coroots_[simple_[j]]);
  return c;
}

namespace presets {

namespace {

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, Int(0));
  v[i] = 1;
  return v;
}

GaloisModule split_lattice(std::size_t rank) { return GaloisModule::lattice(FiniteGroup(), rank, {}); }

IntMatrix type_a_cartan(std::size_t r) {
  IntMatrix c(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    c(i, i) = 2;
    if (i + 1 < r) c(i, i + 1) = c(i + 1, i) = -1;
  }
  return c;
}

// Positive roots alpha_i + ... + alpha_{j-1} of type A_r in two coordinate systems:
// `simple_root(i)` and `simple_coroot(i)` give the simple vectors.
template <class F1, class F2>
RootDatum type_a(std::string name, std::size_t r, std::size_t rank, F1 simple_root, F2 simple_coroot) {
  std::vector<IntVector> roots, coroots;
  std::vector<std::size_t> simple;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j <= r; ++j) {
      IntVector a(rank, Int(0)), c(rank, Int(0));
      for (std::size_t k = i; k < j; ++k) {
        IntVector sa = simple_root(k), sc = simple_coroot(k);
        for (std::size_t t = 0; t < rank; ++t) {
          a[t] += sa[t];
          c[t] += sc[t];
        }
      }
      if (j == i + 1) simple.push_back(roots.size());
      roots.push_back(a);
      coroots.push_back(c);
      for (auto& x : a) x = -x;
      for (auto& x : c) x = -x;
      roots.push_back(a);
      coroots.push_back(c);
    }
  return RootDatum(std::move(name), rank, roots, coroots, simple, split_lattice(rank), true);
}

}  // namespace

RootDatum gl(std::size_t n) {
  if (n == 0) throw std::invalid_argument("GL_0 is not a group");
  auto e = [n](std::size_t k) {
    IntVector v(n, Int(0));
    v[k] = 1;
    v[k + 1] = -1;
    return v;
  };
  return type_a("GL" + std::to_string(n), n - 1, n, e, e);
}

RootDatum sl(std::size_t n) {
  if (n < 2) throw std::invalid_argument("SL_n needs n >= 2");
  IntMatrix c = type_a_cartan(n - 1);
  auto root = [c](std::size_t k) { return c.row(k); };
  auto coroot = [n](std::size_t k) { return unit(n - 1, k); };
  return type_a("SL" + std::to_string(n), n - 1, n - 1, root, coroot);
}

RootDatum pgl(std::size_t n) {
  if (n < 2) throw std::invalid_argument("PGL_n needs n >= 2");
  IntMatrix c = type_a_cartan(n - 1);
  auto root = [n](std::size_t k) { return unit(n - 1, k); };
  auto coroot = [c](std::size_t k) { return c.row(k); };
  return type_a("PGL" + std::to_string(n), n - 1, n - 1, root, coroot);
}

RootDatum gsp4() {
  // Torus diag(x1, x2, z/x2, z/x1); X^* coordinates (x1, x2, z).
  std::vector<IntVector> pos_roots = {{1, -1, 0}, {1, 1, -1}, {2, 0, -1}, {0, 2, -1}};
  std::vector<IntVector> pos_coroots = {{1, -1, 0}, {1, 1, 0}, {1, 0, 0}, {0, 1, 0}};
  std::vector<IntVector> roots, coroots;
  for (std::size_t i = 0; i < 4; ++i) {
    roots.push_back(pos_roots[i]);
    coroots.push_back(pos_coroots[i]);
    IntVector a = pos_roots[i], c = pos_coroots[i];
    for (auto& x : a) x = -x;
    for (auto& x : c) x = -x;
    roots.push_back(a);
    coroots.push_back(c);
  }
  // Simple roots: e1 - e2 (short) and 2 e2 - z (long).
  return RootDatum("GSp4", 3, roots, coroots, {0, 6}, split_lattice(3), true);
}

RootDatum norm_one_torus() {
  FiniteGroup g = FiniteGroup::cyclic(2);
  return RootDatum("norm-one", 1, {}, {}, {}, GaloisModule::lattice(g, 1, {IntMatrix{{-1}}}), true);
}

RootDatum induced_torus() {
  FiniteGroup g = FiniteGroup::cyclic(2);
  return RootDatum("induced", 2, {}, {}, {}, GaloisModule::lattice(g, 2, {IntMatrix{{0, 1}, {1, 0}}}), true);
}

RootDatum product(const RootDatum& a, const RootDatum& b) {
  const FiniteGroup* g = nullptr;
  if (a.galois().order() == 1)
    g = &b.galois();
  else if (b.galois().order() == 1 || a.galois().generators().size() == b.galois().generators().size())
    g = &a.galois();
  if (!g || (a.galois().order() > 1 && b.galois().order() > 1 &&
             (a.galois().order() != b.galois().order())))
    throw std::invalid_argument("product of data split by different fields is not supported");
  const std::size_t r = a.rank() + b.rank();
  auto embed = [r](const IntVector& v, std::size_t off) {
    IntVector w(r, Int(0));
    for (std::size_t i = 0; i < v.size(); ++i) w[off + i] = v[i];
    return w;
  };
  std::vector<IntVector> roots, coroots;
  std::vector<std::size_t> simple;
  for (std::size_t i = 0; i < a.roots().size(); ++i) {
    roots.push_back(embed(a.roots()[i], 0));
    coroots.push_back(embed(a.coroots()[i], 0));
  }
  for (auto s : a.simple()) simple.push_back(s);
  for (std::size_t i = 0; i < b.roots().size(); ++i) {
    roots.push_back(embed(b.roots()[i], a.rank()));
    coroots.push_back(embed(b.coroots()[i], a.rank()));
  }
  for (auto s : b.simple()) simple.push_back(a.roots().size() + s);
  std::vector<IntMatrix> gm;
  for (std::size_t k = 0; k < g->generators().size(); ++k) {
    IntMatrix m(r, r);
    auto block = [&](const RootDatum& d, std::size_t off) {
      IntMatrix x = d.galois().order() == 1 ? IntMatrix::identity(d.rank())
                                            : d.cocharacters().action(d.galois().generators()[k]);
      for (std::size_t i = 0; i < d.rank(); ++i)
        for (std::size_t j = 0; j < d.rank(); ++j) m(off + i, off + j) = x(i, j);
    };
    block(a, 0);
    block(b, a.rank());
    gm.push_back(m);
  }
  return RootDatum(a.name() + "x" + b.name(), r, roots, coroots, simple, GaloisModule::lattice(*g, r, gm),
                   a.certified_ker1() && b.certified_ker1());
}

RootDatum by_name(const std::string& name) {
  auto pos = name.find('x');
  if (pos != std::string::npos) return product(by_name(name.substr(0, pos)), by_name(name.substr(pos + 1)));
  auto num = [&](std::size_t skip) {
    std::size_t n = std::stoul(name.substr(skip));
    if (n == 0 || n > 6) throw std::invalid_argument("preset size out of range: " + name);
    return n;
  };
  if (name == "GSp4") return gsp4();
  if (name == "norm-one") return norm_one_torus();
  if (name == "induced") return induced_torus();
  if (name.rfind("PGL", 0) == 0) return pgl(num(3));
  if (name.rfind("GL", 0) == 0) return gl(num(2));
  if (name.rfind("SL", 0) == 0) return sl(num(2));
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace presets

GaloisModule pi1(const RootDatum& rd) {
  IntMatrix rel = IntMatrix::from_columns(rd.coroots(), rd.rank());
  FgAbGroup m(rd.rank(), rel);
  std::vector<IntMatrix> gm;
  for (auto g : rd.galois().generators()) gm.push_back(rd.cocharacters().action(g));
  return GaloisModule(rd.galois(), m, gm);
}

FgAbGroup component_group_of_center_dual(const RootDatum& rd) {
  GaloisModule p = pi1(rd);
  return torsion_subgroup(coinvariants(p, p.group().all_elements()).group).group;
}

Rational tamagawa_number(const RootDatum& rd) {
  if (!rd.certified_ker1()) throw std::domain_error("ker¹ not certified trivial");
  return Rational(component_group_of_center_dual(rd).order());
}

std::vector<IntMatrix> weyl_group(const RootDatum& rd) {
  const std::size_t r = rd.rank();
  std::vector<IntMatrix> refl;
  for (std::size_t i = 0; i < rd.roots().size(); ++i) {
    IntMatrix m = IntMatrix::identity(r);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) m(a, b) -= rd.roots()[i][a] * rd.coroots()[i][b];
    refl.push_back(m);
  }
  std::vector<IntMatrix> elems{IntMatrix::identity(r)};
  std::set<std::string> seen{elems[0].str()};
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const auto& s : refl) {
      IntMatrix x = s * elems[k];
      if (seen.insert(x.str()).second) elems.push_back(x);
      if (elems.size() > 100000) throw std::length_error("Weyl group too large");
    }
  return elems;
}

namespace {

using RVec = std::vector<Rational>;

RVec act(const IntMatrix& m, const RVec& y) {
  RVec out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += Rational(m(i, j)) * y[j];
  return out;
}

Rational rpair(const RVec& y, const IntVector& c) {
  Rational s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * Rational(c[i]);
  return s;
}

// Pairings with every coroot modulo 1: identifies y up to the dual centre.
std::vector<Rational> center_key(const RootDatum& rd, const RVec& y) {
  std::vector<Rational> k;
  for (const auto& c : rd.coroots()) k.push_back(frac(rpair(y, c)));
  return k;
}

bool integral(const RVec& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

std::size_t qrank(const std::vector<IntVector>& rows, std::size_t r) {
  if (rows.empty()) return 0;
  IntMatrix m(rows.size(), r);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) m(i, j) = rows[i][j];
  return smith_normal_form(m).rank;
}

IntMatrix dual_action(const IntMatrix& w, const std::vector<IntMatrix>& group) {
  // Contragredient (w^{-1})^T on X_*.
  for (const auto& v : group)
    if (v * w == IntMatrix::identity(w.rows())) return v.transpose();
  throw std::logic_error("Weyl element without inverse");
}

std::string matrix_key(const IntMatrix& m) { return m.str(); }

struct Candidate {
  RVec y;
  std::vector<std::size_t> h;  // coroot indices
  IntMatrix omega;
};

}  // namespace

std::string EndoscopicDatum::describe() const {
  std::ostringstream os;
  os << "H roots " << h_coroots.size() << ", twist " << twist_label << ", s = (";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i].get_str();
  os << ")";
  return os.str();
}

std::vector<EndoscopicDatum> enumerate_elliptic_endoscopy(const RootDatum& rd, std::size_t n_max) {
  if (rd.rank() > 4 || rd.semisimple_rank() > 2) throw std::domain_error("preset enumeration only");
  if (n_max == 0) throw std::invalid_argument("torsion bound must be positive");
  const std::size_t r = rd.rank();
  if (!rd.is_split()) {
    if (!rd.roots().empty()) throw std::domain_error("preset enumeration only");
    EndoscopicDatum d;
    d.s.assign(r, Rational(0));
    d.twist = IntMatrix::identity(r);
    d.twist_label = "trivial";
    d.elliptic = true;
    d.out_order = 1;
    d.h = rd;
    return {d};
  }
  std::vector<IntMatrix> W = weyl_group(rd);
  std::vector<IntMatrix> Wdual;
  for (const auto& w : W) Wdual.push_back(dual_action(w, W));

  // Generic functional for positivity of coroots.
  IntVector u(r);
  for (std::size_t i = 0; i < r; ++i) u[i] = Int(1) + Int(static_cast<long>(i)) * 7919 + Int(static_cast<long>(i * i)) * 104729;
  for (const auto& c : rd.coroots())
    if (pairing(u, c) == 0) throw std::logic_error("positivity functional is not generic");

  std::vector<IntVector> all_rows = rd.coroots();
  const std::size_t dim_center = r - qrank(all_rows, r);

  std::map<std::string, EndoscopicDatum> classes;
  std::set<std::vector<Rational>> seen_y;

  std::vector<long> k(r, 0);
  const long n = static_cast<long>(n_max);
  for (;;) {
    RVec y(r);
    for (std::size_t i = 0; i < r; ++i) y[i] = Rational(k[i], n), y[i].canonicalize();
    auto ykey = center_key(rd, y);
    if (!seen_y.count(ykey)) {
      // Mark the whole Weyl orbit.
      for (const auto& w : W) seen_y.insert(center_key(rd, act(w, y)));
      std::vector<std::size_t> h;
      for (std::size_t i = 0; i < rd.coroots().size(); ++i)
        if (rpair(y, rd.coroots()[i]).get_den() == 1) h.push_back(i);
      // W_H: Weyl elements generated by reflections in H; equivalently those
      // fixing y modulo X^* that lie in the subgroup generated by H reflections.
      std::vector<IntMatrix> WH{IntMatrix::identity(r)};
      {
        std::set<std::string> s{WH[0].str()};
        std::vector<IntMatrix> refl;
        for (auto i : h) {
          IntMatrix m = IntMatrix::identity(r);
          for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) m(a, b) -= rd.roots()[i][a] * rd.coroots()[i][b];
          refl.push_back(m);
        }
        for (std::size_t t = 0; t < WH.size(); ++t)
          for (const auto& sr : refl) {
            IntMatrix x = sr * WH[t];
            if (s.insert(x.str()).second) WH.push_back(x);
          }
      }
      // Twists: Weyl elements fixing y modulo X^*, normalised to preserve the
      // positive coroots of H.
      std::set<std::string> done_cosets;
      for (std::size_t wi = 0; wi < W.size(); ++wi) {
        const IntMatrix& om = W[wi];
        RVec diff = act(om, y);
        for (std::size_t i = 0; i < r; ++i) diff[i] -= y[i];
        if (!integral(diff)) continue;
        const IntMatrix& omd = Wdual[wi];
        bool preserves_positive = true;
        for (auto i : h) {
          if (pairing(u, rd.coroots()[i]) < 0) continue;
          IntVector img = omd * rd.coroots()[i];
          if (pairing(u, img) < 0) preserves_positive = false;
        }
        if (!preserves_positive) continue;
        if (!done_cosets.insert(om.str()).second) continue;
        // Ellipticity: fixed part of the twist on the centre of H-hat.
        std::vector<IntVector> rows;
        for (auto i : h) rows.push_back(rd.coroots()[i]);
        for (std::size_t a = 0; a < r; ++a) {
          IntVector row(r);
          for (std::size_t b = 0; b < r; ++b) row[b] = om(a, b) - (a == b ? 1 : 0);
          rows.push_back(row);
        }
        bool elliptic = (r - qrank(rows, r)) == dim_center;
        if (!elliptic) continue;
        // Canonical key over the Weyl orbit of (y, twist coset).  The twist only
        // matters through the cyclic group it generates, so every generator of
        // that group is tried.
        std::size_t order = 1;
        for (IntMatrix p = om; p != IntMatrix::identity(r); p = p * om) ++order;
        std::vector<IntMatrix> twist_generators;
        {
          IntMatrix p = om;
          for (std::size_t k = 1; k <= order; ++k, p = p * om)
            if (std::gcd(k, order) == 1) twist_generators.push_back(p);
        }
        std::string best;
        for (std::size_t gi = 0; gi < W.size(); ++gi) {
          const IntMatrix& g = W[gi];
          const IntMatrix& ginv = Wdual[gi].transpose();
          RVec gy = act(g, y);
          std::string key;
          for (const auto& q : center_key(rd, gy)) key += q.get_str() + ",";
          std::string cmin;
          for (const auto& tw : twist_generators)
            for (const auto& wh : WH) {
              std::string c = matrix_key(g * tw * wh * ginv);
              if (cmin.empty() || c < cmin) cmin = c;
            }
          key += "|" + cmin;
          if (best.empty() || key < best) best = key;
        }
        if (classes.count(best)) continue;

        // Out order: Weyl elements stabilising y modulo the centre and the twist
        // modulo W_H, divided by |W_H|.
        std::set<std::string> coset;
        for (const auto& wh : WH) coset.insert(matrix_key(om * wh));
        long count = 0;
        for (std::size_t gi = 0; gi < W.size(); ++gi) {
          const IntMatrix& g = W[gi];
          const IntMatrix& ginv = Wdual[gi].transpose();
          if (center_key(rd, act(g, y)) != ykey) continue;
          if (!coset.count(matrix_key(g * om * ginv))) continue;
          ++count;
        }
        EndoscopicDatum d;
        d.s = y;
        d.h_coroots = h;
        d.twist = om;
        d.twist_order = order;
        d.twist_label = d.twist_order == 1 ? "trivial" : "order-" + std::to_string(d.twist_order);
        d.elliptic = true;
        d.out_order = Int(count) / Int(static_cast<unsigned long>(WH.size()));

        // Root datum of H with the twisted action on X_*.
        std::vector<IntVector> hr, hc;
        std::vector<std::size_t> positive;
        for (auto i : h) {
          if (pairing(u, rd.coroots()[i]) > 0) positive.push_back(hr.size());
          hr.push_back(rd.roots()[i]);
          hc.push_back(rd.coroots()[i]);
        }
        std::vector<std::size_t> simple;
        for (auto p : positive) {
          bool decomposable = false;
          for (auto a : positive)
            for (auto b : positive) {
              IntVector sum(r);
              for (std::size_t t = 0; t < r; ++t) sum[t] = hr[a][t] + hr[b][t];
              if (sum == hr[p]) decomposable = true;
            }
          if (!decomposable) simple.push_back(p);
        }
        FiniteGroup tg = FiniteGroup::cyclic(d.twist_order);
        std::vector<IntMatrix> gm;
        if (d.twist_order > 1) gm.push_back(omd);
        GaloisModule cochar = GaloisModule::lattice(tg, r, gm);
        d.h = RootDatum("H(" + rd.name() + ")", r, hr, hc, simple, cochar, true);
        classes.emplace(best, std::move(d));
      }
    }
    std::size_t i = 0;
    while (i < r) {
      if (++k[i] < n) break;
      k[i] = 0;
      ++i;
    }
    if (i == r) break;
  }
  std::vector<EndoscopicDatum> out;
  for (auto& [key, d] : classes) out.push_back(std::move(d));
  std::sort(out.begin(), out.end(), [](const EndoscopicDatum& a, const EndoscopicDatum& b) {
    return a.h_coroots.size() > b.h_coroots.size();
  });
  return out;
}

Rational iota(const RootDatum& g, const EndoscopicDatum& datum) {
  Rational v = tamagawa_number(g) / tamagawa_number(datum.h) / Rational(datum.out_order);
  v.canonicalize();
  return v;
}

}  // namespace klab
