#include "klab/galois.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace klab {

FiniteGroup::FiniteGroup() {
  perms_ = {{0}};
  table_ = {{0}};
  inverse_ = {0};
  parent_ = {0};
  parent_gen_ = {0};
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<std::size_t>>& gens) {
  FiniteGroup g;
  std::size_t degree = gens.empty() ? 1 : gens[0].size();
  for (const auto& p : gens) {
    if (p.size() != degree) throw std::invalid_argument("generator permutations differ in degree");
    std::vector<bool> seen(degree, false);
    for (auto x : p) {
      if (x >= degree || seen[x]) throw std::invalid_argument("generator is not a permutation");
      seen[x] = true;
    }
  }
  std::vector<std::size_t> id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = i;
  auto compose = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
  };
  std::map<std::vector<std::size_t>, std::size_t> index;
  g.perms_ = {id};
  g.parent_ = {0};
  g.parent_gen_ = {0};
  index[id] = 0;
  for (std::size_t k = 0; k < g.perms_.size(); ++k) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      auto q = compose(gens[s], g.perms_[k]);
      if (index.count(q)) continue;
      if (g.perms_.size() >= 100000) throw std::length_error("group too large");
      index[q] = g.perms_.size();
      g.perms_.push_back(q);
      g.parent_.push_back(k);
      g.parent_gen_.push_back(s);
    }
  }
  const std::size_t n = g.perms_.size();
  g.table_.assign(n, std::vector<std::size_t>(n));
  g.inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      g.table_[a][b] = index.at(compose(g.perms_[a], g.perms_[b]));
      if (g.table_[a][b] == 0) g.inverse_[a] = b;
    }
  g.generators_.clear();
  for (const auto& p : gens) g.generators_.push_back(index.at(p));
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n <= 1) return FiniteGroup();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return from_permutations({p});
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1, x = a;
  while (x != 0) {
    x = mul(a, x);
    ++k;
  }
  return k;
}

std::size_t FiniteGroup::index_of(const std::vector<std::size_t>& perm) const {
  for (std::size_t i = 0; i < perms_.size(); ++i)
    if (perms_[i] == perm) return i;
  throw std::invalid_argument("permutation is not an element of the group");
}

std::vector<std::size_t> FiniteGroup::cyclic_subgroup(std::size_t a) const {
  std::vector<std::size_t> h{0};
  for (std::size_t x = a; x != 0; x = mul(a, x)) h.push_back(x);
  std::sort(h.begin(), h.end());
  return h;
}

std::vector<std::size_t> FiniteGroup::conjugate_subgroup(const std::vector<std::size_t>& h,
                                                         std::size_t g) const {
  std::vector<std::size_t> c;
  for (auto x : h) c.push_back(mul(mul(g, x), inverse(g)));
  std::sort(c.begin(), c.end());
  return c;
}

std::vector<std::vector<std::size_t>> FiniteGroup::cyclic_subgroup_classes() const {
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> reps;
  for (std::size_t a = 0; a < order(); ++a) {
    auto h = cyclic_subgroup(a);
    if (seen.count(h)) continue;
    reps.push_back(h);
    for (std::size_t g = 0; g < order(); ++g) seen.insert(conjugate_subgroup(h, g));
  }
  return reps;
}

std::vector<std::size_t> FiniteGroup::all_elements() const {
  std::vector<std::size_t> v(order());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

namespace {

bool same_endomorphism(const FgAbGroup& m, const IntMatrix& a, const IntMatrix& b) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!m.is_zero((a - b).column(j))) return false;
  return true;
}

}  // namespace

GaloisModule::GaloisModule(FiniteGroup group, FgAbGroup module, const std::vector<IntMatrix>& gm)
    : group_(std::move(group)), module_(std::move(module)) {
  if (gm.size() != group_.generators().size())
    throw std::invalid_argument("need one action matrix per group generator");
  const std::size_t n = module_.ngens();
  for (const auto& a : gm) {
    if (a.rows() != n || a.cols() != n) throw std::invalid_argument("action matrix has wrong size");
    AbHom(module_, module_, a);  // well-definedness on the presentation
  }
  action_.assign(group_.order(), IntMatrix());
  action_[0] = IntMatrix::identity(n);
  for (std::size_t e = 1; e < group_.order(); ++e)
    action_[e] = gm[group_.parent_generator(e)] * action_[group_.parent(e)];
  // Homomorphism check on every pair of generator and element.
  for (std::size_t s = 0; s < gm.size(); ++s)
    for (std::size_t e = 0; e < group_.order(); ++e) {
      std::size_t se = group_.mul(group_.generators()[s], e);
      if (!same_endomorphism(module_, gm[s] * action_[e], action_[se]))
        throw std::invalid_argument("action matrices do not satisfy the group relations");
    }
}

GaloisModule GaloisModule::lattice(FiniteGroup group, std::size_t rank, const std::vector<IntMatrix>& gm) {
  for (const auto& a : gm)
    if (!a.is_unimodular()) throw std::invalid_argument("lattice action matrix is not unimodular");
  return GaloisModule(std::move(group), FgAbGroup::free(rank), gm);
}

GaloisModule GaloisModule::trivial_action(FiniteGroup group, FgAbGroup module) {
  std::vector<IntMatrix> gm(group.generators().size(), IntMatrix::identity(module.ngens()));
  return GaloisModule(std::move(group), std::move(module), gm);
}

bool GaloisModule::is_lattice() const { return module_.torsion_invariants().empty(); }

GaloisModule permutation_module(const FiniteGroup& group, const std::vector<std::size_t>& subgroup) {
  // Cosets as sorted element sets.
  std::vector<std::vector<std::size_t>> cosets;
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t g = 0; g < group.order(); ++g) {
    std::vector<std::size_t> c;
    for (auto h : subgroup) c.push_back(group.mul(g, h));
    std::sort(c.begin(), c.end());
    if (index.count(c)) continue;
    index[c] = cosets.size();
    cosets.push_back(c);
  }
  const std::size_t n = cosets.size();
  std::vector<IntMatrix> gm;
  for (auto s : group.generators()) {
    IntMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> c;
      for (auto x : cosets[j]) c.push_back(group.mul(s, x));
      std::sort(c.begin(), c.end());
      a(index.at(c), j) = 1;
    }
    gm.push_back(a);
  }
  return GaloisModule::lattice(group, n, gm);
}

GaloisModule sign_module(const FiniteGroup& group, const std::vector<int>& sign) {
  if (sign.size() != group.order()) throw std::invalid_argument("sign must be given on every element");
  std::vector<IntMatrix> gm;
  for (auto s : group.generators()) gm.push_back(IntMatrix{{sign[s]}});
  return GaloisModule::lattice(group, 1, gm);
}

GaloisModule direct_sum(const std::vector<GaloisModule>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct sum of no modules");
  const FiniteGroup& g = parts[0].group();
  std::vector<FgAbGroup> mods;
  std::size_t n = 0;
  for (const auto& p : parts) {
    if (p.group().order() != g.order()) throw std::invalid_argument("modules over different groups");
    mods.push_back(p.module());
    n += p.rank();
  }
  std::vector<IntMatrix> gm;
  for (auto s : g.generators()) {
    IntMatrix a(n, n);
    std::size_t off = 0;
    for (const auto& p : parts) {
      const IntMatrix& b = p.action(s);
      for (std::size_t i = 0; i < p.rank(); ++i)
        for (std::size_t j = 0; j < p.rank(); ++j) a(off + i, off + j) = b(i, j);
      off += p.rank();
    }
    gm.push_back(a);
  }
  return GaloisModule(g, FgAbGroup::direct_sum(mods), gm);
}

PlaceSystem PlaceSystem::standard(const FiniteGroup& group, std::size_t conj) {
  if (group.element_order(conj) > 2) throw std::invalid_argument("complex conjugation must have order 1 or 2");
  PlaceSystem ps;
  ps.group = group;
  ps.archimedean.kind = Place::Kind::archimedean;
  ps.archimedean.subgroup = group.cyclic_subgroup(conj);
  ps.archimedean.label = "inf";
  auto classes = group.cyclic_subgroup_classes();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    Place p;
    p.kind = Place::Kind::finite;
    p.subgroup = classes[i];
    p.label = "f" + std::to_string(i);
    ps.finite.push_back(p);
  }
  return ps;
}

std::vector<Place> PlaceSystem::all() const {
  std::vector<Place> v{archimedean};
  v.insert(v.end(), finite.begin(), finite.end());
  return v;
}

const Place& PlaceSystem::find(const std::string& label) const {
  if (archimedean.label == label) return archimedean;
  for (const auto& p : finite)
    if (p.label == label) return p;
  throw std::invalid_argument("unknown place label: " + label);
}

QuotientResult coinvariants(const GaloisModule& m, const std::vector<std::size_t>& h) {
  const std::size_t n = m.rank();
  std::vector<IntVector> cols;
  IntMatrix id = IntMatrix::identity(n);
  for (auto e : h) {
    if (e == m.group().identity()) continue;
    IntMatrix d = m.action(e) - id;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(d.column(j));
  }
  return quotient(m.module(), IntMatrix::from_columns(cols, n));
}

SubgroupResult a_functor(const GaloisModule& m, const Place& v) {
  QuotientResult mh = coinvariants(m, v.subgroup);
  if (v.kind == Place::Kind::finite) {
    SubgroupResult t = torsion_subgroup(mh.group);
    return t;
  }
  const std::size_t n = m.rank();
  IntMatrix norm(n, n);
  for (auto e : v.subgroup) norm = norm + m.action(e);
  SubgroupResult ker = kernel(AbHom(m.module(), m.module(), norm));
  // ker(N) maps onto the Tate group inside M_H; its image is torsion there.
  return subgroup_generated(mh.group, ker.inclusion.matrix());
}

SubgroupResult a_functor_global(const GaloisModule& m) {
  return torsion_subgroup(coinvariants(m, m.group().all_elements()).group);
}

PMap p_map(const GaloisModule& m, const PlaceSystem& places) {
  PMap out;
  out.global = a_functor_global(m);
  const FgAbGroup& global_coinv = out.global.inclusion.target();
  std::vector<FgAbGroup> parts;
  std::vector<IntVector> cols;
  for (const auto& v : places.all()) {
    SubgroupResult a = a_functor(m, v);
    for (std::size_t j = 0; j < a.group.ngens(); ++j)
      cols.push_back(global_coinv.torsion_coordinates(a.inclusion.matrix().column(j)));
    parts.push_back(a.group);
    out.local.push_back(std::move(a));
  }
  FgAbGroup src = FgAbGroup::direct_sum(parts);
  out.map = AbHom(src, out.global.group, IntMatrix::from_columns(cols, out.global.group.ngens()));
  return out;
}

bool is_equivariant(const GaloisModule& src, const GaloisModule& dst, const IntMatrix& f) {
  if (src.group().order() != dst.group().order()) return false;
  for (std::size_t e = 0; e < src.group().order(); ++e)
    if (!same_endomorphism(dst.module(), dst.action(e) * f, f * src.action(e))) return false;
  return true;
}

GaloisModule restrict_to_sublattice(const GaloisModule& m, const IntMatrix& basis) {
  SubgroupResult sub = subgroup_generated(m.module(), basis);
  std::vector<IntMatrix> gm;
  for (auto g : m.group().generators()) {
    IntMatrix img = m.action(g) * basis;
    IntMatrix x(basis.cols(), basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      auto c = subgroup_coordinates(sub, img.column(j));
      if (!c) throw std::invalid_argument("sublattice is not stable under the action");
      x.set_column(j, sub.group.canonical(*c));
    }
    gm.push_back(x);
  }
  return GaloisModule(m.group(), FgAbGroup::free(basis.cols()), gm);
}

EGroupResult e_group(const GaloisModule& pi1_I, const GaloisModule& pi1_G, const IntMatrix& map,
                     const PlaceSystem& places) {
  if (!is_equivariant(pi1_I, pi1_G, map)) throw std::invalid_argument("pi_1 map is not equivariant");
  AbHom f(pi1_I.module(), pi1_G.module(), map);
  if (!f.is_surjective()) throw std::invalid_argument("π₁ map must be surjective");
  SubgroupResult k = kernel(f);
  if (!k.group.torsion_invariants().empty()) throw std::invalid_argument("kernel K must be torsion-free");
  // Free basis of K in pi_1(I) coordinates.
  const std::size_t r = k.group.free_rank();
  IntMatrix basis(pi1_I.rank(), r);
  for (std::size_t i = 0; i < r; ++i) {
    IntVector c(r, Int(0));
    c[i] = 1;
    basis.set_column(i, k.inclusion.apply(k.group.from_canonical(c)));
  }
  EGroupResult res;
  res.kernel_lattice = restrict_to_sublattice(pi1_I, basis);
  res.kernel_basis = basis;
  const GaloisModule& K = res.kernel_lattice;
  res.k_coinvariants = coinvariants(K, K.group().all_elements()).group;
  res.k_torsion = torsion_subgroup(res.k_coinvariants);

  std::vector<IntVector> killed;
  for (const auto& v : places.all()) {
    FgAbGroup kh = coinvariants(K, v.subgroup).group;
    SubgroupResult tv = torsion_subgroup(kh);
    FgAbGroup ih = coinvariants(pi1_I, v.subgroup).group;
    AbHom to_i(tv.group, ih, basis * tv.inclusion.matrix());
    SubgroupResult kv = kernel(to_i);
    IntMatrix gens = tv.inclusion.matrix() * kv.inclusion.matrix();  // in K coordinates
    std::vector<IntVector> local;
    for (std::size_t j = 0; j < gens.cols(); ++j) {
      IntVector t = res.k_coinvariants.torsion_coordinates(gens.column(j));
      local.push_back(t);
      killed.push_back(t);
    }
    res.local_kernels.push_back(IntMatrix::from_columns(local, res.k_torsion.group.ngens()));
  }
  QuotientResult q = quotient(res.k_torsion.group, IntMatrix::from_columns(killed, res.k_torsion.group.ngens()));
  res.e = q.group;
  res.projection = q.projection;
  return res;
}

KGroupResult kottwitz_k_group(const GaloisModule& pi1_I, const GaloisModule& pi1_G, const IntMatrix& map,
                              const PlaceSystem& places) {
  EGroupResult e = e_group(pi1_I, pi1_G, map, places);
  FiniteDual d(e.e);
  return KGroupResult{std::move(e), std::move(d)};
}

namespace {

// Map between two local-functor subgroups induced by a module map f.
AbHom induced_local(const SubgroupResult& src, const SubgroupResult& dst, const IntMatrix& f) {
  IntMatrix img = f * src.inclusion.matrix();
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < img.cols(); ++j) {
    auto c = subgroup_coordinates(dst, img.column(j));
    if (!c) throw std::logic_error("induced map leaves the local functor");
    cols.push_back(*c);
  }
  return AbHom(src.group, dst.group, IntMatrix::from_columns(cols, dst.group.ngens()));
}

TnPlaceReport tn_one(const std::string& label, const SubgroupResult& ak, const SubgroupResult& ai,
                     const SubgroupResult& ag, const IntMatrix& basis, const IntMatrix& map) {
  AbHom first = induced_local(ak, ai, basis);
  AbHom second = induced_local(ai, ag, map);
  TnPlaceReport r;
  r.label = label;
  r.order_k = ak.group.order();
  r.order_i = ai.group.order();
  r.order_g = ag.group.order();
  r.composite_zero = true;
  for (const auto& x : ak.group.elements())
    if (!ag.group.is_zero(second.apply(first.apply(x)))) r.composite_zero = false;
  std::set<IntVector> img;
  for (const auto& x : ak.group.elements()) img.insert(ai.group.canonical(first.apply(x)));
  r.image_order = static_cast<unsigned long>(img.size());
  unsigned long kc = 0;
  for (const auto& y : ai.group.elements())
    if (ag.group.is_zero(second.apply(y))) ++kc;
  r.kernel_order = kc;
  return r;
}

}  // namespace

TnReport tn_sequence_check(const GaloisModule& pi1_I, const GaloisModule& pi1_G, const IntMatrix& map,
                           const PlaceSystem& places) {
  EGroupResult e = e_group(pi1_I, pi1_G, map, places);
  const GaloisModule& K = e.kernel_lattice;
  TnReport rep;
  for (const auto& v : places.all()) {
    auto r = tn_one(v.label, a_functor(K, v), a_functor(pi1_I, v), a_functor(pi1_G, v), e.kernel_basis, map);
    rep.all_composites_zero = rep.all_composites_zero && r.composite_zero;
    rep.places.push_back(r);
  }
  auto r = tn_one("global", a_functor_global(K), a_functor_global(pi1_I), a_functor_global(pi1_G),
                  e.kernel_basis, map);
  rep.all_composites_zero = rep.all_composites_zero && r.composite_zero;
  rep.places.push_back(r);
  return rep;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> t;
  std::string w;
  while (is >> w) t.push_back(w);
  return t;
}

long to_long(const std::string& s) {
  std::size_t pos = 0;
  long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not an integer: " + s);
  return v;
}

struct ModuleSpec {
  std::size_t ngens = 0;
  IntMatrix relations;
  std::map<std::size_t, IntMatrix> acts;
  bool present = false;
};

GaloisModule build_module(const FiniteGroup& g, const ModuleSpec& s, const std::string& name) {
  if (!s.present) throw std::invalid_argument("missing module " + name);
  std::vector<IntMatrix> gm;
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    auto it = s.acts.find(i);
    gm.push_back(it == s.acts.end() ? IntMatrix::identity(s.ngens) : it->second);
  }
  FgAbGroup mod(s.ngens, s.relations.rows() == s.ngens ? s.relations : IntMatrix(s.ngens, 0));
  return GaloisModule(g, mod, gm);
}

}  // namespace

KGroupProblem parse_kgroup_problem(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t degree = 0;
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> conj;
  ModuleSpec specs[2];
  ModuleSpec* current = nullptr;
  std::vector<long> map_entries;
  bool have_map = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto t = tokens(line);
    if (t.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
    };
    if (t[0] == "group") {
      if (t.size() != 2) fail("expected: group <degree>");
      degree = static_cast<std::size_t>(to_long(t[1]));
    } else if (t[0] == "perm" || t[0] == "conj") {
      if (degree == 0) fail("group degree must come first");
      std::vector<std::size_t> p;
      if (t[0] == "conj" && t.size() == 2 && t[1] == "id") {
        for (std::size_t i = 0; i < degree; ++i) p.push_back(i);
      } else {
        if (t.size() != degree + 1) fail("permutation has wrong length");
        for (std::size_t i = 1; i < t.size(); ++i) p.push_back(static_cast<std::size_t>(to_long(t[i])));
      }
      (t[0] == "perm" ? perms.emplace_back() : conj) = p;
    } else if (t[0] == "module") {
      if (t.size() != 3 || (t[1] != "I" && t[1] != "G")) fail("expected: module I|G <ngens>");
      current = &specs[t[1] == "I" ? 0 : 1];
      current->present = true;
      current->ngens = static_cast<std::size_t>(to_long(t[2]));
    } else if (t[0] == "relations") {
      if (!current) fail("relations outside a module");
      std::size_t nc = static_cast<std::size_t>(to_long(t[1]));
      if (t.size() != 2 + nc * current->ngens) fail("relations: wrong number of entries");
      IntMatrix r(current->ngens, nc);
      for (std::size_t i = 0; i < current->ngens; ++i)
        for (std::size_t j = 0; j < nc; ++j) r(i, j) = to_long(t[2 + i * nc + j]);
      current->relations = r;
    } else if (t[0] == "act") {
      if (!current) fail("act outside a module");
      std::size_t n = current->ngens;
      if (t.size() != 2 + n * n) fail("act: wrong number of entries");
      IntMatrix a(n, n);
      for (std::size_t i = 0; i < n * n; ++i) a(i / n, i % n) = to_long(t[2 + i]);
      current->acts[static_cast<std::size_t>(to_long(t[1]))] = a;
    } else if (t[0] == "map") {
      for (std::size_t i = 1; i < t.size(); ++i) map_entries.push_back(to_long(t[i]));
      have_map = true;
    } else {
      fail("unknown keyword " + t[0]);
    }
  }
  if (degree == 0) throw std::invalid_argument("missing group line");
  KGroupProblem p;
  p.group = perms.empty() ? FiniteGroup() : FiniteGroup::from_permutations(perms);
  if (!conj.empty() && !perms.empty()) p.complex_conjugation = p.group.index_of(conj);
  p.pi1_I = build_module(p.group, specs[0], "I");
  p.pi1_G = build_module(p.group, specs[1], "G");
  if (!have_map || map_entries.size() != p.pi1_G.rank() * p.pi1_I.rank())
    throw std::invalid_argument("map must have rank(G) * rank(I) entries");
  p.map = IntMatrix(p.pi1_G.rank(), p.pi1_I.rank());
  for (std::size_t i = 0; i < map_entries.size(); ++i)
    p.map(i / p.pi1_I.rank(), i % p.pi1_I.rank()) = map_entries[i];
  return p;
}

std::string serialize_kgroup_problem(const KGroupProblem& p) {
  std::ostringstream os;
  const auto& g = p.group;
  std::size_t degree = g.permutation(0).size();
  os << "group " << degree << "\n";
  for (auto s : g.generators()) {
    os << "perm";
    for (auto x : g.permutation(s)) os << " " << x;
    os << "\n";
  }
  os << "conj";
  for (auto x : g.permutation(p.complex_conjugation)) os << " " << x;
  os << "\n";
  auto module = [&](const char* name, const GaloisModule& m) {
    os << "module " << name << " " << m.rank() << "\n";
    const IntMatrix& r = m.module().relations();
    if (r.cols() > 0) {
      os << "relations " << r.cols();
      for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) os << " " << r(i, j).get_str();
      os << "\n";
    }
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      os << "act " << s;
      const IntMatrix& a = m.action(g.generators()[s]);
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) os << " " << a(i, j).get_str();
      os << "\n";
    }
  };
  module("I", p.pi1_I);
  module("G", p.pi1_G);
  os << "map";
  for (std::size_t i = 0; i < p.map.rows(); ++i)
    for (std::size_t j = 0; j < p.map.cols(); ++j) os << " " << p.map(i, j).get_str();
  os << "\n";
  return os.str();
}

}  // namespace klab
