#include "klab/abelian.hpp"

#include <sstream>
#include <stdexcept>

namespace klab {

FgAbGroup::FgAbGroup() : FgAbGroup(0, IntMatrix(0, 0)) {}

FgAbGroup::FgAbGroup(std::size_t ngens, IntMatrix relations)
    : ngens_(ngens), relations_(std::move(relations)) {
  if (relations_.rows() != ngens_) {
    if (relations_.cols() == 0)
      relations_ = IntMatrix(ngens_, 0);
    else
      throw std::invalid_argument("relation matrix must have one row per generator");
  }
  smith_ = smith_normal_form(relations_);
  for (std::size_t i = 0; i < ngens_; ++i) {
    if (i < smith_.rank) {
      if (smith_.D(i, i) != 1) {
        torsion_index_.push_back(i);
        torsion_invariants_.push_back(smith_.D(i, i));
      }
    }
  }
  first_free_ = smith_.rank;
  free_rank_ = ngens_ - smith_.rank;
}

FgAbGroup FgAbGroup::free(std::size_t rank) { return FgAbGroup(rank, IntMatrix(rank, 0)); }

FgAbGroup FgAbGroup::cyclic_sum(const std::vector<long>& orders) {
  IntMatrix r(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) r(i, i) = orders[i];
  return FgAbGroup(orders.size(), r);
}

FgAbGroup FgAbGroup::direct_sum(const std::vector<FgAbGroup>& parts) {
  std::size_t n = 0, k = 0;
  for (const auto& p : parts) {
    n += p.ngens();
    k += p.relations().cols();
  }
  IntMatrix r(n, k);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.ngens(); ++i)
      for (std::size_t j = 0; j < p.relations().cols(); ++j) r(r0 + i, c0 + j) = p.relations()(i, j);
    r0 += p.ngens();
    c0 += p.relations().cols();
  }
  return FgAbGroup(n, r);
}

Int FgAbGroup::order() const {
  if (!is_finite()) throw std::domain_error("order of an infinite group");
  Int o = 1;
  for (const auto& d : torsion_invariants_) o *= d;
  return o;
}

IntVector FgAbGroup::canonical(const IntVector& x) const {
  if (x.size() != ngens_) throw std::invalid_argument("element has wrong length");
  IntVector y = smith_.U * x;
  IntVector c;
  c.reserve(torsion_index_.size() + free_rank_);
  for (std::size_t k = 0; k < torsion_index_.size(); ++k)
    c.push_back(mod_floor(y[torsion_index_[k]], torsion_invariants_[k]));
  for (std::size_t i = first_free_; i < ngens_; ++i) c.push_back(y[i]);
  return c;
}

bool FgAbGroup::is_zero(const IntVector& x) const {
  for (const auto& c : canonical(x))
    if (c != 0) return false;
  return true;
}

bool FgAbGroup::equal(const IntVector& x, const IntVector& y) const {
  IntVector d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return is_zero(d);
}

IntVector FgAbGroup::add(const IntVector& x, const IntVector& y) const {
  IntVector s(ngens_);
  for (std::size_t i = 0; i < ngens_; ++i) s[i] = x[i] + y[i];
  return s;
}

IntVector FgAbGroup::neg(const IntVector& x) const {
  IntVector s(ngens_);
  for (std::size_t i = 0; i < ngens_; ++i) s[i] = -x[i];
  return s;
}

IntVector FgAbGroup::from_canonical(const IntVector& c) const {
  if (c.size() != torsion_index_.size() + free_rank_)
    throw std::invalid_argument("canonical vector has wrong length");
  IntVector y(ngens_, Int(0));
  for (std::size_t k = 0; k < torsion_index_.size(); ++k) y[torsion_index_[k]] = c[k];
  for (std::size_t i = 0; i < free_rank_; ++i) y[first_free_ + i] = c[torsion_index_.size() + i];
  return smith_.U_inv * y;
}

std::optional<Int> FgAbGroup::element_order(const IntVector& x) const {
  IntVector c = canonical(x);
  for (std::size_t i = torsion_index_.size(); i < c.size(); ++i)
    if (c[i] != 0) return std::nullopt;
  Int o = 1;
  for (std::size_t k = 0; k < torsion_index_.size(); ++k) {
    Int g;
    mpz_gcd(g.get_mpz_t(), c[k].get_mpz_t(), torsion_invariants_[k].get_mpz_t());
    Int ok = torsion_invariants_[k] / g;
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), ok.get_mpz_t());
  }
  return o;
}

std::vector<IntVector> FgAbGroup::elements(std::size_t limit) const {
  if (!is_finite()) throw std::domain_error("cannot enumerate an infinite group");
  if (order() > Int(static_cast<unsigned long>(limit)))
    throw std::length_error("group too large to enumerate");
  std::vector<IntVector> out;
  IntVector c(torsion_index_.size(), Int(0));
  for (;;) {
    out.push_back(from_canonical(c));
    std::size_t k = 0;
    while (k < c.size()) {
      c[k] += 1;
      if (c[k] < torsion_invariants_[k]) break;
      c[k] = 0;
      ++k;
    }
    if (k == c.size()) break;
  }
  return out;
}

IntVector FgAbGroup::torsion_coordinates(const IntVector& x) const {
  IntVector c = canonical(x);
  for (std::size_t i = torsion_index_.size(); i < c.size(); ++i)
    if (c[i] != 0) throw std::domain_error("element is not torsion");
  c.resize(torsion_index_.size());
  return c;
}

std::string FgAbGroup::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion_invariants_) {
    os << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  for (std::size_t i = 0; i < free_rank_; ++i) {
    os << (first ? "" : " + ") << "Z";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AbHom::AbHom() : matrix_(0, 0) {}

AbHom::AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.ngens() || matrix_.cols() != source_.ngens())
    throw std::invalid_argument("homomorphism matrix has wrong shape");
  const IntMatrix& r = source_.relations();
  for (std::size_t j = 0; j < r.cols(); ++j)
    if (!target_.is_zero(matrix_ * r.column(j)))
      throw std::invalid_argument("matrix does not respect the source relations");
}

IntVector AbHom::apply(const IntVector& x) const { return matrix_ * x; }

AbHom AbHom::compose_after(const AbHom& first) const {
  return AbHom(first.source(), target_, matrix_ * first.matrix());
}

bool AbHom::is_zero() const {
  for (std::size_t j = 0; j < matrix_.cols(); ++j)
    if (!target_.is_zero(matrix_.column(j))) return false;
  return true;
}

bool AbHom::is_injective() const { return kernel(*this).group.is_trivial(); }
bool AbHom::is_surjective() const { return cokernel(*this).group.is_trivial(); }

SubgroupResult subgroup_generated(const FgAbGroup& ambient, const IntMatrix& gens) {
  if (gens.rows() != ambient.ngens()) throw std::invalid_argument("generator length mismatch");
  const std::size_t g = gens.cols();
  // Relations: c with gens*c in colspan(R).
  IntMatrix big = gens.hcat(ambient.relations());
  IntMatrix ns = integer_nullspace(big);
  IntMatrix rel = ns.row_block(0, g);
  FgAbGroup sub(g, rel);
  return SubgroupResult{sub, AbHom(sub, ambient, gens)};
}

std::optional<IntVector> subgroup_coordinates(const SubgroupResult& sub, const IntVector& x) {
  const IntMatrix& gens = sub.inclusion.matrix();
  IntMatrix big = gens.hcat(sub.inclusion.target().relations());
  auto sol = solve_integer(big, x);
  if (!sol) return std::nullopt;
  IntVector c(sol->particular.begin(), sol->particular.begin() + gens.cols());
  return c;
}

SubgroupResult kernel(const AbHom& f) {
  IntMatrix big = f.matrix().hcat(f.target().relations());
  IntMatrix ns = integer_nullspace(big);
  IntMatrix gens = ns.row_block(0, f.source().ngens());
  return subgroup_generated(f.source(), gens);
}

QuotientResult quotient(const FgAbGroup& g, const IntMatrix& gens) {
  IntMatrix rel = g.relations().hcat(gens);
  FgAbGroup q(g.ngens(), rel);
  return QuotientResult{q, AbHom(g, q, IntMatrix::identity(g.ngens()))};
}

QuotientResult cokernel(const AbHom& f) { return quotient(f.target(), f.matrix()); }

SubgroupResult image(const AbHom& f) { return subgroup_generated(f.target(), f.matrix()); }

SubgroupResult torsion_subgroup(const FgAbGroup& g) {
  const auto& inv = g.torsion_invariants();
  IntMatrix rel(inv.size(), inv.size());
  for (std::size_t k = 0; k < inv.size(); ++k) rel(k, k) = inv[k];
  FgAbGroup t(inv.size(), rel);
  IntMatrix incl(g.ngens(), inv.size());
  for (std::size_t k = 0; k < inv.size(); ++k) {
    IntVector c(inv.size() + g.free_rank(), Int(0));
    c[k] = 1;
    incl.set_column(k, g.from_canonical(c));
  }
  return SubgroupResult{t, AbHom(t, g, incl)};
}

Rational frac(const Rational& q) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

FiniteDual::FiniteDual(const FgAbGroup& g) : group_(g) {
  if (!g.is_finite()) throw std::domain_error("non-finite group has no implemented dual");
  const auto& inv = g.torsion_invariants();
  IntMatrix rel(inv.size(), inv.size());
  for (std::size_t k = 0; k < inv.size(); ++k) rel(k, k) = inv[k];
  dual_ = FgAbGroup(inv.size(), rel);
}

Rational FiniteDual::pair(const IntVector& x, const IntVector& character) const {
  IntVector y = group_.canonical(x);
  const auto& inv = group_.torsion_invariants();
  if (character.size() != inv.size()) throw std::invalid_argument("character has wrong length");
  Rational s = 0;
  for (std::size_t k = 0; k < inv.size(); ++k) {
    Rational t(Int(character[k] * y[k]), inv[k]);
    t.canonicalize();
    s += t;
  }
  return frac(s);
}

FiniteDual dual_and_pairing(const FgAbGroup& g) { return FiniteDual(g); }

}  // namespace klab
