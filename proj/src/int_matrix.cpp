#include "klab/int_matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace klab {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

void IntMatrix::set_column(std::size_t j, const IntVector& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  IntVector r(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) r[i] += (*this)(i, k) * v[k];
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum mismatch");
  IntMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference mismatch");
  IntMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const {
  if (rows_ != o.rows_) throw std::invalid_argument("hcat row mismatch");
  IntMatrix r(rows_, cols_ + o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
  }
  return r;
}

IntMatrix IntMatrix::row_block(std::size_t r0, std::size_t r1) const {
  IntMatrix r(r1 - r0, cols_);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i - r0, j) = (*this)(i, j);
  return r;
}

IntMatrix IntMatrix::col_block(std::size_t c0, std::size_t c1) const {
  IntMatrix r(rows_, c1 - c0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = c0; j < c1; ++j) r(i, j - c0) = (*this)(i, j);
  return r;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

Int IntMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  // Bareiss elimination.
  IntMatrix a = *this;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool IntMatrix::is_unimodular() const {
  if (rows_ != cols_) return false;
  Int d = determinant();
  return d == 1 || d == -1;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << (*this)(i, j).get_str();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

IntVector SmithForm::diagonal() const {
  std::size_t n = std::min(D.rows(), D.cols());
  IntVector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = D(i, i);
  return d;
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  Int am = abs(m);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
  return r;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  IntMatrix A = m;
  IntMatrix U = IntMatrix::identity(nr);
  IntMatrix Ui = IntMatrix::identity(nr);
  IntMatrix V = IntMatrix::identity(nc);

  // Row op "row dst += k row src" on A and U; inverse op on U_inv columns.
  auto row_add = [&](std::size_t dst, std::size_t src, const Int& k) {
    A.add_row(dst, src, k);
    U.add_row(dst, src, k);
    Ui.add_col(src, dst, -k);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    U.swap_rows(a, b);
    Ui.swap_cols(a, b);
  };
  auto row_neg = [&](std::size_t r) {
    A.negate_row(r);
    U.negate_row(r);
    Ui.negate_col(r);
  };

  // Bezout step on rows (a, b) or columns (a, b): position (a, a) becomes the
  // gcd and the entry in b is cleared, with minimal cofactors.  A pivot that
  // already divides is kept, so the pivot only ever shrinks.
  auto bezout = [](const Int& a, const Int& b, Int& g, Int& x, Int& y) {
    if (b % a == 0) {
      g = a;
      x = 1;
      y = 0;
      return;
    }
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  };
  auto row_combine = [&](std::size_t a, std::size_t b) {
    Int g, x, y;
    bezout(A(a, a), A(b, a), g, x, y);
    const Int ra = A(a, a) / g, rb = A(b, a) / g;
    auto mix = [&](IntMatrix& M) {
      for (std::size_t j = 0; j < M.cols(); ++j) {
        Int u = M(a, j), v = M(b, j);
        M(a, j) = x * u + y * v;
        M(b, j) = ra * v - rb * u;
      }
    };
    mix(A);
    mix(U);
    // Ui times the inverse [[ra, -y], [rb, x]].
    for (std::size_t i = 0; i < Ui.rows(); ++i) {
      Int u = Ui(i, a), v = Ui(i, b);
      Ui(i, a) = ra * u + rb * v;
      Ui(i, b) = x * v - y * u;
    }
  };
  auto col_combine = [&](std::size_t a, std::size_t b) {
    Int g, x, y;
    bezout(A(a, a), A(a, b), g, x, y);
    const Int ra = A(a, a) / g, rb = A(a, b) / g;
    auto mix = [&](IntMatrix& M) {
      for (std::size_t i = 0; i < M.rows(); ++i) {
        Int u = M(i, a), v = M(i, b);
        M(i, a) = x * u + y * v;
        M(i, b) = ra * v - rb * u;
      }
    };
    mix(A);
    mix(V);
  };

  std::size_t t = 0;
  for (; t < std::min(nr, nc); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    Int best;
    for (std::size_t i = t; i < nr; ++i)
      for (std::size_t j = t; j < nc; ++j)
        if (A(i, j) != 0 && (!found || abs(A(i, j)) < best)) {
          found = true;
          best = abs(A(i, j));
          pi = i;
          pj = j;
        }
    if (!found) break;
    row_swap(t, pi);
    A.swap_cols(t, pj);
    V.swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < nr; ++i)
        if (A(i, t) != 0) {
          row_combine(t, i);
          dirty = true;
        }
      for (std::size_t j = t + 1; j < nc; ++j)
        if (A(t, j) != 0) {
          col_combine(t, j);
          dirty = true;
        }
      // Column operations can refill column t.
      if (dirty) continue;
      // Divisibility of the trailing block by the pivot.
      bool fixed = false;
      for (std::size_t i = t + 1; i < nr && !fixed; ++i)
        for (std::size_t j = t + 1; j < nc && !fixed; ++j)
          if (A(i, j) % A(t, t) != 0) {
            row_add(t, i, Int(1));
            fixed = true;
          }
      if (!fixed) break;
    }
    if (A(t, t) < 0) row_neg(t);
  }

  SmithForm s;
  s.U = std::move(U);
  s.D = std::move(A);
  s.V = std::move(V);
  s.U_inv = std::move(Ui);
  s.rank = t;
  return s;
}

IntMatrix integer_nullspace(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  IntMatrix k(m.cols(), m.cols() - s.rank);
  for (std::size_t j = s.rank; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, j - s.rank) = s.V(i, j);
  return k;
}

std::optional<IntegerSolution> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_integer: rhs size mismatch");
  SmithForm s = smith_normal_form(m);
  IntVector c = s.U * b;
  IntVector y(m.cols(), Int(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < s.rank) {
      if (c[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = c[i] / s.D(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  IntegerSolution sol;
  sol.particular = s.V * y;
  sol.kernel = IntMatrix(m.cols(), m.cols() - s.rank);
  for (std::size_t j = s.rank; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) sol.kernel(i, j - s.rank) = s.V(i, j);
  return sol;
}

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace klab
