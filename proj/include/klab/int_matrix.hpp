#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace klab {

using Int = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Int>;

// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);
  static IntMatrix diagonal(const IntVector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  void set_column(std::size_t j, const IntVector& v);

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const;
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  // Horizontal concatenation [this | o]; row counts must agree.
  IntMatrix hcat(const IntMatrix& o) const;
  // Rows [r0, r1) of the matrix.
  IntMatrix row_block(std::size_t r0, std::size_t r1) const;
  IntMatrix col_block(std::size_t c0, std::size_t c1) const;

  bool is_zero() const;
  // Determinant by fraction-free elimination; square only.
  Int determinant() const;
  bool is_unimodular() const;

  std::string str() const;

  // Elementary operations used by the Smith reduction.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& k);
  void add_col(std::size_t dst, std::size_t src, const Int& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... and d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inv;
  std::size_t rank = 0;
  IntVector diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

// Basis (as columns) of the integer kernel {x : M x = 0}.
IntMatrix integer_nullspace(const IntMatrix& m);

// Integer solutions of M x = b: a particular solution plus kernel generators.
struct IntegerSolution {
  IntVector particular;
  IntMatrix kernel;
};
std::optional<IntegerSolution> solve_integer(const IntMatrix& m, const IntVector& b);

// Floor-style remainder in [0, |m|).
Int mod_floor(const Int& a, const Int& m);

std::string to_string(const IntVector& v);

}  // namespace klab
