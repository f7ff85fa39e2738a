#pragma once
// Dense exact integer matrices (GMP) and lattice routines. Everything
// downstream -- finite abelian groups, homology, K-group bookkeeping --
// reduces to Smith normal form and integer linear solving, so determinism
// here matters: the pivot rule is fixed and documented at the function.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace exl::lin {

using Int = mpz_class;

class IntMat {
public:
  IntMat() = default;
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols)) {}

  static IntMat identity(int n);
  static IntMat from_rows(const std::vector<std::vector<Int>>& rows);
  static IntMat from_cols(const std::vector<std::vector<Int>>& cols);
  static IntMat col_vector(const std::vector<Int>& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool operator==(const IntMat& o) const = default;
  IntMat operator*(const IntMat& o) const;
  IntMat operator*(const Int& c) const;
  IntMat operator+(const IntMat& o) const;
  IntMat operator-(const IntMat& o) const;
  IntMat operator-() const;

  IntMat transpose() const;
  std::vector<Int> col(int j) const;
  std::vector<Int> row(int i) const;
  void set_col(int j, const std::vector<Int>& v);
  IntMat hstack(const IntMat& o) const;  // [this | o]
  IntMat vstack(const IntMat& o) const;  // [this ; o]
  IntMat take_cols(int from, int count) const;
  IntMat take_rows(int from, int count) const;
  bool is_zero() const;
  std::string str() const;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

std::vector<Int> mat_vec(const IntMat& m, const std::vector<Int>& v);
std::vector<Int> vec_add(const std::vector<Int>& a, const std::vector<Int>& b);
std::vector<Int> vec_sub(const std::vector<Int>& a, const std::vector<Int>& b);
std::vector<Int> vec_scale(const Int& c, const std::vector<Int>& a);
bool vec_is_zero(const std::vector<Int>& a);

struct Snf {
  IntMat u, d, v;          // u * a * v = d, with u and v unimodular
  std::vector<Int> diag;   // positive diagonal entries of d, each dividing the next
  int rank = 0;            // number of nonzero diagonal entries
};

// Deterministic Smith reduction. Pivot choice inside the remaining block:
// smallest nonzero absolute value, ties broken by lowest row index, then
// lowest column index.
Snf smith_normal_form(const IntMat& a);

// One integer solution of a*x = b, if any.
std::optional<std::vector<Int>> solve_int(const IntMat& a, const std::vector<Int>& b);

// Columns form a basis of {x : a*x = 0}.
IntMat kernel_basis(const IntMat& a);

// Columns generate {x : a*x lies in the column span of l}. Always contains
// kernel_basis(a); this is the workhorse for "kernel modulo relations".
IntMat preimage_lattice(const IntMat& a, const IntMat& l);

// Is every column of sub in the column span of sup?
bool lattice_contains(const IntMat& sup, const IntMat& sub);

// Inverse of a unimodular matrix (asserts unimodularity).
IntMat unimodular_inverse(const IntMat& u);

// Bareiss fraction-free determinant; small matrices only.
Int det(const IntMat& a);

}  // namespace exl::lin
