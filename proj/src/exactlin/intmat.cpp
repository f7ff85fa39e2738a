#include "excision/intmat.hpp"

#include <sstream>
#include <stdexcept>

namespace exl::lin {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<std::vector<Int>>& rows) {
  int r = int(rows.size());
  int c = r ? int(rows[0].size()) : 0;
  IntMat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (int(rows[i].size()) != c) throw std::invalid_argument("ragged row list");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMat IntMat::from_cols(const std::vector<std::vector<Int>>& cols) {
  int c = int(cols.size());
  int r = c ? int(cols[0].size()) : 0;
  IntMat m(r, c);
  for (int j = 0; j < c; ++j) {
    if (int(cols[j].size()) != r) throw std::invalid_argument("ragged column list");
    for (int i = 0; i < r; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

IntMat IntMat::col_vector(const std::vector<Int>& v) {
  IntMat m(int(v.size()), 1);
  for (int i = 0; i < int(v.size()); ++i) m.at(i, 0) = v[i];
  return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  IntMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

IntMat IntMat::operator*(const Int& c) const {
  IntMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
  return r;
}

IntMat IntMat::operator+(const IntMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  IntMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

IntMat IntMat::operator-(const IntMat& o) const { return *this + (-o); }

IntMat IntMat::operator-() const {
  IntMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
  return r;
}

IntMat IntMat::transpose() const {
  IntMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

std::vector<Int> IntMat::col(int j) const {
  std::vector<Int> v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

std::vector<Int> IntMat::row(int i) const {
  std::vector<Int> v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

void IntMat::set_col(int j, const std::vector<Int>& v) {
  for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

IntMat IntMat::hstack(const IntMat& o) const {
  if (rows_ != o.rows_ && cols_ != 0 && o.cols_ != 0)
    throw std::invalid_argument("hstack row mismatch");
  int r = cols_ ? rows_ : o.rows_;
  IntMat m(r, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
  return m;
}

IntMat IntMat::vstack(const IntMat& o) const {
  if (cols_ != o.cols_ && rows_ != 0 && o.rows_ != 0)
    throw std::invalid_argument("vstack column mismatch");
  int c = rows_ ? cols_ : o.cols_;
  IntMat m(rows_ + o.rows_, c);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) m.at(rows_ + i, j) = o.at(i, j);
  return m;
}

IntMat IntMat::take_cols(int from, int count) const {
  IntMat m(rows_, count);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < count; ++j) m.at(i, j) = at(i, from + j);
  return m;
}

IntMat IntMat::take_rows(int from, int count) const {
  IntMat m(count, cols_);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = at(from + i, j);
  return m;
}

bool IntMat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

std::string IntMat::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
  }
  os << "]";
  return os.str();
}

std::vector<Int> mat_vec(const IntMat& m, const std::vector<Int>& v) {
  if (int(v.size()) != m.cols()) throw std::invalid_argument("mat_vec shape mismatch");
  std::vector<Int> r(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) r[i] += m.at(i, j) * v[j];
  return r;
}

std::vector<Int> vec_add(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::vector<Int> vec_sub(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

std::vector<Int> vec_scale(const Int& c, const std::vector<Int>& a) {
  std::vector<Int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool vec_is_zero(const std::vector<Int>& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

namespace {

struct SnfWork {
  IntMat a, u, v;

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < a.cols(); ++k) std::swap(a.at(i, k), a.at(j, k));
    for (int k = 0; k < u.cols(); ++k) std::swap(u.at(i, k), u.at(j, k));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < a.rows(); ++k) std::swap(a.at(k, i), a.at(k, j));
    for (int k = 0; k < v.rows(); ++k) std::swap(v.at(k, i), v.at(k, j));
  }
  // row[i] += c * row[j]
  void row_add(int i, const Int& c, int j) {
    for (int k = 0; k < a.cols(); ++k) a.at(i, k) += c * a.at(j, k);
    for (int k = 0; k < u.cols(); ++k) u.at(i, k) += c * u.at(j, k);
  }
  // col[i] += c * col[j]
  void col_add(int i, const Int& c, int j) {
    for (int k = 0; k < a.rows(); ++k) a.at(k, i) += c * a.at(k, j);
    for (int k = 0; k < v.rows(); ++k) v.at(k, i) += c * v.at(k, j);
  }
  void row_negate(int i) {
    for (int k = 0; k < a.cols(); ++k) a.at(i, k) = -a.at(i, k);
    for (int k = 0; k < u.cols(); ++k) u.at(i, k) = -u.at(i, k);
  }

  // Pivot rule: smallest |entry| != 0 in a[t.., t..], ties by lowest row,
  // then lowest column.
  bool find_pivot(int t, int& pi, int& pj) {
    bool found = false;
    Int best;
    for (int i = t; i < a.rows(); ++i)
      for (int j = t; j < a.cols(); ++j) {
        const Int& x = a.at(i, j);
        if (x == 0) continue;
        Int ax = abs(x);
        if (!found || ax < best) {
          found = true;
          best = ax;
          pi = i;
          pj = j;
        }
      }
    return found;
  }
};

}  // namespace

Snf smith_normal_form(const IntMat& a) {
  SnfWork w{a, IntMat::identity(a.rows()), IntMat::identity(a.cols())};
  int n = std::min(a.rows(), a.cols());
  int t = 0;
  for (; t < n; ++t) {
    int pi, pj;
    if (!w.find_pivot(t, pi, pj)) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    for (;;) {
      // clear column t below the pivot, then row t right of it
      bool dirty = false;
      for (int i = t + 1; i < w.a.rows(); ++i) {
        if (w.a.at(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), w.a.at(i, t).get_mpz_t(), w.a.at(t, t).get_mpz_t());
        w.row_add(i, -q, t);
        if (w.a.at(i, t) != 0) dirty = true;  // remainder became the new candidate
      }
      for (int j = t + 1; j < w.a.cols(); ++j) {
        if (w.a.at(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), w.a.at(t, j).get_mpz_t(), w.a.at(t, t).get_mpz_t());
        w.col_add(j, -q, t);
        if (w.a.at(t, j) != 0) dirty = true;
      }
      if (!dirty) break;
      if (!w.find_pivot(t, pi, pj)) break;
      w.row_swap(t, pi);
      w.col_swap(t, pj);
    }
    if (w.a.at(t, t) < 0) w.row_negate(t);
    // divisibility: pull any non-multiple into column t and restart the step
    bool again = false;
    for (int i = t + 1; i < w.a.rows() && !again; ++i)
      for (int j = t + 1; j < w.a.cols() && !again; ++j)
        if (w.a.at(i, j) % w.a.at(t, t) != 0) {
          w.row_add(t, 1, i);
          again = true;
        }
    if (again) --t;
  }
  Snf s;
  s.u = std::move(w.u);
  s.v = std::move(w.v);
  s.d = std::move(w.a);
  s.rank = t;
  for (int i = 0; i < t; ++i) s.diag.push_back(s.d.at(i, i));
  return s;
}

std::optional<std::vector<Int>> solve_int(const IntMat& a, const std::vector<Int>& b) {
  Snf s = smith_normal_form(a);
  std::vector<Int> ub = mat_vec(s.u, b);
  std::vector<Int> y(a.cols());
  for (int i = 0; i < int(ub.size()); ++i) {
    if (i < s.rank) {
      if (ub[i] % s.diag[i] != 0) return std::nullopt;
      if (i < a.cols()) y[i] = ub[i] / s.diag[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_vec(s.v, y);
}

IntMat kernel_basis(const IntMat& a) {
  Snf s = smith_normal_form(a);
  return s.v.take_cols(s.rank, a.cols() - s.rank);
}

IntMat preimage_lattice(const IntMat& a, const IntMat& l) {
  if (l.cols() == 0) return kernel_basis(a);
  IntMat stacked = a.hstack(-l);
  IntMat k = kernel_basis(stacked);
  return k.take_rows(0, a.cols());
}

bool lattice_contains(const IntMat& sup, const IntMat& sub) {
  Snf s = smith_normal_form(sup);
  for (int j = 0; j < sub.cols(); ++j) {
    std::vector<Int> ub = mat_vec(s.u, sub.col(j));
    for (int i = 0; i < int(ub.size()); ++i) {
      if (i < s.rank) {
        if (ub[i] % s.diag[i] != 0) return false;
      } else if (ub[i] != 0) {
        return false;
      }
    }
  }
  return true;
}

IntMat unimodular_inverse(const IntMat& u) {
  Snf s = smith_normal_form(u);
  if (s.rank != u.rows() || s.rank != u.cols())
    throw std::invalid_argument("matrix is not unimodular");
  for (const Int& d : s.diag)
    if (d != 1) throw std::invalid_argument("matrix is not unimodular");
  // u^{-1} = v * d^{-1} * u' with d = identity here
  return s.v * s.u;
}

Int det(const IntMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("det of non-square matrix");
  int n = a.rows();
  if (n == 0) return 1;
  IntMat m = a;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = t / prev;  // Bareiss: division is exact
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

}  // namespace exl::lin
