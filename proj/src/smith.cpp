#include "etalg/smith.hpp"

#include <utility>

#include "etalg/error.hpp"

namespace etalg {

IntMatrix::IntMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, Integer(0)) {
  require(rows >= 0 && cols >= 0, ErrorKind::invalid_input, "negative matrix shape");
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, int cols) {
  IntMatrix m(int(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i) {
    require(int(rows[i].size()) == cols, ErrorKind::invalid_input, "ragged matrix");
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  require(cols_ == o.rows_, ErrorKind::invalid_input, "matrix shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Integer& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

std::vector<Integer> IntMatrix::row(int i) const {
  return std::vector<Integer>(a_.begin() + std::size_t(i) * cols_,
                              a_.begin() + std::size_t(i + 1) * cols_);
}

std::vector<Integer> IntMatrix::col(int j) const {
  std::vector<Integer> c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

namespace {

void swap_rows(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += q * row[src]
void add_row(IntMatrix& m, int dst, int src, const Integer& q) {
  if (q == 0) return;
  for (int j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}

void add_col(IntMatrix& m, int dst, int src, const Integer& q) {
  if (q == 0) return;
  for (int i = 0; i < m.rows(); ++i) m(i, dst) += q * m(i, src);
}

Integer tdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  const int r = A.rows(), c = A.cols();
  SmithForm out;
  out.D = A;
  out.U = IntMatrix::identity(r);
  out.V = IntMatrix::identity(c);
  IntMatrix& D = out.D;
  const int n = std::min(r, c);
  int s = 0;
  for (; s < n; ++s) {
    bool nonzero_left = true;
    while (true) {
      int pi = -1, pj = -1;
      for (int i = s; i < r; ++i)
        for (int j = s; j < c; ++j)
          if (D(i, j) != 0 && (pi < 0 || abs(D(i, j)) < abs(D(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        nonzero_left = false;
        break;
      }
      swap_rows(D, s, pi);
      swap_rows(out.U, s, pi);
      swap_cols(D, s, pj);
      swap_cols(out.V, s, pj);
      bool clean = true;
      for (int i = s + 1; i < r; ++i) {
        if (D(i, s) == 0) continue;
        Integer q = -tdiv(D(i, s), D(s, s));
        add_row(D, i, s, q);
        add_row(out.U, i, s, q);
        if (D(i, s) != 0) clean = false;
      }
      for (int j = s + 1; j < c; ++j) {
        if (D(s, j) == 0) continue;
        Integer q = -tdiv(D(s, j), D(s, s));
        add_col(D, j, s, q);
        add_col(out.V, j, s, q);
        if (D(s, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = s + 1; i < r && bad < 0; ++i)
        for (int j = s + 1; j < c; ++j)
          if (D(i, j) % D(s, s) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(D, s, bad, Integer(1));
      add_row(out.U, s, bad, Integer(1));
    }
    if (!nonzero_left) break;
    if (D(s, s) < 0) {
      add_row(D, s, s, Integer(-2));
      add_row(out.U, s, s, Integer(-2));
    }
  }
  out.rank = s;
  out.diagonal.assign(n, Integer(0));
  for (int i = 0; i < s; ++i) out.diagonal[i] = D(i, i);
  return out;
}

IntMatrix hermite_rows(const IntMatrix& M) {
  IntMatrix H = M;
  const int r = H.rows(), c = H.cols();
  int row = 0;
  for (int col = 0; col < c && row < r; ++col) {
    while (true) {
      int piv = -1;
      for (int i = row; i < r; ++i)
        if (H(i, col) != 0 && (piv < 0 || abs(H(i, col)) < abs(H(piv, col)))) piv = i;
      if (piv < 0) break;
      swap_rows(H, row, piv);
      bool clean = true;
      for (int i = row + 1; i < r; ++i) {
        if (H(i, col) == 0) continue;
        add_row(H, i, row, -tdiv(H(i, col), H(row, col)));
        if (H(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(row, col) == 0) continue;
    if (H(row, col) < 0) add_row(H, row, row, Integer(-2));
    for (int i = 0; i < row; ++i) add_row(H, i, row, -fdiv(H(i, col), H(row, col)));
    ++row;
  }
  IntMatrix out(row, c);
  for (int i = 0; i < row; ++i)
    for (int j = 0; j < c; ++j) out(i, j) = H(i, j);
  return out;
}

std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& A) {
  SmithForm f = smith_normal_form(A);
  const int c = A.cols();
  IntMatrix K(c - f.rank, c);
  for (int t = f.rank; t < c; ++t)
    for (int j = 0; j < c; ++j) K(t - f.rank, j) = f.V(j, t);
  IntMatrix H = hermite_rows(K);
  std::vector<std::vector<Integer>> basis;
  for (int i = 0; i < H.rows(); ++i) basis.push_back(H.row(i));
  return basis;
}

}  // namespace etalg
