#pragma once

#include <vector>

#include "etalg/rational.hpp"

namespace etalg {

// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Integer& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const Integer& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;

  std::vector<Integer> row(int i) const;
  std::vector<Integer> col(int j) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> a_;
};

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... .
struct SmithForm {
  IntMatrix U, D, V;
  int rank = 0;
  std::vector<Integer> diagonal;  // length min(rows, cols), nonnegative
};

SmithForm smith_normal_form(const IntMatrix& A);

// Row Hermite normal form: echelon, positive pivots, entries above each
// pivot reduced into [0, pivot). Zero rows are dropped.
IntMatrix hermite_rows(const IntMatrix& M);

// Basis of {v in Z^cols : A v = 0}, one vector per row, in Hermite form.
std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& A);

}  // namespace etalg
