#pragma once

#include <optional>
#include <vector>

#include "p1bundles/field.hpp"

namespace p1b {

// Dense matrix over one exact field. Elimination routines detour through a
// flat residue buffer over F_p, which keeps the inner loops allocation-free;
// over Q they run on mpq directly.
class Matrix {
 public:
  Matrix() : Matrix(Field{0}, 0, 0) {}
  Matrix(const Field& f, int rows, int cols)
      : field_(f), rows_(rows), cols_(cols),
        data_(static_cast<size_t>(rows) * cols, Scalar::zero(f)) {}

  static Matrix identity(const Field& f, int n);

  const Field& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;

  int rank() const;
  Scalar det() const;  // square matrices
  // Pivot column indices of the row echelon form.
  std::vector<int> pivot_columns() const;
  // Basis of {x : A x = 0}, one column vector per basis element.
  std::vector<std::vector<Scalar>> kernel_basis() const;
  // A particular solution of A x = b, or nullopt if inconsistent.
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;

 private:
  Field field_;
  int rows_, cols_;
  std::vector<Scalar> data_;
};

}  // namespace p1b
