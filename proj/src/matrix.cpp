#include "p1bundles/matrix.hpp"

namespace p1b {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p),
               new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

// Row echelon over F_p on a flat buffer. Returns pivot column per pivot row.
std::vector<int> echelon_fp(std::vector<std::uint64_t>& m, int rows, int cols,
                            std::uint64_t p) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pr = -1;
    for (int r = row; r < rows; ++r)
      if (m[static_cast<size_t>(r) * cols + col] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int c = col; c < cols; ++c)
        std::swap(m[static_cast<size_t>(pr) * cols + c],
                  m[static_cast<size_t>(row) * cols + c]);
    std::uint64_t inv = invmod(m[static_cast<size_t>(row) * cols + col], p);
    for (int c = col; c < cols; ++c) {
      auto& x = m[static_cast<size_t>(row) * cols + c];
      x = mulmod(x, inv, p);
    }
    for (int r = 0; r < rows; ++r) {
      if (r == row) continue;
      std::uint64_t f = m[static_cast<size_t>(r) * cols + col];
      if (f == 0) continue;
      for (int c = col; c < cols; ++c) {
        std::uint64_t sub =
            mulmod(f, m[static_cast<size_t>(row) * cols + c], p);
        auto& x = m[static_cast<size_t>(r) * cols + c];
        x = x >= sub ? x - sub : x + p - sub;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<int> echelon_q(std::vector<mpq_class>& m, int rows, int cols) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pr = -1;
    for (int r = row; r < rows; ++r)
      if (m[static_cast<size_t>(r) * cols + col] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int c = col; c < cols; ++c)
        std::swap(m[static_cast<size_t>(pr) * cols + c],
                  m[static_cast<size_t>(row) * cols + c]);
    mpq_class inv = 1 / m[static_cast<size_t>(row) * cols + col];
    for (int c = col; c < cols; ++c)
      m[static_cast<size_t>(row) * cols + c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row) continue;
      mpq_class f = m[static_cast<size_t>(r) * cols + col];
      if (f == 0) continue;
      for (int c = col; c < cols; ++c)
        m[static_cast<size_t>(r) * cols + c] -=
            f * m[static_cast<size_t>(row) * cols + c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Matrix Matrix::identity(const Field& f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(field_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("shape", "matrix product shape mismatch");
  Matrix m(field_, rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      if (at(r, k).is_zero()) continue;
      for (int c = 0; c < o.cols_; ++c)
        m.at(r, c) += at(r, k) * o.at(k, c);
    }
  return m;
}

// Shared driver: echelonize a working copy in whichever representation.
namespace {
struct Echelon {
  std::vector<int> pivots;
  // reduced row echelon rows, as Scalars (pivot rows only)
  std::vector<std::vector<Scalar>> rows;
};

Echelon echelonize(const Matrix& a) {
  const Field f = a.field();
  Echelon out;
  if (!f.is_rational()) {
    std::vector<std::uint64_t> buf(static_cast<size_t>(a.rows()) * a.cols());
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c)
        buf[static_cast<size_t>(r) * a.cols() + c] = a.at(r, c).residue();
    out.pivots = echelon_fp(buf, a.rows(), a.cols(), f.p);
    for (size_t i = 0; i < out.pivots.size(); ++i) {
      std::vector<Scalar> row;
      row.reserve(a.cols());
      for (int c = 0; c < a.cols(); ++c)
        row.push_back(Scalar::of_int(
            static_cast<long>(buf[i * a.cols() + c]), f));
      out.rows.push_back(std::move(row));
    }
    return out;
  }
  std::vector<mpq_class> buf(static_cast<size_t>(a.rows()) * a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      buf[static_cast<size_t>(r) * a.cols() + c] = a.at(r, c).rational();
  out.pivots = echelon_q(buf, a.rows(), a.cols());
  for (size_t i = 0; i < out.pivots.size(); ++i) {
    std::vector<Scalar> row;
    row.reserve(a.cols());
    for (int c = 0; c < a.cols(); ++c)
      row.push_back(Scalar::of_rational(buf[i * a.cols() + c], f));
    out.rows.push_back(std::move(row));
  }
  return out;
}
}  // namespace

int Matrix::rank() const {
  return static_cast<int>(echelonize(*this).pivots.size());
}

std::vector<int> Matrix::pivot_columns() const {
  return echelonize(*this).pivots;
}

Scalar Matrix::det() const {
  if (rows_ != cols_) throw Error("shape", "determinant of non-square matrix");
  Matrix work = *this;
  Scalar acc = Scalar::one(field_);
  for (int col = 0; col < cols_; ++col) {
    int pr = -1;
    for (int r = col; r < rows_; ++r)
      if (!work.at(r, col).is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) return Scalar::zero(field_);
    if (pr != col) {
      for (int c = col; c < cols_; ++c) std::swap(work.at(pr, c), work.at(col, c));
      acc = -acc;
    }
    acc *= work.at(col, col);
    Scalar inv = work.at(col, col).inv();
    for (int r = col + 1; r < rows_; ++r) {
      if (work.at(r, col).is_zero()) continue;
      Scalar fct = work.at(r, col) * inv;
      for (int c = col; c < cols_; ++c)
        work.at(r, c) -= fct * work.at(col, c);
    }
  }
  return acc;
}

std::vector<std::vector<Scalar>> Matrix::kernel_basis() const {
  Echelon e = echelonize(*this);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols_, Scalar::zero(field_));
    v[free] = Scalar::one(field_);
    for (size_t i = 0; i < e.pivots.size(); ++i)
      v[e.pivots[i]] = -e.rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Scalar>> Matrix::solve(
    const std::vector<Scalar>& b) const {
  if (static_cast<int>(b.size()) != rows_)
    throw Error("shape", "solve: rhs length mismatch");
  Matrix aug(field_, rows_, cols_ + 1);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_) = b[r];
  }
  Echelon e = echelonize(aug);
  std::vector<Scalar> x(cols_, Scalar::zero(field_));
  for (size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == cols_) return std::nullopt;  // row (0...0 | 1)
    x[e.pivots[i]] = e.rows[i][cols_];
  }
  return x;
}

}  // namespace p1b
