#pragma once

// Dense matrices over an arbitrary entry type, plus the exact linear algebra
// the library is built on: fraction-free (Bareiss) determinants over Z,
// rational-pivot rank and inverse over Q, and Gaussian determinants over F_p.

#include <cstdint>
#include <vector>

#include "detrep/core.hpp"
#include "detrep/modular.hpp"

namespace detrep {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill = T())
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {
    require(rows >= 0 && cols >= 0, "matrix with negative dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n, T(0));
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  T& at(int i, int j) {
    require(i >= 0 && i < rows_ && j >= 0 && j < cols_, "matrix index out of range");
    return (*this)(i, j);
  }
  const T& at(int i, int j) const {
    require(i >= 0 && i < rows_ && j >= 0 && j < cols_, "matrix index out of range");
    return (*this)(i, j);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_, T(0));
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix difference shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
  }

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using ModMatrix = Matrix<std::uint64_t>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

// Exact determinant by single-step Bareiss elimination: every intermediate
// entry is a minor of the input, divisions are exact, no fractions appear.
inline Int det_exact(IntMatrix m) {
  require(m.rows() == m.cols(), "determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    int pivot = -1;
    for (int i = k; i < n; ++i)
      if (m(i, k) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != k) {
      for (int j = k; j < n; ++j) swap(m(k, j), m(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

// Rank over Q via rational-pivot Gaussian elimination with column scanning.
inline int rank_exact(RatMatrix m) {
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pivot = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = c; j < m.cols(); ++j) swap(m(r, j), m(pivot, j));
    for (int i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) / m(r, c);
      m(i, c) = 0;
      for (int j = c + 1; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

inline int rank_exact(const IntMatrix& m) { return rank_exact(to_rational(m)); }

// Determinant over Q: clear denominators row by row, then run the integer
// Bareiss elimination (much faster than mpq pivoting).
inline Rat det_exact(const RatMatrix& m) {
  require(m.rows() == m.cols(), "determinant of a non-square matrix");
  const int n = m.rows();
  IntMatrix z(n, n);
  Rat scale = rat(1);
  for (int i = 0; i < n; ++i) {
    Int l = 1;
    for (int j = 0; j < n; ++j) l = lcm(l, Int(m(i, j).get_den()));
    scale /= Rat(l);
    for (int j = 0; j < n; ++j) {
      Rat v = m(i, j) * Rat(l);
      DETREP_CHECK(v.get_den() == 1, "row scaling left a denominator");
      z(i, j) = v.get_num();
    }
  }
  return Rat(det_exact(z)) * scale;
}

// Inverse over Q (Gauss-Jordan); throws on singular input.
inline RatMatrix inverse(RatMatrix m) {
  require(m.rows() == m.cols(), "inverse of a non-square matrix");
  const int n = m.rows();
  RatMatrix inv = RatMatrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c) != 0) {
        pivot = i;
        break;
      }
    require(pivot >= 0, "inverse of a singular matrix");
    if (pivot != c)
      for (int j = 0; j < n; ++j) {
        swap(m(c, j), m(pivot, j));
        swap(inv(c, j), inv(pivot, j));
      }
    Rat d = m(c, c);
    for (int j = 0; j < n; ++j) {
      m(c, j) /= d;
      inv(c, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (int j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// Determinant over F_p by plain Gaussian elimination.
inline std::uint64_t det_mod_p(ModMatrix m, std::uint64_t p) {
  require(m.rows() == m.cols(), "determinant of a non-square matrix");
  const int n = m.rows();
  std::uint64_t det = 1 % p;
  bool negate = false;
  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    for (int i = k; i < n; ++i)
      if (m(i, k) % p != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != k) {
      for (int j = k; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      negate = !negate;
    }
    std::uint64_t pk = m(k, k) % p;
    det = mulmod(det, pk, p);
    std::uint64_t pk_inv = invmod(pk, p);
    for (int i = k + 1; i < n; ++i) {
      std::uint64_t f = mulmod(m(i, k) % p, pk_inv, p);
      if (f == 0) continue;
      m(i, k) = 0;
      for (int j = k + 1; j < n; ++j)
        m(i, j) = submod(m(i, j) % p, mulmod(f, m(k, j) % p, p), p);
    }
  }
  return negate ? (p - det) % p : det;
}

}  // namespace detrep
