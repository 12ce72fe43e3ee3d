#pragma once

// Dense matrices over Q, exact arithmetic only.  Small dimensions (2d x 2d
// for desk-scale d), so plain Gauss-Jordan over Rational is fine.

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "nilseq/qaffine.hpp"
#include "nilseq/rational.hpp"

namespace nilseq {

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("RatMatrix: ragged rows");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("RatMatrix: shape mismatch");
    RatMatrix p(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(r, k).is_zero()) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) p(r, c) += a(r, k) * b(k, c);
      }
    return p;
  }

  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("RatMatrix: shape mismatch");
    RatMatrix d(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) d.data_[i] = a.data_[i] - b.data_[i];
    return d;
  }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

  Rational det() const;
  bool is_singular() const { return det().is_zero(); }
  RatMatrix inverse() const;

  // Exact matrix-vector product against QAffineReal entries.
  std::vector<QAffineReal> apply(const std::vector<QAffineReal>& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("RatMatrix: shape mismatch");
    std::vector<QAffineReal> out(rows_, QAffineReal(Rational(0)));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!(*this)(r, c).is_zero())
          out[r] = qa_add(out[r], qa_scale((*this)(r, c), v[c]));
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline Rational RatMatrix::det() const {
  if (rows_ != cols_) throw std::invalid_argument("RatMatrix: det of non-square");
  RatMatrix m = *this;
  std::size_t n = rows_;
  Rational d(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      d = -d;
    }
    d *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      Rational f = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return d;
}

inline RatMatrix RatMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("RatMatrix: inverse of non-square");
  std::size_t n = rows_;
  RatMatrix m = *this;
  RatMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw std::domain_error("RatMatrix: singular matrix");
    if (pivot != col)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(m(pivot, c), m(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    Rational p = m(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      m(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col).is_zero()) continue;
      Rational f = m(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) -= f * m(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

}  // namespace nilseq
