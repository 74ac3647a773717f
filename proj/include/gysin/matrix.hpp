#pragma once

#include <cassert>
#include <initializer_list>
#include <string>
#include <vector>

#include "gysin/error.hpp"
#include "gysin/numeric.hpp"
#include "gysin/ring.hpp"

namespace gysin {

/// Dense matrix, row-major. Sizes here are desk-scale; no attempt at
/// sparse storage beyond the triple-list serialization format.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
    assert(rows >= 0 && cols >= 0);
  }
  Mat(int rows, int cols, std::initializer_list<T> entries)
      : Mat(rows, cols) {
    assert(int(entries.size()) == rows * cols);
    size_t i = 0;
    for (const T& v : entries) a_[i++] = v;
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[size_t(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[size_t(r) * cols_ + c];
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator-() const {
    Mat r = *this;
    for (T& v : r.a_) v = -v;
    return r;
  }
  Mat operator+(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }
  Mat operator-(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }
  Mat operator*(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& aik = (*this)(i, k);
        if (aik == T(0)) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }
  Mat operator*(const T& s) const {
    Mat r = *this;
    for (T& v : r.a_) v *= s;
    return r;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    assert(int(x.size()) == cols_);
    std::vector<T> y(rows_, T(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != T(0)) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_zero() const {
    for (const T& v : a_)
      if (v != T(0)) return false;
    return true;
  }

  std::vector<T> col(int j) const {
    std::vector<T> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_col(int j, const std::vector<T>& v) {
    assert(int(v.size()) == rows_);
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Mat cols_subset(const std::vector<int>& idx) const {
    Mat r(rows_, int(idx.size()));
    for (int j = 0; j < int(idx.size()); ++j)
      for (int i = 0; i < rows_; ++i) r(i, j) = (*this)(i, idx[j]);
    return r;
  }
  Mat rows_subset(const std::vector<int>& idx) const {
    Mat r(int(idx.size()), cols_);
    for (int i = 0; i < int(idx.size()); ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
    return r;
  }

  /// Horizontal concatenation [A | B].
  static Mat hstack(const Mat& a, const Mat& b) {
    assert(a.rows_ == b.rows_);
    Mat r(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
      for (int j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
    }
    return r;
  }
  static Mat vstack(const Mat& a, const Mat& b) {
    assert(a.cols_ == b.cols_);
    Mat r(a.rows_ + b.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
    return r;
  }
  /// Block matrix [[A, B], [C, D]].
  static Mat block2x2(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
    return vstack(hstack(a, b), hstack(c, d));
  }

  void paste(int r0, int c0, const Mat& b) {
    assert(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_);
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += (i ? "; " : "");
      for (int j = 0; j < cols_; ++j) {
        if (j) s += ",";
        s += gysin::to_string((*this)(i, j));
      }
    }
    return s + "]";
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

inline RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

/// Clear denominators: D * m is integral where D = lcm of denominators.
inline IntMat clear_denominators(const RatMat& m, Int* scale = nullptr) {
  Int d = 1;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) d = lcm(d, m(i, j).get_den());
  IntMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Rat v = m(i, j) * Rat(d);
      r(i, j) = v.get_num();
    }
  if (scale) *scale = d;
  return r;
}

/// Entry-wise reduction to canonical ring representatives.
inline IntMat reduce(const Ring& R, IntMat m) {
  if (!R.is_modular()) return m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = R.reduce(m(i, j));
  return m;
}

inline bool is_zero(const Ring& R, const IntMat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!R.is_zero(m(i, j))) return false;
  return true;
}

inline bool equal(const Ring& R, const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!R.is_zero(a(i, j) - b(i, j))) return false;
  return true;
}

}  // namespace gysin
