#pragma once

// Dense matrices over an exact field (Rational or Fp) and the elimination
// routines the whole library runs on: rref, rank, nullspace, solve, inverse.
// The Fp instantiation routes its row operations through the runtime-selected
// mod-p kernels; the rational path skips zeros instead (its cost is bignum
// arithmetic, not memory traffic).

#include <optional>
#include <vector>

#include "meshct/fp.hpp"
#include "meshct/rational.hpp"
#include "meshct/simd_kernels.hpp"

namespace meshct {

template <class F>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = F(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  F& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const F& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  F* row(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }
  const F* row(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }

  bool is_zero() const {
    for (const F& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int k = 0; k < a.cols_; ++k) {
        const F& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) {
          if (b.at(k, j).is_zero()) continue;
          r.at(i, j) += aik * b.at(k, j);
        }
      }
    }
    return r;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
    return r;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
    return r;
  }

  Mat operator*(const F& c) const {
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
  }

 private:
  int rows_, cols_;
  std::vector<F> a_;
};

namespace detail {

// dst -= c * src over [from, cols)
template <class F>
inline void row_submul(F* dst, const F* src, const F& c, int from, int cols) {
  for (int j = from; j < cols; ++j) {
    if (!src[j].is_zero()) dst[j] -= c * src[j];
  }
}

template <>
inline void row_submul<Fp>(Fp* dst, const Fp* src, const Fp& c, int from, int cols) {
  static_assert(sizeof(Fp) == sizeof(uint32_t));
  uint32_t mc = (Fp::P - c.raw()) % Fp::P;  // add (p-c)*src == subtract c*src
  simd::axpy_mod(reinterpret_cast<uint32_t*>(dst) + from,
                 reinterpret_cast<const uint32_t*>(src) + from, mc,
                 static_cast<size_t>(cols - from));
}

template <class F>
inline void row_scale(F* dst, const F& c, int from, int cols) {
  for (int j = from; j < cols; ++j) {
    if (!dst[j].is_zero()) dst[j] *= c;
  }
}

template <>
inline void row_scale<Fp>(Fp* dst, const Fp& c, int from, int cols) {
  simd::scale_mod(reinterpret_cast<uint32_t*>(dst) + from, c.raw(),
                  static_cast<size_t>(cols - from));
}

}  // namespace detail

// Reduced row echelon form in place; returns pivot columns (rank = count).
template <class F>
std::vector<int> rref_inplace(Mat<F>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int sel = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (!m.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    m.swap_rows(r, sel);
    F inv = F(1) / m.at(r, c);
    detail::row_scale(m.row(r), inv, c, m.cols());
    m.at(r, c) = F(1);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      F f = m.at(i, c);
      if (f.is_zero()) continue;
      detail::row_submul(m.row(i), m.row(r), f, c, m.cols());
      m.at(i, c) = F(0);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int rank_of(Mat<F> m) {
  return static_cast<int>(rref_inplace(m).size());
}

// Basis of {x : A x = 0}, returned as columns.
template <class F>
Mat<F> nullspace(Mat<F> a) {
  std::vector<int> piv = rref_inplace(a);
  std::vector<char> is_piv(a.cols(), 0);
  for (int c : piv) is_piv[c] = 1;
  int k = a.cols() - static_cast<int>(piv.size());
  Mat<F> ns(a.cols(), k);
  int idx = 0;
  for (int c = 0; c < a.cols(); ++c) {
    if (is_piv[c]) continue;
    ns.at(c, idx) = F(1);
    for (size_t pr = 0; pr < piv.size(); ++pr) {
      ns.at(piv[pr], idx) = F(0) - a.at(static_cast<int>(pr), c);
    }
    ++idx;
  }
  return ns;
}

// Solve A X = B; nullopt if inconsistent. When the solution is not unique an
// arbitrary representative (free variables = 0) is returned.
template <class F>
std::optional<Mat<F>> solve(const Mat<F>& a, const Mat<F>& b) {
  Mat<F> aug(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) aug.at(i, a.cols() + j) = b.at(i, j);
  }
  std::vector<int> piv = rref_inplace(aug);
  for (int c : piv) {
    if (c >= a.cols()) return std::nullopt;  // pivot in rhs block
  }
  Mat<F> x(a.cols(), b.cols());
  for (size_t pr = 0; pr < piv.size(); ++pr) {
    for (int j = 0; j < b.cols(); ++j) {
      x.at(piv[pr], j) = aug.at(static_cast<int>(pr), a.cols() + j);
    }
  }
  return x;
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  auto x = solve(a, Mat<F>::identity(a.rows()));
  if (!x) return std::nullopt;
  // solve() succeeds for singular square systems too; check rank
  if ((a * *x) == Mat<F>::identity(a.rows())) return x;
  return std::nullopt;
}

// Column-space basis: indices of a maximal independent subset of columns.
template <class F>
std::vector<int> independent_columns(Mat<F> a) {
  return rref_inplace(a);
}

template <class F>
bool is_invertible(const Mat<F>& a) {
  return a.rows() == a.cols() && rank_of(a) == a.rows();
}

}  // namespace meshct
