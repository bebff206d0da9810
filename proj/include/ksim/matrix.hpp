#pragma once

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "ksim/errors.hpp"
#include "ksim/quadext.hpp"
#include "ksim/rational.hpp"

namespace ksim {

// Dense matrix over an exact field K (Rat or QuadExt).
template <class K>
class Mat {
 public:
  Mat() = default;
  Mat(int r, int c) : rows_(r), cols_(c), e_((size_t)r * c) {
    require(r >= 0 && c >= 0, errk::dimension_mismatch, "negative dimension");
  }
  Mat(std::initializer_list<std::initializer_list<K>> rows) {
    rows_ = (int)rows.size();
    cols_ = rows_ ? (int)rows.begin()->size() : 0;
    e_.reserve((size_t)rows_ * cols_);
    for (const auto& r : rows) {
      require((int)r.size() == cols_, errk::dimension_mismatch, "ragged rows");
      for (const auto& x : r) e_.push_back(x);
    }
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  K& at(int i, int j) {
    require(i >= 0 && i < rows_ && j >= 0 && j < cols_,
            errk::dimension_mismatch, "index out of range");
    return e_[(size_t)i * cols_ + j];
  }
  const K& at(int i, int j) const {
    require(i >= 0 && i < rows_ && j >= 0 && j < cols_,
            errk::dimension_mismatch, "index out of range");
    return e_[(size_t)i * cols_ + j];
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  // first (i,j) with entries differing across the diagonal, if any
  std::optional<std::pair<int, int>> first_asymmetry() const {
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return std::make_pair(i, j);
    return std::nullopt;
  }

  void conform(const Mat& b) const {
    require(rows_ == b.rows_ && cols_ == b.cols_, errk::dimension_mismatch,
            "shape mismatch: " + shape() + " vs " + b.shape());
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    a.conform(b);
    Mat out(a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = a.e_[k] + b.e_[k];
    return out;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    a.conform(b);
    Mat out(a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = a.e_[k] - b.e_[k];
    return out;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    require(a.cols_ == b.rows_, errk::dimension_mismatch,
            "product of " + a.shape() + " by " + b.shape());
    Mat out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (is_zero_val(a.at(i, k))) continue;
        for (int j = 0; j < b.cols_; ++j)
          out.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return out;
  }
  friend Mat operator*(const K& c, const Mat& a) {
    Mat out(a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = c * a.e_[k];
    return out;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!is_zero_val(x)) return false;
    return true;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  template <class F>
  auto map(F f) const -> Mat<decltype(f(K()))> {
    Mat<decltype(f(K()))> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out.at(i, j) = f(at(i, j));
    return out;
  }

  K det() const {
    require(rows_ == cols_, errk::dimension_mismatch, "det of " + shape());
    if (rows_ == 0) return K(1);
    Ech e = echelon(*this, cols_);
    if ((int)e.pivots.size() < rows_) return K(0);
    // Bareiss: the final pivot is det(A) up to the row-swap sign
    K d = e.a.at(rows_ - 1, cols_ - 1);
    return e.sign < 0 ? -d : d;
  }

  int rank() const { return (int)echelon(*this, cols_).pivots.size(); }

  // any exact solution of A x = rhs with free variables set to 0, or nullopt
  std::optional<Mat> solve(const Mat& rhs) const {
    require(rhs.rows_ == rows_, errk::dimension_mismatch,
            "solve " + shape() + " against " + rhs.shape());
    Mat aug(rows_, cols_ + rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      for (int j = 0; j < rhs.cols_; ++j) aug.at(i, cols_ + j) = rhs.at(i, j);
    }
    Ech e = echelon(aug, cols_);
    int r = (int)e.pivots.size();
    for (int i = r; i < rows_; ++i)
      for (int j = 0; j < rhs.cols_; ++j)
        if (!is_zero_val(e.a.at(i, cols_ + j))) return std::nullopt;
    Mat x(cols_, rhs.cols_);
    for (int k = r - 1; k >= 0; --k) {
      int pc = e.pivots[k];
      for (int t = 0; t < rhs.cols_; ++t) {
        K s = e.a.at(k, cols_ + t);
        for (int l = k + 1; l < r; ++l)
          s -= e.a.at(k, e.pivots[l]) * x.at(e.pivots[l], t);
        x.at(pc, t) = s / e.a.at(k, pc);
      }
    }
    return x;
  }

  // columns spanning the null space (empty matrix when injective)
  Mat kernel() const {
    Ech e = echelon(*this, cols_);
    int r = (int)e.pivots.size();
    std::vector<int> free_cols;
    {
      std::vector<char> is_pivot(cols_, 0);
      for (int pc : e.pivots) is_pivot[pc] = 1;
      for (int j = 0; j < cols_; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    }
    Mat out(cols_, (int)free_cols.size());
    for (int t = 0; t < (int)free_cols.size(); ++t) {
      std::vector<K> v(cols_, K(0));
      v[free_cols[t]] = K(1);
      for (int k = r - 1; k >= 0; --k) {
        int pc = e.pivots[k];
        K s(0);
        for (int j = pc + 1; j < cols_; ++j)
          if (!is_zero_val(v[j])) s += e.a.at(k, j) * v[j];
        v[pc] = -(s / e.a.at(k, pc));
      }
      for (int i = 0; i < cols_; ++i) out.at(i, t) = v[i];
    }
    return out;
  }

  std::optional<Mat> inverse() const {
    require(rows_ == cols_, errk::dimension_mismatch, "inverse of " + shape());
    return solve(identity(rows_));
  }

 private:
  struct Ech {
    Mat a;
    std::vector<int> pivots;
    int sign = 1;
  };

  // Fraction-free forward elimination (Bareiss).  Pivots are sought only in
  // the first lead_cols columns; trailing columns ride along (augmentation).
  static Ech echelon(Mat a, int lead_cols) {
    Ech e{std::move(a), {}, 1};
    K prev(1);
    int row = 0;
    for (int c = 0; c < lead_cols && row < e.a.rows(); ++c) {
      int p = -1;
      for (int i = row; i < e.a.rows(); ++i)
        if (!is_zero_val(e.a.at(i, c))) {
          p = i;
          break;
        }
      if (p < 0) continue;
      if (p != row) {
        for (int j = 0; j < e.a.cols(); ++j)
          std::swap(e.a.at(p, j), e.a.at(row, j));
        e.sign = -e.sign;
      }
      for (int i = row + 1; i < e.a.rows(); ++i) {
        for (int j = c + 1; j < e.a.cols(); ++j)
          e.a.at(i, j) =
              (e.a.at(row, c) * e.a.at(i, j) - e.a.at(i, c) * e.a.at(row, j)) /
              prev;
        e.a.at(i, c) = K(0);
      }
      prev = e.a.at(row, c);
      e.pivots.push_back(c);
      ++row;
    }
    return e;
  }

  int rows_ = 0, cols_ = 0;
  std::vector<K> e_;
};

using MatQ = Mat<Rat>;

inline Mat<QuadExt> lift(const MatQ& m) {
  return m.map([](const Rat& x) { return QuadExt(x); });
}

template <class K>
std::vector<K> mat_vec(const Mat<K>& m, const std::vector<K>& v) {
  if (m.cols() != (int)v.size())
    fail(errk::dimension_mismatch, "matrix-vector size mismatch");
  std::vector<K> out(m.rows(), K(0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

}  // namespace ksim
