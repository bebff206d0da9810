#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ksim/matrix.hpp"

namespace ksim {

// Nondegenerate quadratic space over Q, given by a symmetric Gram matrix.
// dim 0 is allowed as the neutral element of orthogonal_sum.
struct QuadSpace {
  int dim = 0;
  MatQ gram;
  std::string label;

  QuadSpace() = default;
  explicit QuadSpace(MatQ g, std::string lab = "") : gram(std::move(g)), label(std::move(lab)) {
    require(gram.rows() == gram.cols(), errk::dimension_mismatch,
            "gram matrix " + gram.shape() + " not square");
    if (auto ij = gram.first_asymmetry())
      fail(errk::not_symmetric, "gram asymmetric at (" + std::to_string(ij->first) +
                                    "," + std::to_string(ij->second) + ")");
    require(!gram.det().is_zero(), errk::degenerate_form, "det(gram) = 0");
    dim = gram.rows();
  }
};

// forms compared entrywise, labels ignored
inline bool same_form(const QuadSpace& x, const QuadSpace& y) {
  return x.gram == y.gram;
}

template <class K>
struct Diagonalization_ {
  Mat<K> base_change;  // invertible B with t(B)*G*B diagonal
  std::vector<K> diag;
};
using Diagonalization = Diagonalization_<Rat>;

// Symmetric Gram-Schmidt with zero-diagonal repair (v_k += v_j when q(v_k)=0).
template <class K>
Diagonalization_<K> diagonalize_sym(Mat<K> g) {
  require(g.rows() == g.cols() && g.is_symmetric(), errk::not_symmetric,
          "diagonalize needs a symmetric matrix");
  const int n = g.rows();
  Mat<K> b = Mat<K>::identity(n);
  auto add_col = [&](int dst, int src, const K& c) {
    // basis op v_dst += c*v_src, i.e. congruence by an elementary matrix
    for (int r = 0; r < n; ++r) g.at(r, dst) += c * g.at(r, src);
    for (int r = 0; r < n; ++r) g.at(dst, r) += c * g.at(src, r);
    for (int r = 0; r < n; ++r) b.at(r, dst) += c * b.at(r, src);
  };
  Diagonalization_<K> out;
  for (int k = 0; k < n; ++k) {
    if (is_zero_val(g.at(k, k))) {
      int j = -1;
      for (int c = k + 1; c < n; ++c)
        if (!is_zero_val(g.at(k, c))) {
          j = c;
          break;
        }
      require(j >= 0, errk::degenerate_form,
              "row " + std::to_string(k) + " orthogonal to everything");
      // after v_k += s*v_j the norm is 2s*g(k,j) + s^2*g(j,j); s=1 and s=-1
      // cannot both vanish since g(k,j) != 0
      K plus = g.at(k, j) + g.at(k, j) + g.at(j, j);
      add_col(k, j, is_zero_val(plus) ? K(-1) : K(1));
    }
    K p = g.at(k, k);
    for (int j = k + 1; j < n; ++j) {
      K c = g.at(k, j) / p;
      if (!is_zero_val(c)) add_col(j, k, -c);
    }
  }
  out.base_change = std::move(b);
  out.diag.reserve(n);
  for (int k = 0; k < n; ++k) out.diag.push_back(g.at(k, k));
  return out;
}

inline Diagonalization diagonalize(const QuadSpace& q) {
  return diagonalize_sym(q.gram);
}

template <class K>
std::pair<int, int> signature_of(const std::vector<K>& diag) {
  int pos = 0, neg = 0;
  for (const auto& d : diag) {
    int s = sign_of(d);
    require(s != 0, errk::degenerate_form, "zero diagonal entry");
    (s > 0 ? pos : neg)++;
  }
  return {pos, neg};
}

inline std::pair<int, int> signature(const QuadSpace& q) {
  return signature_of(diagonalize(q).diag);
}

inline QuadSpace rescale(const QuadSpace& q, const Rat& c, std::string label = "") {
  require(!c.is_zero(), errk::zero_scale, "rescale by zero");
  return QuadSpace(c * q.gram, std::move(label));
}

inline QuadSpace orthogonal_sum(const QuadSpace& x, const QuadSpace& y) {
  MatQ g(x.dim + y.dim, x.dim + y.dim);
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < x.dim; ++j) g.at(i, j) = x.gram.at(i, j);
  for (int i = 0; i < y.dim; ++i)
    for (int j = 0; j < y.dim; ++j) g.at(x.dim + i, x.dim + j) = y.gram.at(i, j);
  return QuadSpace(std::move(g));
}

inline QuadSpace diagonal_space(const std::vector<Rat>& entries, std::string label = "") {
  MatQ g((int)entries.size(), (int)entries.size());
  for (int i = 0; i < (int)entries.size(); ++i) g.at(i, i) = entries[i];
  return QuadSpace(std::move(g), std::move(label));
}

inline bool is_diagonal(const MatQ& g) {
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      if (i != j && !g.at(i, j).is_zero()) return false;
  return true;
}

}  // namespace ksim
