#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "ksim/matrix.hpp"
#include "ksim/quadspace.hpp"
#include "ksim/report.hpp"
#include "ksim/similarity.hpp"

namespace ksim {

inline bool is_zero_val(double x) { return x == 0.0; }

inline constexpr int kMaxGenerators = 12;

// Clifford algebra of a diagonal form: n generators with e_i^2 = coeff[i],
// blades indexed by bitmasks.  T is Rat for exact work, double for numerics.
template <class T>
struct CliffordAlgebra {
  std::vector<T> coeff;

  explicit CliffordAlgebra(std::vector<T> c) : coeff(std::move(c)) {
    require((int)coeff.size() >= 1, errk::precondition_failed, "no generators");
    require((int)coeff.size() <= kMaxGenerators, errk::too_large,
            std::to_string(coeff.size()) + " generators exceeds the limit of " +
                std::to_string(kMaxGenerators));
    for (const T& a : coeff)
      require(!is_zero_val(a), errk::zero_coefficient,
              "generator with zero square");
  }

  int n() const { return (int)coeff.size(); }
  long dim() const { return 1L << n(); }
  long even_dim() const { return 1L << (n() - 1); }

  friend bool operator==(const CliffordAlgebra& x, const CliffordAlgebra& y) {
    return x.coeff == y.coeff;
  }
};

template <class T>
using AlgPtr = std::shared_ptr<const CliffordAlgebra<T>>;

template <class T>
AlgPtr<T> make_algebra(std::vector<T> coeff) {
  return std::make_shared<const CliffordAlgebra<T>>(std::move(coeff));
}

using CliffAlgQ = CliffordAlgebra<Rat>;
using AlgPtrQ = AlgPtr<Rat>;

template <class T>
struct CliffordElement {
  AlgPtr<T> alg;
  std::map<uint32_t, T> terms;  // zero coefficients absent

  bool is_zero() const { return terms.empty(); }
  bool is_even() const {
    for (const auto& [mask, c] : terms)
      if (std::popcount(mask) % 2) return false;
    return true;
  }
  T scalar_part() const {
    auto it = terms.find(0);
    return it == terms.end() ? T(0) : it->second;
  }

  friend bool operator==(const CliffordElement& x, const CliffordElement& y) {
    bool same_alg = x.alg == y.alg || (x.alg && y.alg && *x.alg == *y.alg);
    return same_alg && x.terms == y.terms;
  }
};

using CliffElemQ = CliffordElement<Rat>;

template <class T>
void check_same_algebra(const CliffordElement<T>& x, const CliffordElement<T>& y) {
  require(x.alg && y.alg && *x.alg == *y.alg, errk::algebra_mismatch,
          "elements of different algebras");
}

template <class T>
CliffordElement<T> cl_zero(const AlgPtr<T>& alg) {
  return {alg, {}};
}

template <class T>
CliffordElement<T> cl_scalar(const AlgPtr<T>& alg, const T& c) {
  CliffordElement<T> x{alg, {}};
  if (!is_zero_val(c)) x.terms[0] = c;
  return x;
}

template <class T>
CliffordElement<T> cl_blade(const AlgPtr<T>& alg, uint32_t mask, const T& c = T(1)) {
  require(mask < (1u << alg->n()), errk::precondition_failed,
          "blade out of range for n = " + std::to_string(alg->n()));
  CliffordElement<T> x{alg, {}};
  if (!is_zero_val(c)) x.terms[mask] = c;
  return x;
}

// degree-1 element with the given generator coordinates
template <class T>
CliffordElement<T> cl_vector(const AlgPtr<T>& alg, const std::vector<T>& coords) {
  require((int)coords.size() == alg->n(), errk::dimension_mismatch,
          "vector length does not match generator count");
  CliffordElement<T> x{alg, {}};
  for (int i = 0; i < alg->n(); ++i)
    if (!is_zero_val(coords[i])) x.terms[1u << i] = coords[i];
  return x;
}

template <class T>
void cl_add_term(CliffordElement<T>& x, uint32_t mask, const T& c) {
  auto it = x.terms.find(mask);
  if (it == x.terms.end()) {
    if (!is_zero_val(c)) x.terms.emplace(mask, c);
    return;
  }
  it->second = it->second + c;
  if (is_zero_val(it->second)) x.terms.erase(it);
}

template <class T>
CliffordElement<T> cl_add(const CliffordElement<T>& x, const CliffordElement<T>& y) {
  check_same_algebra(x, y);
  CliffordElement<T> out = x;
  for (const auto& [mask, c] : y.terms) cl_add_term(out, mask, c);
  return out;
}

template <class T>
CliffordElement<T> cl_scale(const CliffordElement<T>& x, const T& c) {
  CliffordElement<T> out{x.alg, {}};
  if (is_zero_val(c)) return out;
  for (const auto& [mask, v] : x.terms) {
    T cv = v * c;
    if (!is_zero_val(cv)) out.terms[mask] = cv;
  }
  return out;
}

template <class T>
CliffordElement<T> cl_sub(const CliffordElement<T>& x, const CliffordElement<T>& y) {
  return cl_add(x, cl_scale(y, T(-1)));
}

// transpositions needed to merge sorted blades a and b: #{(i,j) in a x b, i > j}
inline int blade_swaps(uint32_t a, uint32_t b) {
  int swaps = 0;
  while (b) {
    int i = std::countr_zero(b);
    swaps += std::popcount(a >> (i + 1));
    b &= b - 1;
  }
  return swaps;
}

template <class T>
CliffordElement<T> cl_mul(const CliffordElement<T>& x, const CliffordElement<T>& y) {
  check_same_algebra(x, y);
  CliffordElement<T> out{x.alg, {}};
  for (const auto& [a, ca] : x.terms)
    for (const auto& [b, cb] : y.terms) {
      T c = ca * cb;
      if (blade_swaps(a, b) % 2) c = -c;
      for (uint32_t common = a & b; common; common &= common - 1)
        c = c * x.alg->coeff[std::countr_zero(common)];
      cl_add_term(out, a ^ b, c);
    }
  return out;
}

// reversal anti-automorphism: degree-k blade picks up (-1)^(k(k-1)/2)
template <class T>
CliffordElement<T> reversal(const CliffordElement<T>& x) {
  CliffordElement<T> out{x.alg, {}};
  for (const auto& [mask, c] : x.terms) {
    int k = std::popcount(mask) % 4;
    out.terms[mask] = (k == 2 || k == 3) ? -c : c;
  }
  return out;
}

inline std::vector<uint32_t> even_blades(int n) {
  std::vector<uint32_t> out;
  out.reserve(1u << (n - 1));
  for (uint32_t m = 0; m < (1u << n); ++m)
    if (std::popcount(m) % 2 == 0) out.push_back(m);
  return out;
}

// Trace of w -> x*w on the even subalgebra, by summing diagonal entries.
template <class T>
T left_mult_trace(const CliffordElement<T>& x) {
  require(x.is_even(), errk::not_even, "left multiplication trace needs an even element");
  T tr(0);
  for (uint32_t s : even_blades(x.alg->n())) {
    CliffordElement<T> prod = cl_mul(x, cl_blade(x.alg, s));
    auto it = prod.terms.find(s);
    if (it != prod.terms.end()) tr += it->second;
  }
  return tr;
}

template <class T>
std::vector<T> cast_coords(const std::vector<Rat>& v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (const Rat& x : v) out.push_back(T(x));
  return out;
}

// diagonal-form evaluations
template <class T>
T diag_q(const std::vector<T>& coeff, const std::vector<T>& v) {
  T out(0);
  for (size_t i = 0; i < coeff.size(); ++i) out += coeff[i] * v[i] * v[i];
  return out;
}
template <class T>
T diag_b(const std::vector<T>& coeff, const std::vector<T>& v, const std::vector<T>& w) {
  T out(0);
  for (size_t i = 0; i < coeff.size(); ++i) out += coeff[i] * v[i] * w[i];
  return out;
}

// Even-subalgebra isomorphism induced by a similarity: the even blade
// e_{i1}...e_{i2m} maps to (1/lambda)^m (psi e_{i1})...(psi e_{i2m}).
struct CliffordMap {
  AlgPtrQ source, target;
  Rat multiplier;
  MatQ gen_images;  // column i = generator coordinates of psi(e_i) in target
  std::vector<CliffElemQ> even_images;  // precomputed for n <= 8, else empty

  int n() const { return source->n(); }

  CliffElemQ gen_image(int i) const {
    std::vector<Rat> col(n());
    for (int r = 0; r < n(); ++r) col[r] = gen_images.at(r, i);
    return cl_vector(target, col);
  }

  CliffElemQ blade_image(uint32_t mask) const {
    require(std::popcount(mask) % 2 == 0, errk::not_even, "odd blade");
    if (!even_images.empty()) {
      const auto& evens = even_blade_index();
      return even_images[evens.at(mask)];
    }
    return compute_blade_image(mask);
  }

  CliffElemQ apply(const CliffElemQ& x) const {
    require(x.alg && *x.alg == *source, errk::algebra_mismatch,
            "element does not live in the source algebra");
    require(x.is_even(), errk::not_even, "map is defined on the even subalgebra");
    CliffElemQ out = cl_zero(target);
    for (const auto& [mask, c] : x.terms)
      out = cl_add(out, cl_scale(blade_image(mask), c));
    return out;
  }

  // full even-basis matrix; columns follow even_blades order
  MatQ to_matrix() const {
    require(n() <= 8, errk::too_large,
            "even matrix materialized only for n <= 8 (have n = " +
                std::to_string(n()) + ")");
    auto blades = even_blades(n());
    MatQ m((int)blades.size(), (int)blades.size());
    for (int j = 0; j < (int)blades.size(); ++j) {
      CliffElemQ img = blade_image(blades[j]);
      for (int i = 0; i < (int)blades.size(); ++i) {
        auto it = img.terms.find(blades[i]);
        if (it != img.terms.end()) m.at(i, j) = it->second;
      }
    }
    return m;
  }

  CliffElemQ compute_blade_image(uint32_t mask) const {
    CliffElemQ out = cl_scalar(target, Rat(1));
    for (uint32_t rest = mask; rest; rest &= rest - 1)
      out = cl_mul(out, gen_image(std::countr_zero(rest)));
    Rat scale(1);
    for (int i = 0; i < std::popcount(mask) / 2; ++i) scale /= multiplier;
    return cl_scale(out, scale);
  }

 private:
  const std::map<uint32_t, int>& even_blade_index() const {
    // built once next to even_images; immutable afterwards
    return even_index_;
  }

  friend CliffordMap make_clifford_map(AlgPtrQ, AlgPtrQ, MatQ, Rat);
  std::map<uint32_t, int> even_index_;
};

// Builds a CliffordMap after asserting the generator relation
// q_target(psi e_i) = lambda * a_i; precomputes even-blade images for n <= 8.
inline CliffordMap make_clifford_map(AlgPtrQ source, AlgPtrQ target, MatQ gen_images,
                                     Rat multiplier) {
  require(source->n() == target->n(), errk::dimension_mismatch,
          "generator counts differ");
  const int n = source->n();
  require(gen_images.rows() == n && gen_images.cols() == n, errk::dimension_mismatch,
          "generator image matrix has shape " + gen_images.shape());
  require(!multiplier.is_zero(), errk::zero_scale, "zero multiplier");
  for (int i = 0; i < n; ++i) {
    Rat q(0);
    for (int r = 0; r < n; ++r)
      q += target->coeff[r] * gen_images.at(r, i) * gen_images.at(r, i);
    require(q == multiplier * source->coeff[i], errk::well_definedness,
            "generator " + std::to_string(i) + ": (psi e)^2 = " + q.str() +
                " but lambda*a = " + (multiplier * source->coeff[i]).str());
  }
  CliffordMap map;
  map.source = std::move(source);
  map.target = std::move(target);
  map.multiplier = std::move(multiplier);
  map.gen_images = std::move(gen_images);
  if (n <= 8) {
    auto blades = even_blades(n);
    map.even_images.reserve(blades.size());
    for (int i = 0; i < (int)blades.size(); ++i) {
      map.even_index_[blades[i]] = i;
      map.even_images.push_back(map.compute_blade_image(blades[i]));
    }
  }
  return map;
}

inline CliffordMap invert(const CliffordMap& map) {
  auto inv = map.gen_images.inverse();
  require(inv.has_value(), errk::singular, "generator image matrix is singular");
  return make_clifford_map(map.target, map.source, *inv, Rat(1) / map.multiplier);
}

// The induced map of a verified similarity, expressed on the diagonalizing
// bases of source and target.
inline CliffordMap induced_clifford_iso(const Similarity& psi,
                                        const Diagonalization& diag_source,
                                        const Diagonalization& diag_target) {
  // re-verify so hand-built Similarity values cannot smuggle a bad multiplier
  Similarity checked = similarity_verify(psi.matrix, psi.source, psi.target);
  require(checked.multiplier == psi.multiplier, errk::not_a_similarity,
          "stored multiplier is wrong");
  auto check_diag = [](const Diagonalization& d, const QuadSpace& q,
                       const char* which) {
    MatQ g = d.base_change.transpose() * q.gram * d.base_change;
    require(is_diagonal(g), errk::precondition_failed,
            std::string(which) + " base change does not diagonalize");
    for (int i = 0; i < q.dim; ++i)
      require(g.at(i, i) == d.diag[i], errk::precondition_failed,
              std::string(which) + " diagonal entries do not match");
  };
  check_diag(diag_source, psi.source, "source");
  check_diag(diag_target, psi.target, "target");
  auto tinv = diag_target.base_change.inverse();
  require(tinv.has_value(), errk::singular, "target base change is singular");
  MatQ c = *tinv * psi.matrix * diag_source.base_change;
  return make_clifford_map(make_algebra(diag_source.diag),
                           make_algebra(diag_target.diag), std::move(c),
                           psi.multiplier);
}

}  // namespace ksim
