#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ksim/clifford.hpp"
#include "ksim/json_io.hpp"
#include "ksim/report.hpp"

namespace ksim {

inline std::vector<uint32_t> degree_blades(int n, int k) {
  std::vector<uint32_t> out;
  for (uint32_t m = 0; m < (1u << n); ++m)
    if (std::popcount(m) == k) out.push_back(m);
  return out;
}

inline CliffElemQ random_even_element(const AlgPtrQ& alg, Rng& rng, int max_terms = 3) {
  auto blades = even_blades(alg->n());
  CliffElemQ x = cl_zero(alg);
  for (int t = 0; t < max_terms; ++t)
    cl_add_term(x, blades[rng.below(blades.size())], rng.small_rat());
  return x;
}

inline std::vector<Rat> random_vector(int n, Rng& rng) {
  std::vector<Rat> v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.small_rat_or_zero();
  return v;
}

// Checks that the induced even-algebra map is a unital ring isomorphism:
// psi(1) = 1, psi(xy) = psi(x)psi(y), psi invertible.  Degree-2 generator
// pairs are always exhausted; the full even basis is exhausted for n <= 6
// (or n <= 8 with exhaustive = true); random sparse pairs round it out.
inline VerificationReport verify_ring_iso(const CliffordMap& map, int samples = 200,
                                          uint64_t seed = 0, bool exhaustive = false) {
  VerificationReport rep;
  rep.check = "clifford_ring_iso";
  const int n = map.n();
  {
    json inputs;
    inputs["gen_images"] = mat_to_json(map.gen_images);
    inputs["lambda"] = map.multiplier.str();
    inputs["samples"] = samples;
    inputs["seed"] = seed;
    rep.set_inputs(inputs);
  }
  rep.details["n"] = n;
  rep.details["even_dim"] = (int64_t)(1L << (n - 1));

  if (!(map.blade_image(0) == cl_scalar(map.target, Rat(1)))) {
    json w;
    w["reason"] = "image of 1 is not 1";
    w["image_of_unit"] = to_json(map.blade_image(0));
    rep.fail_with(w);
    return rep;
  }
  rep.details["unit_ok"] = true;

  if (map.gen_images.det().is_zero()) {
    json w;
    w["reason"] = "generator image matrix is singular";
    w["gen_images"] = mat_to_json(map.gen_images);
    rep.fail_with(w);
    return rep;
  }
  bool full_matrix_checked = false;
  if (n <= 6) {
    full_matrix_checked = true;
    if (map.to_matrix().det().is_zero()) {
      json w;
      w["reason"] = "even-basis matrix is singular";
      rep.fail_with(w);
      return rep;
    }
  }
  rep.details["invertible"] = true;
  rep.details["full_matrix_checked"] = full_matrix_checked;

  auto check_pair = [&](const CliffElemQ& x, const CliffElemQ& y,
                        const char* mode) -> bool {
    CliffElemQ lhs = map.apply(cl_mul(x, y));
    CliffElemQ rhs = cl_mul(map.apply(x), map.apply(y));
    if (lhs == rhs) return true;
    json w;
    w["mode"] = mode;
    w["x"] = to_json(x);
    w["y"] = to_json(y);
    w["map_of_product"] = to_json(lhs);
    w["product_of_images"] = to_json(rhs);
    rep.fail_with(w);
    return false;
  };

  auto deg2 = degree_blades(n, 2);
  long deg2_pairs = 0;
  for (uint32_t a : deg2)
    for (uint32_t b : deg2) {
      ++deg2_pairs;
      if (!check_pair(cl_blade(map.source, a), cl_blade(map.source, b),
                      "degree2"))
        return rep;
    }
  rep.details["degree2_pairs"] = deg2_pairs;

  long full_pairs = 0;
  if (n <= 6 || (exhaustive && n <= 8)) {
    auto blades = even_blades(n);
    for (uint32_t a : blades)
      for (uint32_t b : blades) {
        ++full_pairs;
        if (!check_pair(cl_blade(map.source, a), cl_blade(map.source, b),
                        "full_basis"))
          return rep;
      }
  }
  rep.details["full_basis_pairs"] = full_pairs;
  rep.details["mode"] = full_pairs > 0 ? "full_basis" : "sampled";

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    CliffElemQ x = random_even_element(map.source, rng);
    CliffElemQ y = random_even_element(map.source, rng);
    if (!check_pair(x, y, "sampled")) return rep;
  }
  rep.details["sampled_pairs"] = samples;
  return rep;
}

// tr(f1 f2 v~ w) on the even subalgebra; (f1, f2) must be orthogonal vectors
// of positive norm ("v~" is the reversal of v).
inline Rat trace_form(const AlgPtrQ& alg, const std::vector<Rat>& f1,
                      const std::vector<Rat>& f2, const CliffElemQ& v,
                      const CliffElemQ& w) {
  require((int)f1.size() == alg->n() && (int)f2.size() == alg->n(),
          errk::dimension_mismatch, "polarization vectors have the wrong length");
  Rat q1 = diag_q(alg->coeff, f1);
  Rat q2 = diag_q(alg->coeff, f2);
  Rat b12 = diag_b(alg->coeff, f1, f2);
  require(q1.sign() > 0 && q2.sign() > 0 && b12.is_zero(),
          errk::bad_polarization_pair,
          "need orthogonal positive-norm vectors: q(f1) = " + q1.str() +
              ", q(f2) = " + q2.str() + ", b(f1,f2) = " + b12.str());
  require(v.is_even() && w.is_even(), errk::not_even,
          "trace form arguments must be even");
  CliffElemQ e = cl_mul(cl_mul(cl_vector(alg, f1), cl_vector(alg, f2)),
                        cl_mul(reversal(v), w));
  return left_mult_trace(e);
}

// First orthogonal pair of positive-norm vectors: basis vectors, then integer
// two-index combinations of height <= 8.  Requires two positive directions.
inline std::pair<std::vector<Rat>, std::vector<Rat>> default_polarization_pair(
    const AlgPtrQ& alg) {
  const int n = alg->n();
  int positive = 0;
  for (const Rat& a : alg->coeff)
    if (a.sign() > 0) ++positive;
  require(positive >= 2, errk::bad_polarization_pair,
          "form has fewer than two positive directions");
  auto unit = [&](int i) {
    std::vector<Rat> v(n, Rat(0));
    v[i] = Rat(1);
    return v;
  };
  std::vector<std::vector<Rat>> found;
  for (int i = 0; i < n; ++i)
    if (alg->coeff[i].sign() > 0) found.push_back(unit(i));
  if (found.size() < 2) {
    for (int h = 1; h <= 8 && found.size() < 2; ++h)
      for (int i = 0; i < n && found.size() < 2; ++i)
        for (int j = i + 1; j < n && found.size() < 2; ++j)
          for (long ci = -h; ci <= h && found.size() < 2; ++ci)
            for (long cj = -h; cj <= h; ++cj) {
              if (std::max(std::abs(ci), std::abs(cj)) != h) continue;
              std::vector<Rat> v(n, Rat(0));
              v[i] = Rat(ci);
              v[j] = Rat(cj);
              if (diag_q(alg->coeff, v).sign() <= 0) continue;
              bool ortho = true;
              for (const auto& u : found)
                if (!diag_b(alg->coeff, u, v).is_zero()) ortho = false;
              if (ortho) {
                found.push_back(v);
                break;
              }
            }
  }
  require(found.size() >= 2, errk::bad_polarization_pair,
          "no orthogonal positive-norm pair found");
  return {found[0], found[1]};
}

// The left-multiplication trace is preserved by the induced isomorphism.
inline VerificationReport trace_invariance_check(const CliffordMap& map,
                                                 int samples = 200,
                                                 uint64_t seed = 0) {
  VerificationReport rep;
  rep.check = "trace_invariance";
  const int n = map.n();
  {
    json inputs;
    inputs["gen_images"] = mat_to_json(map.gen_images);
    inputs["lambda"] = map.multiplier.str();
    inputs["samples"] = samples;
    inputs["seed"] = seed;
    rep.set_inputs(inputs);
  }
  rep.details["n"] = n;

  auto check_one = [&](const CliffElemQ& x, const char* mode) -> bool {
    Rat lhs = left_mult_trace(x);
    Rat rhs = left_mult_trace(map.apply(x));
    if (lhs == rhs) return true;
    json w;
    w["mode"] = mode;
    w["x"] = to_json(x);
    w["trace_source"] = lhs.str();
    w["trace_target"] = rhs.str();
    rep.fail_with(w);
    return false;
  };

  std::vector<uint32_t> blades =
      n <= 8 ? even_blades(n) : degree_blades(n, 2);
  if (n > 8) blades.insert(blades.begin(), 0u);
  for (uint32_t m : blades)
    if (!check_one(cl_blade(map.source, m), "blade")) return rep;
  rep.details["blades_checked"] = (int64_t)blades.size();

  Rng rng(seed);
  int max_terms = n <= 8 ? 3 : 2;
  for (int s = 0; s < samples; ++s)
    if (!check_one(random_even_element(map.source, rng, max_terms), "sampled"))
      return rep;
  rep.details["sampled"] = samples;
  return rep;
}

// Q(v, w) = tr(f1 f2 v~ w) agrees with the target-side form built from the
// transported pair (psi f1 / lambda, psi f2):  Q(v, w) = Q'(psi v, psi w).
inline VerificationReport trace_compat_check(const CliffordMap& map,
                                             std::vector<Rat> f1,
                                             std::vector<Rat> f2,
                                             int samples = 200,
                                             uint64_t seed = 0) {
  VerificationReport rep;
  rep.check = "trace_form_compatibility";
  const int n = map.n();
  if (f1.empty() && f2.empty()) {
    auto pair = default_polarization_pair(map.source);
    f1 = pair.first;
    f2 = pair.second;
  }
  {
    json inputs;
    inputs["gen_images"] = mat_to_json(map.gen_images);
    inputs["lambda"] = map.multiplier.str();
    inputs["f1"] = vec_to_json(f1);
    inputs["f2"] = vec_to_json(f2);
    inputs["samples"] = samples;
    inputs["seed"] = seed;
    rep.set_inputs(inputs);
  }
  rep.details["n"] = n;
  rep.details["f1"] = vec_to_json(f1);
  rep.details["f2"] = vec_to_json(f2);

  std::vector<Rat> tf1 = mat_vec(map.gen_images, f1);
  for (Rat& x : tf1) x /= map.multiplier;
  std::vector<Rat> tf2 = mat_vec(map.gen_images, f2);
  rep.details["target_f1"] = vec_to_json(tf1);
  rep.details["target_f2"] = vec_to_json(tf2);

  auto check_pair = [&](const CliffElemQ& v, const CliffElemQ& w,
                        const char* mode) -> bool {
    Rat lhs = trace_form(map.source, f1, f2, v, w);
    Rat rhs = trace_form(map.target, tf1, tf2, map.apply(v), map.apply(w));
    if (lhs == rhs) return true;
    json wit;
    wit["mode"] = mode;
    wit["v"] = to_json(v);
    wit["w"] = to_json(w);
    wit["source_value"] = lhs.str();
    wit["target_value"] = rhs.str();
    rep.fail_with(wit);
    return false;
  };

  long pairs = 0;
  if (n <= 6) {
    auto blades = even_blades(n);
    for (uint32_t a : blades)
      for (uint32_t b : blades) {
        ++pairs;
        if (!check_pair(cl_blade(map.source, a), cl_blade(map.source, b),
                        "full_basis"))
          return rep;
      }
    rep.details["mode"] = "full_basis";
  } else if (n <= 8) {
    auto deg2 = degree_blades(n, 2);
    for (uint32_t a : deg2)
      for (uint32_t b : deg2) {
        ++pairs;
        if (!check_pair(cl_blade(map.source, a), cl_blade(map.source, b),
                        "degree2"))
          return rep;
      }
    rep.details["mode"] = "degree2";
  } else {
    rep.details["mode"] = "sampled";
  }
  rep.details["basis_pairs"] = pairs;

  Rng rng(seed);
  int max_terms = n <= 8 ? 3 : 2;
  for (int s = 0; s < samples; ++s) {
    CliffElemQ v = random_even_element(map.source, rng, max_terms);
    CliffElemQ w = random_even_element(map.source, rng, max_terms);
    if (!check_pair(v, w, "sampled")) return rep;
  }
  rep.details["sampled_pairs"] = samples;
  return rep;
}

// w -> v * w * v0 as an endomorphism of the even subalgebra (v, v0 vectors).
struct PhiOperator {
  CliffElemQ left;
  CliffElemQ right;

  CliffElemQ apply(const CliffElemQ& w) const {
    require(w.is_even(), errk::not_even, "operator acts on even elements");
    return cl_mul(cl_mul(left, w), right);
  }
};

inline std::vector<Rat> default_base_point(const AlgPtrQ& alg) {
  std::vector<Rat> v0(alg->n(), Rat(0));
  v0[0] = Rat(1);  // every generator has nonzero square, so e_0 qualifies
  return v0;
}

inline PhiOperator phi_embedding(const AlgPtrQ& alg, const std::vector<Rat>& v,
                                 const std::vector<Rat>& v0) {
  require((int)v.size() == alg->n() && (int)v0.size() == alg->n(),
          errk::dimension_mismatch, "vector length does not match the algebra");
  require(!diag_q(alg->coeff, v0).is_zero(), errk::zero_norm_base_point,
          "base point has zero norm");
  return {cl_vector(alg, v), cl_vector(alg, v0)};
}

// psi_Cl(v . x . v0) = (psi v) . psi_Cl(x) . (psi v0 / lambda): conjugating
// the embedding by the induced map matches the target embedding based at
// psi(v0)/lambda.
inline VerificationReport phi_square_check(const CliffordMap& map,
                                           std::vector<Rat> v0,
                                           int samples = 50, uint64_t seed = 0) {
  VerificationReport rep;
  rep.check = "phi_square";
  const int n = map.n();
  if (v0.empty()) v0 = default_base_point(map.source);
  {
    json inputs;
    inputs["gen_images"] = mat_to_json(map.gen_images);
    inputs["lambda"] = map.multiplier.str();
    inputs["v0"] = vec_to_json(v0);
    inputs["samples"] = samples;
    inputs["seed"] = seed;
    rep.set_inputs(inputs);
  }
  rep.details["n"] = n;
  rep.details["v0"] = vec_to_json(v0);

  require(!diag_q(map.source->coeff, v0).is_zero(), errk::zero_norm_base_point,
          "base point has zero norm");
  std::vector<Rat> tv0 = mat_vec(map.gen_images, v0);
  for (Rat& x : tv0) x /= map.multiplier;
  rep.details["target_v0"] = vec_to_json(tv0);

  CliffordMap inv = invert(map);

  std::vector<uint32_t> test_blades =
      n <= 6 ? even_blades(n) : degree_blades(n, 2);
  if (n > 6) test_blades.insert(test_blades.begin(), 0u);

  auto check_vector = [&](const std::vector<Rat>& v, const char* mode) -> bool {
    PhiOperator src = phi_embedding(map.source, v, v0);
    PhiOperator tgt = phi_embedding(map.target, mat_vec(map.gen_images, v), tv0);
    for (uint32_t m : test_blades) {
      CliffElemQ x = cl_blade(map.target, m);
      CliffElemQ lhs = map.apply(src.apply(inv.apply(x)));
      CliffElemQ rhs = tgt.apply(x);
      if (!(lhs == rhs)) {
        json w;
        w["mode"] = mode;
        w["v"] = vec_to_json(v);
        w["x"] = to_json(x);
        w["conjugated"] = to_json(lhs);
        w["target_embedding"] = to_json(rhs);
        rep.fail_with(w);
        return false;
      }
    }
    return true;
  };

  for (int i = 0; i < n; ++i) {
    std::vector<Rat> v(n, Rat(0));
    v[i] = Rat(1);
    if (!check_vector(v, "basis")) return rep;
  }
  rep.details["basis_vectors"] = n;

  Rng rng(seed);
  for (int s = 0; s < samples; ++s)
    if (!check_vector(random_vector(n, rng), "sampled")) return rep;
  rep.details["sampled_vectors"] = samples;
  rep.details["test_blades"] = (int64_t)test_blades.size();
  return rep;
}

}  // namespace ksim
