#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ksim/clifford.hpp"
#include "ksim/json_io.hpp"
#include "ksim/quadspace.hpp"
#include "ksim/report.hpp"

namespace ksim {

using CliffAlgD = CliffordAlgebra<double>;
using AlgPtrD = AlgPtr<double>;
using CliffElemD = CliffordElement<double>;

enum class Convention { beauville, polarized };

inline const char* convention_name(Convention c) {
  return c == Convention::beauville ? "beauville" : "polarized";
}

inline Convention parse_convention(const std::string& s) {
  if (s == "beauville") return Convention::beauville;
  if (s == "polarized") return Convention::polarized;
  fail(errk::convention_error, "unknown convention '" + s + "'");
}

inline std::vector<double> to_double_vec(const std::vector<Rat>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const Rat& x : v) out.push_back(x.to_double());
  return out;
}

inline AlgPtrD cast_algebra(const AlgPtrQ& alg) {
  std::vector<double> c;
  c.reserve(alg->coeff.size());
  for (const Rat& a : alg->coeff) c.push_back(a.to_double());
  return make_algebra(std::move(c));
}

inline CliffElemD cast_element(const AlgPtrD& alg, const CliffElemQ& x) {
  CliffElemD out = cl_zero(alg);
  for (const auto& [mask, c] : x.terms) out.terms[mask] = c.to_double();
  return out;
}

inline double sup_norm(const CliffElemD& x) {
  double m = 0;
  for (const auto& [mask, c] : x.terms) m = std::max(m, std::abs(c));
  return m;
}

// float shadow of a CliffordMap
struct CliffordMapD {
  AlgPtrD source, target;
  double multiplier = 1;
  std::vector<std::vector<double>> gen_cols;  // gen_cols[i] = coords of psi(e_i)

  int n() const { return source->n(); }

  CliffElemD blade_image(uint32_t mask) const {
    CliffElemD out = cl_scalar(target, 1.0);
    for (uint32_t rest = mask; rest; rest &= rest - 1)
      out = cl_mul(out, cl_vector(target, gen_cols[std::countr_zero(rest)]));
    double scale = 1;
    for (int i = 0; i < std::popcount(mask) / 2; ++i) scale /= multiplier;
    return cl_scale(out, scale);
  }

  CliffElemD apply(const CliffElemD& x) const {
    require(x.is_even(), errk::not_even, "map is defined on the even subalgebra");
    CliffElemD out = cl_zero(target);
    for (const auto& [mask, c] : x.terms)
      out = cl_add(out, cl_scale(blade_image(mask), c));
    return out;
  }

  std::vector<double> vector_image(const std::vector<double>& v) const {
    std::vector<double> out(n(), 0.0);
    for (int i = 0; i < n(); ++i)
      for (int r = 0; r < n(); ++r) out[r] += gen_cols[i][r] * v[i];
    return out;
  }
};

inline CliffordMapD cast_map(const CliffordMap& m) {
  CliffordMapD d;
  d.source = cast_algebra(m.source);
  d.target = cast_algebra(m.target);
  d.multiplier = m.multiplier.to_double();
  d.gen_cols.resize(m.n());
  for (int i = 0; i < m.n(); ++i) {
    d.gen_cols[i].resize(m.n());
    for (int r = 0; r < m.n(); ++r) d.gen_cols[i][r] = m.gen_images.at(r, i).to_double();
  }
  return d;
}

// omega = re + i*im in the coordinates of `space`; built so that q(omega) = 0
// and q(omega, conj omega) > 0 in that space's form.
struct PeriodPoint {
  QuadSpace space;
  std::vector<double> re, im;
};

inline json to_json(const PeriodPoint& p) {
  json j;
  j["omega_im"] = p.im;
  j["omega_re"] = p.re;
  j["space"] = to_json(p.space);
  return j;
}

// Finds an orthogonal pair x, y with q(x) = q(y) > 0 via exact
// diagonalization, then returns omega = x + iy; none if the form has fewer
// than two positive directions.
inline std::optional<PeriodPoint> period_point_from_space(const QuadSpace& q) {
  Diagonalization d = diagonalize(q);
  std::vector<int> pos;
  for (int i = 0; i < q.dim; ++i)
    if (d.diag[i].sign() > 0) pos.push_back(i);
  if (pos.size() < 2) return std::nullopt;
  auto column_scaled = [&](int col) {
    std::vector<double> v(q.dim);
    double s = 1.0 / std::sqrt(d.diag[col].to_double());
    for (int r = 0; r < q.dim; ++r) v[r] = d.base_change.at(r, col).to_double() * s;
    return v;
  };
  return PeriodPoint{q, column_scaled(pos[0]), column_scaled(pos[1])};
}

// Same construction on a chosen eigenspace of a decomposition; coordinates
// are transported back to the ambient space.
inline std::optional<PeriodPoint> period_point_from_eigenspace(
    const EigenDecomp& dec, bool plus_side) {
  const Mat<QuadExt>& basis = plus_side ? dec.basis_plus : dec.basis_minus;
  const Mat<QuadExt>& gram = plus_side ? dec.gram_plus : dec.gram_minus;
  Diagonalization_<QuadExt> d = diagonalize_sym(gram);
  std::vector<int> pos;
  for (int i = 0; i < gram.rows(); ++i)
    if (d.diag[i].sign() > 0) pos.push_back(i);
  if (pos.size() < 2) return std::nullopt;
  auto ambient_scaled = [&](int col) {
    // ambient vector = basis * (diagonalizing column), then normalized to q = 1
    std::vector<double> v(dec.space.dim, 0.0);
    for (int r = 0; r < dec.space.dim; ++r) {
      double acc = 0;
      for (int k = 0; k < basis.cols(); ++k)
        acc += basis.at(r, k).to_double() * d.base_change.at(k, col).to_double();
      v[r] = acc;
    }
    double s = 1.0 / std::sqrt(d.diag[col].to_double());
    for (double& x : v) x *= s;
    return v;
  };
  return PeriodPoint{dec.space, ambient_scaled(pos[0]), ambient_scaled(pos[1])};
}

// |q(omega)| <= tol_abs * |omega|^2  and  q(omega, conj omega) >= tol_rel * |omega|^2
inline VerificationReport period_point_check(const PeriodPoint& p,
                                             double tol_abs = 1e-10,
                                             double tol_rel = 1e-6) {
  VerificationReport rep;
  rep.check = "period_point";
  rep.set_inputs(to_json(p));
  const MatQ& g = p.space.gram;
  const int n = p.space.dim;
  auto form = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc += g.at(i, j).to_double() * x[i] * y[j];
    return acc;
  };
  double qx = form(p.re, p.re), qy = form(p.im, p.im), bxy = form(p.re, p.im);
  double norm2 = 0;
  for (int i = 0; i < n; ++i) norm2 += p.re[i] * p.re[i] + p.im[i] * p.im[i];
  double q_omega = std::hypot(qx - qy, 2 * bxy);  // |q(omega)| over C
  double q_pairing = qx + qy;                     // q(omega, conj omega)
  rep.details["q_omega_abs"] = q_omega;
  rep.details["q_pairing"] = q_pairing;
  rep.details["norm2"] = norm2;
  rep.details["tol_abs"] = tol_abs;
  rep.details["tol_rel"] = tol_rel;
  if (!(q_omega <= tol_abs * norm2 && q_pairing >= tol_rel * norm2)) {
    json w;
    w["q_omega_abs"] = q_omega;
    w["q_pairing"] = q_pairing;
    w["norm2"] = norm2;
    rep.fail_with(w);
  }
  return rep;
}

// J = e1*e2 acting by left multiplication; e1, e2 live in the diagonal
// coordinates of the polarized form and satisfy q(e_i) = -1, b(e1,e2) = 0.
struct NumericComplexStructure {
  AlgPtrD algebra;
  CliffElemD J;
  std::vector<double> e1, e2;
};

inline NumericComplexStructure complex_structure_from_pair(
    const AlgPtrD& alg, const std::vector<double>& e1,
    const std::vector<double>& e2, double tol = 1e-9) {
  double q1 = diag_q(alg->coeff, e1);
  double q2 = diag_q(alg->coeff, e2);
  double b = diag_b(alg->coeff, e1, e2);
  require(std::abs(q1 + 1) <= tol && std::abs(q2 + 1) <= tol && std::abs(b) <= tol,
          errk::convention_error,
          "pair is not orthonormal with q = -1: q1 = " + std::to_string(q1) +
              ", q2 = " + std::to_string(q2) + ", b = " + std::to_string(b));
  return {alg, cl_mul(cl_vector(alg, e1), cl_vector(alg, e2)), e1, e2};
}

// Builds J from a period point.  `conv` states the convention of Q: in the
// beauville (period-domain) convention the plane of omega is positive and the
// form is negated before normalizing; in the polarized convention Q is used
// as-is and the plane must already be negative definite.
inline NumericComplexStructure complex_structure(const QuadSpace& q,
                                                 const PeriodPoint& omega,
                                                 Convention conv) {
  require(q.dim == omega.space.dim, errk::dimension_mismatch,
          "period point does not match the space");
  QuadSpace pol = conv == Convention::beauville
                      ? rescale(q, Rat(-1), q.label + "_polarized")
                      : q;
  Diagonalization d = diagonalize(pol);
  std::vector<double> coeff(pol.dim);
  for (int i = 0; i < pol.dim; ++i) coeff[i] = d.diag[i].to_double();
  auto binv = d.base_change.inverse();
  require(binv.has_value(), errk::singular, "base change not invertible");
  auto to_diag = [&](const std::vector<double>& x) {
    std::vector<double> u(pol.dim, 0.0);
    for (int i = 0; i < pol.dim; ++i)
      for (int j = 0; j < pol.dim; ++j)
        u[i] += binv->at(i, j).to_double() * x[j];
    return u;
  };
  std::vector<double> u = to_diag(omega.re), v = to_diag(omega.im);
  AlgPtrD alg = make_algebra(std::move(coeff));
  double qu = diag_q(alg->coeff, u);
  require(qu < 0, errk::convention_error,
          "plane is not negative definite in the polarized convention");
  for (double& x : u) x /= std::sqrt(-qu);
  // v := v - (b(u,v)/q(u)) u, and q(u) = -1 after normalization
  double buv = diag_b(alg->coeff, u, v);
  for (int i = 0; i < pol.dim; ++i) v[i] += buv * u[i];
  double qv = diag_q(alg->coeff, v);
  require(qv < 0, errk::convention_error,
          "plane is not negative definite in the polarized convention");
  for (double& x : v) x /= std::sqrt(-qv);
  return complex_structure_from_pair(alg, u, v, 1e-9);
}

// operator sup-norm proxy for J^2 + Id on the even basis
inline double jsquare_residual(const NumericComplexStructure& s) {
  CliffElemD z = cl_add(cl_mul(s.J, s.J), cl_scalar(s.algebra, 1.0));
  double worst = 0;
  for (uint32_t m : even_blades(s.algebra->n()))
    worst = std::max(worst, sup_norm(cl_mul(z, cl_blade(s.algebra, m))));
  return worst;
}

inline json to_json(const NumericComplexStructure& s) {
  json terms = json::object();
  for (const auto& [mask, c] : s.J.terms) terms[std::to_string(mask)] = c;
  json j;
  j["J_terms"] = std::move(terms);
  j["e1"] = s.e1;
  j["e2"] = s.e2;
  j["n"] = s.algebra->n();
  return j;
}

// max over test blades x of |psi(J x) - J' psi(x)|_sup; exhaustive basis for
// n <= 8, degree <= 2 blades beyond that.
inline VerificationReport check_complex_linearity(const CliffordMap& map,
                                                  const NumericComplexStructure& j_src,
                                                  const NumericComplexStructure& j_tgt,
                                                  double tol = 1e-9) {
  VerificationReport rep;
  rep.check = "complex_linearity";
  {
    json inputs;
    inputs["gen_images"] = mat_to_json(map.gen_images);
    inputs["lambda"] = map.multiplier.str();
    inputs["J_source"] = to_json(j_src);
    inputs["J_target"] = to_json(j_tgt);
    inputs["tol"] = tol;
    rep.set_inputs(inputs);
  }
  CliffordMapD m = cast_map(map);
  auto close = [](const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > 1e-12) return false;
    return true;
  };
  require(close(m.source->coeff, j_src.algebra->coeff), errk::algebra_mismatch,
          "J does not live in the source algebra");
  require(close(m.target->coeff, j_tgt.algebra->coeff), errk::algebra_mismatch,
          "J' does not live in the target algebra");

  const int n = map.n();
  std::vector<uint32_t> blades;
  if (n <= 8) {
    blades = even_blades(n);
  } else {
    blades.push_back(0u);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) blades.push_back((1u << i) | (1u << j));
  }
  double residual = 0;
  for (uint32_t mask : blades) {
    CliffElemD x = cl_blade(m.source, mask);
    CliffElemD lhs = m.apply(cl_mul(j_src.J, x));
    CliffElemD rhs = cl_mul(j_tgt.J, m.apply(x));
    residual = std::max(residual, sup_norm(cl_sub(lhs, rhs)));
  }
  rep.details["residual"] = residual;
  rep.details["tol"] = tol;
  rep.details["blades_checked"] = (int64_t)blades.size();
  rep.details["mode"] = n <= 8 ? "full_basis" : "degree2";
  if (!(residual <= tol)) {
    json w;
    w["residual"] = residual;
    w["tol"] = tol;
    rep.fail_with(w);
  }
  return rep;
}

inline double trace_form_d(const AlgPtrD& alg, const std::vector<double>& f1,
                           const std::vector<double>& f2, const CliffElemD& v,
                           const CliffElemD& w) {
  return left_mult_trace(
      cl_mul(cl_mul(cl_vector(alg, f1), cl_vector(alg, f2)),
             cl_mul(reversal(v), w)));
}

inline CliffElemD random_even_element_d(const AlgPtrD& alg, Rng& rng,
                                        int max_terms = 3) {
  auto blades = even_blades(alg->n());
  CliffElemD x = cl_zero(alg);
  for (int t = 0; t < max_terms; ++t)
    cl_add_term(x, blades[rng.below(blades.size())], 2 * rng.unit_double() - 1);
  return x;
}

// Finds the sign s making s*Q(x, Jx) > 0 on sampled nonzero x and checks
// J-invariance s*Q(Jx, Jy) = s*Q(x, y) within tol.
inline VerificationReport check_polarization(const AlgPtrD& alg,
                                             const std::vector<double>& f1,
                                             const std::vector<double>& f2,
                                             const NumericComplexStructure& js,
                                             int samples = 200, uint64_t seed = 0,
                                             double tol = 1e-9) {
  VerificationReport rep;
  rep.check = "polarization_sign";
  {
    json inputs;
    inputs["f1"] = f1;
    inputs["f2"] = f2;
    inputs["J"] = to_json(js);
    inputs["samples"] = samples;
    inputs["seed"] = seed;
    inputs["tol"] = tol;
    rep.set_inputs(inputs);
  }
  Rng rng(seed);
  int sign = 0;
  double min_abs = 0;
  bool ok = true;
  json wit;
  for (int s = 0; s < samples; ++s) {
    CliffElemD x = random_even_element_d(alg, rng);
    if (x.is_zero()) continue;
    double val = trace_form_d(alg, f1, f2, x, cl_mul(js.J, x));
    int vs = val > 0 ? 1 : (val < 0 ? -1 : 0);
    if (vs == 0) {
      ok = false;
      wit["reason"] = "degenerate value Q(x, Jx) = 0";
      wit["sample"] = s;
      break;
    }
    if (sign == 0) {
      sign = vs;
      min_abs = std::abs(val);
    } else if (vs != sign) {
      ok = false;
      wit["reason"] = "Q(x, Jx) changes sign across samples";
      wit["sample"] = s;
      break;
    } else {
      min_abs = std::min(min_abs, std::abs(val));
    }
  }
  double max_residual = 0;
  if (ok) {
    for (int s = 0; s < samples; ++s) {
      CliffElemD x = random_even_element_d(alg, rng);
      CliffElemD y = random_even_element_d(alg, rng);
      double lhs = trace_form_d(alg, f1, f2, cl_mul(js.J, x), cl_mul(js.J, y));
      double rhs = trace_form_d(alg, f1, f2, x, y);
      double scale = std::max(1.0, std::abs(rhs));
      max_residual = std::max(max_residual, std::abs(lhs - rhs) / scale);
      if (std::abs(lhs - rhs) > tol * scale) {
        ok = false;
        wit["reason"] = "Q(Jx, Jy) != Q(x, y)";
        wit["lhs"] = lhs;
        wit["rhs"] = rhs;
        wit["sample"] = s;
        break;
      }
    }
  }
  rep.details["sign"] = sign;
  rep.details["min_positivity"] = min_abs;
  rep.details["max_invariance_residual"] = max_residual;
  rep.details["samples"] = samples;
  rep.details["seed"] = seed;
  rep.details["tol"] = tol;
  if (!ok) rep.fail_with(wit);
  return rep;
}

}  // namespace ksim
