#pragma once

#include <string>
#include <vector>

#include "ksim/clifford.hpp"
#include "ksim/matrix.hpp"
#include "ksim/quadspace.hpp"
#include "ksim/report.hpp"
#include "ksim/similarity.hpp"

namespace ksim {

// rationals serialize as canonical "p/q" strings; plain JSON integers are
// accepted on input for convenience
inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat((long)j.get<int64_t>());
  require(j.is_string(), errk::parse_error, "rational entries must be strings or integers");
  return Rat::parse(j.get<std::string>());
}

inline json mat_to_json(const MatQ& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatQ mat_from_json(const json& j) {
  require(j.is_array() && !j.empty(), errk::parse_error, "matrix must be a nonempty array");
  int rows = (int)j.size();
  require(j[0].is_array(), errk::parse_error, "matrix rows must be arrays");
  int cols = (int)j[0].size();
  MatQ m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    require(j[i].is_array() && (int)j[i].size() == cols, errk::parse_error,
            "ragged matrix row " + std::to_string(i));
    for (int c = 0; c < cols; ++c) m.at(i, c) = rat_from_json(j[i][c]);
  }
  return m;
}

inline json vec_to_json(const std::vector<Rat>& v) {
  json out = json::array();
  for (const Rat& x : v) out.push_back(x.str());
  return out;
}

inline std::vector<Rat> vec_from_json(const json& j) {
  require(j.is_array(), errk::parse_error, "vector must be an array");
  std::vector<Rat> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rat_from_json(e));
  return out;
}

inline json to_json(const QuadSpace& q) {
  json j;
  j["dim"] = q.dim;
  j["gram"] = mat_to_json(q.gram);
  j["label"] = q.label;
  return j;
}

inline QuadSpace quadspace_from_json(const json& j) {
  require(j.is_object() && j.contains("gram"), errk::parse_error,
          "space needs a gram field");
  MatQ g = mat_from_json(j.at("gram"));
  std::string label = j.value("label", std::string());
  if (j.contains("dim"))
    require(j.at("dim").get<int>() == g.rows(), errk::parse_error,
            "dim field disagrees with gram size");
  return QuadSpace(g, label);
}

inline json to_json(const Similarity& s) {
  json j;
  j["matrix"] = mat_to_json(s.matrix);
  j["multiplier"] = s.multiplier.str();
  j["source"] = to_json(s.source);
  j["target"] = to_json(s.target);
  return j;
}

inline Similarity similarity_from_json(const json& j) {
  require(j.is_object() && j.contains("matrix") && j.contains("source") &&
              j.contains("target"),
          errk::parse_error, "similarity needs matrix, source, target");
  QuadSpace source = quadspace_from_json(j.at("source"));
  QuadSpace target = quadspace_from_json(j.at("target"));
  Similarity s = similarity_verify(mat_from_json(j.at("matrix")), source, target);
  if (j.contains("multiplier"))
    require(Rat::parse(j.at("multiplier").get<std::string>()) == s.multiplier,
            errk::parse_error, "stored multiplier disagrees with the matrix");
  return s;
}

inline json quadext_to_json(const QuadExt& x) {
  json j;
  j["a"] = x.a().str();
  j["b"] = x.b().str();
  j["d"] = x.d();
  return j;
}

inline json mat_ext_to_json(const Mat<QuadExt>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(quadext_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json sig_to_json(const std::pair<int, int>& s) {
  return json::array({s.first, s.second});
}

inline json to_json(const EigenDecomp& e) {
  json j;
  j["d0"] = e.d0;
  j["scale"] = e.scale;
  j["space"] = e.space.label;
  j["basis_plus"] = mat_ext_to_json(e.basis_plus);
  j["basis_minus"] = mat_ext_to_json(e.basis_minus);
  j["gram_plus"] = mat_ext_to_json(e.gram_plus);
  j["gram_minus"] = mat_ext_to_json(e.gram_minus);
  j["signature_plus"] = sig_to_json(e.sig_plus);
  j["signature_minus"] = sig_to_json(e.sig_minus);
  return j;
}

inline json to_json(const CliffElemQ& x) {
  json terms = json::object();
  for (const auto& [mask, c] : x.terms) terms[std::to_string(mask)] = c.str();
  json j;
  j["n"] = x.alg->n();
  j["terms"] = std::move(terms);
  return j;
}

inline CliffElemQ cl_elem_from_json(const AlgPtrQ& alg, const json& j) {
  require(j.is_object() && j.contains("terms"), errk::parse_error,
          "element needs a terms field");
  if (j.contains("n"))
    require(j.at("n").get<int>() == alg->n(), errk::algebra_mismatch,
            "element generator count does not match the algebra");
  CliffElemQ x = cl_zero(alg);
  for (const auto& [key, val] : j.at("terms").items()) {
    uint32_t mask = 0;
    try {
      mask = (uint32_t)std::stoul(key);
    } catch (const std::exception&) {
      fail(errk::parse_error, "bad blade key '" + key + "'");
    }
    require(mask < (1u << alg->n()), errk::parse_error,
            "blade key " + key + " out of range");
    require(val.is_string(), errk::parse_error, "coefficients must be strings");
    cl_add_term(x, mask, Rat::parse(val.get<std::string>()));
  }
  return x;
}

// Witness check for an isometric embedding: j maps sub into ambient, must
// have full column rank and satisfy tJ G_amb J = G_sub exactly.  Existence
// questions are out of scope; this only certifies a provided witness.
inline VerificationReport embedding_witness_verify(const MatQ& j, const QuadSpace& sub,
                                                   const QuadSpace& amb) {
  require(j.rows() == amb.dim && j.cols() == sub.dim, errk::dimension_mismatch,
          "witness must be dim(ambient) x dim(sub)");
  VerificationReport rep;
  rep.check = "embedding_witness";
  {
    json inputs;
    inputs["witness"] = mat_to_json(j);
    inputs["sub"] = mat_to_json(sub.gram);
    inputs["ambient"] = mat_to_json(amb.gram);
    rep.set_inputs(inputs);
  }
  rep.details["sub_dim"] = sub.dim;
  rep.details["ambient_dim"] = amb.dim;
  if (j.kernel().cols() != 0) {
    rep.fail_with(json{{"reason", "witness columns are linearly dependent"}});
    return rep;
  }
  MatQ pulled = j.transpose() * amb.gram * j;
  for (int r = 0; r < sub.dim; ++r)
    for (int c = 0; c < sub.dim; ++c)
      if (pulled.at(r, c) != sub.gram.at(r, c)) {
        rep.fail_with(json{{"reason", "pulled-back form differs"},
                           {"row", r},
                           {"col", c},
                           {"got", pulled.at(r, c).str()},
                           {"expected", sub.gram.at(r, c).str()}});
        return rep;
      }
  return rep;
}

inline json to_json(const RationalInvariants& inv) {
  json hasse = json::object();
  for (const auto& [p, e] : inv.hasse) hasse[std::to_string(p)] = e;
  json j;
  j["det_square_class"] = inv.det_class.get_str();
  j["dim"] = inv.dim;
  j["hasse"] = std::move(hasse);
  j["signature"] = sig_to_json(inv.sig);
  return j;
}

}  // namespace ksim
