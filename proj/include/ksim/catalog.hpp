#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ksim/json_io.hpp"
#include "ksim/local_invariants.hpp"
#include "ksim/quadspace.hpp"
#include "ksim/similarity.hpp"

namespace ksim {

inline constexpr const char* kK12Checksum = "66796ab281ed3a4f";

#ifndef KSIM_DATA_DIR
#define KSIM_DATA_DIR "data"
#endif

inline std::string data_dir() { return KSIM_DATA_DIR; }

namespace detail {

inline MatQ u_gram(const Rat& k) {
  MatQ g(2, 2);
  g.at(0, 1) = k;
  g.at(1, 0) = k;
  return g;
}

// E8 Cartan matrix: chain 1..7 with node 8 attached to node 5
inline MatQ e8_gram() {
  MatQ g(8, 8);
  for (int i = 0; i < 8; ++i) g.at(i, i) = Rat(2);
  for (int i = 0; i + 1 < 7; ++i) {
    g.at(i, i + 1) = Rat(-1);
    g.at(i + 1, i) = Rat(-1);
  }
  g.at(4, 7) = Rat(-1);
  g.at(7, 4) = Rat(-1);
  return g;
}

inline MatQ a2_gram(int sign) {
  MatQ g(2, 2);
  g.at(0, 0) = Rat(2 * sign);
  g.at(1, 1) = Rat(2 * sign);
  g.at(0, 1) = Rat(-sign);
  g.at(1, 0) = Rat(-sign);
  return g;
}

// the catalog asserts each entry is isometric to a reference diagonal model
inline void assert_isometric_to(const QuadSpace& space,
                                const std::vector<Rat>& model_diag,
                                const std::string& name) {
  QuadSpace model = diagonal_space(model_diag, name + "_model");
  if (!isometric(space, model))
    fail(errk::catalog_corrupt,
         name + " failed its isometry assertion against its diagonal model");
}

inline bool sig_is(const QuadSpace& s, int pos, int neg) {
  return signature(s) == std::pair<int, int>{pos, neg};
}

}  // namespace detail

inline QuadSpace u_scaled(long k) {
  require(k != 0, errk::zero_scale, "U(k) needs k != 0");
  QuadSpace s(detail::u_gram(Rat(k)), "U(" + std::to_string(k) + ")");
  if (!detail::sig_is(s, 1, 1))
    fail(errk::catalog_corrupt, s.label + " has the wrong signature");
  return s;
}

// Validates a K12(-2) Gram matrix: dim 12, even entries, negative definite,
// square determinant class.  Exposed separately so tests can feed corrupted
// data and watch it fail closed.
inline QuadSpace k12_validated(const json& j) {
  QuadSpace s = [&] {
    try {
      return quadspace_from_json(j);
    } catch (const error& e) {
      fail(errk::catalog_corrupt,
           std::string("K12(-2) data does not parse: ") + e.what());
    }
  }();
  if (s.dim != 12) fail(errk::catalog_corrupt, "K12(-2) must have dim 12");
  if (!detail::sig_is(s, 0, 12))
    fail(errk::catalog_corrupt, "K12(-2) must be negative definite");
  for (int i = 0; i < s.dim; ++i)
    for (int c = 0; c < s.dim; ++c) {
      const Rat& e = s.gram.at(i, c);
      if (!e.is_integer() || (i == c && e.num() % 2 != 0))
        fail(errk::catalog_corrupt, "K12(-2) must be an even integer matrix");
    }
  if (det_square_class(s) != 1)
    fail(errk::catalog_corrupt, "K12(-2) determinant is not in the square class of 1");
  return QuadSpace(s.gram, "K12(-2)");
}

inline QuadSpace load_k12(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errk::catalog_corrupt, "missing lattice data file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  if (hex64(fnv1a64(bytes)) != kK12Checksum)
    fail(errk::catalog_corrupt, "lattice data file " + path + " fails its checksum");
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    fail(errk::catalog_corrupt, std::string("bad lattice data: ") + e.what());
  }
  return k12_validated(j);
}

inline std::vector<std::string> catalog_lattice_names() {
  return {"U", "U(2)", "U(3)", "U(5)", "E8(-1)", "E8(-2)", "A2(+)", "A2(-)",
          "K12(-2)"};
}

inline QuadSpace lattice(const std::string& name) {
  if (name == "U") {
    QuadSpace s(detail::u_gram(Rat(1)), "U");
    detail::assert_isometric_to(s, {Rat(1), Rat(-1)}, "U");
    return s;
  }
  if (name.size() > 3 && name.substr(0, 2) == "U(" && name.back() == ')') {
    long k = 0;
    try {
      size_t used = 0;
      k = std::stol(name.substr(2, name.size() - 3), &used);
      if (used != name.size() - 3) fail(errk::unknown_lattice, "bad U(k) name");
    } catch (const std::exception&) {
      fail(errk::unknown_lattice, "unknown lattice '" + name + "'");
    }
    return u_scaled(k);
  }
  if (name == "E8(-1)") {
    QuadSpace s(detail::e8_gram().map([](const Rat& x) { return -x; }), "E8(-1)");
    detail::assert_isometric_to(s, std::vector<Rat>(8, Rat(-1)), "E8(-1)");
    return s;
  }
  if (name == "E8(-2)") {
    QuadSpace s(detail::e8_gram().map([](const Rat& x) { return Rat(-2) * x; }),
                "E8(-2)");
    detail::assert_isometric_to(s, std::vector<Rat>(8, Rat(-2)), "E8(-2)");
    return s;
  }
  if (name == "A2(+)") {
    QuadSpace s(detail::a2_gram(1), "A2(+)");
    detail::assert_isometric_to(s, {Rat(2), Rat(3, 2)}, "A2(+)");
    return s;
  }
  if (name == "A2(-)") {
    QuadSpace s(detail::a2_gram(-1), "A2(-)");
    detail::assert_isometric_to(s, {Rat(-2), Rat(-3, 2)}, "A2(-)");
    return s;
  }
  if (name == "K12(-2)") {
    static const QuadSpace cached = load_k12(data_dir() + "/k12.json");
    return cached;
  }
  fail(errk::unknown_lattice, "unknown lattice '" + name + "'");
}

inline QuadSpace kummer_h2_space(long n) {
  require(n >= 1, errk::precondition_failed, "kummer_h2 needs n >= 1");
  QuadSpace u = lattice("U");
  QuadSpace line = diagonal_space({Rat(-2 * (n + 1))}, "<-2(n+1)>");
  QuadSpace s = orthogonal_sum(orthogonal_sum(orthogonal_sum(u, u), u), line);
  return QuadSpace(s.gram, "kummer_h2(" + std::to_string(n) + ")");
}

inline std::vector<Rat> lambda_p2_diag_entries() {
  std::vector<Rat> d = {Rat(1), Rat(-1), Rat(1), Rat(-1)};
  for (int i = 0; i < 8; ++i) d.push_back(Rat(-2));
  return d;
}

inline std::vector<Rat> gamma_p3_diag_entries() {
  return {Rat(1),  Rat(-1),     Rat(1),  Rat(-1),
          Rat(-2), Rat(-3, 2), Rat(-2), Rat(-3, 2)};
}

inline std::vector<std::string> catalog_space_names() {
  return {"lambda_p2",       "lambda_p2_diag", "gamma_p3",
          "gamma_p3_diag",   "nikulin_ambient", "order3_ambient",
          "kummer_h2(1)",    "kummer_h2(2)",    "kummer_h2(3)"};
}

inline QuadSpace paper_space(const std::string& name) {
  auto sum2 = [](QuadSpace a, const QuadSpace& b) { return orthogonal_sum(a, b); };
  if (name == "lambda_p2") {
    QuadSpace u = lattice("U");
    QuadSpace s = sum2(sum2(u, u), lattice("E8(-2)"));
    s = QuadSpace(s.gram, "lambda_p2");
    if (!detail::sig_is(s, 2, 10))
      fail(errk::catalog_corrupt, "lambda_p2 has the wrong signature");
    detail::assert_isometric_to(s, lambda_p2_diag_entries(), "lambda_p2");
    return s;
  }
  if (name == "lambda_p2_diag") {
    QuadSpace s = diagonal_space(lambda_p2_diag_entries(), "lambda_p2_diag");
    if (!detail::sig_is(s, 2, 10))
      fail(errk::catalog_corrupt, "lambda_p2_diag has the wrong signature");
    return s;
  }
  if (name == "gamma_p3") {
    QuadSpace u = lattice("U");
    QuadSpace a2m = lattice("A2(-)");
    QuadSpace s = sum2(sum2(sum2(u, u), a2m), a2m);
    s = QuadSpace(s.gram, "gamma_p3");
    if (!detail::sig_is(s, 2, 6))
      fail(errk::catalog_corrupt, "gamma_p3 has the wrong signature");
    detail::assert_isometric_to(s, gamma_p3_diag_entries(), "gamma_p3");
    return s;
  }
  if (name == "gamma_p3_diag") {
    QuadSpace s = diagonal_space(gamma_p3_diag_entries(), "gamma_p3_diag");
    if (!detail::sig_is(s, 2, 6))
      fail(errk::catalog_corrupt, "gamma_p3_diag has the wrong signature");
    return s;
  }
  if (name == "nikulin_ambient") {
    QuadSpace u = lattice("U");
    QuadSpace s = sum2(sum2(sum2(u, u), u), lattice("E8(-2)"));
    s = QuadSpace(s.gram, "nikulin_ambient");
    if (s.dim != 14 || !detail::sig_is(s, 3, 11))
      fail(errk::catalog_corrupt, "nikulin_ambient has the wrong signature");
    return s;
  }
  if (name == "order3_ambient") {
    QuadSpace u = lattice("U");
    QuadSpace a2m = lattice("A2(-)");
    QuadSpace s = sum2(sum2(sum2(sum2(u, u), u), a2m), a2m);
    s = QuadSpace(s.gram, "order3_ambient");
    if (s.dim != 10 || !detail::sig_is(s, 3, 7))
      fail(errk::catalog_corrupt, "order3_ambient has the wrong signature");
    return s;
  }
  if (name.size() > 11 && name.substr(0, 10) == "kummer_h2(" && name.back() == ')') {
    long n = 0;
    try {
      size_t used = 0;
      n = std::stol(name.substr(10, name.size() - 11), &used);
      if (used != name.size() - 11) fail(errk::unknown_name, "bad kummer name");
    } catch (const std::exception&) {
      fail(errk::unknown_name, "unknown space '" + name + "'");
    }
    return kummer_h2_space(n);
  }
  fail(errk::unknown_name, "unknown space '" + name + "'");
}

inline MatQ block_diag(const std::vector<MatQ>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.rows();
  MatQ m(n, n);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m.at(off + i, off + j) = b.at(i, j);
    off += b.rows();
  }
  return m;
}

inline MatQ p2_block_matrix(int which) {
  if (which == 0) return MatQ{{Rat(3, 2), Rat(-1, 2)}, {Rat(1, 2), Rat(-3, 2)}};
  return MatQ{{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
}

inline MatQ p3_block_matrix(int which) {
  if (which == 0) return MatQ{{Rat(2), Rat(-1)}, {Rat(1), Rat(-2)}};
  return MatQ{{Rat(0), Rat(3, 2)}, {Rat(2), Rat(0)}};
}

inline std::vector<std::string> catalog_similarity_names() {
  return {"lambda_p2_sqrt2", "gamma_p3_sqrt3"};
}

// Builds and re-verifies a cataloged similarity; any failed load-time check
// (similarity law, self-adjointness, square identity) is CatalogCorrupt.
inline Similarity checked_catalog_similarity(const QuadSpace& space, MatQ m,
                                             const Rat& mult, long d,
                                             const std::string& name) {
  try {
    Similarity s = similarity_verify(std::move(m), space, space);
    require(s.multiplier == mult, errk::not_a_similarity,
            "unexpected multiplier " + s.multiplier.str());
    require(rosati_fixed(s.matrix, s.source), errk::not_a_similarity,
            "not Rosati-fixed");
    require(square_check(s, d), errk::not_a_similarity,
            "square is not " + std::to_string(d) + "*Id");
    return s;
  } catch (const error& e) {
    fail(errk::catalog_corrupt, name + " failed load-time verification: " + e.what());
  }
}

inline Similarity paper_similarity(const std::string& name) {
  if (name == "lambda_p2_sqrt2") {
    MatQ m = block_diag({p2_block_matrix(0), p2_block_matrix(0), p2_block_matrix(1),
                         p2_block_matrix(1), p2_block_matrix(1), p2_block_matrix(1)});
    return checked_catalog_similarity(paper_space("lambda_p2_diag"), std::move(m),
                                      Rat(2), 2, name);
  }
  if (name == "gamma_p3_sqrt3") {
    MatQ m = block_diag({p3_block_matrix(0), p3_block_matrix(0), p3_block_matrix(1),
                         p3_block_matrix(1)});
    return checked_catalog_similarity(paper_space("gamma_p3_diag"), std::move(m),
                                      Rat(3), 3, name);
  }
  fail(errk::unknown_name, "unknown similarity '" + name + "'");
}

}  // namespace ksim
