#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ksim/local_invariants.hpp"
#include "ksim/quadspace.hpp"

namespace ksim {

// Invertible M with t(M)*G_target*M = multiplier * G_source, exactly.
struct Similarity {
  QuadSpace source, target;
  MatQ matrix;
  Rat multiplier;
};

// Checks the similarity identity entrywise and extracts the multiplier.
inline Similarity similarity_verify(const MatQ& m, const QuadSpace& source,
                                    const QuadSpace& target) {
  require(source.dim == target.dim && m.rows() == source.dim && m.cols() == source.dim,
          errk::dimension_mismatch,
          "matrix " + m.shape() + " between dim " + std::to_string(source.dim) +
              " and dim " + std::to_string(target.dim));
  require(!m.det().is_zero(), errk::singular, "similarity matrix is singular");
  MatQ pulled = m.transpose() * target.gram * m;
  // read the scalar off the first nonzero source entry, then check all
  Rat lambda;
  bool found = false;
  for (int i = 0; i < source.dim && !found; ++i)
    for (int j = 0; j < source.dim && !found; ++j)
      if (!source.gram.at(i, j).is_zero()) {
        lambda = pulled.at(i, j) / source.gram.at(i, j);
        found = true;
      }
  for (int i = 0; i < source.dim; ++i)
    for (int j = 0; j < source.dim; ++j)
      if (pulled.at(i, j) != lambda * source.gram.at(i, j))
        fail(errk::not_a_similarity,
             "entry (" + std::to_string(i) + "," + std::to_string(j) + "): got " +
                 pulled.at(i, j).str() + ", want " +
                 (lambda * source.gram.at(i, j)).str());
  require(!lambda.is_zero(), errk::not_a_similarity, "zero multiplier");
  return Similarity{source, target, m, lambda};
}

// Self-adjointness t(M)*G = G*M, i.e. q(Mv,w) = q(v,Mw) for all v,w.
inline bool rosati_fixed(const MatQ& m, const QuadSpace& q) {
  require(m.rows() == q.dim && m.cols() == q.dim, errk::dimension_mismatch,
          "matrix " + m.shape() + " on dim " + std::to_string(q.dim));
  return m.transpose() * q.gram == q.gram * m;
}

// M^2 = d * Id for an endo-similarity.
inline bool square_check(const Similarity& s, long d) {
  require(same_form(s.source, s.target), errk::not_endomorphism,
          "source and target forms differ");
  return s.matrix * s.matrix == Rat(d) * MatQ::identity(s.source.dim);
}

enum class ObstructionKind { none, odd_dim_nonsquare, signature_mismatch };

inline const char* obstruction_kind_name(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::odd_dim_nonsquare: return "odd_dim_nonsquare";
    case ObstructionKind::signature_mismatch: return "signature_mismatch";
    default: return "none";
  }
}

struct Obstruction {
  ObstructionKind kind = ObstructionKind::none;
  std::string detail;
};

// Necessary conditions for an endo-similarity of multiplier d to exist.
inline Obstruction exists_obstruction(const QuadSpace& q, const Rat& d) {
  require(!d.is_zero(), errk::zero_scale, "multiplier must be nonzero");
  if (q.dim % 2 == 1 && !d.is_square())
    return {ObstructionKind::odd_dim_nonsquare,
            "det(M)^2 = d^" + std::to_string(q.dim) +
                " (up to squares) has no rational solution for nonsquare d"};
  if (d.sign() < 0) {
    auto sig = signature(q);
    if (sig.first != sig.second)
      return {ObstructionKind::signature_mismatch,
              "negative multiplier swaps signature (" + std::to_string(sig.first) +
                  "," + std::to_string(sig.second) + ")"};
  }
  return {ObstructionKind::none, ""};
}

// Eigenspace decomposition of a Rosati-fixed endo-similarity with M^2 = d*Id
// over Q(sqrt d).  Eigenvalues are +/- scale*sqrt(d0) where d = scale^2*d0.
struct EigenDecomp {
  QuadSpace space;
  long d0 = 0, scale = 1;
  Mat<QuadExt> basis_plus, basis_minus;  // columns span the eigenspaces
  Mat<QuadExt> gram_plus, gram_minus;
  std::pair<int, int> sig_plus{0, 0}, sig_minus{0, 0};
};

inline EigenDecomp eigenspace_decomposition(const Similarity& s, long d) {
  require(same_form(s.source, s.target), errk::not_endomorphism,
          "eigenspace decomposition needs an endo-similarity");
  require(d >= 2, errk::precondition_failed, "d must be >= 2");
  auto [d0, scale] = squarefree_decompose(d);
  require(d0 >= 2, errk::precondition_failed,
          "d = " + std::to_string(d) + " is a perfect square");
  require(rosati_fixed(s.matrix, s.source), errk::precondition_failed,
          "matrix is not self-adjoint");
  require(square_check(s, d), errk::precondition_failed,
          "matrix does not square to " + std::to_string(d) + "*Id");

  const int n = s.source.dim;
  EigenDecomp dec;
  dec.space = s.source;
  dec.d0 = d0;
  dec.scale = scale;
  Mat<QuadExt> a = lift(s.matrix);
  Mat<QuadExt> g = lift(s.source.gram);
  QuadExt root = QuadExt(d0, Rat(0), Rat(scale));
  auto eigbasis = [&](const QuadExt& lam) {
    Mat<QuadExt> shifted = a;
    for (int i = 0; i < n; ++i) shifted.at(i, i) -= lam;
    return shifted.kernel();
  };
  dec.basis_plus = eigbasis(root);
  dec.basis_minus = eigbasis(-root);
  require(dec.basis_plus.cols() == n / 2 && dec.basis_minus.cols() == n / 2,
          errk::precondition_failed, "eigenspaces do not split evenly");
  dec.gram_plus = dec.basis_plus.transpose() * g * dec.basis_plus;
  dec.gram_minus = dec.basis_minus.transpose() * g * dec.basis_minus;
  require((dec.basis_plus.transpose() * g * dec.basis_minus).is_zero(),
          errk::precondition_failed, "eigenspaces are not orthogonal");
  dec.sig_plus = signature_of(diagonalize_sym(dec.gram_plus).diag);
  dec.sig_minus = signature_of(diagonalize_sym(dec.gram_minus).diag);
  auto total = signature(s.source);
  require(dec.sig_plus.first + dec.sig_minus.first == total.first &&
              dec.sig_plus.second + dec.sig_minus.second == total.second,
          errk::precondition_failed, "eigenspace signatures do not add up");
  return dec;
}

struct LocusDim {
  bool empty = true;
  int dim = 0;
};

// Dimension n/2 - 2 when one eigenspace is negative definite and the other
// has signature (2, n/2 - 2); empty otherwise.
inline LocusDim hodge_locus_dimension(const Similarity& s, long d) {
  require(s.source.dim > 4, errk::precondition_failed, "dim must exceed 4");
  EigenDecomp dec = eigenspace_decomposition(s, d);
  const int h = s.source.dim / 2;
  auto neg_def = [h](std::pair<int, int> sig) { return sig == std::make_pair(0, h); };
  auto period_shaped = [h](std::pair<int, int> sig) {
    return sig == std::make_pair(2, h - 2);
  };
  if ((neg_def(dec.sig_minus) && period_shaped(dec.sig_plus)) ||
      (neg_def(dec.sig_plus) && period_shaped(dec.sig_minus)))
    return {false, h - 2};
  return {true, 0};
}

// Bounded search for a trace-zero self-adjoint M = [[a,b],[(q1/q2)b,-a]] with
// M^2 = d*Id on diag(q1,q2); returns the lexicographically least witness.
inline std::optional<MatQ> block_similarity_find(const QuadSpace& q, long d,
                                                 long height = 64) {
  require(q.dim == 2 && is_diagonal(q.gram), errk::precondition_failed,
          "search needs a 2x2 diagonal space");
  require(d >= 2 && !Rat(d).is_square(), errk::precondition_failed,
          "d must be a nonsquare positive integer");
  Rat ratio = q.gram.at(0, 0) / q.gram.at(1, 1);
  auto fits = [height](const Rat& x) {
    return x.num() <= height && x.num() >= -height && x.den() <= height;
  };
  // all rationals of height <= height in ascending order
  std::vector<Rat> candidates;
  for (long num = -height; num <= height; ++num)
    for (long den = 1; den <= height; ++den) {
      Rat a(num, den);
      if (a.num() == num && a.den() == den) candidates.push_back(a);
    }
  std::sort(candidates.begin(), candidates.end());
  for (const Rat& a : candidates) {
    // need b with a^2 + ratio*b^2 = d, i.e. b^2 = (d - a^2)/ratio
    Rat bsq = (Rat(d) - a * a) / ratio;
    if (bsq.sign() < 0 || !bsq.is_square()) continue;
    Rat r = bsq.sqrt();
    for (const Rat& b : {-r, r}) {
      if (!fits(b)) continue;
      MatQ m{{a, b}, {ratio * b, -a}};
      if (m.det().is_zero()) continue;
      return m;
      // (for fixed a the -r branch is lexicographically smaller, so the
      // first hit over ascending a is the least witness)
    }
  }
  return std::nullopt;
}

// Composition psi o phi (apply phi first); multipliers multiply.
inline Similarity compose(const Similarity& psi, const Similarity& phi) {
  require(same_form(phi.target, psi.source), errk::space_mismatch,
          "compose: inner spaces differ");
  Similarity out = similarity_verify(psi.matrix * phi.matrix, phi.source, psi.target);
  require(out.multiplier == psi.multiplier * phi.multiplier, errk::not_a_similarity,
          "composite multiplier mismatch");
  return out;
}

inline Similarity invert(const Similarity& s) {
  auto inv = s.matrix.inverse();
  require(inv.has_value(), errk::singular, "similarity matrix is singular");
  Similarity out = similarity_verify(*inv, s.target, s.source);
  require(out.multiplier * s.multiplier == Rat(1), errk::not_a_similarity,
          "inverse multiplier mismatch");
  return out;
}

// Source U^3 + <-2(n'+1)> maps onto target U^3 + <-2(n+1)> with multiplier k,
// where n' = k(n+1) - 1: each U block by diag(k,1), the last line by k.
inline Similarity kummer_similarity(long n, long k) {
  require(n >= 1 && k >= 1, errk::precondition_failed, "need n >= 1 and k >= 1");
  long nprime = k * (n + 1) - 1;
  auto build = [](long m, const std::string& label) {
    MatQ g(7, 7);
    for (int b = 0; b < 3; ++b) {
      g.at(2 * b, 2 * b + 1) = Rat(1);
      g.at(2 * b + 1, 2 * b) = Rat(1);
    }
    g.at(6, 6) = Rat(-2 * (m + 1));
    return QuadSpace(std::move(g), label);
  };
  QuadSpace source = build(nprime, "U^3+<" + std::to_string(-2 * (nprime + 1)) + ">");
  QuadSpace target = build(n, "U^3+<" + std::to_string(-2 * (n + 1)) + ">");
  MatQ m(7, 7);
  for (int b = 0; b < 3; ++b) {
    m.at(2 * b, 2 * b) = Rat(k);
    m.at(2 * b + 1, 2 * b + 1) = Rat(1);
  }
  m.at(6, 6) = Rat(k);
  Similarity out = similarity_verify(m, source, target);
  require(out.multiplier == Rat(k), errk::not_a_similarity, "multiplier is not k");
  return out;
}

}  // namespace ksim
