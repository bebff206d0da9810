#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "ksim/quadspace.hpp"

namespace ksim {

// Places of Q: 0 encodes the real place, any other value is a prime.
inline constexpr long kRealPlace = 0;

inline long valuation(Int n, long p) {
  require(n != 0, errk::precondition_failed, "valuation of 0");
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// p-adic valuation and unit part of a nonzero rational
inline std::pair<long, Rat> unit_part(const Rat& x, long p) {
  long v = valuation(x.num(), p) - valuation(x.den(), p);
  Rat u = x;
  Rat pw(p);
  for (long i = 0; i < v; ++i) u /= pw;
  for (long i = 0; i < -v; ++i) u *= pw;
  return {v, u};
}

// residue of a p-integral rational modulo p^k (denominator inverted mod p^k)
inline long residue_mod(const Rat& x, long pk) {
  Int m(pk);
  Int num = x.num() % m, den = x.den() % m;
  Int inv;
  int ok = mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  require(ok != 0, errk::precondition_failed, "denominator not invertible");
  Int r = (num * inv) % m;
  if (r < 0) r += m;
  return mpz_get_si(r.get_mpz_t());
}

// Hilbert symbol (a,b)_p: 1 iff z^2 = a x^2 + b y^2 has a nontrivial solution
// over the completion at p (p = 0 for the reals).
inline int hilbert_symbol(const Rat& a, const Rat& b, long p) {
  require(!a.is_zero() && !b.is_zero(), errk::precondition_failed,
          "hilbert symbol needs nonzero arguments");
  if (p == kRealPlace) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
  require(p >= 2, errk::precondition_failed, "invalid place");
  auto [alpha, u] = unit_part(a, p);
  auto [beta, v] = unit_part(b, p);
  if (p == 2) {
    // (-1)^( eps(u)eps(v) + alpha*omega(v) + beta*omega(u) ),
    // eps(x) = (x-1)/2, omega(x) = (x^2-1)/8, on odd residues mod 8
    long u8 = residue_mod(u, 8), v8 = residue_mod(v, 8);
    auto eps = [](long x) { return (x % 4 == 3) ? 1 : 0; };
    auto omg = [](long x) { return (x == 3 || x == 5) ? 1 : 0; };
    long e = eps(u8) * eps(v8) + alpha * omg(v8) + beta * omg(u8);
    return (e % 2) ? -1 : 1;
  }
  // odd p: (-1)^(alpha*beta*eps(p)) * (u|p)^beta * (v|p)^alpha
  Int pz(p);
  Int ur(residue_mod(u, p)), vr(residue_mod(v, p));
  int leg_u = mpz_legendre(ur.get_mpz_t(), pz.get_mpz_t());
  int leg_v = mpz_legendre(vr.get_mpz_t(), pz.get_mpz_t());
  int out = 1;
  if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2) out = -out;
  if (beta & 1) out *= leg_u;
  if (alpha & 1) out *= leg_v;
  return out;
}

inline int hasse_invariant_of_diag(const std::vector<Rat>& diag, long p) {
  int out = 1;
  for (size_t i = 0; i < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j)
      out *= hilbert_symbol(diag[i], diag[j], p);
  return out;
}

inline int hasse_invariant(const QuadSpace& q, long p) {
  return hasse_invariant_of_diag(diagonalize(q).diag, p);
}

inline Int det_square_class(const QuadSpace& q) {
  return squarefree_part(q.gram.det());
}

// {2} plus every prime dividing the numerator or denominator of a diagonal
// entry; Hasse invariants at all other finite places are automatically 1.
inline std::vector<long> relevant_primes(const std::vector<Rat>& diag) {
  std::set<long> primes{2};
  for (const Rat& d : diag)
    for (Int part : {d.num(), d.den()})
      for (const auto& [p, e] : factor(part))
        primes.insert(mpz_get_si(p.get_mpz_t()));
  return {primes.begin(), primes.end()};
}

struct RationalInvariants {
  int dim = 0;
  std::pair<int, int> sig{0, 0};
  Int det_class = 1;
  std::map<long, int> hasse;  // finite primes only; the real place is sig

  // The stored prime set depends on the basis the form was handed in; away
  // from it every Hasse invariant is +1, so only the -1 entries carry data.
  friend bool operator==(const RationalInvariants& a, const RationalInvariants& b) {
    auto exceptional = [](const std::map<long, int>& m) {
      std::map<long, int> out;
      for (auto [p, v] : m)
        if (v != 1) out.emplace(p, v);
      return out;
    };
    return a.dim == b.dim && a.sig == b.sig && a.det_class == b.det_class &&
           exceptional(a.hasse) == exceptional(b.hasse);
  }
};

inline RationalInvariants rational_invariants(const QuadSpace& q) {
  auto diag = diagonalize(q).diag;
  RationalInvariants inv;
  inv.dim = q.dim;
  inv.sig = signature_of(diag);
  inv.det_class = det_square_class(q);
  for (long p : relevant_primes(diag)) inv.hasse[p] = hasse_invariant_of_diag(diag, p);
  return inv;
}

// Hasse-Minkowski: dim + signature + det class + all Hasse invariants decide
// isometry over Q.
inline bool isometric(const QuadSpace& x, const QuadSpace& y) {
  if (x.dim != y.dim) return false;
  auto dx = diagonalize(x).diag, dy = diagonalize(y).diag;
  if (signature_of(dx) != signature_of(dy)) return false;
  if (det_square_class(x) != det_square_class(y)) return false;
  std::set<long> primes;
  for (long p : relevant_primes(dx)) primes.insert(p);
  for (long p : relevant_primes(dy)) primes.insert(p);
  for (long p : primes)
    if (hasse_invariant_of_diag(dx, p) != hasse_invariant_of_diag(dy, p))
      return false;
  return true;
}

}  // namespace ksim
