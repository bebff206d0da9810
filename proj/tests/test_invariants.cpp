#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "ksim/local_invariants.hpp"
#include "ksim/quadspace.hpp"

using ksim::kRealPlace;
using ksim::QuadSpace;
using ksim::Rat;

namespace {

// Independent textbook evaluation of the Hilbert symbol for nonzero integers,
// used as the oracle for the library implementation.

int legendre(long a, long p) {
  long r = a % p;
  if (r < 0) r += p;
  REQUIRE(r != 0);
  long e = (p - 1) / 2, base = r, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

int oracle_hilbert(long a, long b, long p) {
  if (p == kRealPlace) return (a < 0 && b < 0) ? -1 : 1;
  long alpha = 0, beta = 0;
  while (a % p == 0) a /= p, ++alpha;
  while (b % p == 0) b /= p, ++beta;
  if (p == 2) {
    auto eps = [](long u) { return ((u - 1) / 2) & 1; };
    auto omg = [](long u) { return ((u * u - 1) / 8) & 1; };
    long e = eps(a) * eps(b) + alpha * omg(b) + beta * omg(a);
    return (e & 1) ? -1 : 1;
  }
  int s = 1;
  if ((alpha * beta) & 1)
    if (((p - 1) / 2) & 1) s = -s;  // (-1|p) factor
  if (beta & 1) s *= legendre(a, p);
  if (alpha & 1) s *= legendre(b, p);
  return s;
}

const std::vector<long> kSmallPrimes = {2, 3, 5, 7, 11, 13};

}  // namespace

TEST_CASE("hilbert symbol at the real place") {
  CHECK(ksim::hilbert_symbol(Rat(-1), Rat(-1), kRealPlace) == -1);
  CHECK(ksim::hilbert_symbol(Rat(-2), Rat(-3), kRealPlace) == -1);
  CHECK(ksim::hilbert_symbol(Rat(-1), Rat(1), kRealPlace) == 1);
  CHECK(ksim::hilbert_symbol(Rat(2), Rat(3), kRealPlace) == 1);
}

TEST_CASE("hilbert symbol fixed values") {
  CHECK(ksim::hilbert_symbol(Rat(2), Rat(5), 5) == -1);   // 2 is a non-residue mod 5
  CHECK(ksim::hilbert_symbol(Rat(3), Rat(7), 7) == -1);
  CHECK(ksim::hilbert_symbol(Rat(-1), Rat(-1), 2) == -1);
  CHECK(ksim::hilbert_symbol(Rat(-1), Rat(-1), 3) == 1);
  CHECK(ksim::hilbert_symbol(Rat(2), Rat(3), 2) == -1);
  CHECK(ksim::hilbert_symbol(Rat(2), Rat(2), 2) == 1);
  CHECK(ksim::hilbert_symbol(Rat(1), Rat(-17), 2) == 1);  // 1 pairs trivially
}

TEST_CASE("hilbert symbol agrees with the textbook formula on a grid") {
  for (long a = -20; a <= 20; ++a) {
    if (a == 0) continue;
    for (long b = -20; b <= 20; ++b) {
      if (b == 0) continue;
      for (long p : kSmallPrimes) {
        INFO("a=" << a << " b=" << b << " p=" << p);
        CHECK(ksim::hilbert_symbol(Rat(a), Rat(b), p) == oracle_hilbert(a, b, p));
      }
    }
  }
}

TEST_CASE("hilbert symbol algebraic laws") {
  const std::vector<long> vals = {-10, -5, -3, -2, -1, 1, 2, 3, 5, 7, 9};
  for (long a : vals)
    for (long b : vals)
      for (long p : kSmallPrimes) {
        CHECK(ksim::hilbert_symbol(Rat(a), Rat(b), p) ==
              ksim::hilbert_symbol(Rat(b), Rat(a), p));
        CHECK(ksim::hilbert_symbol(Rat(a), Rat(-a), p) == 1);
        CHECK(ksim::hilbert_symbol(Rat(a), Rat(a * 49), p) ==
              ksim::hilbert_symbol(Rat(a), Rat(a), p));  // square-class invariance
        for (long c : {-3L, 2L, 5L})
          CHECK(ksim::hilbert_symbol(Rat(a * c), Rat(b), p) ==
                ksim::hilbert_symbol(Rat(a), Rat(b), p) *
                    ksim::hilbert_symbol(Rat(c), Rat(b), p));
      }
  // Steinberg relation (a, 1-a) = 1
  for (long a : {-5L, -2L, 2L, 3L, 7L})
    for (long p : kSmallPrimes)
      CHECK(ksim::hilbert_symbol(Rat(a), Rat(1 - a), p) == 1);
}

TEST_CASE("product formula over all places") {
  for (long a = -15; a <= 15; ++a) {
    if (a == 0) continue;
    for (long b = -15; b <= 15; ++b) {
      if (b == 0) continue;
      int prod = ksim::hilbert_symbol(Rat(a), Rat(b), kRealPlace);
      for (long p : ksim::relevant_primes({Rat(a), Rat(b)}))
        prod *= ksim::hilbert_symbol(Rat(a), Rat(b), p);
      INFO("a=" << a << " b=" << b);
      CHECK(prod == 1);
    }
  }
}

TEST_CASE("rationals reduce to their square classes") {
  for (long p : kSmallPrimes) {
    CHECK(ksim::hilbert_symbol(Rat(1, 2), Rat(3), p) ==
          ksim::hilbert_symbol(Rat(2), Rat(3), p));
    CHECK(ksim::hilbert_symbol(Rat(-9, 4), Rat(5, 7), p) ==
          ksim::hilbert_symbol(Rat(-1), Rat(35), p));
  }
}

TEST_CASE("relevant primes always include 2 and come sorted") {
  CHECK(ksim::relevant_primes({Rat(1), Rat(-1)}) == std::vector<long>{2});
  CHECK(ksim::relevant_primes({Rat(3), Rat(1, 5)}) == std::vector<long>{2, 3, 5});
  CHECK(ksim::relevant_primes({Rat(7)}) == std::vector<long>{2, 7});
  CHECK(ksim::relevant_primes({Rat(-30)}) == std::vector<long>{2, 3, 5});
}

TEST_CASE("determinant square classes") {
  CHECK(ksim::det_square_class(ksim::diagonal_space({Rat(8)})) == ksim::Int(2));
  CHECK(ksim::det_square_class(ksim::diagonal_space({Rat(-12)})) == ksim::Int(-3));
  CHECK(ksim::det_square_class(ksim::diagonal_space({Rat(1, 2)})) == ksim::Int(2));
  QuadSpace u(ksim::MatQ{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
  CHECK(ksim::det_square_class(u) == ksim::Int(-1));
}

TEST_CASE("full invariants of the hyperbolic plane") {
  QuadSpace u(ksim::MatQ{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
  auto inv = ksim::rational_invariants(u);
  CHECK(inv.dim == 2);
  CHECK(inv.sig == std::pair<int, int>{1, 1});
  CHECK(inv.det_class == ksim::Int(-1));
  for (const auto& [p, h] : inv.hasse) CHECK(h == 1);
}

TEST_CASE("isometry decisions") {
  auto d = [](std::vector<Rat> e) { return ksim::diagonal_space(e); };
  CHECK(ksim::isometric(d({Rat(1), Rat(7)}), d({Rat(7), Rat(1)})));
  CHECK(ksim::isometric(d({Rat(1), Rat(-1)}), d({Rat(2), Rat(-2)})));
  CHECK(ksim::isometric(d({Rat(1), Rat(1)}), d({Rat(2), Rat(2)})));   // x^2+y^2 ~ 2x^2+2y^2
  CHECK_FALSE(ksim::isometric(d({Rat(1), Rat(1)}), d({Rat(3), Rat(3)})));  // Hasse at 3 differs
  CHECK_FALSE(ksim::isometric(d({Rat(1), Rat(1)}), d({Rat(1), Rat(2)})));  // det classes differ
  CHECK_FALSE(ksim::isometric(d({Rat(1), Rat(-1)}), d({Rat(1), Rat(1)})));  // signatures differ
  CHECK_FALSE(ksim::isometric(d({Rat(1)}), d({Rat(1), Rat(1)})));           // dims differ
  // scaling by a square is an isometry; scaling by 2 generally is not
  CHECK(ksim::isometric(d({Rat(3), Rat(5)}), d({Rat(12), Rat(20)})));
  CHECK_FALSE(ksim::isometric(d({Rat(1), Rat(3)}), d({Rat(2), Rat(6)})));
}

TEST_CASE("invariants are congruence invariants") {
  QuadSpace q = ksim::diagonal_space({Rat(1), Rat(-1), Rat(-2)});
  ksim::MatQ t{{Rat(1), Rat(2), Rat(0)},
               {Rat(0), Rat(1), Rat(-1)},
               {Rat(3), Rat(0), Rat(1)}};
  REQUIRE_FALSE(t.det().is_zero());
  QuadSpace q2(t.transpose() * q.gram * t);
  CHECK(ksim::rational_invariants(q) == ksim::rational_invariants(q2));
  CHECK(ksim::isometric(q, q2));
}
