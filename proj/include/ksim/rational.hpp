#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ksim/errors.hpp"

namespace ksim {

using Int = mpz_class;

// Arbitrary-precision rational, always reduced with positive denominator.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(int n) : q_(n) {}
  Rat(long n) : q_((signed long)n) {}
  Rat(const Int& n) : q_(n) {}
  Rat(long n, long d) { init(Int(n), Int(d)); }
  Rat(const Int& n, const Int& d) { init(n, d); }
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Accepts "p" or "p/q" with optional leading '-', ignoring surrounding
  // whitespace; rejects anything else.
  static Rat parse(const std::string& raw) {
    const size_t b = raw.find_first_not_of(" \t");
    const std::string s =
        b == std::string::npos
            ? std::string()
            : raw.substr(b, raw.find_last_not_of(" \t") - b + 1);
    auto digits = [](const std::string& t) {
      if (t.empty()) return false;
      size_t i = t[0] == '-' ? 1 : 0;
      if (i >= t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      require(digits(s), errk::parse_error, "bad rational '" + s + "'");
      return Rat(Int(s), Int(1));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    require(digits(num) && digits(den), errk::parse_error,
            "bad rational '" + s + "'");
    Int d(den);
    require(d != 0, errk::parse_error, "zero denominator in '" + s + "'");
    return Rat(Int(num), d);
  }

  std::string str() const { return q_.get_str(); }
  Int num() const { return q_.get_num(); }
  Int den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }
  Rat abs() const { return sign() < 0 ? Rat(mpq_class(-q_)) : *this; }

  // true iff this is the square of a rational
  bool is_square() const {
    if (sign() < 0) return false;
    return mpz_perfect_square_p(q_.get_num_mpz_t()) &&
           mpz_perfect_square_p(q_.get_den_mpz_t());
  }
  // pre: is_square(); returns the nonnegative square root
  Rat sqrt() const {
    require(is_square(), errk::precondition_failed,
            "sqrt of non-square rational " + str());
    Int n, d;
    mpz_sqrt(n.get_mpz_t(), q_.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q_.get_den_mpz_t());
    return Rat(n, d);
  }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    require(!b.is_zero(), errk::division_by_zero, "rational division by zero");
    return Rat(mpq_class(a.q_ / b.q_));
  }
  Rat& operator+=(const Rat& b) { q_ += b.q_; return *this; }
  Rat& operator-=(const Rat& b) { q_ -= b.q_; return *this; }
  Rat& operator*=(const Rat& b) { q_ *= b.q_; return *this; }
  Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    return c <=> 0;
  }

 private:
  void init(const Int& n, const Int& d) {
    require(d != 0, errk::division_by_zero, "zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
  }
  mpq_class q_;
};

inline constexpr long kFactorBound = 1000000;

// Trial-division factorization of |n| into prime powers.  Complete as long as
// at most one prime factor exceeds the bound; otherwise FactorizationLimit.
inline std::vector<std::pair<Int, int>> factor(Int n, long bound = kFactorBound) {
  require(n != 0, errk::precondition_failed, "factor(0)");
  n = ::abs(n);
  std::vector<std::pair<Int, int>> out;
  for (long p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
    if (Int(p) * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(Int(p), e);
    }
  }
  if (n > 1) {
    // any remaining cofactor with all prime factors > bound is prime iff it
    // is below bound^2; larger cofactors cannot be certified
    require(n <= Int(bound) * bound, errk::factorization_limit,
            "cofactor " + n.get_str() + " exceeds trial-division bound");
    out.emplace_back(n, 1);
  }
  return out;
}

// Squarefree integer in the square class of r, carrying the sign of r.
inline Int squarefree_part(const Rat& r) {
  require(!r.is_zero(), errk::precondition_failed, "square class of zero");
  Int m = r.num() * r.den();
  Int out = m < 0 ? -1 : 1;
  for (const auto& [p, e] : factor(m))
    if (e % 2) out *= p;
  return out;
}

// d = scale^2 * d0 with d0 squarefree; returns {d0, scale}.  pre: d > 0.
inline std::pair<long, long> squarefree_decompose(long d) {
  require(d > 0, errk::precondition_failed, "squarefree_decompose needs d > 0");
  long d0 = 1, scale = 1;
  for (const auto& [p, e] : factor(Int(d))) {
    long pl = mpz_get_si(p.get_mpz_t());
    for (int i = 0; i < e / 2; ++i) scale *= pl;
    if (e % 2) d0 *= pl;
  }
  return {d0, scale};
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace ksim
