#pragma once

#include <cmath>
#include <string>

#include "ksim/rational.hpp"

namespace ksim {

// Element a + b*sqrt(d) of the real quadratic field Q(sqrt d), embedded into R
// with sqrt(d) > 0.  d == 0 encodes a plain rational (then b == 0); nonzero d
// is squarefree and >= 2.  Construction normalizes d = scale^2 * d0 to d0.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(int a) : a_(a) {}
  QuadExt(long a) : a_(a) {}
  QuadExt(const Rat& a) : a_(a) {}
  QuadExt(long d, const Rat& a, const Rat& b) : a_(a) {
    if (b.is_zero() || d == 0) return;
    require(d > 0, errk::precondition_failed,
            "negative discriminant " + std::to_string(d));
    auto [d0, scale] = squarefree_decompose(d);
    if (d0 == 1) {
      a_ = a + Rat(scale) * b;  // sqrt(d) is rational
    } else {
      d_ = d0;
      b_ = Rat(scale) * b;
    }
  }

  static QuadExt sqrt_of(long d) { return QuadExt(d, Rat(0), Rat(1)); }

  long d() const { return d_; }
  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QuadExt conj() const { return make(d_, a_, -b_); }

  // exact sign under the embedding sqrt(d) > 0
  int sign() const {
    if (b_.is_zero()) return a_.sign();
    if (a_.is_zero()) return b_.sign();
    if (a_.sign() == b_.sign()) return a_.sign();
    // opposite signs: compare |a| with |b|*sqrt(d) via a^2 vs d*b^2
    Rat lhs = a_ * a_, rhs = Rat(d_) * b_ * b_;
    if (lhs == rhs) return 0;  // unreachable for squarefree d >= 2
    return lhs > rhs ? a_.sign() : b_.sign();
  }

  QuadExt inv() const {
    require(!is_zero(), errk::division_by_zero, "inverse of zero");
    if (b_.is_zero()) return QuadExt(Rat(1) / a_);
    Rat n = a_ * a_ - Rat(d_) * b_ * b_;  // field norm, nonzero
    return make(d_, a_ / n, -b_ / n);
  }

  double to_double() const {
    double v = a_.to_double();
    if (!b_.is_zero()) v += b_.to_double() * std::sqrt((double)d_);
    return v;
  }

  std::string str() const {
    if (b_.is_zero()) return a_.str();
    return a_.str() + " + (" + b_.str() + ")*sqrt(" + std::to_string(d_) + ")";
  }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return make(joint(x, y), x.a_ + y.a_, x.b_ + y.b_);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return make(joint(x, y), x.a_ - y.a_, x.b_ - y.b_);
  }
  friend QuadExt operator-(const QuadExt& x) { return make(x.d_, -x.a_, -x.b_); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    long d = joint(x, y);
    return make(d, x.a_ * y.a_ + Rat(d) * x.b_ * y.b_,
                x.a_ * y.b_ + x.b_ * y.a_);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inv(); }
  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

 private:
  // trusted constructor: d already squarefree (or 0)
  static QuadExt make(long d, const Rat& a, const Rat& b) {
    QuadExt x;
    x.a_ = a;
    if (!b.is_zero()) {
      x.d_ = d;
      x.b_ = b;
    }
    return x;
  }
  static long joint(const QuadExt& x, const QuadExt& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0) return x.d_;
    require(x.d_ == y.d_, errk::mismatched_field,
            "sqrt(" + std::to_string(x.d_) + ") vs sqrt(" + std::to_string(y.d_) + ")");
    return x.d_;
  }

  long d_ = 0;
  Rat a_, b_;
};

inline int sign_of(const Rat& x) { return x.sign(); }
inline int sign_of(const QuadExt& x) { return x.sign(); }
inline bool is_zero_val(const Rat& x) { return x.is_zero(); }
inline bool is_zero_val(const QuadExt& x) { return x.is_zero(); }

}  // namespace ksim
