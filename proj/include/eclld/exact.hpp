#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <ostream>
#include <string>

namespace eclld {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_pow(const Rational& x, int e) {
  Rational r = 1;
  Rational b = x;
  unsigned u = e < 0 ? static_cast<unsigned>(-e) : static_cast<unsigned>(e);
  while (u) {
    if (u & 1u) r *= b;
    b *= b;
    u >>= 1;
  }
  return e < 0 ? Rational(1) / r : r;
}

inline std::string to_string(const Rational& q) {
  return q.str();
}

// Element a + b*sqrt(p) of Q(sqrt p).
class Surd {
 public:
  Surd() = default;
  explicit Surd(long p) : p_(p) {}
  Surd(long p, Rational a, Rational b) : p_(p), a_(std::move(a)), b_(std::move(b)) {}

  static Surd sqrt_p(long p) { return Surd(p, 0, 1); }

  long prime() const { return p_; }
  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  bool is_pure_surd() const { return a_ == 0; }

  Surd operator+(const Surd& o) const { return Surd(pp(o), a_ + o.a_, b_ + o.b_); }
  Surd operator-(const Surd& o) const { return Surd(pp(o), a_ - o.a_, b_ - o.b_); }
  Surd operator-() const { return Surd(p_, -a_, -b_); }
  Surd operator*(const Surd& o) const {
    long p = pp(o);
    return Surd(p, a_ * o.a_ + b_ * o.b_ * p, a_ * o.b_ + b_ * o.a_);
  }
  Surd operator*(const Rational& q) const { return Surd(p_, a_ * q, b_ * q); }
  Surd& operator+=(const Surd& o) { return *this = *this + o; }
  Surd& operator-=(const Surd& o) { return *this = *this - o; }
  Surd& operator*=(const Surd& o) { return *this = *this * o; }
  Surd& operator*=(const Rational& q) { return *this = *this * q; }

  bool operator==(const Surd& o) const { return a_ == o.a_ && b_ == o.b_ && (p_ == o.p_ || b_ == 0); }
  bool operator!=(const Surd& o) const { return !(*this == o); }

  double to_double() const {
    return static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(static_cast<double>(p_));
  }

  std::string str() const { return a_.str() + " + (" + b_.str() + ")*sqrt(" + std::to_string(p_) + ")"; }

 private:
  long pp(const Surd& o) const { return p_ != 0 ? p_ : o.p_; }

  long p_ = 0;
  Rational a_ = 0;
  Rational b_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Surd& s) { return os << s.str(); }

}  // namespace eclld
