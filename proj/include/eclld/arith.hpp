#pragma once

#include "eclld/exact.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace eclld {

// y^2 = x^3 + a x + b
struct CurveAB {
  std::int64_t a = 0;
  std::int64_t b = 0;

  BigInt discriminant() const;  // -16(4a^3 + 27b^2)
  bool nonsingular() const;
};

// y^2 = x^3 + t x^2 - (t+3) x + 1
struct WashingtonCurve {
  std::int64_t t = 0;

  BigInt quadratic() const;     // t^2 + 3t + 9
  BigInt discriminant() const;  // 16 (t^2 + 3t + 9)^2
  bool bad_at(std::int64_t p) const;
};

struct FrobeniusTrace {
  std::int64_t p = 0;
  std::int64_t a_p = 0;

  double lambda() const;
  bool within_hasse() const;
};

struct Conductor {
  BigInt value = 0;
  bool exact = false;
  std::string note;

  double to_double() const { return static_cast<double>(value); }
};

int legendre_symbol(std::int64_t a, std::int64_t p);
int chi4(std::int64_t n);

// Table of Legendre symbols (x/p), x = 0..p-1.
class QuadraticCharacter {
 public:
  explicit QuadraticCharacter(std::int64_t p);

  std::int64_t prime() const { return p_; }
  int operator()(std::int64_t x) const { return chi_[static_cast<std::size_t>(reduce(x))]; }
  std::int64_t reduce(std::int64_t x) const {
    std::int64_t r = x % p_;
    return r < 0 ? r + p_ : r;
  }
  const std::vector<signed char>& table() const { return chi_; }

 private:
  std::int64_t p_;
  std::vector<signed char> chi_;
};

std::int64_t frobenius_trace_ab(std::int64_t a, std::int64_t b, std::int64_t p);
std::int64_t frobenius_trace_ab(std::int64_t a, std::int64_t b, const QuadraticCharacter& chi);
std::int64_t frobenius_trace_t(std::int64_t t, std::int64_t p);
std::int64_t frobenius_trace_t(std::int64_t t, const QuadraticCharacter& chi);

// a_p for y^2 = x^3 + a2 x^2 + a4 x + a6 from a direct count of points (x, y) with
// y enumerated through a square-root count table; independent of the Legendre sum.
std::int64_t point_count_trace(std::int64_t a2, std::int64_t a4, std::int64_t a6, std::int64_t p);

// Baby-step giant-step group order for p > 3 at good reduction, falling back to the
// direct sum when the group structure leaves the order ambiguous.
std::int64_t frobenius_trace_bsgs(std::int64_t a2, std::int64_t a4, std::int64_t a6, std::int64_t p);

// a_t(p) for every t mod p at once (index t).  Uses an FFT correlation for large p.
std::vector<std::int64_t> washington_traces_all_t(std::int64_t p);
std::vector<std::int64_t> washington_traces_all_t_direct(std::int64_t p);

bool is_family1_member(std::int64_t a, std::int64_t b, double X, int r, int t);

// Members in (|a|, sign a, |b|, sign b) order, positive sign first.  Returns the count.
std::uint64_t enumerate_family1(double X, int r, int t, const std::function<void(const CurveAB&)>& sink);
std::uint64_t count_family1(double X, int r, int t);

enum class Squarefree { yes, no, inconclusive };
Squarefree squarefree_check(const BigInt& n);

Conductor washington_conductor(std::int64_t t);

}  // namespace eclld
