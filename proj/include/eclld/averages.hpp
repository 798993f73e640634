#pragma once

#include "eclld/exact.hpp"
#include "eclld/hecke.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eclld {

// Q~(p^m1, p^m2) as an exact element of Q(sqrt p).
struct AverageValue {
  int m1 = 0;
  int m2 = 0;
  std::int64_t p = 0;
  Surd value;

  double to_double() const { return value.to_double(); }
  bool operator==(const AverageValue& o) const { return m1 == o.m1 && m2 == o.m2 && p == o.p && value == o.value; }
};

// Distribution of (a_p, bad) over a family mod p.
struct TraceClass {
  std::int64_t a = 0;
  bool bad = false;
  std::int64_t count = 0;
};

// Over all (a, b) mod p; p odd.  Cached.
const std::vector<TraceClass>& family1_trace_classes(std::int64_t p);
// Over all t mod p; p odd.
std::vector<TraceClass> family2_trace_classes(std::int64_t p);

AverageValue q_star_bruteforce(int m1, int m2, std::int64_t p);
AverageValue q_star_closed(int m1, int m2, std::int64_t p, const TraceTable& traces);

// Composite average for the residue class (r, t) mod 6: the 2- and 3-parts, the
// per-prime factors for p > 3 and the product of (1 - p^-10)^-1 over p | lcm(m1, m2), p > 3.
struct CompositeAverage {
  std::vector<AverageValue> factors;
  Rational correction = 1;

  bool is_zero() const;
  double to_double() const;
};

CompositeAverage q_rt(std::int64_t m1, std::int64_t m2, int r, int t);

AverageValue q_t_bruteforce(int m1, int m2, std::int64_t p);

// Bound on |p (Q~_t(p,p) + 1)| over 5 <= p <= 199; the measured maximum is 29/7, at p = 7.
inline constexpr double kDiagonalConstant = 4.15;

enum class IdentityKind { first, diagonal, secondmoment };

struct IdentityReport {
  IdentityKind kind = IdentityKind::first;
  std::int64_t p = 0;
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};

// Number of t mod p with p | t^2 + 3t + 9.
int washington_root_count(std::int64_t p);

IdentityReport q_t_identity_check(std::int64_t p, IdentityKind kind, double c_diag = kDiagonalConstant);

}  // namespace eclld
