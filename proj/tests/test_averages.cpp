#include <doctest.h>

#include "eclld/arith.hpp"
#include "eclld/averages.hpp"
#include "eclld/primes.hpp"

#include <cmath>

using namespace eclld;

TEST_CASE("family 1 brute-force averages") {
  for (int p : {5, 7, 11}) {
    for (int m1 = 0; m1 <= 8; ++m1)
      for (int m2 = 0; m2 <= 2; ++m2)
        if ((m1 + m2) % 2) CHECK(q_star_bruteforce(m1, m2, p).value.is_zero());
  }
  CHECK(q_star_bruteforce(1, 1, 5).value == Surd(5, Rational(-4, 5), 0));
  CHECK(q_star_bruteforce(0, 2, 5).value == Surd(5, Rational(4, 5), 0));
  CHECK(q_star_bruteforce(0, 0, 13).value == Surd(13, 1, 0));
  CHECK_THROWS_AS(q_star_bruteforce(1, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(q_star_bruteforce(1, 3, 5), std::invalid_argument);
}

TEST_CASE("family 1 closed forms equal the brute-force averages") {
  auto traces = TraceTable::exact(12, 97);
  CHECK(q_star_closed(2, 0, 5, traces).value.is_zero());
  auto tau = tau_oracle(5);
  // -(4 / 5^{3/2}) 5^{-11/2} tau(5) = -4 tau(5) / 5^7
  CHECK(q_star_closed(10, 0, 5, traces).value == Surd(5, Rational(-4 * tau[5], 78125), 0));
  for (int p : primes_up_to(97)) {
    if (p < 5) continue;
    for (int m1 = 0; m1 <= 8; ++m1)
      for (int m2 = 0; m2 <= 2; ++m2) CHECK(q_star_closed(m1, m2, p, traces) == q_star_bruteforce(m1, m2, p));
  }
  CHECK_THROWS_AS(q_star_closed(1, 3, 5, traces), std::invalid_argument);
}

TEST_CASE("traces recovered from curve moments") {
  for (int j = 4; j <= 10; j += 2) CHECK(trace_from_moments(j, 11) == 0.0);
  auto tau = tau_oracle(5);
  CHECK(trace_from_moments_exact(12, 5) == Rational(tau[5]));
  CHECK(trace_from_moments(12, 5) == doctest::Approx(static_cast<double>(tau[5]) * std::pow(5.0, -5.5)));
  CHECK(trace_from_moments_exact(16, 7) == trace_hecke_selberg(16, 7));
  CHECK(trace_from_moments(16, 7) == doctest::Approx(static_cast<double>(trace_hecke_selberg(16, 7)) * std::pow(7.0, -7.5)));
  for (int p : {5, 13, 29}) {
    for (int j = 12; j <= 22; j += 2) CHECK(trace_from_moments_exact(j, p) == trace_hecke_selberg(j, p));
  }
  CHECK_THROWS_AS(trace_from_moments(12, 3), std::invalid_argument);
  CHECK_THROWS_AS(trace_from_moments(12, 101), std::invalid_argument);
}

TEST_CASE("composite averages for a residue class") {
  CompositeAverage one = q_rt(1, 1, 1, 1);
  CHECK(one.to_double() == doctest::Approx(1.0));
  CHECK_FALSE(one.is_zero());
  CompositeAverage odd = q_rt(7, 1, 1, 1);
  CHECK(odd.is_zero());
  CHECK(odd.correction == 1 / (1 - Rational(1, 282475249)));
  CHECK(q_rt(2, 1, 1, 1).is_zero());
  CHECK(q_rt(1, 4, 5, 3).is_zero());
  // a_3(y^2 = x^3 + x + 1) from a point count over F_3; lambda(3)^2 - 1 is its square average
  std::int64_t a3 = point_count_trace(0, 1, 1, 3);
  CHECK(q_rt(9, 1, 1, 1).to_double() == doctest::Approx(static_cast<double>(a3 * a3) / 3.0 - 1.0));
  CHECK(q_rt(5, 5, 1, 1).to_double() == doctest::Approx(-0.8 / (1 - std::pow(5.0, -10))));
  CHECK(q_rt(35, 35, 1, 1).to_double() ==
        doctest::Approx((-0.8 / (1 - std::pow(5.0, -10))) * (-6.0 / 7.0 / (1 - std::pow(7.0, -10)))));
}

TEST_CASE("Washington averages") {
  CHECK(q_t_bruteforce(1, 0, 5).value == Surd(5, 0, Rational(-2, 5)));
  for (int p : {3, 5, 7, 11, 13, 17}) CHECK(q_t_bruteforce(0, 1, p).value == -q_t_bruteforce(1, 0, p).value);
  CHECK(q_t_bruteforce(0, 2, 7).value == Surd(7, Rational(5, 7), 0));
  CHECK(washington_root_count(7) == 2);
  CHECK(washington_root_count(5) == 0);
  CHECK(washington_root_count(3) == 1);
  CHECK(q_t_bruteforce(0, 2, 5).value == Surd(5, 1, 0));
  CHECK(q_t_bruteforce(1, 2, 2).value.is_zero());
  CHECK(q_t_bruteforce(0, 0, 2).value == Surd(2, 1, 0));
}

TEST_CASE("Washington identities") {
  CHECK(q_t_identity_check(13, IdentityKind::first).pass);
  for (int p : primes_up_to(199)) {
    if (p == 2) continue;
    CHECK(q_t_identity_check(p, IdentityKind::first).pass);
    CHECK(q_t_identity_check(p, IdentityKind::secondmoment).pass);
    if (p >= 5) CHECK(q_t_identity_check(p, IdentityKind::diagonal).pass);
    // p^{3/2} Q~_t(p, 1) + p (1 + chi4(p)) = 0
    Surd v = q_t_bruteforce(1, 0, p).value;
    CHECK(v.is_pure_surd());
    CHECK(v.surd_part() * p * p + p * (1 + chi4(p)) == 0);
  }
}
