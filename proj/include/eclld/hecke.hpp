#pragma once

#include "eclld/exact.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

namespace eclld {

struct ChebCoeffs {
  int m1 = 0;
  int m2 = 0;
  std::map<int, BigInt> coeffs;  // l -> c_l(m1, m2), zero entries omitted

  BigInt operator[](int l) const {
    auto it = coeffs.find(l);
    return it == coeffs.end() ? BigInt(0) : it->second;
  }
};

double chebyshev_U(int n, double x);

// Power-basis coefficients of U_n, lowest degree first.
std::vector<BigInt> chebyshev_U_poly(int n);

ChebCoeffs linearization_coeffs(int m1, int m2);

double lambda_prime_power(double lambda_p, int j, bool good);
Surd lambda_prime_power(const Surd& lambda_p, int j, bool good);

Rational hurwitz_class_number(std::int64_t N);

// 12 H(N) for N = 0..n_max (zero where N = 1, 2 mod 4), from one sweep over reduced forms.
std::vector<std::int64_t> hurwitz_table_times12(std::int64_t n_max);

int cusp_form_dimension(int k);

// Trace of T_n on level-one weight-j cusp forms (j even >= 2, n >= 1).
Rational trace_hecke_selberg(int j, std::int64_t n);

// tau(n) for n = 0..n_max (tau(0) = 0).
std::vector<BigInt> tau_oracle(int n_max);

// Tr_j(p) and Tr*_j(p) recovered from brute-force averages over y^2 = x^3 + ax + b mod p.
Rational trace_from_moments_exact(int j, std::int64_t p);
double trace_from_moments(int j, std::int64_t p);

class TraceTable {
 public:
  // Exact rational traces through the trace formula.
  static TraceTable exact(int max_weight, std::int64_t max_prime);
  // Double-precision normalized traces only; suited to large prime ranges.
  static TraceTable numeric(int max_weight, std::int64_t max_prime);

  int max_weight() const { return max_weight_; }
  std::int64_t max_prime() const { return max_prime_; }
  bool has_exact() const { return !exact_.empty(); }
  const std::vector<int>& primes() const { return primes_; }

  double normalized(int j, std::int64_t p) const;
  const Rational& trace(int j, std::int64_t p) const;

  // Columns j, p, numerator, denominator, normalized.
  void write_csv(std::ostream& os) const;

 private:
  std::size_t slot(int j, std::int64_t p) const;

  int max_weight_ = 0;
  std::int64_t max_prime_ = 0;
  std::vector<int> primes_;
  std::vector<int> prime_index_;
  std::vector<double> normalized_;
  std::vector<Rational> exact_;
};

}  // namespace eclld
