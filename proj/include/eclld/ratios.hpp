#pragma once

#include "eclld/averages.hpp"
#include "eclld/hecke.hpp"
#include "eclld/special.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace eclld {

enum class Family { all_curves = 1, washington = 2 };

struct ComplexShift {
  cplx alpha;
  cplx gamma;

  // throws std::domain_error outside Re > -1/4
  void validate() const;
};

struct EulerProductValue {
  cplx value;
  std::int64_t prime_cutoff = 0;
  int series_order = 0;  // 0 means the closed generating function (family 2)
  double tail_bound = 0.0;
};

inline constexpr std::int64_t kDefaultPrimeCutoff = 10000;
inline constexpr int kDefaultSeriesOrder = 30;

// Renormalized local factor of A at p > 3; the Hecke-trace sum runs over even m1 in [10, M].
cplx euler_factor_family1(std::int64_t p, const ComplexShift& shift, const TraceTable& traces, int M);

// Renormalized local factors at 2 and 3 for the residue class (r, t) mod 6.
cplx euler_factor_23(std::int64_t p, const ComplexShift& shift, int r = 1, int t = 1);

// Shared normalized trace table for weights up to M+2 and primes up to P.
const TraceTable& cached_trace_table(int M, std::int64_t P);

EulerProductValue A_family1(const ComplexShift& shift, std::int64_t P = kDefaultPrimeCutoff, int M = kDefaultSeriesOrder,
                            int r = 1, int t = 1);

// Distribution of (a_t(p), bad) over t mod p for every odd p <= P.
class Family2Data {
 public:
  static const Family2Data& get(std::int64_t P);

  std::int64_t prime_cutoff() const { return P_; }
  const std::vector<int>& primes() const { return primes_; }
  const std::vector<TraceClass>& classes(std::int64_t p) const;

 private:
  std::int64_t P_ = 0;
  std::vector<int> primes_;
  std::vector<int> index_;
  std::vector<std::vector<TraceClass>> classes_;
};

// Renormalized family-2 local factor at p, summing the Hecke generating function in closed form.
cplx euler_factor_family2(std::int64_t p, const ComplexShift& shift, const std::vector<TraceClass>& classes);
cplx euler_factor_family2(std::int64_t p, const ComplexShift& shift);
// Same factor with the m1 series truncated at M.
cplx euler_factor_family2_series(std::int64_t p, const ComplexShift& shift, int M, const std::vector<TraceClass>& classes);
cplx euler_factor_family2_series(std::int64_t p, const ComplexShift& shift, int M);

// M = 0 selects the closed generating function.
EulerProductValue A_family2(const ComplexShift& shift, std::int64_t P = kDefaultPrimeCutoff, int M = 0);

EulerProductValue A_value(Family f, const ComplexShift& shift, std::int64_t P, int M);

cplx Y_family1(const ComplexShift& shift);
cplx Y_family2(const ComplexShift& shift);

struct DerivativeValue {
  cplx value;
  double err = 0.0;
  bool converged = false;
};

// Central differences with Richardson extrapolation on steps h, h/2, h/4.
DerivativeValue richardson_derivative(const std::function<cplx(cplx)>& f, cplx x0, double h);

DerivativeValue A_alpha_derivative(Family f, cplx r, std::int64_t P = kDefaultPrimeCutoff, int M = 0);
DerivativeValue A_gamma_derivative(Family f, cplx r, std::int64_t P = kDefaultPrimeCutoff, int M = 0);
// A_aa(r,r) + A_ag(r,r), the derivative of r -> A_a(r,r).
DerivativeValue A_alpha_second(Family f, cplx r, std::int64_t P = kDefaultPrimeCutoff, int M = 0);

}  // namespace eclld
