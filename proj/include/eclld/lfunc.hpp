#pragma once

#include "eclld/arith.hpp"
#include "eclld/density.hpp"
#include "eclld/special.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eclld {

// lambda(n) = a(n)/sqrt(n) for n <= n_max (index 0 unused).
std::vector<double> coefficients(const WashingtonCurve& curve, std::int64_t n_max);

struct LSeries {
  WashingtonCurve curve;
  Conductor conductor;
  std::vector<double> lambda;
  int root_number = -1;

  std::int64_t n_max() const { return static_cast<std::int64_t>(lambda.size()) - 1; }
  double Q() const;  // sqrt(N)/(2 pi)
};

// Smallest admissible coefficient count for conductor N.
std::int64_t required_terms(double N);
// Default coefficient count: 40 sqrt(N) + 100.
std::int64_t default_terms(double N);

// Uses washington_conductor(t) unless a conductor is supplied.
LSeries make_lseries(const WashingtonCurve& curve, std::optional<Conductor> conductor = std::nullopt, std::int64_t n_max = 0);

struct AfeOptions {
  double Y = 1.0;
  double contour = 1.5;       // Re w
  double step = 0.25;         // trapezoid step in Im w
  double height = 26.0;       // |Im w| cutoff
  double kernel_scale = 3.5;  // G(w) = exp(w^2/B^2)
};

// Lambda(s) = Q^s Gamma(s + 1/2) L(s) by the smoothed approximate functional equation.
// err is the size of the first omitted trapezoid node plus the coefficient tail estimate.
ComplexValue completed_L(cplx s, const LSeries& ls, const AfeOptions& opt = {});

// |Lambda_Y1(s) - Lambda_Y2(s)| / (|Gamma(s + 1/2)| Q^{Re s}).
double afe_consistency(const LSeries& ls, cplx s, double Y1 = 1.0, double Y2 = 1.3);

// Lambda(1/2 + it)/(i |Gamma(1 + it)| sqrt(Q)); real for root number -1.
ComplexValue rotated_Z(const LSeries& ls, double t, const AfeOptions& opt = {});

struct CentralValues {
  double value = 0.0;   // |Lambda(1/2)|/sqrt(Q), computed with Y = 1.3
  double first = 0.0;   // |Lambda'(1/2)|/sqrt(Q)
  double third = 0.0;   // |Lambda'''(1/2)|/sqrt(Q)
  int order = 0;
};

CentralValues central_values(const LSeries& ls);

struct ZeroList {
  std::vector<double> ordinates;  // positive, ascending
  std::vector<double> scaled;     // gamma L/pi
  int central_order = 0;
  double height = 0.0;
  double L = 0.0;
  double expected_count = 0.0;
  double max_residual = 0.0;  // largest |Z| at a returned ordinate
  bool count_warning = false;
  int grid_refinements = 0;
};

// theta(T)/pi - r/2 with theta(T) = T log Q + Im log Gamma(1 + iT).
double zero_count_estimate(const LSeries& ls, double T, int central_order);

ZeroList find_zeros(const LSeries& ls, double T, double L_scale = 0.0);

struct EmpiricalRow {
  std::int64_t t = 0;
  BigInt conductor = 0;
  double contribution = 0.0;
  double central_contribution = 0.0;
  double height = 0.0;
  bool truncated = false;
};

struct EmpiricalResult {
  std::vector<EmpiricalRow> rows;
  double average = 0.0;
  double central_average = 0.0;
  double L = 0.0;
};

// Averages sum_gamma psi(gamma L/pi) over the curves with L = log(sqrt X/2pi).
EmpiricalResult empirical_one_level(const std::vector<LSeries>& curves, const TestFunction& tf, double X,
                                    double max_height = 30.0);

// Conductor of E_t: the guarded formula when it applies, otherwise the first candidate
// 2^e prod_{p | t^2+3t+9} p^f (e = 3, 2, 4, ..., 8; f = 2, or 2..5 at p = 3) whose AFE
// consistency is below 1e-8.
Conductor verified_conductor(const WashingtonCurve& curve);

}  // namespace eclld
