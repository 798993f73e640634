#pragma once

#include "eclld/arith.hpp"
#include "eclld/ratios.hpp"
#include "eclld/special.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace eclld {

enum class SymmetryType { U, Sp, O, SOeven, SOodd, DeltaPlusSOeven };

std::string to_string(SymmetryType g);
SymmetryType parse_symmetry_type(const std::string& name);

struct CatalogValue {
  double smooth = 0.0;
  double delta = 0.0;  // coefficient of the Dirac mass at 0
};

// Scaling density of eigenvalues near 1; the smooth part at tau = 0 is the limit.
CatalogValue wg_density(SymmetryType g, double tau);

struct TestFunction {
  std::string name;
  std::function<double(double)> psi;      // even, in the scaled variable tau
  std::function<double(double)> psi_hat;  // psi_hat(xi) = int psi(tau) e^{-2 pi i xi tau} dtau
  double support_bound = 0.0;             // supp psi_hat in [-b, b]; infinity if unbounded
  double tail_height = 0.0;               // |tau| beyond which psi is below 1e-10, or infinity
};

TestFunction gaussian_test_function();  // exp(-pi tau^2)
TestFunction fejer_test_function();     // (sin(pi tau)/(pi tau))^2, transform supported in [-1, 1]
TestFunction zero_test_function();
TestFunction parse_test_function(const std::string& name);

// Scale of the tau variable: log(sqrt X/(2 pi e)) for family 1, log(sqrt X/(2 pi)) for family 2.
double density_scale(Family f, double X);
// Dirac mass of the scaled density: (1 - mean root number)/2 for family 1, 1 for family 2.
double delta_mass(Family f, double root_number_mean = 0.0);

struct DensityOptions {
  std::int64_t prime_cutoff = kDefaultPrimeCutoff;
  int series_order = 0;  // 0 selects the family default
  double root_number_mean = 0.0;  // family 1 only
  // Family 2: log(sqrt C(t)/2pi) for each curve; empty means the surrogate log(sqrt X/2pi).
  std::vector<double> log_conductors;
};

// A_a(it, it) and A(-it, it)
struct ArithmeticTerms {
  cplx A_alpha;
  cplx A_anti;
};

ArithmeticTerms arithmetic_terms(Family f, double t, const DensityOptions& opt = {});

// Integrand of the one-level density in the unscaled variable t.  Near 0 the simple pole
// of the subtracted term cancels; pv=true replaces |t| < 5e-3 by the even/odd
// interpolation from t = 5e-3, 1e-2, pv=false rejects |t| < 1e-6.
cplx integrand_family1(double t, double X, const DensityOptions& opt = {}, bool pv = true);
cplx integrand_family2(double u, double X, const DensityOptions& opt = {}, bool pv = true);
cplx integrand(Family f, double t, double X, const DensityOptions& opt = {}, bool pv = true);

// Pointwise formulas with the arithmetic terms supplied by the caller (|t| >= 1e-3).
cplx integrand_family1_raw(double t, double X, const ArithmeticTerms& a, double root_number_mean = 0.0);
cplx integrand_family2_raw(double u, double X, const ArithmeticTerms& a, const std::vector<double>& log_conductors = {});

struct DensityConstants {
  Family family = Family::all_curves;
  double A_alpha = 0.0;             // A_a(0,0)
  double A_gamma = 0.0;             // A_g(0,0)
  DerivativeValue A_alpha_alpha;    // A_aa(0,0) + A_ag(0,0), family 1 only
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double derivative_err = 0.0;
};

DensityConstants density_constants(Family f, const DensityOptions& opt = {});

// Family 1: 1 + c_over_L/L + c_over_L2 pi i tau/L^2.
// Family 2: 1 + sin(2 pi tau)/(2 pi tau) + (c_over_L + c_oscillating e^{-2 pi i tau})/L.
struct TaylorForm {
  Family family = Family::all_curves;
  double c0_const = 1.0;
  double c_over_L = 0.0;
  double c_oscillating = 0.0;
  double c_over_L2 = 0.0;
};

TaylorForm taylor_form(const DensityConstants& c);
// Real part of the smooth Taylor form at tau.
double taylor_density(const TaylorForm& tf, double tau, double L);

struct DensityCurve {
  Family family = Family::all_curves;
  double X = 0.0;
  double L = 0.0;
  std::vector<double> tau_grid;
  std::vector<double> smooth_values;  // real part of the scaled integrand
  std::vector<double> taylor_values;
  std::vector<double> catalog_values;  // smooth part of the limiting symmetry type
  double delta_mass = 0.0;
  DensityConstants constants;
  TaylorForm taylor;
};

// Smooth scaled density h(tau) - delta_mass delta_0(tau) = Re F(pi tau/L)/(2L).
double scaled_density_at(Family f, double X, double tau, const DensityOptions& opt = {});

// When constants is given the derivative ladder is not recomputed.
DensityCurve scaled_density(Family f, double X, const std::vector<double>& tau_grid, const DensityOptions& opt = {},
                            const std::optional<DensityConstants>& constants = std::nullopt);

SymmetryType limiting_symmetry(Family f);

struct QuadratureValue {
  double value = 0.0;
  double err = 0.0;
  bool converged = false;
};

// int psi(tau) h(tau) dtau + delta_mass psi(0).
QuadratureValue predict_one_level(Family f, double X, const TestFunction& tf, const DensityOptions& opt = {});
// int psi W(G) + delta psi(0).
QuadratureValue catalog_one_level(SymmetryType g, const TestFunction& tf);
// int of an even test function against an arbitrary real density on the line.
QuadratureValue integrate_even(const TestFunction& tf, const std::function<double(double)>& density);

struct BsdDecomposition {
  std::int64_t t = 0;
  std::int64_t x_max = 0;
  double slope_full = 0.0;
  double slope_shifted = 0.0;
  double intercept_full = 0.0;
  double intercept_shifted = 0.0;
  double identity_residual = 0.0;  // |log direct - log three-factor split| at x_max
  std::vector<double> x_ladder;
  std::vector<double> log_product_full;
  std::vector<double> log_product_shifted;
};

// a_t(p) for p <= x_max (index by prime order), with a_t(2) = 0.
std::vector<std::pair<std::int64_t, std::int64_t>> washington_traces_up_to(std::int64_t t, std::int64_t x_max);

BsdDecomposition bsd_decomposition(const WashingtonCurve& curve, std::int64_t x_max, int ladder_points = 24);

}  // namespace eclld
