#include "eclld/density.hpp"

#include "eclld/primes.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace eclld {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPvThreshold = 5e-3;
const cplx I(0.0, 1.0);

double sinc2pi(double tau) {
  if (std::abs(tau) < 1e-8) return 1.0 - (2.0 * kPi * tau) * (2.0 * kPi * tau) / 6.0;
  return std::sin(2.0 * kPi * tau) / (2.0 * kPi * tau);
}

// Real part even, imaginary part odd: fit a + b t^2 and c t + d t^3 through t = e1, e2.
cplx pv_interpolate(double t, const std::function<cplx(double)>& F) {
  const double e1 = kPvThreshold, e2 = 2.0 * kPvThreshold;
  const cplx f1 = F(e1), f2 = F(e2);
  const double b = (f2.real() - f1.real()) / (e2 * e2 - e1 * e1);
  const double a = f1.real() - b * e1 * e1;
  // c e + d e^3 = Im f
  const double det = e1 * e2 * e2 * e2 - e2 * e1 * e1 * e1;
  const double c = (f1.imag() * e2 * e2 * e2 - f2.imag() * e1 * e1 * e1) / det;
  const double d = (e1 * f2.imag() - e2 * f1.imag()) / det;
  return {a + b * t * t, c * t + d * t * t * t};
}

}  // namespace

std::string to_string(SymmetryType g) {
  switch (g) {
    case SymmetryType::U: return "U";
    case SymmetryType::Sp: return "Sp";
    case SymmetryType::O: return "O";
    case SymmetryType::SOeven: return "SOeven";
    case SymmetryType::SOodd: return "SOodd";
    case SymmetryType::DeltaPlusSOeven: return "DeltaPlusSOeven";
  }
  return "?";
}

SymmetryType parse_symmetry_type(const std::string& name) {
  for (SymmetryType g : {SymmetryType::U, SymmetryType::Sp, SymmetryType::O, SymmetryType::SOeven, SymmetryType::SOodd,
                         SymmetryType::DeltaPlusSOeven})
    if (to_string(g) == name) return g;
  throw std::invalid_argument("unknown symmetry type: " + name);
}

CatalogValue wg_density(SymmetryType g, double tau) {
  const double s = sinc2pi(tau);
  switch (g) {
    case SymmetryType::U: return {1.0, 0.0};
    case SymmetryType::Sp: return {1.0 - s, 0.0};
    case SymmetryType::O: return {1.0, 0.5};
    case SymmetryType::SOeven: return {1.0 + s, 0.0};
    case SymmetryType::SOodd: return {1.0 - s, 1.0};
    case SymmetryType::DeltaPlusSOeven: return {1.0 + s, 1.0};
  }
  return {};
}

TestFunction gaussian_test_function() {
  TestFunction tf;
  tf.name = "gaussian";
  tf.psi = [](double t) { return std::exp(-kPi * t * t); };
  tf.psi_hat = [](double xi) { return std::exp(-kPi * xi * xi); };
  tf.support_bound = std::numeric_limits<double>::infinity();
  tf.tail_height = 3.0;
  return tf;
}

TestFunction fejer_test_function() {
  TestFunction tf;
  tf.name = "fejer";
  tf.psi = [](double t) {
    if (std::abs(t) < 1e-8) return 1.0;
    const double s = std::sin(kPi * t) / (kPi * t);
    return s * s;
  };
  tf.psi_hat = [](double xi) { return std::max(0.0, 1.0 - std::abs(xi)); };
  tf.support_bound = 1.0;
  tf.tail_height = std::numeric_limits<double>::infinity();
  return tf;
}

TestFunction zero_test_function() {
  TestFunction tf;
  tf.name = "zero";
  tf.psi = [](double) { return 0.0; };
  tf.psi_hat = [](double) { return 0.0; };
  tf.support_bound = 0.0;
  tf.tail_height = 0.0;
  return tf;
}

TestFunction parse_test_function(const std::string& name) {
  if (name == "gaussian") return gaussian_test_function();
  if (name == "fejer") return fejer_test_function();
  if (name == "zero") return zero_test_function();
  throw std::invalid_argument("unknown test function: " + name);
}

double density_scale(Family f, double X) {
  if (!(X > 1.0)) throw std::invalid_argument("density_scale: X must exceed 1");
  const double base = std::log(std::sqrt(X) / (2.0 * kPi));
  return f == Family::all_curves ? base - 1.0 : base;
}

double delta_mass(Family f, double root_number_mean) {
  return f == Family::all_curves ? (1.0 - root_number_mean) / 2.0 : 1.0;
}

ArithmeticTerms arithmetic_terms(Family f, double t, const DensityOptions& opt) {
  ArithmeticTerms a;
  const cplx r(0.0, t);
  a.A_alpha = A_alpha_derivative(f, r, opt.prime_cutoff, opt.series_order).value;
  if (f == Family::washington || opt.root_number_mean != 0.0)
    a.A_anti = A_value(f, ComplexShift{-r, r}, opt.prime_cutoff, opt.series_order).value;
  return a;
}

cplx integrand_family1_raw(double t, double X, const ArithmeticTerms& a, double root_number_mean) {
  const double ell = std::log(std::sqrt(X) / (2.0 * kPi));
  const cplx s = I * t;
  cplx F = 2.0 * ell + digamma(1.0 + s).value + digamma(1.0 - s).value - 2.0 * zeta_logderiv(1.0 + 2.0 * s).value +
           2.0 * a.A_alpha - (1.0 - root_number_mean) / s;
  if (root_number_mean != 0.0)
    F -= 2.0 * root_number_mean * std::exp(-2.0 * s * ell) * gamma_ratio(1.0 - s, 1.0 + s) * zeta(1.0 + 2.0 * s).value *
         a.A_anti;
  return F;
}

cplx integrand_family2_raw(double u, double X, const ArithmeticTerms& a, const std::vector<double>& log_conductors) {
  const cplx s = I * u;
  double ell = std::log(std::sqrt(X) / (2.0 * kPi));
  cplx phase = std::exp(-2.0 * s * ell);
  if (!log_conductors.empty()) {
    ell = 0.0;
    phase = 0.0;
    for (double l : log_conductors) {
      ell += l;
      phase += std::exp(-2.0 * s * l);
    }
    ell /= static_cast<double>(log_conductors.size());
    phase /= static_cast<double>(log_conductors.size());
  }
  const cplx zeta_part = zeta(1.0 + 2.0 * s).value * zeta(1.0 + s).value / zeta(1.0 - s).value;
  return 2.0 * ell + digamma(1.0 + s).value + digamma(1.0 - s).value -
         2.0 * (zeta_logderiv(1.0 + 2.0 * s).value + zeta_logderiv(1.0 + s).value) + 2.0 * a.A_alpha +
         2.0 * phase * gamma_ratio(1.0 - s, 1.0 + s) * zeta_part * a.A_anti - 2.0 / s;
}

cplx integrand_family1(double t, double X, const DensityOptions& opt, bool pv) {
  auto F = [&](double x) { return integrand_family1_raw(x, X, arithmetic_terms(Family::all_curves, x, opt), opt.root_number_mean); };
  if (std::abs(t) >= kPvThreshold) return F(t);
  if (!pv && std::abs(t) < 1e-3) throw std::domain_error("integrand_family1: |t| < 1e-3 needs principal-value pairing");
  return pv ? pv_interpolate(t, F) : F(t);
}

cplx integrand_family2(double u, double X, const DensityOptions& opt, bool pv) {
  auto F = [&](double x) { return integrand_family2_raw(x, X, arithmetic_terms(Family::washington, x, opt), opt.log_conductors); };
  if (std::abs(u) >= kPvThreshold) return F(u);
  if (!pv && std::abs(u) < 1e-3) throw std::domain_error("integrand_family2: |u| < 1e-3 needs principal-value pairing");
  return pv ? pv_interpolate(u, F) : F(u);
}

cplx integrand(Family f, double t, double X, const DensityOptions& opt, bool pv) {
  return f == Family::all_curves ? integrand_family1(t, X, opt, pv) : integrand_family2(t, X, opt, pv);
}

DensityConstants density_constants(Family f, const DensityOptions& opt) {
  DensityConstants c;
  c.family = f;
  const DerivativeValue da = A_alpha_derivative(f, 0.0, opt.prime_cutoff, opt.series_order);
  const DerivativeValue dg = A_gamma_derivative(f, 0.0, opt.prime_cutoff, opt.series_order);
  c.A_alpha = da.value.real();
  c.A_gamma = dg.value.real();
  c.derivative_err = std::max(da.err, dg.err);
  if (f == Family::all_curves) c.A_alpha_alpha = A_alpha_second(f, 0.0, opt.prime_cutoff, opt.series_order);
  c.gamma0 = stieltjes(0);
  c.gamma1 = stieltjes(1);
  return c;
}

TaylorForm taylor_form(const DensityConstants& c) {
  TaylorForm t;
  t.family = c.family;
  t.c0_const = 1.0;
  if (c.family == Family::all_curves) {
    // 2 log(sqrt X/2pi) = 2L + 2 with L = log(sqrt X/(2 pi e))
    t.c_over_L = 1.0 + c.A_alpha - 2.0 * c.gamma0;
    t.c_over_L2 = c.A_alpha_alpha.value.real() + 2.0 * (c.gamma0 * c.gamma0 + c.gamma1);
  } else {
    t.c_over_L = c.A_alpha - 3.0 * c.gamma0;
    t.c_oscillating = 0.5 * (c.A_alpha - c.A_gamma) - 3.0 * c.gamma0;
  }
  return t;
}

double taylor_density(const TaylorForm& tf, double tau, double L) {
  if (tf.family == Family::all_curves) return tf.c0_const + tf.c_over_L / L;
  return tf.c0_const + sinc2pi(tau) + (tf.c_over_L + tf.c_oscillating * std::cos(2.0 * kPi * tau)) / L;
}

SymmetryType limiting_symmetry(Family f) {
  return f == Family::all_curves ? SymmetryType::O : SymmetryType::DeltaPlusSOeven;
}

double scaled_density_at(Family f, double X, double tau, const DensityOptions& opt) {
  const double L = density_scale(f, X);
  return integrand(f, kPi * tau / L, X, opt).real() / (2.0 * L);
}

DensityCurve scaled_density(Family f, double X, const std::vector<double>& tau_grid, const DensityOptions& opt,
                            const std::optional<DensityConstants>& constants) {
  if (X < 1e4) throw std::invalid_argument("scaled_density: X must be at least 1e4");
  DensityCurve c;
  c.family = f;
  c.X = X;
  c.L = density_scale(f, X);
  c.tau_grid = tau_grid;
  c.delta_mass = delta_mass(f, opt.root_number_mean);
  c.constants = constants ? *constants : density_constants(f, opt);
  c.taylor = taylor_form(c.constants);
  const SymmetryType g = limiting_symmetry(f);
  for (double tau : tau_grid) {
    c.smooth_values.push_back(scaled_density_at(f, X, tau, opt));
    c.taylor_values.push_back(taylor_density(c.taylor, tau, c.L));
    c.catalog_values.push_back(wg_density(g, tau).smooth);
  }
  return c;
}

QuadratureValue integrate_even(const TestFunction& tf, const std::function<double(double)>& density) {
  using boost::math::quadrature::gauss_kronrod;
  QuadratureValue q;
  q.converged = true;
  if (tf.tail_height == 0.0) return q;
  const bool finite = std::isfinite(tf.tail_height);
  const int T = finite ? static_cast<int>(std::ceil(tf.tail_height)) : 40;
  auto f = [&](double x) { return tf.psi(x) * density(x); };
  double total = 0.0, err = 0.0;
  for (int k = 0; k < T; ++k) {
    double e = 0.0;
    total += gauss_kronrod<double, 15>::integrate(f, k, k + 1, 4, 1e-11, &e);
    err += e;
    if (e > 1e-8) q.converged = false;
  }
  if (!finite) {
    // int_T^inf (sin(pi x)/(pi x))^2 dx for integer T, times the density at T
    const double tail = 1.0 / (2.0 * kPi * kPi * T);
    const double hT = density(static_cast<double>(T));
    total += hT * tail;
    err += std::abs(hT) / (2.0 * std::pow(kPi, 4) * T * T * T) + std::abs(hT - density(T + 0.5)) * tail;
  }
  q.value = 2.0 * total;
  q.err = 2.0 * err;
  return q;
}

QuadratureValue predict_one_level(Family f, double X, const TestFunction& tf, const DensityOptions& opt) {
  QuadratureValue q = integrate_even(tf, [&](double tau) { return scaled_density_at(f, X, tau, opt); });
  q.value += delta_mass(f, opt.root_number_mean) * tf.psi(0.0);
  return q;
}

QuadratureValue catalog_one_level(SymmetryType g, const TestFunction& tf) {
  QuadratureValue q = integrate_even(tf, [&](double tau) { return wg_density(g, tau).smooth; });
  q.value += wg_density(g, 0.0).delta * tf.psi(0.0);
  return q;
}

std::vector<std::pair<std::int64_t, std::int64_t>> washington_traces_up_to(std::int64_t t, std::int64_t x_max) {
  if (x_max > 100000000) throw std::invalid_argument("washington_traces_up_to: x_max too large");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (int p : primes_up_to(static_cast<int>(x_max))) {
    std::int64_t a = 0;
    if (p == 2)
      a = 0;
    else if (p < 1000)
      a = frobenius_trace_t(t, p);
    else
      a = frobenius_trace_bsgs(mod(t, p), mod(-(t + 3), p), 1, p);
    out.emplace_back(p, a);
  }
  return out;
}

BsdDecomposition bsd_decomposition(const WashingtonCurve& curve, std::int64_t x_max, int ladder_points) {
  if (x_max < 1000 || x_max > 1000000) throw std::invalid_argument("bsd_decomposition: need 1e3 <= x_max <= 1e6");
  if (ladder_points < 3) throw std::invalid_argument("bsd_decomposition: need at least 3 ladder points");
  BsdDecomposition out;
  out.t = curve.t;
  out.x_max = x_max;
  const auto traces = washington_traces_up_to(curve.t, x_max);

  const double x_min = 100.0;
  for (int k = 0; k < ladder_points; ++k)
    out.x_ladder.push_back(x_min * std::pow(static_cast<double>(x_max) / x_min, double(k) / (ladder_points - 1)));

  double full = 0.0, shifted = 0.0, split_euler = 0.0, split_third = 0.0;
  std::size_t next = 0;
  for (auto [p, a] : traces) {
    while (next < out.x_ladder.size() && static_cast<double>(p) > out.x_ladder[next]) {
      out.log_product_full.push_back(full);
      out.log_product_shifted.push_back(shifted);
      ++next;
    }
    const double pd = static_cast<double>(p), ad = static_cast<double>(a), chi = chi4(p);
    const double star = pd - ad - chi;
    if (star <= 0.0) throw std::domain_error("bsd_decomposition: non-positive shifted factor at p = " + std::to_string(p));
    full += std::log((pd + 1.0 - ad) / pd);
    shifted += std::log(star / pd);
    split_euler += std::log((pd - 1.0) / pd);
    split_third += std::log1p((-pd * chi - ad + 1.0) / (pd * pd - pd * ad + ad - 1.0));
  }
  while (next < out.x_ladder.size()) {
    out.log_product_full.push_back(full);
    out.log_product_shifted.push_back(shifted);
    ++next;
  }
  out.identity_residual = std::abs(shifted - (full + split_euler + split_third));

  auto fit = [&](const std::vector<double>& y, double& slope, double& intercept) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double x = std::log(std::log(out.x_ladder[i]));
      sx += x;
      sy += y[i];
      sxx += x * x;
      sxy += x * y[i];
    }
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    intercept = (sy - slope * sx) / n;
  };
  fit(out.log_product_full, out.slope_full, out.intercept_full);
  fit(out.log_product_shifted, out.slope_shifted, out.intercept_shifted);
  return out;
}

}  // namespace eclld
