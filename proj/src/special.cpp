#include "eclld/special.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eclld {

namespace {

constexpr int kEulerMaclaurinTerms = 18;

struct EMResult {
  cplx value, deriv;
  double err_value, err_deriv;
};

double b2n_over_factorial(int j) {
  return boost::math::bernoulli_b2n<double>(j) / boost::math::factorial<double>(static_cast<unsigned>(2 * j));
}

EMResult hurwitz_em(cplx s, double a, bool want_deriv) {
  const int N = 30 + static_cast<int>(std::ceil(std::abs(s.imag()) + std::abs(s.real())));
  cplx sum = 0.0, dsum = 0.0;
  for (int k = N - 1; k >= 0; --k) {
    const double x = k + a;
    const double lx = std::log(x);
    const cplx term = std::exp(-s * lx);
    sum += term;
    if (want_deriv) dsum -= lx * term;
  }
  const double x = N + a;
  const double lx = std::log(x);
  const cplx xs = std::exp(-s * lx);  // x^{-s}
  const cplx sm1 = s - 1.0;
  sum += x * xs / sm1 + 0.5 * xs;
  if (want_deriv) dsum += x * xs * (-lx / sm1 - 1.0 / (sm1 * sm1)) - 0.5 * lx * xs;

  // tail terms B_{2j}/(2j)! s(s+1)...(s+2j-2) x^{-s-2j+1}
  cplx poly = s;           // s (s+1) ... (s+2j-2)
  cplx dpoly_over = 1.0 / s;  // sum of 1/(s+i)
  cplx xpow = xs / x;      // x^{-s-2j+1} for j = 1
  cplx last = 0.0, dlast = 0.0;
  for (int j = 1; j <= kEulerMaclaurinTerms; ++j) {
    const double c = b2n_over_factorial(j);
    const cplx term = c * poly * xpow;
    sum += term;
    last = term;
    if (want_deriv) {
      const cplx dterm = term * (dpoly_over - lx);
      dsum += dterm;
      dlast = dterm;
    }
    poly *= (s + double(2 * j - 1)) * (s + double(2 * j));
    dpoly_over += 1.0 / (s + double(2 * j - 1)) + 1.0 / (s + double(2 * j));
    xpow /= x * x;
  }
  const double scale = std::abs(s + double(2 * kEulerMaclaurinTerms + 1)) / (s.real() + 2 * kEulerMaclaurinTerms + 1);
  const double rounding = 1e-15 * (std::abs(sum) + 1.0);
  return EMResult{sum, dsum, std::abs(last) * scale + rounding, std::abs(dlast) * scale * (1.0 + lx) + 1e-15 * (std::abs(dsum) + 1.0)};
}

void check_zeta_domain(cplx s, const char* where) {
  if (!(s.real() > 0.0)) throw std::domain_error(std::string(where) + ": need Re(s) > 0");
  if (std::abs(s - 1.0) < 1e-3 * (1 - 1e-9)) throw std::domain_error(std::string(where) + ": too close to the pole at s = 1");
}

}  // namespace

ComplexValue hurwitz_zeta(cplx s, double a) {
  if (!(a > 0.0 && a <= 1.0)) throw std::domain_error("hurwitz_zeta: need 0 < a <= 1");
  if (!(s.real() > 0.0)) throw std::domain_error("hurwitz_zeta: need Re(s) > 0");
  if (std::abs(s - 1.0) < 1e-3 * (1 - 1e-9)) throw std::domain_error("hurwitz_zeta: too close to the pole at s = 1");
  EMResult r = hurwitz_em(s, a, false);
  return {r.value, r.err_value};
}

ComplexValue zeta(cplx s) {
  check_zeta_domain(s, "zeta");
  EMResult r = hurwitz_em(s, 1.0, false);
  return {r.value, r.err_value};
}

ComplexValue zeta_deriv(cplx s) {
  check_zeta_domain(s, "zeta_deriv");
  EMResult r = hurwitz_em(s, 1.0, true);
  return {r.deriv, r.err_deriv};
}

ComplexValue zeta_logderiv(cplx s) {
  check_zeta_domain(s, "zeta_logderiv");
  EMResult r = hurwitz_em(s, 1.0, true);
  const double az = std::abs(r.value);
  if (az < 1e-12) throw std::domain_error("zeta_logderiv: too close to a zero of zeta");
  const cplx v = r.deriv / r.value;
  return {v, r.err_deriv / az + std::abs(v) * r.err_value / az};
}

ComplexValue dirichlet_L_chi4(cplx s) {
  if (!(s.real() > 0.0)) throw std::domain_error("dirichlet_L_chi4: need Re(s) > 0");
  const double growth = std::numbers::pi * std::abs(s.imag()) / 2.0;
  const int n = 20 + static_cast<int>(std::ceil((growth + 30.0) / std::log(3.0 + std::sqrt(8.0))));
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0, c = -d;
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * std::exp(-s * std::log(2.0 * k + 1.0));
    b = (static_cast<double>(k) + n) * (static_cast<double>(k) - n) * b / ((k + 0.5) * (k + 1.0));
  }
  const cplx v = sum / d;
  const double err = 2.0 * std::exp(growth) / d + 1e-15 * (std::abs(v) + 1.0);
  return {v, err};
}

ComplexValue log_gamma(cplx s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && std::floor(s.real()) == s.real())
    throw std::domain_error("log_gamma: pole at a non-positive integer");
  cplx shift = 0.0;
  cplx z = s;
  while (z.real() < 10.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const cplx lz = std::log(z);
  cplx v = (z - 0.5) * lz - z + 0.5 * std::log(2.0 * std::numbers::pi);
  cplx zp = z;
  const cplx z2 = z * z;
  double last = 0.0;
  for (int j = 1; j <= 10; ++j) {
    const double b = boost::math::bernoulli_b2n<double>(j);
    const cplx term = b / (2.0 * j * (2.0 * j - 1.0)) / zp;
    v += term;
    last = std::abs(term);
    zp *= z2;
  }
  return {v - shift, last + 1e-15 * (std::abs(v) + 1.0)};
}

ComplexValue digamma(cplx s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && std::floor(s.real()) == s.real())
    throw std::domain_error("digamma: pole at a non-positive integer");
  cplx shift = 0.0;
  cplx z = s;
  while (z.real() < 10.0) {
    shift += 1.0 / z;
    z += 1.0;
  }
  cplx v = std::log(z) - 0.5 / z;
  const cplx z2 = z * z;
  cplx zp = z2;
  double last = 0.0;
  for (int j = 1; j <= 10; ++j) {
    const double b = boost::math::bernoulli_b2n<double>(j);
    const cplx term = b / (2.0 * j) / zp;
    v -= term;
    last = std::abs(term);
    zp *= z2;
  }
  return {v - shift, last + 1e-15 * (std::abs(v) + 1.0)};
}

cplx gamma_ratio(cplx a, cplx b) {
  return std::exp(log_gamma(a).value - log_gamma(b).value);
}

namespace {

double stieltjes_em(int n) {
  const int N = 100;
  double sum = 0.0;
  for (int k = N; k >= 1; --k) sum += std::pow(std::log(static_cast<double>(k)), n) / k;
  const double x = N, lx = std::log(x);
  sum -= std::pow(lx, n + 1) / (n + 1);
  sum -= 0.5 * std::pow(lx, n) / x;
  // derivatives of f(x) = (log x)^n / x at x = N
  double harmonic = 0.0;
  double fact = 1.0;
  for (int j = 1; j <= 10; ++j) {
    const int m = 2 * j - 1;
    for (int i = 2 * j - 2; i <= m; ++i) {
      if (i == 0) continue;
      harmonic += 1.0 / i;
      fact *= i;
    }
    const double fm = (n == 0 ? -fact : -fact * (lx - harmonic)) / std::pow(x, m + 1);
    sum -= b2n_over_factorial(j) * fm;
  }
  return sum;
}

}  // namespace

double stieltjes(int n) {
  if (n != 0 && n != 1) throw std::invalid_argument("stieltjes: only n = 0, 1 are supported");
  static const std::array<double, 2> constants = {stieltjes_em(0), stieltjes_em(1)};
  return constants[static_cast<std::size_t>(n)];
}

}  // namespace eclld
