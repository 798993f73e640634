#pragma once

#include <complex>

namespace eclld {

using cplx = std::complex<double>;

struct ComplexValue {
  cplx value;
  double err = 0.0;  // absolute truncation-error estimate

  double re() const { return value.real(); }
  double im() const { return value.imag(); }
};

// Hurwitz zeta sum_{k>=0} (k+a)^{-s}, 0 < a <= 1, by Euler-Maclaurin.
ComplexValue hurwitz_zeta(cplx s, double a);

ComplexValue zeta(cplx s);
ComplexValue zeta_deriv(cplx s);
ComplexValue zeta_logderiv(cplx s);

// L(s, chi_4) by accelerated alternating summation (Cohen-Rodriguez Villegas-Zagier).
ComplexValue dirichlet_L_chi4(cplx s);

// Principal branch, continuous on C minus (-inf, 0].
ComplexValue log_gamma(cplx s);
ComplexValue digamma(cplx s);

// exp(log Gamma(a) - log Gamma(b))
cplx gamma_ratio(cplx a, cplx b);

// Stieltjes constants gamma_0 and gamma_1.
double stieltjes(int n);

}  // namespace eclld
