#include "eclld/ratios.hpp"

#include "eclld/arith.hpp"
#include "eclld/primes.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace eclld {

namespace {

constexpr double kRoundingPerFactor = 4e-16;

cplx ppow(double p, cplx z) {  // p^{-z}
  return std::exp(-z * std::log(p));
}

double decay_exponent(const ComplexShift& s) {
  double kappa = std::max({0.0, -s.alpha.real(), -s.gamma.real()});
  return 2.0 - 2.0 * kappa;
}

// Tail of prod_{p > P} (1 + O(C p^{-e})) from the largest scaled deviation over (P/2, P].
double fitted_tail(const std::vector<std::pair<int, double>>& deviations, std::int64_t P, double e) {
  double C = 0.0;
  for (auto [p, d] : deviations)
    if (2 * static_cast<std::int64_t>(p) > P) C = std::max(C, d * std::pow(static_cast<double>(p), e));
  const double lp = std::log(static_cast<double>(P));
  return 1.3 * C * std::pow(static_cast<double>(P), 1.0 - e) / ((e - 1.0) * lp);
}

cplx local_ratio(double p, const ComplexShift& s) {
  // (1 - p^{-1-2g}) / (1 - p^{-1-a-g})
  return (1.0 - ppow(p, 1.0 + 2.0 * s.gamma)) / (1.0 - ppow(p, 1.0 + s.alpha + s.gamma));
}

}  // namespace

void ComplexShift::validate() const {
  if (!(alpha.real() > -0.25) || !(gamma.real() > -0.25))
    throw std::domain_error("ComplexShift: need Re(alpha), Re(gamma) > -1/4");
}

cplx euler_factor_family1(std::int64_t p, const ComplexShift& shift, const TraceTable& traces, int M) {
  shift.validate();
  if (p <= 3) throw std::invalid_argument("euler_factor_family1: need p > 3");
  if (M < 10) throw std::invalid_argument("euler_factor_family1: M must be at least 10");
  const double pd = static_cast<double>(p);
  const cplx a = shift.alpha, g = shift.gamma;
  const double delta = 1.0 / (1.0 - std::pow(pd, -10.0));

  cplx trace_sum = 0.0;
  const cplx step = ppow(pd, 0.5 + a);
  cplx w = std::pow(step, 10);
  for (int m1 = 10; m1 <= M; m1 += 2) {
    trace_sum += traces.normalized(m1 + 2, p) * w;
    w *= step * step;
  }
  const cplx pref = ppow(pd, 0.5 - a + g) - std::pow(pd, -0.5) + ppow(pd, 1.5 + a + g) - ppow(pd, 1.5 + 2.0 * g);
  const cplx inner = ppow(pd, 1.0 + 2.0 * g) - ppow(pd, 1.0 + a + g) +
                     (ppow(pd, 2.0 + a + g) - ppow(pd, 2.0 + 2.0 * g)) / (1.0 / ppow(pd, 2.0 + 2.0 * a) - 1.0) + pref * trace_sum;
  const cplx bracket = 1.0 + (pd - 1.0) / pd * delta * inner;
  return bracket * local_ratio(pd, shift);
}

cplx euler_factor_23(std::int64_t p, const ComplexShift& shift, int r, int t) {
  shift.validate();
  if (p == 2) return local_ratio(2.0, shift);
  if (p != 3) throw std::invalid_argument("euler_factor_23: p must be 2 or 3");
  if (mod(r, 3) == 0 || mod(t, 2) == 0) throw std::invalid_argument("euler_factor_23: need gcd(r,3)=1 and gcd(t,2)=1");
  const double lam = static_cast<double>(point_count_trace(0, r, t, 3)) / std::sqrt(3.0);
  const cplx x = ppow(3.0, 0.5 + shift.alpha), y = ppow(3.0, 0.5 + shift.gamma);
  return (1.0 - lam * y + y * y) / (1.0 - lam * x + x * x) * local_ratio(3.0, shift);
}

const TraceTable& cached_trace_table(int M, std::int64_t P) {
  static std::mutex m;
  static std::map<std::pair<int, std::int64_t>, std::unique_ptr<TraceTable>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(M + 2, P);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<TraceTable>(TraceTable::numeric(M + 2, P))).first;
  return *it->second;
}

EulerProductValue A_family1(const ComplexShift& shift, std::int64_t P, int M, int r, int t) {
  shift.validate();
  if (P < 5) throw std::invalid_argument("A_family1: prime cutoff must be at least 5");
  if (M <= 0) M = kDefaultSeriesOrder;
  const TraceTable& traces = cached_trace_table(M, P);
  cplx value = euler_factor_23(2, shift, r, t) * euler_factor_23(3, shift, r, t);
  std::vector<std::pair<int, double>> dev;
  double series_tail = 0.0;
  const double q_exp = 0.5 + std::min(shift.alpha.real(), 0.0);
  for (int p : traces.primes()) {
    if (p <= 3) continue;
    cplx f = euler_factor_family1(p, shift, traces, M);
    value *= f;
    dev.emplace_back(p, std::abs(f - 1.0));
    const double q = std::pow(static_cast<double>(p), -q_exp);
    series_tail += 3.0 * (M + 4) / 6.0 * std::pow(q, M + 2) / (1.0 - q * q);
  }
  EulerProductValue out;
  out.value = value;
  out.prime_cutoff = P;
  out.series_order = M;
  const double n = static_cast<double>(dev.size());
  out.tail_bound = std::abs(value) * (fitted_tail(dev, P, decay_exponent(shift)) + series_tail + kRoundingPerFactor * n);
  return out;
}

const Family2Data& Family2Data::get(std::int64_t P) {
  static std::mutex m;
  static std::map<std::int64_t, std::unique_ptr<Family2Data>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(P);
  if (it != cache.end()) return *it->second;
  auto d = std::make_unique<Family2Data>();
  d->P_ = P;
  d->primes_ = primes_up_to(static_cast<int>(P));
  d->index_.assign(static_cast<std::size_t>(P + 1), -1);
  for (std::size_t i = 0; i < d->primes_.size(); ++i) {
    const int p = d->primes_[i];
    d->index_[static_cast<std::size_t>(p)] = static_cast<int>(i);
    d->classes_.push_back(p == 2 ? std::vector<TraceClass>{} : family2_trace_classes(p));
  }
  return *cache.emplace(P, std::move(d)).first->second;
}

const std::vector<TraceClass>& Family2Data::classes(std::int64_t p) const {
  if (p < 3 || p > P_ || index_[static_cast<std::size_t>(p)] < 0) throw std::out_of_range("Family2Data: prime not tabulated");
  return classes_[static_cast<std::size_t>(index_[static_cast<std::size_t>(p)])];
}

namespace {

// (1 - p^{-1-2g})(1 - p^{-1-g})(1 - chi p^{-1-g}) / ((1 - p^{-1-a-g})(1 - p^{-1-a})(1 - chi p^{-1-a}))
cplx family2_local_normaliser(double p, int chi, const ComplexShift& s) {
  const cplx xg = ppow(p, 1.0 + s.gamma), xa = ppow(p, 1.0 + s.alpha);
  return (1.0 - ppow(p, 1.0 + 2.0 * s.gamma)) * (1.0 - xg) * (1.0 - double(chi) * xg) /
         ((1.0 - ppow(p, 1.0 + s.alpha + s.gamma)) * (1.0 - xa) * (1.0 - double(chi) * xa));
}

}  // namespace

cplx euler_factor_family2(std::int64_t p, const ComplexShift& shift, const std::vector<TraceClass>& classes) {
  shift.validate();
  const double pd = static_cast<double>(p);
  if (p == 2) return family2_local_normaliser(2.0, 0, shift);
  const cplx x = ppow(pd, 0.5 + shift.alpha), y = ppow(pd, 0.5 + shift.gamma);
  const double sp = std::sqrt(pd);
  cplx raw = 0.0;
  for (const auto& c : classes) {
    const double lam = static_cast<double>(c.a) / sp;
    const double psi = c.bad ? 0.0 : 1.0;
    raw += static_cast<double>(c.count) * (1.0 - lam * y + psi * y * y) / (1.0 - lam * x + psi * x * x);
  }
  raw /= pd;
  return raw * family2_local_normaliser(pd, chi4(p), shift);
}

cplx euler_factor_family2(std::int64_t p, const ComplexShift& shift) {
  if (p == 2) return euler_factor_family2(p, shift, {});
  return euler_factor_family2(p, shift, family2_trace_classes(p));
}

cplx euler_factor_family2_series(std::int64_t p, const ComplexShift& shift, int M, const std::vector<TraceClass>& classes) {
  shift.validate();
  if (M < 1) throw std::invalid_argument("euler_factor_family2_series: M must be positive");
  const double pd = static_cast<double>(p);
  if (p == 2) return family2_local_normaliser(2.0, 0, shift);
  const cplx x = ppow(pd, 0.5 + shift.alpha), y = ppow(pd, 0.5 + shift.gamma);
  const double sp = std::sqrt(pd);
  cplx raw = 0.0;
  for (const auto& c : classes) {
    const double lam = static_cast<double>(c.a) / sp;
    cplx lsum = 0.0, xm = 1.0;
    for (int m = 0; m <= M; ++m) {
      lsum += lambda_prime_power(lam, m, !c.bad) * xm;
      xm *= x;
    }
    const double psi = c.bad ? 0.0 : 1.0;
    raw += static_cast<double>(c.count) * lsum * (1.0 - lam * y + psi * y * y);
  }
  raw /= pd;
  return raw * family2_local_normaliser(pd, chi4(p), shift);
}

cplx euler_factor_family2_series(std::int64_t p, const ComplexShift& shift, int M) {
  if (p == 2) return euler_factor_family2_series(p, shift, M, {});
  return euler_factor_family2_series(p, shift, M, family2_trace_classes(p));
}

EulerProductValue A_family2(const ComplexShift& shift, std::int64_t P, int M) {
  shift.validate();
  if (P < 3) throw std::invalid_argument("A_family2: prime cutoff must be at least 3");
  if (M < 0) throw std::invalid_argument("A_family2: M must be non-negative");
  const Family2Data& data = Family2Data::get(P);
  cplx value = dirichlet_L_chi4(1.0 + shift.gamma).value / dirichlet_L_chi4(1.0 + shift.alpha).value;
  value *= euler_factor_family2(2, shift, {});
  std::vector<std::pair<int, double>> dev;
  double series_tail = 0.0;
  const double q_exp = 0.5 + std::min(shift.alpha.real(), 0.0);
  for (int p : data.primes()) {
    if (p == 2) continue;
    const cplx f = M == 0 ? euler_factor_family2(p, shift, data.classes(p)) : euler_factor_family2_series(p, shift, M, data.classes(p));
    value *= f;
    dev.emplace_back(p, std::abs(f - 1.0));
    if (M > 0) {
      const double q = 2.0 * std::pow(static_cast<double>(p), -q_exp);
      series_tail += 3.0 * (M + 2) * std::pow(q, M + 1) / std::max(1e-3, 1.0 - q);
    }
  }
  EulerProductValue out;
  out.value = value;
  out.prime_cutoff = P;
  out.series_order = M;
  const double n = static_cast<double>(dev.size());
  out.tail_bound = std::abs(value) * (fitted_tail(dev, P, decay_exponent(shift)) + series_tail + kRoundingPerFactor * n);
  return out;
}

EulerProductValue A_value(Family f, const ComplexShift& shift, std::int64_t P, int M) {
  return f == Family::all_curves ? A_family1(shift, P, M) : A_family2(shift, P, M);
}

cplx Y_family1(const ComplexShift& s) {
  return zeta(1.0 + 2.0 * s.gamma).value / zeta(1.0 + s.alpha + s.gamma).value;
}

cplx Y_family2(const ComplexShift& s) {
  return zeta(1.0 + 2.0 * s.gamma).value * zeta(1.0 + s.gamma).value /
         (zeta(1.0 + s.alpha + s.gamma).value * zeta(1.0 + s.alpha).value);
}

DerivativeValue richardson_derivative(const std::function<cplx(cplx)>& f, cplx x0, double h) {
  auto D = [&](double step) { return (f(x0 + step) - f(x0 - step)) / (2.0 * step); };
  const cplx d1 = D(h), d2 = D(h / 2), d3 = D(h / 4);
  const cplx r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d3 - d2) / 3.0;
  const cplx r = (16.0 * r2 - r1) / 15.0;
  DerivativeValue out;
  out.value = r;
  out.err = std::abs(r - r2);
  const double previous = std::abs(r1 - r2);
  out.converged = out.err <= previous || out.err < 1e-9 * (1.0 + std::abs(r));
  return out;
}

DerivativeValue A_alpha_derivative(Family f, cplx r, std::int64_t P, int M) {
  return richardson_derivative([&](cplx a) { return A_value(f, ComplexShift{a, r}, P, M).value; }, r, 1e-3);
}

DerivativeValue A_gamma_derivative(Family f, cplx r, std::int64_t P, int M) {
  return richardson_derivative([&](cplx g) { return A_value(f, ComplexShift{r, g}, P, M).value; }, r, 1e-3);
}

DerivativeValue A_alpha_second(Family f, cplx r, std::int64_t P, int M) {
  double inner_err = 0.0;
  DerivativeValue d = richardson_derivative(
      [&](cplx s) {
        DerivativeValue a = A_alpha_derivative(f, s, P, M);
        inner_err = std::max(inner_err, a.err);
        return a.value;
      },
      r, 2e-2);
  d.err += inner_err / 1e-2;
  return d;
}

}  // namespace eclld
