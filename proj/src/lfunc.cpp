#include "eclld/lfunc.hpp"

#include "eclld/hecke.hpp"
#include "eclld/primes.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eclld {

namespace {

constexpr double kPi = std::numbers::pi;

struct AfeParts {
  cplx value;
  cplx upper_half;  // contribution of n > n_max/2
  double end_node = 0.0;
};

AfeParts afe_sum(cplx s, const LSeries& ls, const AfeOptions& opt) {
  const double Q = ls.Q(), logQ = std::log(Q), logY = std::log(opt.Y);
  const double c = opt.contour, h = opt.step, B2 = opt.kernel_scale * opt.kernel_scale;
  const int K = static_cast<int>(std::ceil(2.0 * opt.height / h));
  const double v0 = -0.5 * K * h;
  const double omega = ls.root_number;

  std::vector<cplx> g1(K + 1), g2(K + 1);
  for (int k = 0; k <= K; ++k) {
    const cplx w(c, v0 + k * h);
    const cplx common = w * w / B2 - std::log(w);
    g1[k] = std::exp(log_gamma(s + 0.5 + w).value + (s + w) * logQ + w * logY + common);
    g2[k] = std::exp(log_gamma(1.5 - s + w).value + (1.0 - s + w) * logQ - w * logY + common);
  }

  // D(z + w_k) for z = s and z = 1 - s, split at n_max/2
  std::vector<cplx> d1(K + 1, 0.0), d2(K + 1, 0.0), u1(K + 1, 0.0), u2(K + 1, 0.0);
  const std::int64_t n_max = ls.n_max();
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double l = ls.lambda[static_cast<std::size_t>(n)];
    if (l == 0.0) continue;
    const double logn = std::log(static_cast<double>(n));
    const cplx b1 = l * std::exp(-(s + c) * logn);
    const cplx b2 = l * std::exp(-(1.0 - s + c) * logn);
    cplx r = std::polar(1.0, -v0 * logn);
    const cplx step = std::polar(1.0, -h * logn);
    const bool upper = 2 * n > n_max;
    std::vector<cplx>& a1 = upper ? u1 : d1;
    std::vector<cplx>& a2 = upper ? u2 : d2;
    for (int k = 0; k <= K; ++k) {
      a1[k] += b1 * r;
      a2[k] += b2 * r;
      r *= step;
    }
  }

  AfeParts out;
  cplx total = 0.0, upper = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double wt = (k == 0 || k == K) ? 0.5 : 1.0;
    total += wt * (g1[k] * (d1[k] + u1[k]) + omega * g2[k] * (d2[k] + u2[k]));
    upper += wt * (g1[k] * u1[k] + omega * g2[k] * u2[k]);
  }
  const double scale = h / (2.0 * kPi);
  out.value = total * scale;
  out.upper_half = upper * scale;
  out.end_node = scale * (std::abs(g1[0] * (d1[0] + u1[0])) + std::abs(g2[0] * (d2[0] + u2[0])) +
                          std::abs(g1[K] * (d1[K] + u1[K])) + std::abs(g2[K] * (d2[K] + u2[K])));
  return out;
}

}  // namespace

std::vector<double> coefficients(const WashingtonCurve& curve, std::int64_t n_max) {
  if (n_max < 1 || n_max > 1000000) throw std::invalid_argument("coefficients: need 1 <= n_max <= 1e6");
  const auto traces = washington_traces_up_to(curve.t, n_max);
  const auto spf = smallest_prime_factors(static_cast<int>(n_max));
  std::vector<double> lam(static_cast<std::size_t>(n_max + 1), 0.0);
  std::vector<double> lam_p(static_cast<std::size_t>(n_max + 1), 0.0);
  std::vector<char> bad(static_cast<std::size_t>(n_max + 1), 0);
  for (auto [p, a] : traces) {
    lam_p[static_cast<std::size_t>(p)] = static_cast<double>(a) / std::sqrt(static_cast<double>(p));
    bad[static_cast<std::size_t>(p)] = p == 2 || curve.bad_at(p);
  }
  lam[1] = 1.0;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const std::int64_t p = spf[static_cast<std::size_t>(n)];
    std::int64_t m = n;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    const double lp = lam_p[static_cast<std::size_t>(p)];
    // lambda(p^k) by the Hecke recursion at good p, lambda(p)^k at bad p
    double prev = 1.0, cur = lp;
    if (bad[static_cast<std::size_t>(p)]) {
      cur = std::pow(lp, k);
    } else {
      for (int j = 2; j <= k; ++j) {
        const double next = lp * cur - prev;
        prev = cur;
        cur = next;
      }
    }
    lam[static_cast<std::size_t>(n)] = cur * lam[static_cast<std::size_t>(m)];
  }
  return lam;
}

double LSeries::Q() const { return std::sqrt(conductor.to_double()) / (2.0 * kPi); }

std::int64_t required_terms(double N) { return static_cast<std::int64_t>(std::ceil(10.0 * std::sqrt(N))); }

std::int64_t default_terms(double N) { return static_cast<std::int64_t>(std::ceil(40.0 * std::sqrt(N))) + 100; }

LSeries make_lseries(const WashingtonCurve& curve, std::optional<Conductor> conductor, std::int64_t n_max) {
  LSeries ls;
  ls.curve = curve;
  ls.conductor = conductor ? *conductor : washington_conductor(curve.t);
  const double N = ls.conductor.to_double();
  if (N > 1e9) throw std::invalid_argument("make_lseries: conductor too large");
  if (n_max <= 0) n_max = default_terms(N);
  if (n_max < required_terms(N)) throw std::invalid_argument("make_lseries: n_max below 10 sqrt(N)");
  ls.lambda = coefficients(curve, n_max);
  return ls;
}

ComplexValue completed_L(cplx s, const LSeries& ls, const AfeOptions& opt) {
  if (!(s.real() > -0.5 && s.real() < 1.5)) throw std::domain_error("completed_L: need -1/2 < Re s < 3/2");
  if (ls.n_max() < required_terms(ls.conductor.to_double())) throw std::invalid_argument("completed_L: n_max below 10 sqrt(N)");
  if (!(opt.Y > 0.0)) throw std::invalid_argument("completed_L: Y must be positive");
  const AfeParts a = afe_sum(s, ls, opt);
  ComplexValue out;
  out.value = a.value;
  out.err = a.end_node + 1e-6 * std::abs(a.upper_half);
  return out;
}

double afe_consistency(const LSeries& ls, cplx s, double Y1, double Y2) {
  AfeOptions a, b;
  a.Y = Y1;
  b.Y = Y2;
  const cplx d = completed_L(s, ls, a).value - completed_L(s, ls, b).value;
  const double norm = std::exp(log_gamma(s + 0.5).value.real()) * std::pow(ls.Q(), s.real());
  return std::abs(d) / norm;
}

ComplexValue rotated_Z(const LSeries& ls, double t, const AfeOptions& opt) {
  const ComplexValue v = completed_L(cplx(0.5, t), ls, opt);
  const double norm = std::exp(log_gamma(cplx(1.0, t)).value.real()) * std::sqrt(ls.Q());
  ComplexValue out;
  out.value = v.value / (cplx(0.0, 1.0) * norm);
  out.err = v.err / norm;
  return out;
}

CentralValues central_values(const LSeries& ls) {
  AfeOptions o;
  o.Y = 1.3;
  const double sq = std::sqrt(ls.Q());
  auto L = [&](double x) { return completed_L(cplx(x, 0.0), ls, o).value.real(); };
  CentralValues c;
  c.value = std::abs(L(0.5)) / sq;
  const double h = 1e-3;
  c.first = std::abs((L(0.5 + h) - L(0.5 - h)) / (2 * h)) / sq;
  const double h3 = 0.05;
  c.third = std::abs((L(0.5 + 2 * h3) - 2 * L(0.5 + h3) + 2 * L(0.5 - h3) - L(0.5 - 2 * h3)) / (2 * h3 * h3 * h3)) / sq;
  if (c.value >= 1e-8)
    c.order = 0;
  else if (c.first > 1e-3)
    c.order = 1;
  else if (c.third > 1e-3)
    c.order = 3;
  else
    c.order = 5;
  return c;
}

double zero_count_estimate(const LSeries& ls, double T, int central_order) {
  const double theta = T * std::log(ls.Q()) + log_gamma(cplx(1.0, T)).value.imag();
  return theta / kPi - 0.5 * central_order;
}

ZeroList find_zeros(const LSeries& ls, double T, double L_scale) {
  if (!(T > 0.0) || T > 30.0) throw std::invalid_argument("find_zeros: need 0 < T <= 30");
  if (ls.conductor.to_double() > 1e6) throw std::invalid_argument("find_zeros: conductor above 1e6");
  ZeroList z;
  z.height = T;
  z.L = L_scale > 0.0 ? L_scale : std::log(ls.Q());
  z.central_order = central_values(ls).order;
  z.expected_count = zero_count_estimate(ls, T, z.central_order);

  auto Z = [&](double t) { return rotated_Z(ls, t, {}).value.real(); };
  const double density = (std::log(ls.Q()) + std::log(std::max(T, 2.0))) / kPi;
  double step = 1.0 / (8.0 * density);
  for (int attempt = 0; attempt < 3; ++attempt) {
    z.ordinates.clear();
    z.max_residual = 0.0;
    const int n = static_cast<int>(std::ceil(T / step));
    double t_prev = step / 4.0, z_prev = Z(t_prev);
    for (int j = 1; j <= n; ++j) {
      const double t = std::min(T, j * step);
      const double zt = Z(t);
      if ((z_prev < 0.0) != (zt < 0.0)) {
        std::uintmax_t iters = 60;
        auto tol = [](double a, double b) { return std::abs(b - a) < 1e-10; };
        const auto r = boost::math::tools::toms748_solve(Z, t_prev, t, z_prev, zt, tol, iters);
        const double gamma = 0.5 * (r.first + r.second);
        z.ordinates.push_back(gamma);
        z.max_residual = std::max(z.max_residual, std::abs(Z(gamma)));
      }
      t_prev = t;
      z_prev = zt;
    }
    if (std::abs(static_cast<double>(z.ordinates.size()) - z.expected_count) <= 2.0) break;
    step /= 2.0;
    ++z.grid_refinements;
  }
  z.count_warning = std::abs(static_cast<double>(z.ordinates.size()) - z.expected_count) > 2.0;
  for (double g : z.ordinates) z.scaled.push_back(g * z.L / kPi);
  return z;
}

EmpiricalResult empirical_one_level(const std::vector<LSeries>& curves, const TestFunction& tf, double X, double max_height) {
  if (curves.empty()) throw std::invalid_argument("empirical_one_level: no curves");
  EmpiricalResult out;
  out.L = std::log(std::sqrt(X) / (2.0 * kPi));
  if (!(out.L > 0.0)) throw std::invalid_argument("empirical_one_level: X too small");
  for (const LSeries& ls : curves) {
    EmpiricalRow row;
    row.t = ls.curve.t;
    row.conductor = ls.conductor.value;
    const double tau_max = std::isfinite(tf.tail_height) ? tf.tail_height : std::numeric_limits<double>::infinity();
    row.height = std::min(max_height, tau_max * kPi / out.L);
    row.truncated = tau_max * kPi / out.L > max_height;
    const ZeroList z = find_zeros(ls, row.height, out.L);
    row.central_contribution = z.central_order * tf.psi(0.0);
    row.contribution = row.central_contribution;
    for (double tau : z.scaled) row.contribution += 2.0 * tf.psi(tau);
    out.average += row.contribution;
    out.central_average += row.central_contribution;
    out.rows.push_back(row);
  }
  out.average /= static_cast<double>(curves.size());
  out.central_average /= static_cast<double>(curves.size());
  return out;
}

Conductor verified_conductor(const WashingtonCurve& curve) {
  Conductor guarded = washington_conductor(curve.t);
  if (guarded.exact) return guarded;
  const BigInt q = curve.quadratic();
  if (q > BigInt(1000000)) {
    guarded.note += "; too large for functional-equation verification";
    return guarded;
  }
  // odd part: p^2 at p >= 5, 3^f with f in 2..5 at p = 3
  std::vector<double> odd{1.0};
  for (auto [p, k] : factorize(static_cast<std::uint64_t>(q))) {
    std::vector<double> next;
    if (p == 3) {
      for (double o : odd)
        for (int f = 2; f <= 5; ++f) next.push_back(o * std::pow(3.0, f));
    } else {
      for (double o : odd) next.push_back(o * static_cast<double>(p) * static_cast<double>(p));
    }
    odd = next;
  }
  std::vector<double> candidates;
  for (double o : odd)
    for (int e : {3, 2, 4, 5, 6, 7, 8}) {
      const double N = std::ldexp(o, e);
      if (N <= 1e8) candidates.push_back(N);
    }
  if (candidates.empty()) {
    guarded.note += "; too large for functional-equation verification";
    return guarded;
  }
  const double max_N = *std::max_element(candidates.begin(), candidates.end());
  const auto lambda = coefficients(curve, std::min<std::int64_t>(1000000, default_terms(max_N)));
  for (double N : candidates) {
    LSeries ls;
    ls.curve = curve;
    ls.conductor.value = BigInt(static_cast<std::int64_t>(N));
    const std::int64_t n = std::min<std::int64_t>(static_cast<std::int64_t>(lambda.size()) - 1, default_terms(N));
    ls.lambda.assign(lambda.begin(), lambda.begin() + n + 1);
    if (afe_consistency(ls, cplx(0.6, 0.3)) < 1e-8 && afe_consistency(ls, cplx(0.5, 2.0)) < 1e-8) {
      ls.conductor.exact = true;
      ls.conductor.note = "verified by functional-equation consistency";
      return ls.conductor;
    }
  }
  guarded.note += "; no candidate passed the functional-equation check";
  return guarded;
}

}  // namespace eclld
