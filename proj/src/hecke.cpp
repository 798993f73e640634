#include "eclld/hecke.hpp"

#include "eclld/primes.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <stdexcept>
#include <string>

namespace eclld {

double chebyshev_U(int n, double x) {
  if (n < 0) throw std::invalid_argument("chebyshev_U: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<BigInt> chebyshev_U_poly(int n) {
  if (n < 0) throw std::invalid_argument("chebyshev_U_poly: negative degree");
  std::vector<BigInt> prev{1};
  if (n == 0) return prev;
  std::vector<BigInt> cur{0, 2};
  for (int k = 1; k < n; ++k) {
    std::vector<BigInt> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

ChebCoeffs linearization_coeffs(int m1, int m2) {
  if (m1 < 0 || m2 < 0) throw std::invalid_argument("linearization_coeffs: negative index");
  auto u1 = chebyshev_U_poly(m1), u2 = chebyshev_U_poly(m2);
  std::vector<BigInt> prod(u1.size() + u2.size() - 1, 0);
  for (std::size_t i = 0; i < u1.size(); ++i)
    for (std::size_t j = 0; j < u2.size(); ++j) prod[i + j] += u1[i] * u2[j];

  ChebCoeffs out{m1, m2, {}};
  for (int d = m1 + m2; d >= 0; --d) {
    if (prod[static_cast<std::size_t>(d)] == 0) continue;
    BigInt lead = BigInt(1) << d;
    if (prod[static_cast<std::size_t>(d)] % lead != 0) throw std::logic_error("linearization_coeffs: non-integral coefficient");
    BigInt c = prod[static_cast<std::size_t>(d)] / lead;
    auto ud = chebyshev_U_poly(d);
    for (std::size_t i = 0; i < ud.size(); ++i) prod[i] -= c * ud[i];
    out.coeffs[d] = c;
  }
  return out;
}

double lambda_prime_power(double lambda_p, int j, bool good) {
  if (j < 0) throw std::invalid_argument("lambda_prime_power: negative exponent");
  if (!good) return std::pow(lambda_p, j);
  if (std::fabs(lambda_p) > 2.0 + 1e-12) throw std::invalid_argument("lambda_prime_power: |lambda| exceeds 2 at a good prime");
  return chebyshev_U(j, lambda_p / 2.0);
}

Surd lambda_prime_power(const Surd& lambda_p, int j, bool good) {
  if (j < 0) throw std::invalid_argument("lambda_prime_power: negative exponent");
  Surd one(lambda_p.prime(), 1, 0);
  if (j == 0) return one;
  if (!good) {
    Surd r = one;
    for (int k = 0; k < j; ++k) r *= lambda_p;
    return r;
  }
  Surd prev = one, cur = lambda_p;
  for (int k = 1; k < j; ++k) {
    Surd next = lambda_p * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

// 12 times the weight of the reduced form (a, b, c)
std::int64_t form_weight12(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (a == b && b == c) return 4;
  if (b == 0 && a == c) return 6;
  return 12;
}

bool is_reduced(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (std::llabs(b) > a || a > c) return false;
  if ((std::llabs(b) == a || a == c) && b < 0) return false;
  return true;
}

}  // namespace

Rational hurwitz_class_number(std::int64_t N) {
  if (N < 0) throw std::domain_error("hurwitz_class_number: negative argument");
  if (N == 0) return Rational(-1, 12);
  if (N % 4 == 1 || N % 4 == 2) throw std::domain_error("hurwitz_class_number: N must be 0 or 3 mod 4");
  std::int64_t w = 0;
  for (std::int64_t a = 1; 3 * a * a <= N; ++a) {
    for (std::int64_t b = -a; b <= a; ++b) {
      std::int64_t num = b * b + N;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (is_reduced(a, b, c)) w += form_weight12(a, b, c);
    }
  }
  return Rational(w, 12);
}

std::vector<std::int64_t> hurwitz_table_times12(std::int64_t n_max) {
  std::vector<std::int64_t> h(static_cast<std::size_t>(n_max + 1), 0);
  h[0] = -1;
  for (std::int64_t a = 1; 3 * a * a <= n_max; ++a) {
    for (std::int64_t b = -a; b <= a; ++b) {
      std::int64_t c0 = a;
      if (b < 0 && -b == a) continue;
      for (std::int64_t c = c0;; ++c) {
        std::int64_t N = 4 * a * c - b * b;
        if (N > n_max) break;
        if (!is_reduced(a, b, c)) continue;
        h[static_cast<std::size_t>(N)] += form_weight12(a, b, c);
      }
    }
  }
  return h;
}

int cusp_form_dimension(int k) {
  if (k < 0 || k % 2 != 0) return 0;
  if (k == 2) return 0;
  if (k % 12 == 2) return k / 12 - 1;
  return k / 12;
}

namespace {

Rational trace_with_table(int j, std::int64_t n, const std::vector<std::int64_t>& h12) {
  BigInt elliptic = 0;
  for (std::int64_t t = 0; t * t <= 4 * n; ++t) {
    BigInt prev = 1, cur = t;
    BigInt pk = 1;
    if (j == 2) {
      pk = 1;
    } else {
      for (int k = 3; k < j; ++k) {
        BigInt next = cur * t - prev * n;
        prev = std::move(cur);
        cur = std::move(next);
      }
      pk = cur;
    }
    BigInt term = pk * h12[static_cast<std::size_t>(4 * n - t * t)];
    // P_j(-t, n) = (-1)^j P_j(t, n) and j is even
    elliptic += t == 0 ? term : 2 * term;
  }
  BigInt hyperbolic = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    std::int64_t m = std::min(d, n / d);
    hyperbolic += boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(j - 1));
  }
  Rational tr = Rational(-elliptic, 24) - Rational(hyperbolic, 2);
  if (j == 2) {
    std::int64_t sigma = 0;
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) sigma += d;
    tr += sigma;
  }
  return tr;
}

}  // namespace

Rational trace_hecke_selberg(int j, std::int64_t n) {
  if (j < 2 || j % 2 != 0) throw std::invalid_argument("trace_hecke_selberg: weight must be even and at least 2");
  if (n < 1) throw std::invalid_argument("trace_hecke_selberg: n must be positive");
  return trace_with_table(j, n, hurwitz_table_times12(4 * n));
}

std::vector<BigInt> tau_oracle(int n_max) {
  if (n_max < 1 || n_max > 10000) throw std::invalid_argument("tau_oracle: n_max must lie in [1, 10000]");
  using I = __int128;
  const std::size_t len = static_cast<std::size_t>(n_max);  // coefficients q^0..q^{n_max-1}
  std::vector<I> e(len, 0);
  for (long m = 0;; ++m) {
    bool any = false;
    for (long s : {m, -m}) {
      long k = s * (3 * s - 1) / 2;
      if (k >= 0 && static_cast<std::size_t>(k) < len) {
        e[static_cast<std::size_t>(k)] += (m % 2 == 0) ? 1 : -1;
        any = true;
      }
      if (m == 0) break;
    }
    if (!any && m > 0) break;
  }
  auto mul = [len](const std::vector<I>& a, const std::vector<I>& b) {
    std::vector<I> c(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; i + j < len; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  };
  auto e2 = mul(e, e);
  auto e4 = mul(e2, e2);
  auto e8 = mul(e4, e4);
  auto e16 = mul(e8, e8);
  auto e24 = mul(e16, e8);

  std::vector<BigInt> tau(static_cast<std::size_t>(n_max + 1), 0);
  for (int n = 1; n <= n_max; ++n) {
    I v = e24[static_cast<std::size_t>(n - 1)];
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    BigInt b = static_cast<std::uint64_t>(u >> 64);
    b <<= 64;
    b += static_cast<std::uint64_t>(u);
    tau[static_cast<std::size_t>(n)] = neg ? BigInt(-b) : b;
  }
  return tau;
}

TraceTable TraceTable::exact(int max_weight, std::int64_t max_prime) {
  if (max_weight < 2 || max_prime < 2) throw std::invalid_argument("TraceTable::exact: empty range");
  TraceTable tt;
  tt.max_weight_ = max_weight - max_weight % 2;
  tt.max_prime_ = max_prime;
  tt.primes_ = primes_up_to(static_cast<int>(max_prime));
  tt.prime_index_.assign(static_cast<std::size_t>(max_prime + 1), -1);
  for (std::size_t i = 0; i < tt.primes_.size(); ++i) tt.prime_index_[static_cast<std::size_t>(tt.primes_[i])] = static_cast<int>(i);
  const std::size_t nw = static_cast<std::size_t>(tt.max_weight_ / 2);
  tt.normalized_.assign(tt.primes_.size() * nw, 0.0);
  tt.exact_.assign(tt.primes_.size() * nw, Rational(0));
  auto h12 = hurwitz_table_times12(4 * max_prime);
  for (int p : tt.primes_) {
    for (int j = 2; j <= tt.max_weight_; j += 2) {
      std::size_t s = tt.slot(j, p);
      if (cusp_form_dimension(j) == 0) continue;
      tt.exact_[s] = trace_with_table(j, p, h12);
      tt.normalized_[s] = static_cast<double>(tt.exact_[s]) * std::pow(static_cast<double>(p), 0.5 * (1 - j));
    }
  }
  return tt;
}

TraceTable TraceTable::numeric(int max_weight, std::int64_t max_prime) {
  if (max_weight < 2 || max_prime < 2) throw std::invalid_argument("TraceTable::numeric: empty range");
  TraceTable tt;
  tt.max_weight_ = max_weight - max_weight % 2;
  tt.max_prime_ = max_prime;
  tt.primes_ = primes_up_to(static_cast<int>(max_prime));
  tt.prime_index_.assign(static_cast<std::size_t>(max_prime + 1), -1);
  for (std::size_t i = 0; i < tt.primes_.size(); ++i) tt.prime_index_[static_cast<std::size_t>(tt.primes_[i])] = static_cast<int>(i);
  const std::size_t nw = static_cast<std::size_t>(tt.max_weight_ / 2);
  tt.normalized_.assign(tt.primes_.size() * nw, 0.0);
  auto h12 = hurwitz_table_times12(4 * max_prime);
  std::vector<double> acc(static_cast<std::size_t>(tt.max_weight_ + 1));
  for (int p : tt.primes_) {
    const double sp = std::sqrt(static_cast<double>(p));
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::int64_t t = 0; t * t <= 4LL * p; ++t) {
      const double h = static_cast<double>(h12[static_cast<std::size_t>(4LL * p - t * t)]) / 12.0;
      const double w = (t == 0 ? 1.0 : 2.0) * h;
      const double x = static_cast<double>(t) / (2.0 * sp);
      double prev = 1.0, cur = 2.0 * x;
      acc[0] += w;
      for (int n = 1; n <= tt.max_weight_ - 2; ++n) {
        if (n % 2 == 0) acc[static_cast<std::size_t>(n)] += w * cur;
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
      }
    }
    for (int j = 2; j <= tt.max_weight_; j += 2) {
      if (cusp_form_dimension(j) == 0) continue;
      tt.normalized_[tt.slot(j, p)] = -acc[static_cast<std::size_t>(j - 2)] / (2.0 * sp) - std::pow(static_cast<double>(p), 0.5 * (1 - j));
    }
  }
  return tt;
}

std::size_t TraceTable::slot(int j, std::int64_t p) const {
  if (j < 2 || j % 2 != 0 || j > max_weight_) throw std::out_of_range("TraceTable: weight " + std::to_string(j) + " not tabulated");
  if (p < 2 || p > max_prime_ || prime_index_[static_cast<std::size_t>(p)] < 0)
    throw std::out_of_range("TraceTable: prime " + std::to_string(p) + " not tabulated");
  return static_cast<std::size_t>(prime_index_[static_cast<std::size_t>(p)]) * static_cast<std::size_t>(max_weight_ / 2) +
         static_cast<std::size_t>(j / 2 - 1);
}

double TraceTable::normalized(int j, std::int64_t p) const {
  return normalized_[slot(j, p)];
}

const Rational& TraceTable::trace(int j, std::int64_t p) const {
  if (!has_exact()) throw std::logic_error("TraceTable: exact traces not available in a numeric table");
  return exact_[slot(j, p)];
}

void TraceTable::write_csv(std::ostream& os) const {
  os << "j,p,numerator,denominator,normalized\n";
  os << std::setprecision(17);
  for (int p : primes_) {
    for (int j = 2; j <= max_weight_; j += 2) {
      os << j << ',' << p << ',';
      if (has_exact()) {
        const Rational& q = trace(j, p);
        os << numerator(q) << ',' << denominator(q);
      } else {
        os << ',';
      }
      os << ',' << normalized(j, p) << '\n';
    }
  }
}

}  // namespace eclld
