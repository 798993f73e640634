#include "eclld/arith.hpp"

#include "eclld/primes.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace eclld {

namespace {

void require_odd_prime(std::int64_t p, const char* where) {
  if (p == 2 || p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument(std::string(where) + ": modulus must be an odd prime, got " + std::to_string(p));
}

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

bool CurveAB::nonsingular() const {
  if (std::llabs(a) < (1LL << 40) && std::llabs(b) < (1LL << 60)) {
    __int128 A = a, B = b;
    return 4 * A * A * A + 27 * B * B != 0;
  }
  return discriminant() != 0;
}

BigInt CurveAB::discriminant() const {
  BigInt A = a, B = b;
  return -16 * (4 * A * A * A + 27 * B * B);
}

BigInt WashingtonCurve::quadratic() const {
  BigInt T = t;
  return T * T + 3 * T + 9;
}

BigInt WashingtonCurve::discriminant() const {
  BigInt q = quadratic();
  return 16 * q * q;
}

bool WashingtonCurve::bad_at(std::int64_t p) const {
  if (p == 2) return true;
  return quadratic() % p == 0;
}

double FrobeniusTrace::lambda() const {
  return static_cast<double>(a_p) / std::sqrt(static_cast<double>(p));
}

bool FrobeniusTrace::within_hasse() const {
  return static_cast<double>(a_p * a_p) <= 4.0 * static_cast<double>(p);
}

int legendre_symbol(std::int64_t a, std::int64_t p) {
  require_odd_prime(p, "legendre_symbol");
  std::int64_t n = mod(a, p), m = p;
  int s = 1;
  while (n != 0) {
    while ((n & 1) == 0) {
      n >>= 1;
      std::int64_t r = m & 7;
      if (r == 3 || r == 5) s = -s;
    }
    std::swap(n, m);
    if ((n & 3) == 3 && (m & 3) == 3) s = -s;
    n %= m;
  }
  return m == 1 ? s : 0;
}

int chi4(std::int64_t n) {
  std::int64_t r = mod(n, 4);
  if (r == 1) return 1;
  if (r == 3) return -1;
  return 0;
}

QuadraticCharacter::QuadraticCharacter(std::int64_t p) : p_(p) {
  require_odd_prime(p, "QuadraticCharacter");
  chi_.assign(static_cast<std::size_t>(p), -1);
  chi_[0] = 0;
  for (std::int64_t x = 1; 2 * x < p; ++x) chi_[static_cast<std::size_t>(x * x % p)] = 1;
}

std::int64_t frobenius_trace_ab(std::int64_t a, std::int64_t b, const QuadraticCharacter& chi) {
  const std::int64_t p = chi.prime();
  const std::int64_t ar = chi.reduce(a), br = chi.reduce(b);
  std::int64_t s = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t v = ((x * x % p + ar) % p * x + br) % p;
    s += chi.table()[static_cast<std::size_t>(v)];
  }
  return -s;
}

std::int64_t frobenius_trace_ab(std::int64_t a, std::int64_t b, std::int64_t p) {
  require_odd_prime(p, "frobenius_trace_ab");
  return frobenius_trace_ab(a, b, QuadraticCharacter(p));
}

std::int64_t frobenius_trace_t(std::int64_t t, const QuadraticCharacter& chi) {
  const std::int64_t p = chi.prime();
  const std::int64_t tr = chi.reduce(t);
  const std::int64_t c1 = chi.reduce(-(tr + 3));
  std::int64_t s = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t v = ((x + tr) % p * x % p + c1) % p * x % p + 1;
    if (v == p) v = 0;
    s += chi.table()[static_cast<std::size_t>(v)];
  }
  return -s;
}

std::int64_t frobenius_trace_t(std::int64_t t, std::int64_t p) {
  require_odd_prime(p, "frobenius_trace_t");
  return frobenius_trace_t(t, QuadraticCharacter(p));
}

std::int64_t point_count_trace(std::int64_t a2, std::int64_t a4, std::int64_t a6, std::int64_t p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("point_count_trace: modulus must be prime");
  std::vector<int> roots(static_cast<std::size_t>(p), 0);
  for (std::int64_t y = 0; y < p; ++y) ++roots[static_cast<std::size_t>(y * y % p)];
  const std::int64_t b2 = mod(a2, p), b4 = mod(a4, p), b6 = mod(a6, p);
  std::int64_t n = 1;
  for (std::int64_t x = 0; x < p; ++x) {
    std::int64_t v = (((x + b2) % p * x + b4) % p * x + b6) % p;
    n += roots[static_cast<std::size_t>(v)];
  }
  return p + 1 - n;
}

std::vector<std::int64_t> washington_traces_all_t_direct(std::int64_t p) {
  QuadraticCharacter chi(p);
  std::vector<std::int64_t> out(static_cast<std::size_t>(p));
  for (std::int64_t t = 0; t < p; ++t) out[static_cast<std::size_t>(t)] = frobenius_trace_t(t, chi);
  return out;
}

namespace {

// Cached power-of-two real FFT plans of a given length.
struct FftPlans {
  std::size_t n = 0;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

FftPlans& fft_plans(std::size_t n) {
  static std::map<std::size_t, FftPlans> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  FftPlans f;
  f.n = n;
  f.real = fftw_alloc_real(n);
  f.spec = fftw_alloc_complex(n / 2 + 1);
  f.forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), f.real, f.spec, FFTW_ESTIMATE);
  f.backward = fftw_plan_dft_c2r_1d(static_cast<int>(n), f.spec, f.real, FFTW_ESTIMATE);
  return cache.emplace(n, f).first->second;
}

}  // namespace

std::vector<std::int64_t> washington_traces_all_t(std::int64_t p) {
  if (p < 64) return washington_traces_all_t_direct(p);
  QuadraticCharacter chi(p);
  const std::size_t np = static_cast<std::size_t>(p);

  // f_t(x) = t (x^2 - x) + (x^3 - 3x + 1) = A_x (t + c_x) for x not in {0, 1}, so
  // S(t) = sum_u g[u] chi(t + u) with g[u] = sum of chi(A_x) over c_x = u.
  std::vector<double> g(np, 0.0);
  for (std::int64_t x = 2; x < p; ++x) {
    std::int64_t A = (x * x - x) % p;
    std::int64_t B = mod((x * x % p) * x - 3 * x + 1, p);
    g[static_cast<std::size_t>(B * inv_mod(A, p) % p)] += chi(A);
  }

  // linear convolution of reversed g with chi over [0, 2p-1); S(t) sits at index t + p - 1
  std::size_t n = 1;
  while (n < 3 * np) n <<= 1;
  const std::size_t nc = n / 2 + 1;
  std::vector<double> s(np);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    FftPlans& f = fft_plans(n);
    std::vector<double> gspec_re(nc), gspec_im(nc);
    std::fill(f.real, f.real + n, 0.0);
    for (std::size_t v = 0; v < np; ++v) f.real[v] = g[np - 1 - v];
    fftw_execute(f.forward);
    for (std::size_t k = 0; k < nc; ++k) {
      gspec_re[k] = f.spec[k][0];
      gspec_im[k] = f.spec[k][1];
    }
    std::fill(f.real, f.real + n, 0.0);
    for (std::size_t k = 0; k + 1 < 2 * np; ++k) f.real[k] = chi.table()[k % np];
    fftw_execute(f.forward);
    for (std::size_t k = 0; k < nc; ++k) {
      const double re = gspec_re[k] * f.spec[k][0] - gspec_im[k] * f.spec[k][1];
      const double im = gspec_re[k] * f.spec[k][1] + gspec_im[k] * f.spec[k][0];
      f.spec[k][0] = re;
      f.spec[k][1] = im;
    }
    fftw_execute(f.backward);
    for (std::size_t t = 0; t < np; ++t) s[t] = f.real[t + np - 1] / static_cast<double>(n);
  }

  const std::int64_t constant = 1 + chi(-1);
  std::vector<std::int64_t> out(np);
  for (std::size_t t = 0; t < np; ++t) out[t] = -constant - static_cast<std::int64_t>(std::llround(s[t]));
  return out;
}

bool is_family1_member(std::int64_t a, std::int64_t b, double X, int r, int t) {
  if (mod(r, 3) == 0 || mod(t, 2) == 0) throw std::invalid_argument("is_family1_member: need gcd(r,3)=1 and gcd(t,2)=1");
  if (!CurveAB{a, b}.nonsingular()) return false;
  const long double ax = std::fabs(static_cast<long double>(a));
  const long double bx = std::fabs(static_cast<long double>(b));
  if (ax * ax * ax > X || bx * bx > X) return false;
  if (mod(a - r, 6) != 0 || mod(b - t, 6) != 0) return false;
  for (std::int64_t p = 2; p * p * p * p <= std::llabs(a); ++p) {
    const std::int64_t p4 = p * p * p * p;
    if (a % p4 != 0) continue;
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    if (p4 * p * p <= std::llabs(b) && b % (p4 * p * p) == 0) return false;
  }
  return true;
}

std::uint64_t enumerate_family1(double X, int r, int t, const std::function<void(const CurveAB&)>& sink) {
  if (mod(r, 3) == 0 || mod(t, 2) == 0) throw std::invalid_argument("enumerate_family1: need gcd(r,3)=1 and gcd(t,2)=1");
  if (X < 1) throw std::invalid_argument("enumerate_family1: X must be at least 1");
  std::int64_t amax = static_cast<std::int64_t>(std::cbrt(X)) + 1;
  while (static_cast<long double>(amax) * amax * amax > X) --amax;
  std::int64_t bmax = static_cast<std::int64_t>(std::sqrt(X)) + 1;
  while (static_cast<long double>(bmax) * bmax > X) --bmax;

  std::uint64_t count = 0;
  std::vector<std::int64_t> sixth;
  for (std::int64_t aa = 1; aa <= amax; ++aa) {
    for (std::int64_t a : {aa, -aa}) {
      if (mod(a - r, 6) != 0) continue;
      sixth.clear();
      for (std::int64_t p = 2; p * p * p * p <= aa; ++p)
        if (aa % (p * p * p * p) == 0 && is_prime(static_cast<std::uint64_t>(p))) sixth.push_back(p * p * p * p * p * p);
      for (std::int64_t bb = 1; bb <= bmax; ++bb) {
        for (std::int64_t b : {bb, -bb}) {
          if (mod(b - t, 6) != 0) continue;
          bool excluded = false;
          for (std::int64_t q : sixth)
            if (b % q == 0) excluded = true;
          if (excluded) continue;
          CurveAB e{a, b};
          if (!e.nonsingular()) continue;
          ++count;
          if (sink) sink(e);
        }
      }
    }
  }
  return count;
}

std::uint64_t count_family1(double X, int r, int t) {
  return enumerate_family1(X, r, t, nullptr);
}

Squarefree squarefree_check(const BigInt& n_in) {
  if (n_in <= 0) throw std::invalid_argument("squarefree_check: n must be positive");
  BigInt n = n_in;
  for (std::uint64_t p = 2; p <= 1000000; p += (p == 2 ? 1 : 2)) {
    if (BigInt(p) * p > n) break;
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return Squarefree::no;
  }
  if (n < BigInt(1000000000000ULL)) return Squarefree::yes;
  if (n > BigInt(std::numeric_limits<std::uint64_t>::max())) return Squarefree::inconclusive;
  const auto c = static_cast<std::uint64_t>(n);
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(c)));
  while (static_cast<unsigned __int128>(s) * s > c) --s;
  while (static_cast<unsigned __int128>(s + 1) * (s + 1) <= c) ++s;
  if (static_cast<unsigned __int128>(s) * s == c) return Squarefree::no;
  if (is_prime(c)) return Squarefree::yes;
  // every prime factor exceeds 10^6, so below 10^18 there are exactly two and they differ
  if (c < 1000000000000000000ULL) return Squarefree::yes;
  return Squarefree::inconclusive;
}

Conductor washington_conductor(std::int64_t t) {
  WashingtonCurve e{t};
  BigInt q = e.quadratic();
  Conductor c;
  c.value = 8 * q * q;
  if (mod(t, 12) != 1) {
    c.exact = false;
    c.note = "candidate: t is not 1 mod 12";
    return c;
  }
  switch (squarefree_check(q)) {
    case Squarefree::yes:
      c.exact = true;
      c.note = "guarded";
      break;
    case Squarefree::no:
      c.exact = false;
      c.note = "candidate: t^2+3t+9 has a square factor";
      break;
    case Squarefree::inconclusive:
      c.exact = false;
      c.note = "candidate: squarefree check inconclusive";
      break;
  }
  return c;
}

}  // namespace eclld
