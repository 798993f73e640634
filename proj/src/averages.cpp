#include "eclld/averages.hpp"

#include "eclld/arith.hpp"
#include "eclld/primes.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace eclld {

namespace {

constexpr int kMaxBruteExponent = 24;
constexpr std::int64_t kMaxFamily1Prime = 199;
constexpr std::int64_t kMaxFamily2Prime = 199;

Surd lambda_surd(std::int64_t a, std::int64_t p) {
  return Surd(p, 0, Rational(a, p));
}

Surd mu_surd(const Surd& lambda, int m2, bool bad) {
  switch (m2) {
    case 0: return Surd(lambda.prime(), 1, 0);
    case 1: return -lambda;
    case 2: return Surd(lambda.prime(), bad ? 0 : 1, 0);
    default: return Surd(lambda.prime());
  }
}

Surd class_average(const std::vector<TraceClass>& classes, int m1, int m2, std::int64_t p, const BigInt& total) {
  Surd sum(p);
  for (const auto& c : classes) {
    Surd lam = lambda_surd(c.a, p);
    Surd term = lambda_prime_power(lam, m1, !c.bad) * mu_surd(lam, m2, c.bad);
    sum += term * Rational(c.count);
  }
  return sum * Rational(BigInt(1), total);
}

std::vector<TraceClass> to_classes(const std::map<std::pair<std::int64_t, bool>, std::int64_t>& h) {
  std::vector<TraceClass> out;
  out.reserve(h.size());
  for (const auto& [k, n] : h) out.push_back(TraceClass{k.first, k.second, n});
  return out;
}

void check_exponents(int m1, int m2, const char* where) {
  if (m1 < 0 || m1 > kMaxBruteExponent) throw std::invalid_argument(std::string(where) + ": m1 out of range");
  if (m2 < 0 || m2 > 2) throw std::invalid_argument(std::string(where) + ": m2 must be 0, 1 or 2");
}

}  // namespace

const std::vector<TraceClass>& family1_trace_classes(std::int64_t p) {
  static std::mutex m;
  static std::map<std::int64_t, std::vector<TraceClass>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  QuadraticCharacter chi(p);
  std::map<std::pair<std::int64_t, bool>, std::int64_t> h;
  for (std::int64_t a = 0; a < p; ++a) {
    for (std::int64_t b = 0; b < p; ++b) {
      bool bad = mod(4 * (a * a % p) * a + 27 * (b * b % p), p) == 0;
      ++h[{frobenius_trace_ab(a, b, chi), bad}];
    }
  }
  return cache.emplace(p, to_classes(h)).first->second;
}

std::vector<TraceClass> family2_trace_classes(std::int64_t p) {
  auto traces = washington_traces_all_t(p);
  std::map<std::pair<std::int64_t, bool>, std::int64_t> h;
  for (std::int64_t t = 0; t < p; ++t) {
    bool bad = mod(t * t + 3 * t + 9, p) == 0;
    ++h[{traces[static_cast<std::size_t>(t)], bad}];
  }
  return to_classes(h);
}

AverageValue q_star_bruteforce(int m1, int m2, std::int64_t p) {
  check_exponents(m1, m2, "q_star_bruteforce");
  if (p <= 3 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("q_star_bruteforce: need a prime p > 3");
  if (p > kMaxFamily1Prime) throw std::invalid_argument("q_star_bruteforce: p too large for the O(p^3) sweep");
  const auto& classes = family1_trace_classes(p);
  return AverageValue{m1, m2, p, class_average(classes, m1, m2, p, BigInt(p) * p)};
}

AverageValue q_star_closed(int m1, int m2, std::int64_t p, const TraceTable& traces) {
  check_exponents(m1, m2, "q_star_closed");
  if (p <= 3 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("q_star_closed: need a prime p > 3");
  const Rational pr(p);
  // (p-1)/p^{3/2} Tr*_j(p) with Tr*_j = Tr_j p^{-j/2} sqrt p is rational
  auto weighted = [&](int j) { return (pr - 1) * traces.trace(j, p) / rational_pow(pr, 1 + j / 2); };
  Surd v(p);
  if ((m1 + m2) % 2 == 1) return AverageValue{m1, m2, p, v};
  switch (m2) {
    case 0:
      v = Surd(p, m1 == 0 ? Rational(1) : -weighted(m1 + 2), 0);
      break;
    case 1:
      if (m1 == 1) {
        v = Surd(p, (1 - pr) / pr, 0);
      } else {
        // p^{-(m1-1)/2} with m1 odd is rational
        Rational first = (pr - 1) / (pr * pr) / rational_pow(pr, (m1 - 1) / 2);
        v = Surd(p, first + weighted(m1 + 1) + weighted(m1 + 3), 0);
      }
      break;
    case 2:
      if (m1 == 0) {
        v = Surd(p, (pr - 1) / pr, 0);
      } else {
        Rational last = (pr - 1) / (pr * pr) / rational_pow(pr, m1 / 2);
        v = Surd(p, -weighted(m1 + 2) - last, 0);
      }
      break;
  }
  return AverageValue{m1, m2, p, v};
}

bool CompositeAverage::is_zero() const {
  for (const auto& f : factors)
    if (f.value.is_zero()) return true;
  return false;
}

double CompositeAverage::to_double() const {
  double v = static_cast<double>(correction);
  for (const auto& f : factors) v *= f.to_double();
  return v;
}

CompositeAverage q_rt(std::int64_t m1, std::int64_t m2, int r, int t) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("q_rt: m1 and m2 must be positive");
  if (mod(r, 3) == 0 || mod(t, 2) == 0) throw std::invalid_argument("q_rt: need gcd(r,3)=1 and gcd(t,2)=1");
  auto valuation = [](std::int64_t& n, std::int64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    return e;
  };
  std::int64_t n1 = m1, n2 = m2;
  const int e21 = valuation(n1, 2), e22 = valuation(n2, 2);
  const int e31 = valuation(n1, 3), e32 = valuation(n2, 3);

  CompositeAverage out;
  // cusp at 2: lambda(2^k) = mu(2^k) = 0 for k >= 1
  out.factors.push_back(AverageValue{e21, e22, 2, Surd(2, (e21 == 0 && e22 == 0) ? 1 : 0, 0)});

  const std::int64_t a3 = point_count_trace(0, r, t, 3);
  const Surd lam3 = lambda_surd(a3, 3);
  Surd v3 = lambda_prime_power(lam3, e31, true);
  v3 *= e32 <= 2 ? mu_surd(lam3, e32, false) : Surd(3);
  out.factors.push_back(AverageValue{e31, e32, 3, v3});

  std::map<std::int64_t, std::pair<int, int>> local;
  for (auto [p, e] : factorize(static_cast<std::uint64_t>(n1))) local[static_cast<std::int64_t>(p)].first = e;
  for (auto [p, e] : factorize(static_cast<std::uint64_t>(n2))) local[static_cast<std::int64_t>(p)].second = e;
  for (const auto& [p, ex] : local) {
    out.correction /= 1 - Rational(1) / rational_pow(Rational(p), 10);
    if (ex.second > 2) {
      out.factors.push_back(AverageValue{ex.first, ex.second, p, Surd(p)});
      continue;
    }
    out.factors.push_back(q_star_bruteforce(ex.first, ex.second, p));
  }
  return out;
}

AverageValue q_t_bruteforce(int m1, int m2, std::int64_t p) {
  check_exponents(m1, m2, "q_t_bruteforce");
  if (p == 2) return AverageValue{m1, m2, 2, Surd(2, (m1 == 0 && m2 == 0) ? 1 : 0, 0)};
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("q_t_bruteforce: need a prime");
  if (p > kMaxFamily2Prime) throw std::invalid_argument("q_t_bruteforce: p above the exact-verification range");
  auto classes = family2_trace_classes(p);
  return AverageValue{m1, m2, p, class_average(classes, m1, m2, p, BigInt(p))};
}

int washington_root_count(std::int64_t p) {
  int n = 0;
  for (std::int64_t t = 0; t < p; ++t)
    if (mod(t * t + 3 * t + 9, p) == 0) ++n;
  return n;
}

IdentityReport q_t_identity_check(std::int64_t p, IdentityKind kind, double c_diag) {
  if (p < 3 || p % 2 == 0 || !is_prime(static_cast<std::uint64_t>(p)) || p > kMaxFamily2Prime)
    throw std::invalid_argument("q_t_identity_check: need an odd prime p <= 199");
  IdentityReport rep;
  rep.kind = kind;
  rep.p = p;
  std::ostringstream os;
  switch (kind) {
    case IdentityKind::first: {
      AverageValue q = q_t_bruteforce(1, 0, p);
      // -(1 + chi4(p))/sqrt p = -(1 + chi4(p))/p * sqrt p
      Surd expected(p, 0, Rational(-(1 + chi4(p)), p));
      rep.pass = q.value == expected && q_t_bruteforce(0, 1, p).value == -expected;
      rep.residual = std::fabs(q.to_double() - expected.to_double());
      os << "Q(p,1) = " << q.value << ", expected " << expected;
      break;
    }
    case IdentityKind::diagonal: {
      AverageValue q = q_t_bruteforce(1, 1, p);
      rep.residual = std::fabs(static_cast<double>(p) * (q.to_double() + 1.0));
      rep.pass = q.value.is_rational() && rep.residual <= c_diag;
      os << "p (Q(p,p) + 1) = " << (q.value + Surd(p, 1, 0)) * Rational(p);
      break;
    }
    case IdentityKind::secondmoment: {
      AverageValue q = q_t_bruteforce(0, 2, p);
      int rho = washington_root_count(p);
      int rho_from_residue = p == 3 ? 1 : 1 + legendre_symbol(-3, p);
      Surd expected(p, 1 - Rational(rho, p), 0);
      rep.pass = q.value == expected && rho == rho_from_residue;
      rep.residual = std::fabs(q.to_double() - expected.to_double());
      os << "Q(1,p^2) = " << q.value << ", rho = " << rho;
      break;
    }
  }
  rep.detail = os.str();
  return rep;
}

}  // namespace eclld
