#include "eclld/arith.hpp"
#include "eclld/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace eclld {

namespace {

struct Pt {
  std::int64_t x = 0, y = 0;
  bool inf = true;
};

class ShortCurve {
 public:
  ShortCurve(std::int64_t A, std::int64_t B, std::int64_t p) : A_(A), B_(B), p_(p) {}

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    std::int64_t lam;
    if (P.x == Q.x) {
      if ((P.y + Q.y) % p_ == 0) return Pt{};
      lam = (3 * (P.x * P.x % p_) + A_) % p_ * inv_mod(2 * P.y, p_) % p_;
    } else {
      lam = mod(Q.y - P.y, p_) * inv_mod(mod(Q.x - P.x, p_), p_) % p_;
    }
    std::int64_t x = mod(lam * lam - P.x - Q.x, p_);
    std::int64_t y = mod(lam * (P.x - x) - P.y, p_);
    return Pt{x, y, false};
  }

  Pt neg(const Pt& P) const { return P.inf ? P : Pt{P.x, mod(-P.y, p_), false}; }

  Pt mul(std::int64_t k, Pt P) const {
    if (k < 0) {
      k = -k;
      P = neg(P);
    }
    Pt R;
    while (k) {
      if (k & 1) R = add(R, P);
      P = add(P, P);
      k >>= 1;
    }
    return R;
  }

  std::int64_t rhs(std::int64_t x) const { return ((x * x % p_ + A_) % p_ * x + B_) % p_; }

 private:
  std::int64_t A_, B_, p_;
};

std::int64_t sqrt_mod(std::int64_t a, std::int64_t p) {
  if (a == 0) return 0;
  auto up = static_cast<std::uint64_t>(p);
  if (p % 4 == 3) return static_cast<std::int64_t>(powmod(static_cast<std::uint64_t>(a), (up + 1) / 4, up));
  std::uint64_t q = up - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (up - 1) / 2, up) != up - 1) ++z;
  std::uint64_t c = powmod(z, q, up), r = powmod(static_cast<std::uint64_t>(a), (q + 1) / 2, up);
  std::uint64_t t = powmod(static_cast<std::uint64_t>(a), q, up);
  int m = s;
  while (t != 1) {
    int i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, up);
      ++i;
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, up);
    r = mulmod(r, b, up);
    c = mulmod(b, b, up);
    t = mulmod(t, c, up);
    m = i;
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t order_from_multiple(const ShortCurve& E, const Pt& P, std::int64_t m) {
  std::int64_t ord = m;
  for (auto [q, e] : factorize(static_cast<std::uint64_t>(m))) {
    (void)e;
    auto qq = static_cast<std::int64_t>(q);
    while (ord % qq == 0 && E.mul(ord / qq, P).inf) ord /= qq;
  }
  return ord;
}

// Some m in [lo, hi] with m P = O, or 0.
std::int64_t bsgs_multiple(const ShortCurve& E, const Pt& P, std::int64_t lo, std::int64_t hi) {
  const std::int64_t width = hi - lo + 1;
  const auto g = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(width))));
  std::vector<std::pair<std::int64_t, std::int64_t>> baby;  // (x, j)
  baby.reserve(static_cast<std::size_t>(g));
  Pt J = P;
  for (std::int64_t j = 1; j <= g; ++j) {
    if (J.inf) {
      // order j divides every multiple of j
      std::int64_t m = (lo + j - 1) / j * j;
      return m <= hi ? m : 0;
    }
    baby.emplace_back(J.x, j);
    J = E.add(J, P);
  }
  std::sort(baby.begin(), baby.end());
  const Pt step = E.mul(2 * g + 1, P);
  Pt G = E.mul(lo + g, P);
  for (std::int64_t c = lo + g; c - g <= hi; c += 2 * g + 1) {
    if (G.inf) {
      if (c >= lo && c <= hi) return c;
    } else {
      auto it = std::lower_bound(baby.begin(), baby.end(), std::make_pair(G.x, std::int64_t{0}));
      for (; it != baby.end() && it->first == G.x; ++it) {
        for (std::int64_t m : {c - it->second, c + it->second}) {
          if (m >= lo && m <= hi && E.mul(m, P).inf) return m;
        }
      }
    }
    G = E.add(G, step);
  }
  return 0;
}

}  // namespace

std::int64_t frobenius_trace_bsgs(std::int64_t a2, std::int64_t a4, std::int64_t a6, std::int64_t p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("frobenius_trace_bsgs: modulus must be prime");
  if (p < 1000) return point_count_trace(a2, a4, a6, p);
  const std::int64_t i3 = inv_mod(3, p), i27 = inv_mod(27, p);
  const std::int64_t b2 = mod(a2, p), b4 = mod(a4, p), b6 = mod(a6, p);
  const std::int64_t A = mod(b4 - b2 * b2 % p * i3, p);
  const std::int64_t B = mod(2 * (b2 * b2 % p * b2 % p) % p * i27 - b2 * b4 % p * i3 + b6, p);
  if (mod(4 * (A * A % p * A % p) + 27 * (B * B % p), p) == 0) return point_count_trace(a2, a4, a6, p);

  ShortCurve E(A, B, p);
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(4 * p)));
  while (s * s > 4 * p) --s;
  while ((s + 1) * (s + 1) <= 4 * p) ++s;
  const std::int64_t lo = p + 1 - s, hi = p + 1 + s;

  std::mt19937_64 rng(static_cast<std::uint64_t>(p) * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(A * 131 + B));
  std::int64_t L = 1;
  for (int attempt = 0; attempt < 40; ++attempt) {
    Pt P;
    while (P.inf) {
      std::int64_t x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
      std::int64_t v = E.rhs(x);
      if (v != 0 && powmod(static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(p - 1) / 2, static_cast<std::uint64_t>(p)) != 1) continue;
      P = Pt{x, sqrt_mod(v, p), false};
    }
    std::int64_t m = bsgs_multiple(E, P, lo, hi);
    if (m == 0) break;
    std::int64_t ord = order_from_multiple(E, P, m);
    L = std::lcm(L, ord);
    std::int64_t first = (lo + L - 1) / L * L;
    if (first <= hi && first + L > hi) return p + 1 - first;
  }
  return point_count_trace(a2, a4, a6, p);
}

}  // namespace eclld
