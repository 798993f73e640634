#include "eclld/averages.hpp"
#include "eclld/hecke.hpp"

#include <cmath>
#include <stdexcept>

namespace eclld {

Rational trace_from_moments_exact(int j, std::int64_t p) {
  if (j < 4 || j % 2 != 0) throw std::invalid_argument("trace_from_moments: weight must be even and at least 4");
  if (j - 2 > 24) throw std::invalid_argument("trace_from_moments: weight too large for the brute-force sweep");
  if (p <= 3) throw std::invalid_argument("trace_from_moments: need p > 3");
  if (p > 97) throw std::invalid_argument("trace_from_moments: need p <= 97");
  AverageValue q = q_star_bruteforce(j - 2, 0, p);
  if (!q.value.is_rational()) throw std::logic_error("trace_from_moments: average is not rational");
  // Q~*(p^{j-2}, 1) = -(p-1) Tr_j(p) / p^{1 + j/2}
  const Rational pr(p);
  return -q.value.rational_part() * rational_pow(pr, 1 + j / 2) / (pr - 1);
}

double trace_from_moments(int j, std::int64_t p) {
  return static_cast<double>(trace_from_moments_exact(j, p)) * std::pow(static_cast<double>(p), 0.5 * (1 - j));
}

}  // namespace eclld
