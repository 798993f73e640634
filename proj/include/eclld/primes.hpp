#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace eclld {

std::vector<int> primes_up_to(int n);

// Smallest prime factor for 0..n (spf[0] = spf[1] = 0).
std::vector<int> smallest_prime_factors(int n);

bool is_prime(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t inv_mod(std::int64_t a, std::int64_t m);

// Trial-division factorization; suitable for n < 2^40.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

}  // namespace eclld
