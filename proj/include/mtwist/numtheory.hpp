#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mtwist {

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// Returns (p, f) with q = p^f for an odd prime p, or nullopt.
std::optional<std::pair<std::uint64_t, unsigned>> odd_prime_power(std::uint64_t q);

/// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

int mobius(std::uint64_t n);

/// base^exp with overflow check; throws std::overflow_error.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

}  // namespace mtwist
