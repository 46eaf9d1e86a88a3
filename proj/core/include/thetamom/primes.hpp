#pragma once

#include <cstdint>
#include <vector>

namespace thetamom {

// Deterministic trial division; intended for n up to ~1e12.
[[nodiscard]] bool is_prime(std::uint64_t n) noexcept;

// Distinct prime factors in increasing order.
[[nodiscard]] std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// All primes in [lo, hi], ascending (segmented by a simple sieve).
[[nodiscard]] std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

// Prime nearest to x (ties go to the smaller prime); x >= 2.
[[nodiscard]] std::uint64_t nearest_prime(double x);

// Primes near a geometric grid with `per_octave` points per doubling over
// [lo, hi]. Duplicates are removed; result is ascending and inside [lo, hi].
[[nodiscard]] std::vector<std::uint64_t> geometric_primes(std::uint64_t lo, std::uint64_t hi,
                                                          unsigned per_octave);

}  // namespace thetamom
