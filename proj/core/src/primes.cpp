#include "thetamom/primes.hpp"

#include <algorithm>
#include <cmath>

#include "thetamom/error.hpp"

namespace thetamom {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || hi < lo) return out;
  lo = std::max<std::uint64_t>(lo, 2);

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<bool> small(root + 1, true);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t k = i * i; k <= root; k += i) small[k] = false;
  }

  std::vector<bool> seg(hi - lo + 1, true);
  for (std::uint64_t q : base) {
    std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
    for (std::uint64_t k = start; k <= hi; k += q) seg[k - lo] = false;
  }
  for (std::uint64_t i = 0; i < seg.size(); ++i) {
    if (seg[i]) out.push_back(lo + i);
  }
  return out;
}

std::uint64_t nearest_prime(double x) {
  if (!(x >= 2.0)) throw InvalidArgument("nearest_prime: x must be >= 2");
  const auto base = static_cast<std::uint64_t>(std::floor(x));
  for (std::uint64_t off = 0;; ++off) {
    // Candidates at distance ~off on either side; the closer one wins.
    const std::uint64_t below = base >= off ? base - off : 0;
    const std::uint64_t above = base + 1 + off;
    const bool pb = below >= 2 && is_prime(below);
    const bool pa = is_prime(above);
    if (pb && pa) return (x - static_cast<double>(below) <= static_cast<double>(above) - x) ? below : above;
    if (pb) return below;
    if (pa) return above;
  }
}

std::vector<std::uint64_t> geometric_primes(std::uint64_t lo, std::uint64_t hi,
                                            unsigned per_octave) {
  if (per_octave == 0) throw InvalidArgument("geometric_primes: per_octave must be positive");
  if (hi < lo) return {};
  std::vector<std::uint64_t> out;
  const double step = std::pow(2.0, 1.0 / per_octave);
  for (double x = static_cast<double>(std::max<std::uint64_t>(lo, 2)); x <= static_cast<double>(hi) * (1 + 1e-12);
       x *= step) {
    const std::uint64_t q = nearest_prime(x);
    if (q >= lo && q <= hi) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace thetamom
