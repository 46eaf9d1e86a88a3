#include "thetamom/char_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "thetamom/error.hpp"
#include "thetamom/primes.hpp"

namespace thetamom {
namespace {
__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return r;
}

std::uint64_t smallest_primitive_root(std::uint64_t p) {
  const auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool generator = true;
    for (std::uint64_t q : factors) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  return 1;  // unreachable for odd primes
}

std::uint64_t reduce(long long n, std::uint64_t p) {
  const long long r = n % static_cast<long long>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
}

}  // namespace

PrimeContext::PrimeContext(std::uint64_t p) : p_(p), g_(0) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) {
    throw InvalidArgument("PrimeContext: " + std::to_string(p) + " is not an odd prime");
  }
  if (p > (std::uint64_t{1} << 32)) {
    throw InvalidArgument("PrimeContext: modulus too large for the index table");
  }
  g_ = smallest_primitive_root(p);

  const std::uint64_t m = p - 1;
  ind_.assign(m, 0);
  std::uint64_t power = 1;
  for (std::uint64_t a = 0; a < m; ++a) {
    ind_[power - 1] = static_cast<std::uint32_t>(a);
    power = power * g_ % p;
  }

  roots_.resize(m);
  roots_[0] = {1.0, 0.0};
  for (std::uint64_t k = 1; 2 * k <= m; ++k) {
    Complex z;
    if (4 * k == m) {
      z = {0.0, 1.0};
    } else if (2 * k == m) {
      z = {-1.0, 0.0};
    } else {
      z = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(m));
    }
    roots_[k] = z;
    roots_[m - k] = std::conj(z);
  }
}

std::uint64_t PrimeContext::index_of(std::uint64_t n) const {
  n %= p_;
  if (n == 0) throw InvalidArgument("index_of: argument divisible by p");
  return ind_[n - 1];
}

Complex PrimeContext::character(CharacterId chi, long long n) const {
  const std::uint64_t r = reduce(n, p_);
  if (r == 0) return {0.0, 0.0};
  const std::uint64_t m = order();
  return roots_[mulmod(chi.index % m, ind_[r - 1], m)];
}

Complex character_value(const PrimeContext& ctx, CharacterId chi, long long n) {
  return ctx.character(chi, n);
}

Complex character_correlation(const PrimeContext& ctx, long long a, long long b) {
  CompensatedComplexSum s;
  for (std::uint64_t j = 0; j < ctx.order(); ++j) {
    const CharacterId chi{j};
    s += ctx.character(chi, a) * std::conj(ctx.character(chi, b));
  }
  return s.value();
}

Complex even_character_correlation(const PrimeContext& ctx, long long a, long long b) {
  const std::uint64_t p = ctx.modulus();
  if (reduce(a, p) == 0 || reduce(b, p) == 0) {
    throw InvalidArgument("even_character_correlation: arguments must be units mod p");
  }
  CompensatedComplexSum s;
  for (std::uint64_t j = 0; j < ctx.order(); j += 2) {
    const CharacterId chi{j};
    s += ctx.character(chi, a) * std::conj(ctx.character(chi, b));
  }
  return s.value();
}

Complex twisted_gauss_sum(const PrimeContext& ctx, CharacterId chi, long long b) {
  const std::uint64_t p = ctx.modulus();
  const std::uint64_t br = reduce(b, p);
  CompensatedComplexSum s;
  for (std::uint64_t v = 1; v < p; ++v) {
    const auto bv = static_cast<long long>(mulmod(br, v, p));
    s += ctx.character(chi, static_cast<long long>(v)) * unit_exp_ratio(bv, static_cast<long long>(p));
  }
  return s.value();
}

Complex gauss_sum(const PrimeContext& ctx, CharacterId chi) { return twisted_gauss_sum(ctx, chi, 1); }

Complex additive_orthogonality_sum(long long z, long long q) {
  if (q < 1 || q % 2 == 0) throw InvalidArgument("additive_orthogonality_sum: Q must be odd and positive");
  const long long half = (q - 1) / 2;
  const long long zr = ((z % q) + q) % q;
  CompensatedComplexSum s;
  for (long long b = -half; b <= half; ++b) {
    s += unit_exp_ratio(b * zr, q);
  }
  return s.value();
}

Complex exp_window_sum(long long b, long long u, long long v, long long q) {
  if (q < 1 || v < 1) throw InvalidArgument("exp_window_sum: need Q >= 1 and V >= 1");
  if (b % q == 0) return {static_cast<double>(v), 0.0};
  // e(b(U+1)/Q) * (1 - e(bV/Q)) / (1 - e(b/Q))
  const Complex first = unit_exp_ratio(b % q * ((u + 1) % q), q);
  const Complex ratio_v = unit_exp_ratio(b % q * (v % q), q);
  const Complex step = unit_exp_ratio(b, q);
  return first * (1.0 - ratio_v) / (1.0 - step);
}

double exp_window_bound(long long b, long long v, long long q) {
  if (b == 0 || 2 * std::llabs(b) > q) {
    throw InvalidArgument("exp_window_bound: need 0 < |b| <= Q/2");
  }
  const double cap = std::min(static_cast<double>(v),
                              static_cast<double>(q) / (2.0 * static_cast<double>(std::llabs(b))));
  return cap * std::numbers::pi / 2.0 + 1.0;
}

}  // namespace thetamom
