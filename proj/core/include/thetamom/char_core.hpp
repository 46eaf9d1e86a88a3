#pragma once

// Multiplicative characters modulo an odd prime p.
//
// With g the smallest primitive root, the characters are chi_j for
// j = 0..p-2, chi_j(g^a) = e(j a / (p-1)) and chi_j(n) = 0 when p | n.
// chi_0 is principal; chi_j is even exactly when j is even, as
// -1 = g^((p-1)/2).

#include <cstdint>
#include <span>
#include <vector>

#include "thetamom/numeric.hpp"

namespace thetamom {

enum class Parity { even, odd };

struct CharacterId {
  std::uint64_t index = 0;

  [[nodiscard]] constexpr Parity parity() const noexcept {
    return index % 2 == 0 ? Parity::even : Parity::odd;
  }
  [[nodiscard]] constexpr bool is_principal() const noexcept { return index == 0; }
  // eta_chi: weight exponent of the classical theta function for this character.
  [[nodiscard]] constexpr int theta_weight() const noexcept { return index % 2 == 0 ? 0 : 1; }

  friend constexpr bool operator==(CharacterId, CharacterId) = default;
};

class PrimeContext {
 public:
  /// Throws InvalidArgument unless p is an odd prime.
  explicit PrimeContext(std::uint64_t p);

  [[nodiscard]] std::uint64_t modulus() const noexcept { return p_; }
  [[nodiscard]] std::uint64_t primitive_root() const noexcept { return g_; }
  /// Group order p - 1 (also the number of characters).
  [[nodiscard]] std::uint64_t order() const noexcept { return p_ - 1; }

  /// ind[n-1] = discrete log of n base g, for n in [1, p-1].
  [[nodiscard]] std::span<const std::uint32_t> index_table() const noexcept { return ind_; }
  /// Discrete log of a unit n (n mod p != 0).
  [[nodiscard]] std::uint64_t index_of(std::uint64_t n) const;

  /// Table of e(m / (p-1)), m in [0, p-2]; entries m and p-1-m are exact conjugates.
  [[nodiscard]] std::span<const Complex> roots() const noexcept { return roots_; }

  [[nodiscard]] Complex character(CharacterId chi, long long n) const;
  [[nodiscard]] CharacterId conjugate(CharacterId chi) const noexcept {
    return {chi.index == 0 ? 0 : order() - chi.index};
  }
  [[nodiscard]] bool valid(CharacterId chi) const noexcept { return chi.index < order(); }

 private:
  std::uint64_t p_;
  std::uint64_t g_;
  std::vector<std::uint32_t> ind_;
  std::vector<Complex> roots_;
};

[[nodiscard]] inline PrimeContext build_prime_context(std::uint64_t p) { return PrimeContext(p); }

[[nodiscard]] Complex character_value(const PrimeContext& ctx, CharacterId chi, long long n);

/// Sum over all characters of chi(a) conj(chi(b)); p-1 when a == b mod p, else 0.
[[nodiscard]] Complex character_correlation(const PrimeContext& ctx, long long a, long long b);

/// Same sum restricted to even characters: (p-1)/2 when a == +-b mod p, else 0.
/// Throws InvalidArgument if p divides a or b.
[[nodiscard]] Complex even_character_correlation(const PrimeContext& ctx, long long a,
                                                 long long b);

/// tau(chi) = sum_{v=1}^{p-1} chi(v) e(v/p).
[[nodiscard]] Complex gauss_sum(const PrimeContext& ctx, CharacterId chi);

/// sum_{v=1}^{p-1} chi(v) e(b v / p). For b = 1 this is gauss_sum.
[[nodiscard]] Complex twisted_gauss_sum(const PrimeContext& ctx, CharacterId chi, long long b);

/// sum_{b=-M}^{M} e(b z / Q) for odd Q = 2M + 1, by direct summation.
[[nodiscard]] Complex additive_orthogonality_sum(long long z, long long q);

/// Closed form of sum_{n=U+1}^{U+V} e(b n / Q).
[[nodiscard]] Complex exp_window_sum(long long b, long long u, long long v, long long q);

/// min(V, Q / (2|b|)) * pi / 2 + 1, valid for 0 < |b| <= Q/2.
[[nodiscard]] double exp_window_bound(long long b, long long v, long long q);

}  // namespace thetamom
