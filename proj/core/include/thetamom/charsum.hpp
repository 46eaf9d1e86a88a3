#pragma once

// Short character sums S_p(chi; t) = sum_{n <= t} chi(n), weighted Dirichlet
// polynomials, mollified second moments and the Hoelder witnesses built from
// them, the large sieve checker, and dyadic max^8 statistics.

#include <cstdint>
#include <optional>
#include <span>

#include "thetamom/char_core.hpp"
#include "thetamom/coefficients.hpp"
#include "thetamom/theta.hpp"

namespace thetamom {

struct MollifierSpec {
  int k = 2;
  double epsilon = 0.3;
  std::uint64_t x_cut = 2;  // max(2, floor(p^epsilon))
  double tau = 0.5;
  std::uint64_t t_cut = 1;  // floor(p^tau)
  Coefficients xi = Coefficients::unit();

  /// Derives the cutoffs from p. Throws InvalidArgument unless k >= 2,
  /// 0 < epsilon < 1/k, 0 < tau < 1 and the cutoffs stay below p.
  [[nodiscard]] static MollifierSpec make(std::uint64_t p, int k, double epsilon, double tau = 0.5,
                                          Coefficients xi = Coefficients::unit());
  /// x_cut^k < p: congruences among mollifier products are then equalities.
  [[nodiscard]] bool diagonal_regime(std::uint64_t p) const noexcept;
};

struct MollifierSums {
  double sigma1 = 0.0;              // even nonprincipal: |Xi|^2 |A|^{2k-2}
  double sigma2 = 0.0;              // all even: |A|^{2k}
  double frak_s = 0.0;              // even nonprincipal: |theta(1,chi)|^2 |A|^{2k-2}
  double holder_lower_bound = 0.0;  // frak_s^k / sigma2^{k-1}
  double xi_moment = 0.0;           // even nonprincipal: |Xi|^{2k}
  double theta_moment = 0.0;        // T_2k^+ from the same theta table
  bool has_theta = false;
};

struct PrefixMax {
  double value = 0.0;
  std::uint64_t character = 0;
  std::uint64_t length = 0;
};

/// max over nonprincipal chi and 1 <= t <= Q of |S_p(chi; t)|, smallest
/// (character, t) on ties. Requires 1 <= Q < p.
[[nodiscard]] PrefixMax prefix_max(const PrimeContext& ctx, std::uint64_t q);

/// max over nonprincipal chi and 1 <= t <= Q of |S_p(chi; t)| / sqrt(t).
[[nodiscard]] double grh_shape_report(const PrimeContext& ctx, std::uint64_t q);

/// sum_{n <= t} xi_n chi(n).
[[nodiscard]] Complex dirichlet_poly(const PrimeContext& ctx, CharacterId chi, std::uint64_t t,
                                     const Coefficients& xi);
[[nodiscard]] inline Complex dirichlet_poly(const PrimeContext& ctx, CharacterId chi, const MollifierSpec& spec) {
  return dirichlet_poly(ctx, chi, spec.t_cut, spec.xi);
}

/// theta must be an eta = 0, x = 1 table for the same prime when provided;
/// without it frak_s, holder_lower_bound and theta_moment stay zero.
[[nodiscard]] MollifierSums mollifier_sums(const PrimeContext& ctx, const MollifierSpec& spec,
                                           const ThetaTable* theta = nullptr);

struct LargeSieveResult {
  double lhs = 0.0;
  double rhs_bound = 0.0;  // 2 (R^2 + H) sum |a_h|^2
  bool pass = false;
};

/// Evaluates sum_{r <= R} sum_{v <= r, gcd(v,r) = 1} |sum_h a_h e(h v / r)|^2
/// from the definition (a[0] is a_1).
[[nodiscard]] LargeSieveResult large_sieve_check(std::span<const Complex> a, std::uint64_t r);

struct GaraevRow {
  std::uint64_t x = 0;
  std::uint64_t q = 0;
  std::uint64_t n_primes = 0;
  double sum_max8_charsum = 0.0;
  double sum_max8_theta_eta0 = 0.0;
  double sum_max8_theta_eta1 = 0.0;
};

/// Q(X) = ceil(2 sqrt(X log X)).
[[nodiscard]] std::uint64_t garaev_window(std::uint64_t x);

/// Per-prime maxima used by the dyadic statistic.
struct GaraevPrime {
  std::uint64_t p = 0;
  double max_charsum = 0.0;
  double max_theta_eta0 = 0.0;
  double max_theta_eta1 = 0.0;
};
[[nodiscard]] GaraevPrime garaev_prime(std::uint64_t p, std::uint64_t q);

/// Over primes p in [X, 2X]: sums of (max_chi max_{t<=Q} |S_p|)^8 and of
/// (max_{chi nonprincipal} |Theta_p(eta, 1, chi)|)^8 for eta = 0 and 1. The
/// reduction order is fixed (ascending p) regardless of `jobs`. X >= 16.
[[nodiscard]] GaraevRow garaev_statistic(std::uint64_t x, unsigned jobs = 1);

}  // namespace thetamom
