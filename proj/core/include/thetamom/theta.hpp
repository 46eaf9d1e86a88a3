#pragma once

// Truncated theta functions of Dirichlet characters,
//   Theta_p(eta, x, chi) = sum_{n >= 1} chi(n) n^eta exp(-pi n^2 x / p),
// for one character by direct summation, or for every character of the
// group at once through a length-(p-1) DFT of discrete-log bucket weights.

#include <cstdint>
#include <optional>
#include <vector>

#include "thetamom/char_core.hpp"

namespace thetamom {

struct ThetaRequest {
  std::uint64_t p = 0;
  int eta = 0;
  double x = 1.0;
  double tail_eps = 0.0;

  /// tail_eps = 1e-15 * max(1, sqrt(p)): the truncated tail sits below the
  /// binary64 resolution of the head sum.
  [[nodiscard]] static double default_tail_eps(std::uint64_t p);
  [[nodiscard]] static ThetaRequest make(std::uint64_t p, int eta, double x = 1.0,
                                         std::optional<double> tail_eps = std::nullopt);
  /// Throws InvalidArgument on eta not in {0,1}, x <= 0, tail_eps outside (0,1).
  void validate() const;
};

struct ThetaTable {
  ThetaRequest request;
  std::uint64_t truncation = 0;     // N
  double tail_bound = 0.0;          // integral majorant of the dropped tail
  std::vector<double> weights;      // w[a], bucketed by discrete log a
  std::vector<Complex> values;      // values[j] = truncated Theta for chi_j

  [[nodiscard]] std::uint64_t modulus() const noexcept { return request.p; }
  [[nodiscard]] int eta() const noexcept { return request.eta; }
};

/// Integral majorant of sum_{n > N} n^eta exp(-pi n^2 x / p):
///   int_N^inf (t^eta + 1) exp(-pi t^2 x / p) dt.
[[nodiscard]] double tail_majorant(std::uint64_t p, int eta, double x, std::uint64_t n);

/// Smallest N with tail_majorant(p, eta, x, N) < tail_eps. For eta = 1, N is
/// also kept past the maximum of t exp(-c t^2) so the majorant applies.
[[nodiscard]] std::uint64_t truncation_length(std::uint64_t p, int eta, double x, double tail_eps);

/// Direct left-to-right compensated summation of the first N terms.
[[nodiscard]] Complex theta_naive(const PrimeContext& ctx, CharacterId chi, int eta, double x,
                                  std::uint64_t n_terms);

/// Every character at once. `truncation_override` replaces the computed N
/// (used for truncation-stability checks).
[[nodiscard]] ThetaTable theta_all_characters(const PrimeContext& ctx, const ThetaRequest& request,
                                              std::optional<std::uint64_t> truncation_override = std::nullopt);

[[nodiscard]] inline ThetaTable theta_all_characters(const PrimeContext& ctx, int eta, double x = 1.0) {
  return theta_all_characters(ctx, ThetaRequest::make(ctx.modulus(), eta, x));
}

}  // namespace thetamom
