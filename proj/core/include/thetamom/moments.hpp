#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thetamom/fit.hpp"
#include "thetamom/theta.hpp"

namespace thetamom {

// even_nontrivial: T_2k^+ (even characters without chi_0)
// even_all:        S_2k^+ (all even characters)
// odd:             S_2k^- (odd characters, eta = 1)
enum class MomentClass { even_nontrivial, even_all, odd };

[[nodiscard]] std::string_view to_string(MomentClass c) noexcept;
[[nodiscard]] std::optional<MomentClass> parse_moment_class(std::string_view s) noexcept;

struct MomentRecord {
  std::uint64_t p = 0;
  int k = 1;  // the moment is of order 2k
  MomentClass moment_class = MomentClass::even_nontrivial;
  double value = 0.0;
  double normalizer = 1.0;
  double ratio = 0.0;
};

/// Predicted main term for (p, k, class). Proved constants are used where
/// they are known (second and fourth moments); otherwise the conjectured
/// shape with unit constant: p^{k/2+1} (log p)^{(k-1)^2} for even_nontrivial,
/// p^{3k/2+1} (log p)^{(k-1)^2} for odd, p^k for even_all with k >= 3.
[[nodiscard]] double moment_normalizer(std::uint64_t p, int k, MomentClass c);

/// Sum of |values[j]|^{2k} over even j. Requires a table with eta = 0.
[[nodiscard]] MomentRecord moment_even(const ThetaTable& table, int k, bool include_principal);

/// Sum of |values[j]|^{2k} over odd j. Requires a table with eta = 1.
[[nodiscard]] MomentRecord moment_odd(const ThetaTable& table, int k);

/// Fit value ~ C p^alpha (log p)^beta across records sharing (k, class).
[[nodiscard]] FitResult exponent_fit(std::span<const MomentRecord> records,
                                     const PowerLogModel& model = PowerLogModel::power_only());

struct NonvanishingResult {
  double min_abs = 0.0;
  std::uint64_t argmin = 0;
  double normalized = 0.0;  // min_abs / p^{eta/2}
};

/// Smallest |theta(1, chi)| over nonprincipal chi of the given parity, with the
/// smallest index on ties. Empty when that set is empty (even parity, p = 3).
/// The table must have x = 1 and eta matching the parity.
[[nodiscard]] std::optional<NonvanishingResult> nonvanishing_scan(const ThetaTable& table, Parity parity);

/// Share of primes whose statistic exceeds p^(exponent + delta).
struct ExceptionalFraction {
  std::string statistic;  // T2k_plus, S2k_minus or max_theta
  int k = 0;
  int eta = 0;
  double exponent = 0.0;
  double delta = 0.0;
  std::size_t n_primes = 0;
  std::size_t n_exceeding = 0;
  double fraction = 0.0;
};

[[nodiscard]] std::vector<double> default_exception_deltas();

/// For every k present: T_2k^+ against p^{3k/4+1/2+delta} and S_2k^- against
/// p^{7k/4+1/2+delta}. even_all records are ignored.
[[nodiscard]] std::vector<ExceptionalFraction> moment_exceptions(std::span<const MomentRecord> records,
                                                                 std::span<const double> deltas);

/// max over nonprincipal chi of |Theta_p(eta, 1, chi)| against
/// p^{eta/2+3/8+delta}, for eta = 0 and 1.
[[nodiscard]] std::vector<ExceptionalFraction> individual_exceptions(std::span<const std::uint64_t> primes,
                                                                     std::span<const double> deltas,
                                                                     unsigned jobs = 1);

}  // namespace thetamom
