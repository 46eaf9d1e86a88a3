#pragma once

// Exact counts of multiplicative coincidences in boxes:
//   #{a_i, b_i <= T^{gamma_i} : a_1...a_k = b_1...b_k}
// and the mod-p variant with a_1...a_k = +-b_1...b_k (mod p).

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "thetamom/coefficients.hpp"
#include "thetamom/fit.hpp"

namespace thetamom {

using ExactCount = boost::multiprecision::cpp_int;

struct DivisorSpec {
  int k = 1;
  double T = 1.0;
  std::vector<double> gamma;  // k exponents in (0, 1]

  [[nodiscard]] static DivisorSpec uniform(int k, double T) { return {k, T, std::vector<double>(static_cast<std::size_t>(k), 1.0)}; }
  void validate() const;
  /// L_i = floor(T^{gamma_i}); exact for integer powers.
  [[nodiscard]] std::vector<std::uint64_t> limits() const;
};

enum class CountStrategy { automatic, enumeration, histogram };

struct CountBudget {
  std::uint64_t enumeration_pairs = 100'000'000;        // (prod L_i)^2 tuple pairs
  std::uint64_t memory_bytes = std::uint64_t{2} << 30;  // histogram storage
  unsigned jobs = 1;
};

[[nodiscard]] ExactCount restricted_divisor_count(const DivisorSpec& spec,
                                                  CountStrategy strategy = CountStrategy::automatic,
                                                  const CountBudget& budget = {});

/// Box-limit form of the same count.
[[nodiscard]] ExactCount restricted_divisor_count(std::span<const std::uint64_t> limits,
                                                  CountStrategy strategy = CountStrategy::automatic,
                                                  const CountBudget& budget = {});

/// Weighted count of a * a_1...a_{k-1} = +- b * b_1...b_{k-1} (mod p) with
/// a, b <= t_cut weighted xi_a xi_b and a_i, b_i <= x_cut. Without t_cut all
/// 2k variables range over [1, x_cut] with unit weight.
/// Requires an odd prime p, x_cut and t_cut in [1, p).
[[nodiscard]] double congruence_count(std::uint64_t p, int k, std::uint64_t x_cut,
                                      std::optional<std::uint64_t> t_cut = std::nullopt,
                                      const Coefficients& xi = Coefficients::unit());

/// (T, count) samples -> count ~ C T^gamma (log T)^beta. With gamma set the
/// power is held fixed; otherwise it is fitted too. Needs >= 4 samples whose
/// T values span at least two octaves.
[[nodiscard]] FitResult log_power_fit(std::span<const std::pair<double, double>> samples,
                                      std::optional<double> gamma);

}  // namespace thetamom
