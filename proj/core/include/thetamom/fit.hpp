#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace thetamom {

/// value ~ constant * x^power * (log x)^log_power
struct FitResult {
  double constant = 0.0;
  double power = 0.0;
  double log_power = 0.0;
  double rms_residual = 0.0;  // in log(value) space
  std::size_t n_points = 0;
};

/// Which exponents are held fixed. Unset means fitted.
struct PowerLogModel {
  std::optional<double> fixed_power;
  std::optional<double> fixed_log_power = 0.0;

  [[nodiscard]] static PowerLogModel power_only() { return {std::nullopt, 0.0}; }
  [[nodiscard]] static PowerLogModel free_both() { return {std::nullopt, std::nullopt}; }
  [[nodiscard]] static PowerLogModel fixed_power_free_log(double power) { return {power, std::nullopt}; }
};

/// Least squares of log(value) on {1, log x, log log x} with fixed terms
/// moved to the left side. Needs at least 3 points, positive values, and
/// x > 1 whenever the log factor participates.
[[nodiscard]] FitResult fit_power_log(std::span<const double> x, std::span<const double> value,
                                      const PowerLogModel& model);

}  // namespace thetamom
