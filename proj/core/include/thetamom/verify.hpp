#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace thetamom {

struct CheckResult {
  std::string name;
  double measured = 0.0;   // worst error (or ratio) observed
  double tolerance = 0.0;  // pass iff measured <= tolerance
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool pass() const noexcept;
};

/// orthogonality, dft, gauss, parseval, largesieve, mollifier-identity, divisor-oracle
[[nodiscard]] const std::vector<std::string>& verify_suites();

/// Runs one named suite at fixed small parameters. Throws InvalidArgument on
/// an unknown suite name.
[[nodiscard]] VerifyReport run_verify(std::string_view suite, std::uint64_t seed = 1);

}  // namespace thetamom
