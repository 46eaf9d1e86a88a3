#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace thetamom {

/// Real weights xi_n (n >= 1) of a Dirichlet polynomial, bounded below by a
/// positive constant.
class Coefficients {
 public:
  /// xi_n = 1.
  [[nodiscard]] static Coefficients unit() { return Coefficients(Kind::unit, {}); }
  /// xi_n = 1 + 1/n.
  [[nodiscard]] static Coefficients one_plus_reciprocal() { return Coefficients(Kind::one_plus_reciprocal, {}); }
  /// Explicit table; values[n-1] = xi_n. Throws unless every entry is positive.
  [[nodiscard]] static Coefficients table(std::vector<double> values);
  /// "unit", "one_plus_reciprocal"; throws InvalidArgument otherwise.
  [[nodiscard]] static Coefficients parse(const std::string& name);

  [[nodiscard]] double operator()(std::uint64_t n) const;
  /// Lower bound xi_min over the defined range.
  [[nodiscard]] double minimum() const noexcept;
  [[nodiscard]] bool is_unit() const noexcept { return kind_ == Kind::unit; }
  [[nodiscard]] std::string name() const;

 private:
  enum class Kind { unit, one_plus_reciprocal, table };
  Coefficients(Kind kind, std::vector<double> values) : kind_(kind), values_(std::move(values)) {}

  Kind kind_;
  std::vector<double> values_;
};

}  // namespace thetamom
