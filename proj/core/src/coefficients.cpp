#include "thetamom/coefficients.hpp"

#include <algorithm>

#include "thetamom/error.hpp"

namespace thetamom {

Coefficients Coefficients::table(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("Coefficients: empty table");
  for (double v : values) {
    if (!(v > 0.0)) throw InvalidArgument("Coefficients: weights must be positive");
  }
  return Coefficients(Kind::table, std::move(values));
}

Coefficients Coefficients::parse(const std::string& name) {
  if (name == "unit" || name == "1") return unit();
  if (name == "one_plus_reciprocal" || name == "1+1/n") return one_plus_reciprocal();
  throw InvalidArgument("Coefficients: unknown sequence '" + name + "'");
}

double Coefficients::operator()(std::uint64_t n) const {
  switch (kind_) {
    case Kind::unit: return 1.0;
    case Kind::one_plus_reciprocal: return 1.0 + 1.0 / static_cast<double>(n);
    case Kind::table:
      if (n == 0 || n > values_.size()) throw InvalidArgument("Coefficients: index outside table");
      return values_[n - 1];
  }
  return 0.0;
}

double Coefficients::minimum() const noexcept {
  switch (kind_) {
    case Kind::unit:
    case Kind::one_plus_reciprocal: return 1.0;
    case Kind::table: return *std::min_element(values_.begin(), values_.end());
  }
  return 0.0;
}

std::string Coefficients::name() const {
  switch (kind_) {
    case Kind::unit: return "unit";
    case Kind::one_plus_reciprocal: return "one_plus_reciprocal";
    case Kind::table: return "table";
  }
  return "?";
}

}  // namespace thetamom
