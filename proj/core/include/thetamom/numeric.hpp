#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace thetamom {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Neumaier-compensated running sum. Error is O(eps) in the result rather
/// than O(n eps) for n terms.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(Complex z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  CompensatedComplexSum& operator+=(Complex z) noexcept {
    add(z);
    return *this;
  }
  [[nodiscard]] Complex value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// e(z) = exp(2 pi i z). The argument is reduced to [0, 1) first so large
/// integer parts do not cost precision.
inline Complex unit_exp(double z) noexcept {
  const double frac = z - std::floor(z);
  return std::polar(1.0, kTwoPi * frac);
}

/// e(num / den) for integers, reduced exactly before the float conversion.
inline Complex unit_exp_ratio(long long num, long long den) noexcept {
  long long r = num % den;
  if (r < 0) r += den;
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(den));
}

}  // namespace thetamom
