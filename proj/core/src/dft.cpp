#include "thetamom/dft.hpp"

#include <bit>
#include <cstdint>

#include "thetamom/error.hpp"

namespace thetamom {

Radix2Fft::Radix2Fft(std::size_t n) : n_(n) {
  if (n == 0 || !std::has_single_bit(n)) throw InvalidArgument("Radix2Fft: size must be a power of two");
  twiddle_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    twiddle_[k] = std::polar(1.0, -kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  }
  bitrev_.resize(n);
  const int bits = std::countr_zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    bitrev_[i] = r;
  }
}

void Radix2Fft::transform(std::span<Complex> data, bool inverse) const {
  if (data.size() != n_) throw InvalidArgument("Radix2Fft: size mismatch");
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        Complex w = twiddle_[k * stride];
        if (inverse) w = std::conj(w);
        const Complex u = data[start + k];
        const Complex t = w * data[start + k + half];
        data[start + k] = u + t;
        data[start + k + half] = u - t;
      }
    }
  }
}

namespace {
__extension__ using u128 = unsigned __int128;

std::size_t convolution_size(std::size_t n) { return std::bit_ceil(2 * n - 1); }

}  // namespace

BluesteinDft::BluesteinDft(std::size_t n) : n_(n), fft_(convolution_size(n == 0 ? 1 : n)) {
  if (n == 0) throw InvalidArgument("BluesteinDft: size must be positive");
  // j a = (j^2 + a^2 - (j - a)^2) / 2, so with w = e(1/n):
  //   X_j = w^{j^2/2} sum_a (x_a w^{a^2/2}) w^{-(j-a)^2/2}.
  // k^2 is reduced mod 2n exactly before the float conversion.
  chirp_.resize(n);
  const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t kk = static_cast<std::uint64_t>(
        static_cast<u128>(k) * k % two_n);
    chirp_[k] = std::polar(1.0, kTwoPi * static_cast<double>(kk) / static_cast<double>(two_n));
  }
  const std::size_t len = fft_.size();
  kernel_hat_.assign(len, Complex{});
  kernel_hat_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    kernel_hat_[k] = std::conj(chirp_[k]);
    kernel_hat_[len - k] = std::conj(chirp_[k]);
  }
  fft_.transform(kernel_hat_, false);
}

void BluesteinDft::transform(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != n_ || out.size() != n_) throw InvalidArgument("BluesteinDft: size mismatch");
  const std::size_t len = fft_.size();
  std::vector<Complex> work(len, Complex{});
  for (std::size_t a = 0; a < n_; ++a) work[a] = in[a] * chirp_[a];
  fft_.transform(work, false);
  for (std::size_t i = 0; i < len; ++i) work[i] *= kernel_hat_[i];
  fft_.transform(work, true);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t j = 0; j < n_; ++j) out[j] = work[j] * scale * chirp_[j];
}

std::vector<Complex> naive_dft(std::span<const Complex> in) {
  const std::size_t n = in.size();
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    CompensatedComplexSum s;
    for (std::size_t a = 0; a < n; ++a) {
      s += in[a] * unit_exp_ratio(static_cast<long long>(j * a % n), static_cast<long long>(n));
    }
    out[j] = s.value();
  }
  return out;
}

}  // namespace thetamom
