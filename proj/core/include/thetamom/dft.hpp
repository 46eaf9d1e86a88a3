#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "thetamom/numeric.hpp"

namespace thetamom {

/// Radix-2 complex FFT with precomputed twiddles. Size must be a power of two.
class Radix2Fft {
 public:
  explicit Radix2Fft(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  /// In place. inverse=false computes sum_k x_k e(-jk/n); inverse=true uses
  /// e(+jk/n). Neither direction is normalized.
  void transform(std::span<Complex> data, bool inverse) const;

 private:
  std::size_t n_;
  std::vector<Complex> twiddle_;  // e(-k/n), k < n/2
  std::vector<std::size_t> bitrev_;
};

/// Arbitrary-length DFT via the chirp-z (Bluestein) reduction to a
/// power-of-two cyclic convolution. O(n log n) for every n.
///
/// Computes out[j] = sum_{a=0}^{n-1} in[a] e(j a / n)  (positive exponent,
/// unnormalized), which is the convention used for character sums
/// chi_j(g^a) = e(j a / (p-1)).
class BluesteinDft {
 public:
  explicit BluesteinDft(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  void transform(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  std::size_t n_;
  Radix2Fft fft_;
  std::vector<Complex> chirp_;        // e(k^2 / (2n)), k < n
  std::vector<Complex> kernel_hat_;   // FFT of conj chirp, wrapped
};

/// Reference O(n^2) evaluation of the same transform.
[[nodiscard]] std::vector<Complex> naive_dft(std::span<const Complex> in);

}  // namespace thetamom
