#include "fracdim/spectral.hpp"

#include "fracdim/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace fracdim {
namespace {

using Complex = std::complex<double>;

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey; sign = -1 forward, +1 inverse (unscaled).
void fft_pow2(Eigen::ArrayXcd& a, int sign) {
  const Eigen::Index n = a.size();
  for (Eigen::Index i = 1, j = 0; i < n; ++i) {
    Eigen::Index bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a(i), a(j));
  }
  for (Eigen::Index len = 2; len <= n; len <<= 1) {
    const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    for (Eigen::Index i = 0; i < n; i += len) {
      for (Eigen::Index j = 0; j < len / 2; ++j) {
        const Complex w = std::polar(1.0, angle * static_cast<double>(j));
        const Complex u = a(i + j);
        const Complex v = a(i + j + len / 2) * w;
        a(i + j) = u + v;
        a(i + j + len / 2) = u - v;
      }
    }
  }
}

Eigen::ArrayXcd transform(const Eigen::ArrayXcd& x, int sign) {
  const Eigen::Index n = x.size();
  if (n < 1) throw DomainError("dft: empty signal");
  if (is_power_of_two(n)) {
    Eigen::ArrayXcd a = x;
    fft_pow2(a, sign);
    return a;
  }
  // Direct O(n^2) evaluation for general lengths; the angle argument is kept
  // in [0, 2*pi) via the modular product.
  Eigen::ArrayXcd out(n);
  const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index m = 0; m < n; ++m)
      acc += x(m) * std::polar(1.0, base * static_cast<double>((k * m) % n));
    out(k) = acc;
  }
  return out;
}

}  // namespace

Eigen::ArrayXcd dft(const Eigen::ArrayXcd& signal) { return transform(signal, -1); }

Eigen::ArrayXcd dft(const Eigen::ArrayXd& signal) {
  return transform(signal.cast<Complex>(), -1);
}

Eigen::ArrayXcd idft(const Eigen::ArrayXcd& spectrum) {
  return transform(spectrum, +1) / static_cast<double>(spectrum.size());
}

DescriptorVector fourier_descriptors(const MfdCurve& curve, int k) {
  if (k < 1 || k > curve.size())
    throw DomainError("fourier_descriptors: descriptor count out of range");
  const Eigen::ArrayXcd spectrum = dft(curve.values);
  const double dc = std::abs(spectrum(0));
  if (dc < 1e-12) throw DomainError("fourier_descriptors: degenerate signature");

  DescriptorVector d;
  d.magnitudes = spectrum.head(k).abs() / dc;
  return d;
}

double reconstruction_distance(const MfdCurve& curve, int k) {
  const Eigen::Index n = curve.size();
  if (k < 1 || k > n)
    throw DomainError("reconstruction_distance: descriptor count out of range");
  const Eigen::ArrayXcd spectrum = dft(curve.values);

  Eigen::ArrayXcd kept = Eigen::ArrayXcd::Zero(n);
  kept.head(k) = spectrum.head(k);
  for (Eigen::Index j = 1; j < k; ++j) kept(n - j) = std::conj(spectrum(j));

  const Eigen::ArrayXd recon = idft(kept).real();
  return std::sqrt((curve.values - recon).square().sum());
}

}  // namespace fracdim
