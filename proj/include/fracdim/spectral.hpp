#pragma once

#include "fracdim/mfd.hpp"

#include <complex>

namespace fracdim {

inline constexpr int kDefaultDescriptors = 50;

// Forward DFT, X_k = sum_n x_n * exp(-j*2*pi*k*n/L). Radix-2 when the length
// is a power of two, direct summation otherwise.
Eigen::ArrayXcd dft(const Eigen::ArrayXcd& signal);
Eigen::ArrayXcd dft(const Eigen::ArrayXd& signal);

// Inverse DFT including the 1/L factor; idft(dft(x)) == x to 1e-9.
Eigen::ArrayXcd idft(const Eigen::ArrayXcd& spectrum);

// Normalized low-frequency magnitude signature of an MFD curve. Entry 0 is
// exactly 1 after normalization by the leading coefficient's magnitude.
struct DescriptorVector {
  Eigen::ArrayXd magnitudes;

  Eigen::Index size() const { return magnitudes.size(); }
};

// Magnitudes of the k lowest-frequency DFT coefficients of the curve values,
// each divided by the magnitude of coefficient 0. Scale-invariant.
DescriptorVector fourier_descriptors(const MfdCurve& curve, int k);

// Euclidean distance between the curve and its reconstruction from the first
// k coefficients (conjugate-symmetric completion, the rest zeroed).
// Non-increasing in k; zero at k = curve length.
double reconstruction_distance(const MfdCurve& curve, int k);

}  // namespace fracdim
