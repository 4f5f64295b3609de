#pragma once

#include "fracdim/minkowski.hpp"
#include "fracdim/raster.hpp"

namespace fracdim {

// Pipeline defaults; the CLI and experiment runner inherit these.
inline constexpr int kDefaultRMax = 100;
inline constexpr double kDefaultSigma = 10.0;  // in samples of the uniform grid
inline constexpr int kDefaultSamples = 256;
inline constexpr int kDefaultRMin = 5;

// Log-log curve resampled onto a uniform t grid: sample k sits at t0 + k*dt.
struct UniformCurve {
  double t0 = 0.0;
  double dt = 0.0;
  Eigen::ArrayXd samples;

  Eigen::Index size() const { return samples.size(); }
};

struct MfdParams {
  int r_max = kDefaultRMax;
  double sigma = kDefaultSigma;
};

// Multi-scale fractal dimension 2 - du/dt over the uniform t grid.
struct MfdCurve {
  double t0 = 0.0;
  double dt = 0.0;
  Eigen::ArrayXd values;
  MfdParams params;

  Eigen::Index size() const { return values.size(); }
};

// Drops the sparsely sampled small radii: every point with t < ln(r_min).
// At least 8 points must survive.
LogLogCurve trim_low_sampling(const LogLogCurve& curve, int r_min);

// Piecewise-linear resampling onto n uniform samples spanning [t.front(),
// t.back()]; both endpoints are reproduced exactly.
UniformCurve resample_uniform(const LogLogCurve& curve, int n);

// [u, reverse(u), u, reverse(u)], length 4N. The third block (zero-based
// [2N, 3N)) is a verbatim copy of u, and the signal is continuous at every
// block seam including the periodic wrap, which suppresses the Gibbs
// oscillations of the spectral derivative.
Eigen::ArrayXd reflect_pad(const UniformCurve& curve);

// Fourier-domain derivative with Gaussian regularization: coefficient k is
// multiplied by (j*2*pi*f_k) * exp(-2*pi^2*(sigma*dt)^2*f_k^2) where
// f_k = k_signed / (len*dt). sigma is expressed in samples. The Nyquist
// coefficient is zeroed (the odd multiplier has no consistent sign there).
Eigen::ArrayXd spectral_derivative(const Eigen::ArrayXd& v, double dt, double sigma);

// Full pipeline: pad by r_max+1, squared EDT, influence histogram, log-log
// curve, low-sampling trim, uniform resampling, reflective padding, spectral
// derivative; returns 2 - du/dt cropped to the valid window.
MfdCurve compute_mfd(const BinaryShape& shape, int r_max = kDefaultRMax,
                     double sigma = kDefaultSigma, int n = kDefaultSamples,
                     int r_min = kDefaultRMin);

}  // namespace fracdim
