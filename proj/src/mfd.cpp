#include "fracdim/mfd.hpp"

#include "fracdim/errors.hpp"
#include "fracdim/spectral.hpp"

#include <cmath>
#include <numbers>

namespace fracdim {

LogLogCurve trim_low_sampling(const LogLogCurve& curve, int r_min) {
  if (r_min < 1) throw DomainError("trim_low_sampling: r_min must be >= 1");
  // Keep t >= ln(r_min); the epsilon keeps r == r_min itself on the boundary.
  const double threshold = std::log(static_cast<double>(r_min)) - 1e-12;

  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < curve.size(); ++i) kept += (curve.t(i) >= threshold);
  if (kept < 8)
    throw DomainError("trim_low_sampling: curve too short after trim");

  LogLogCurve out;
  out.t.resize(kept);
  out.u.resize(kept);
  Eigen::Index j = 0;
  for (Eigen::Index i = 0; i < curve.size(); ++i) {
    if (curve.t(i) < threshold) continue;
    out.t(j) = curve.t(i);
    out.u(j) = curve.u(i);
    ++j;
  }
  return out;
}

UniformCurve resample_uniform(const LogLogCurve& curve, int n) {
  if (n < 8) throw DomainError("resample_uniform: sample count must be >= 8");
  if (curve.size() < 2)
    throw DomainError("resample_uniform: need at least 2 curve points");

  UniformCurve out;
  out.t0 = curve.t(0);
  out.dt = (curve.t(curve.size() - 1) - out.t0) / static_cast<double>(n - 1);
  out.samples.resize(n);
  out.samples(0) = curve.u(0);
  out.samples(n - 1) = curve.u(curve.size() - 1);

  Eigen::Index seg = 0;
  for (int k = 1; k < n - 1; ++k) {
    const double tk = out.t0 + k * out.dt;
    while (seg + 2 < curve.size() && curve.t(seg + 1) < tk) ++seg;
    const double span = curve.t(seg + 1) - curve.t(seg);
    const double w = (tk - curve.t(seg)) / span;
    out.samples(k) = curve.u(seg) + w * (curve.u(seg + 1) - curve.u(seg));
  }
  return out;
}

Eigen::ArrayXd reflect_pad(const UniformCurve& curve) {
  const Eigen::Index n = curve.size();
  Eigen::ArrayXd v(4 * n);
  v.segment(0, n) = curve.samples;
  v.segment(n, n) = curve.samples.reverse();
  v.segment(2 * n, n) = curve.samples;
  v.segment(3 * n, n) = curve.samples.reverse();
  return v;
}

Eigen::ArrayXd spectral_derivative(const Eigen::ArrayXd& v, double dt, double sigma) {
  const Eigen::Index len = v.size();
  if (len < 32 || len % 4 != 0)
    throw DomainError("spectral_derivative: signal length must be 4N >= 32");
  if (dt <= 0.0) throw DomainError("spectral_derivative: dt must be positive");
  if (sigma < 0.0) throw DomainError("spectral_derivative: sigma must be >= 0");

  const double sigma_t = sigma * dt;
  Eigen::ArrayXcd spectrum = dft(v);
  for (Eigen::Index k = 0; k < len; ++k) {
    if (2 * k == len) {
      spectrum(k) = 0.0;  // Nyquist
      continue;
    }
    const double signed_k = (2 * k < len) ? static_cast<double>(k)
                                          : static_cast<double>(k - len);
    const double f = signed_k / (static_cast<double>(len) * dt);
    const double gauss =
        std::exp(-2.0 * std::numbers::pi * std::numbers::pi * sigma_t * sigma_t * f * f);
    spectrum(k) *= std::complex<double>(0.0, 2.0 * std::numbers::pi * f * gauss);
  }
  const Eigen::ArrayXcd back = idft(spectrum);

  // The multiplier is conjugate-symmetric, so the result of a real input must
  // be real up to rounding.
  const double imag_max = back.imag().abs().maxCoeff();
  const double real_max = back.real().abs().maxCoeff();
  if (imag_max > 1e-9 * std::max(real_max, 1.0))
    throw std::logic_error("spectral_derivative: imaginary residue above threshold");
  return back.real();
}

MfdCurve compute_mfd(const BinaryShape& shape, int r_max, double sigma, int n,
                     int r_min) {
  if (r_max < 1) throw DomainError("compute_mfd: r_max must be >= 1");
  const BinaryShape padded = pad(shape, r_max + 1);
  const DistanceMap dmap = squared_edt(padded);
  const InfluenceHistogram hist = influence_histogram(dmap, r_max);
  const LogLogCurve curve = trim_low_sampling(loglog_curve(hist), r_min);
  const UniformCurve uniform = resample_uniform(curve, n);
  const Eigen::ArrayXd padded_signal = reflect_pad(uniform);
  const Eigen::ArrayXd derivative =
      spectral_derivative(padded_signal, uniform.dt, sigma);

  MfdCurve mfd;
  mfd.t0 = uniform.t0;
  mfd.dt = uniform.dt;
  mfd.values = 2.0 - derivative.segment(2 * uniform.size(), uniform.size());
  mfd.params = MfdParams{r_max, sigma};
  return mfd;
}

}  // namespace fracdim
